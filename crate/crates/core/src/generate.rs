//! Test-instance generators: the five platonic solids, random stacked
//! triangulations, and sparsified variants with larger faces.
//!
//! Everything is deterministic: the same parameters and seed always produce
//! the same graph, byte for byte.

use crate::graph::{GraphError, PlanarGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("unknown solid {0:?} (expected tetrahedron, cube, octahedron, dodecahedron or icosahedron)")]
    UnknownSolid(String),
    #[error("need at least 4 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("deletion rate {0} outside [0, 1]")]
    BadRate(f64),
}

pub const PLATONIC_NAMES: [&str; 5] = [
    "tetrahedron",
    "cube",
    "octahedron",
    "dodecahedron",
    "icosahedron",
];

pub fn platonic(name: &str) -> Result<PlanarGraph, GenError> {
    match name {
        "tetrahedron" => Ok(from_literals(
            &[
                ("1", &["2", "4", "3"][..]),
                ("2", &["3", "4", "1"]),
                ("3", &["1", "4", "2"]),
                ("4", &["3", "1", "2"]),
            ],
            &["1", "2", "3"],
        )),
        // Rotations read off a drawing with the bottom square b0..b3 outside
        // and the top square t0..t3 inside.
        "cube" => Ok(from_literals(
            &[
                ("b0", &["b1", "t0", "b3"][..]),
                ("b1", &["b2", "t1", "b0"]),
                ("b2", &["b3", "t2", "b1"]),
                ("b3", &["b2", "b0", "t3"]),
                ("t0", &["t1", "t3", "b0"]),
                ("t1", &["t2", "t0", "b1"]),
                ("t2", &["b2", "t3", "t1"]),
                ("t3", &["t2", "b3", "t0"]),
            ],
            &["b0", "b1", "b2", "b3"],
        )),
        // Poles n, s and equator cycle e0..e3; drawn with s inside the
        // equator square and n below it.
        "octahedron" => Ok(from_literals(
            &[
                ("n", &["e0", "e3", "e2", "e1"][..]),
                ("s", &["e2", "e3", "e0", "e1"]),
                ("e0", &["e1", "s", "e3", "n"]),
                ("e1", &["n", "e2", "s", "e0"]),
                ("e2", &["n", "e3", "s", "e1"]),
                ("e3", &["e2", "n", "e0", "s"]),
            ],
            &["n", "e0", "e1"],
        )),
        "icosahedron" => {
            let faces = icosahedron_faces();
            let rotation = rotations_from_faces(&faces);
            let vertices = rotation.keys().cloned().collect();
            let outer: Vec<String> = faces[0].1.clone();
            Ok(PlanarGraph::new(vertices, &rotation, &outer).expect("icosahedron is valid"))
        }
        "dodecahedron" => {
            // The dual of the icosahedron: one vertex per icosahedron face,
            // neighbors in boundary-walk order.
            let faces = icosahedron_faces();
            let mut across: BTreeMap<(&str, &str), &str> = BTreeMap::new();
            for (fname, cyc) in &faces {
                for j in 0..cyc.len() {
                    let x = cyc[j].as_str();
                    let y = cyc[(j + 1) % cyc.len()].as_str();
                    across.insert((x, y), fname);
                }
            }
            let rotation: BTreeMap<String, Vec<String>> = faces
                .iter()
                .map(|(fname, cyc)| {
                    let row = (0..cyc.len())
                        .map(|j| {
                            let x = cyc[j].as_str();
                            let y = cyc[(j + 1) % cyc.len()].as_str();
                            across[&(y, x)].to_owned()
                        })
                        .collect();
                    (fname.clone(), row)
                })
                .collect();
            let vertices = rotation.keys().cloned().collect();
            let outer: Vec<String> = (0..5).map(|i| format!("T{i}")).collect();
            Ok(PlanarGraph::new(vertices, &rotation, &outer).expect("dodecahedron is valid"))
        }
        other => Err(GenError::UnknownSolid(other.to_owned())),
    }
}

/// Random stacked triangulation on `vertices` vertices: start from the
/// tetrahedron and repeatedly split a uniformly chosen inner face with a new
/// degree-3 vertex. The outer face is never split, so it stays a triangle.
/// Stacked triangulations are simple planar triangulations, hence
/// 3-connected.
pub fn triangulation(vertices: usize, seed: u64) -> Result<PlanarGraph, GenError> {
    if vertices < 4 {
        return Err(GenError::TooFewVertices(vertices));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Tetrahedron on indices 0..4 (names "1".."4"), outer face (0, 2, 1).
    let mut rot: Vec<Vec<usize>> = vec![
        vec![1, 3, 2],
        vec![2, 3, 0],
        vec![0, 3, 1],
        vec![2, 0, 1],
    ];
    let mut inner: Vec<[usize; 3]> = vec![[0, 1, 3], [0, 3, 2], [1, 2, 3]];
    for x in 4..vertices {
        let f = rng.random_range(0..inner.len());
        let [a, b, c] = inner.swap_remove(f);
        // Splitting the face traced (a, b, c) into (a, b, x), (b, c, x),
        // (c, a, x) requires exactly these rotation edits.
        rot.push(vec![a, b, c]);
        insert_after(&mut rot[a], b, x);
        insert_after(&mut rot[b], c, x);
        insert_after(&mut rot[c], a, x);
        inner.push([a, b, x]);
        inner.push([b, c, x]);
        inner.push([c, a, x]);
    }
    let name = |i: usize| (i + 1).to_string();
    let rotation: BTreeMap<String, Vec<String>> = rot
        .iter()
        .enumerate()
        .map(|(i, row)| (name(i), row.iter().map(|&j| name(j)).collect()))
        .collect();
    let vertices_named = (0..vertices).map(name).collect();
    let outer = [name(0), name(2), name(1)];
    Ok(PlanarGraph::new(vertices_named, &rotation, &outer).expect("triangulation is valid"))
}

/// Triangulation with a fraction of its interior edges removed, producing
/// faces of mixed sizes. Each candidate edge is deleted with probability
/// `rate` provided both endpoints keep degree >= 3 and the graph stays
/// 3-connected (verified exhaustively per attempt, so this is meant for
/// small and medium instances).
pub fn sparsified(vertices: usize, seed: u64, rate: f64) -> Result<PlanarGraph, GenError> {
    if !(0.0..=1.0).contains(&rate) || rate.is_nan() {
        return Err(GenError::BadRate(rate));
    }
    let tri = triangulation(vertices, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);

    let outer_edges: Vec<(String, String)> = {
        let cyc = tri.outer_cycle();
        (0..cyc.len())
            .map(|j| {
                let a = tri.name(cyc[j]).to_owned();
                let b = tri.name(cyc[(j + 1) % cyc.len()]).to_owned();
                (a.clone().min(b.clone()), a.max(b))
            })
            .collect()
    };
    let mut candidates: Vec<(String, String)> = tri
        .edges()
        .map(|(u, v)| (tri.name(u).to_owned(), tri.name(v).to_owned()))
        .filter(|e| !outer_edges.contains(e))
        .collect();
    candidates.shuffle(&mut rng);

    let mut rotation: BTreeMap<String, Vec<String>> = tri
        .names()
        .iter()
        .map(|n| {
            let v = tri.index_of(n).unwrap();
            (
                n.clone(),
                tri.neighbors(v).iter().map(|&w| tri.name(w).to_owned()).collect(),
            )
        })
        .collect();
    let outer: Vec<String> = tri.outer_cycle().iter().map(|&v| tri.name(v).to_owned()).collect();
    let all_names: Vec<String> = tri.names().to_vec();

    for (a, b) in candidates {
        if rng.random::<f64>() >= rate {
            continue;
        }
        if rotation[&a].len() <= 3 || rotation[&b].len() <= 3 {
            continue;
        }
        let mut attempt = rotation.clone();
        attempt.get_mut(&a).unwrap().retain(|x| x != &b);
        attempt.get_mut(&b).unwrap().retain(|x| x != &a);
        // A 3-connected graph has no bridges, so the deletion keeps a valid
        // sphere embedding; it only needs to stay 3-connected.
        let g = PlanarGraph::new(all_names.clone(), &attempt, &outer)
            .expect("edge deletion keeps the embedding valid");
        if g.check_three_connected().is_ok() {
            rotation = attempt;
        }
    }
    Ok(PlanarGraph::new(all_names, &rotation, &outer).expect("sparsified graph is valid"))
}

fn insert_after(row: &mut Vec<usize>, after: usize, x: usize) {
    let p = row
        .iter()
        .position(|&y| y == after)
        .expect("face corner must be a neighbor");
    row.insert(p + 1, x);
}

fn from_literals(rotation: &[(&str, &[&str])], outer: &[&str]) -> PlanarGraph {
    let rot: BTreeMap<String, Vec<String>> = rotation
        .iter()
        .map(|(v, row)| (v.to_string(), row.iter().map(|s| s.to_string()).collect()))
        .collect();
    let vertices = rot.keys().cloned().collect();
    let outer: Vec<String> = outer.iter().map(|s| s.to_string()).collect();
    PlanarGraph::new(vertices, &rot, &outer).expect("platonic fixture is valid")
}

/// Icosahedron faces, consistently oriented: north cap T, upper and lower
/// belts UB/LB, south cap BF, with upper ring u0..u4 and lower ring l0..l4.
fn icosahedron_faces() -> Vec<(String, Vec<String>)> {
    let u = |i: usize| format!("u{}", i % 5);
    let l = |i: usize| format!("l{}", i % 5);
    let mut faces = Vec::new();
    for i in 0..5 {
        faces.push((format!("T{i}"), vec!["N".to_owned(), u(i), u(i + 1)]));
    }
    for i in 0..5 {
        faces.push((format!("UB{i}"), vec![u(i + 1), u(i), l(i)]));
    }
    for i in 0..5 {
        faces.push((format!("LB{i}"), vec![u(i + 1), l(i), l(i + 1)]));
    }
    for i in 0..5 {
        faces.push((format!("BF{i}"), vec!["S".to_owned(), l(i + 1), l(i)]));
    }
    faces
}

/// Recover each vertex's rotation from a consistently oriented face table.
/// A face corner `(a, v, b)` (enter from `a`, leave toward `b`) forces `a`
/// to follow `b` in the rotation of `v`; chaining those constraints yields
/// the full cyclic order.
fn rotations_from_faces(faces: &[(String, Vec<String>)]) -> BTreeMap<String, Vec<String>> {
    let mut succ: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    for (_, cyc) in faces {
        let k = cyc.len();
        for j in 0..k {
            let a = cyc[j].clone();
            let v = cyc[(j + 1) % k].clone();
            let b = cyc[(j + 2) % k].clone();
            let clash = succ.entry(v).or_default().insert(b, a);
            assert!(clash.is_none(), "face table is not consistently oriented");
        }
    }
    succ.into_iter()
        .map(|(v, s)| {
            let start = s.keys().next().expect("vertex with no corners").clone();
            let mut order = vec![start.clone()];
            loop {
                let next = s[order.last().unwrap()].clone();
                if next == start {
                    break;
                }
                assert!(order.len() < s.len(), "rotation does not close");
                order.push(next);
            }
            assert_eq!(order.len(), s.len(), "rotation misses neighbors");
            (v, order)
        })
        .collect()
}

impl From<GraphError> for GenError {
    fn from(_: GraphError) -> Self {
        unreachable!("generated graphs are valid by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn platonic_counts_and_connectivity() {
        let expect = [
            ("tetrahedron", 4, 6, 4, 3),
            ("cube", 8, 12, 6, 3),
            ("octahedron", 6, 12, 8, 4),
            ("dodecahedron", 20, 30, 12, 3),
            ("icosahedron", 12, 30, 20, 5),
        ];
        for (name, v, e, f, deg) in expect {
            let g = platonic(name).unwrap();
            assert_eq!(g.vertex_count(), v, "{name}");
            assert_eq!(g.edge_count(), e, "{name}");
            assert_eq!(g.face_count(), f, "{name}");
            for x in 0..g.vertex_count() as u32 {
                assert_eq!(g.degree(x), deg, "{name} vertex {}", g.name(x));
            }
            g.check_three_connected().unwrap();
        }
        assert!(matches!(platonic("teapot"), Err(GenError::UnknownSolid(_))));
    }

    #[test]
    fn dual_pair_has_transposed_face_sizes() {
        let ico = platonic("icosahedron").unwrap();
        assert!(ico.faces().iter().all(|f| f.len() == 3));
        let dod = platonic("dodecahedron").unwrap();
        assert!(dod.faces().iter().all(|f| f.len() == 5));
    }

    #[test]
    fn triangulation_is_triangulated_and_three_connected() {
        for (n, seed) in [(4, 0), (5, 1), (9, 2), (24, 3)] {
            let g = triangulation(n, seed).unwrap();
            assert_eq!(g.vertex_count(), n);
            assert_eq!(g.edge_count(), 3 * n - 6);
            assert!(g.faces().iter().all(|f| f.len() == 3));
            g.check_three_connected().unwrap();
        }
        assert!(matches!(triangulation(3, 0), Err(GenError::TooFewVertices(3))));
    }

    #[test]
    fn triangulation_is_seed_deterministic() {
        let a = triangulation(30, 42).unwrap().to_json();
        let b = triangulation(30, 42).unwrap().to_json();
        let c = triangulation(30, 43).unwrap().to_json();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn sparsified_keeps_invariants() {
        for (n, seed, rate) in [(10, 5, 0.5), (20, 6, 0.4), (30, 7, 0.25)] {
            let g = sparsified(n, seed, rate).unwrap();
            assert_eq!(g.vertex_count(), n);
            assert!(g.edge_count() < 3 * n - 6, "seed {seed} deleted nothing");
            assert!((0..n as u32).all(|v| g.degree(v) >= 3));
            g.check_three_connected().unwrap();
            assert_eq!(g.to_json(), sparsified(n, seed, rate).unwrap().to_json());
        }
        assert!(matches!(sparsified(10, 0, 1.5), Err(GenError::BadRate(_))));
    }
}
