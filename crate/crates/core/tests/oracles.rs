//! Cross-checks against independent naive implementations: a max-flow
//! connectivity oracle, a face recomputation from rotation lists, a radial
//! incidence oracle, and a frontier simulation for canonical labelings.

use dualgrid::generate::{platonic, sparsified, triangulation, PLATONIC_NAMES};
use dualgrid::graph::PlanarGraph;
use dualgrid::labeling::{find_labeling, Group};
use dualgrid::quad::{BendTarget, NodeKind, QuadGraph};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Count vertex-disjoint s-t paths up to `limit` by unit-capacity max flow
/// on the vertex-split graph (in/out node per vertex, unit arc between).
fn disjoint_paths(adj: &[Vec<usize>], s: usize, t: usize, limit: usize) -> usize {
    let n = adj.len();
    let idx_in = |v: usize| 2 * v;
    let idx_out = |v: usize| 2 * v + 1;
    let mut cap = vec![vec![0i32; 2 * n]; 2 * n];
    for v in 0..n {
        cap[idx_in(v)][idx_out(v)] = if v == s || v == t { limit as i32 } else { 1 };
        for &w in &adj[v] {
            cap[idx_out(v)][idx_in(w)] = 1;
        }
    }
    let (src, dst) = (idx_out(s), idx_in(t));
    let mut flow = 0;
    while flow < limit {
        let mut prev = vec![usize::MAX; 2 * n];
        prev[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            for y in 0..2 * n {
                if cap[x][y] > 0 && prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[dst] == usize::MAX {
            break;
        }
        let mut y = dst;
        while y != src {
            let x = prev[y];
            cap[x][y] -= 1;
            cap[y][x] += 1;
            y = x;
        }
        flow += 1;
    }
    flow
}

/// Menger: 3-connected iff every non-adjacent pair has 3 disjoint paths
/// (complete graphs on >= 4 vertices are trivially 3-connected).
fn flow_says_three_connected(g: &PlanarGraph) -> bool {
    let n = g.vertex_count();
    if n < 4 {
        return false;
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| g.neighbors(v as u32).iter().map(|&w| w as usize).collect())
        .collect();
    let mut tested_any = false;
    for s in 0..n {
        for t in s + 1..n {
            if adj[s].contains(&t) {
                continue;
            }
            tested_any = true;
            if disjoint_paths(&adj, s, t, 3) < 3 {
                return false;
            }
        }
    }
    tested_any || n >= 4
}

/// Recompute the face cycles of an embedding straight from the rotation
/// lists, independent of the library's dart bookkeeping. Each face is
/// canonicalized over rotation and reflection.
fn faces_from_rotations(g: &PlanarGraph) -> BTreeSet<Vec<String>> {
    let n = g.vertex_count() as u32;
    let succ = |v: u32, u: u32| -> u32 {
        let rot = g.neighbors(v);
        let i = rot.iter().position(|&x| x == u).expect("dart exists");
        rot[(i + 1) % rot.len()]
    };
    let mut seen: BTreeSet<(u32, u32)> = BTreeSet::new();
    let mut faces = BTreeSet::new();
    for u in 0..n {
        for &v in g.neighbors(u) {
            if !seen.insert((u, v)) {
                continue;
            }
            let mut cycle = vec![u];
            let (mut a, mut b) = (u, v);
            while b != u {
                cycle.push(b);
                seen.insert((a, b));
                let c = succ(b, a);
                a = b;
                b = c;
            }
            seen.insert((a, b));
            faces.insert(canonical_cycle(
                &cycle.iter().map(|&x| g.name(x).to_owned()).collect::<Vec<_>>(),
            ));
        }
    }
    faces
}

/// Smallest rotation of the cycle or its reversal.
fn canonical_cycle(cycle: &[String]) -> Vec<String> {
    let mut best: Option<Vec<String>> = None;
    let k = cycle.len();
    for rev in [false, true] {
        let base: Vec<String> = if rev {
            cycle.iter().rev().cloned().collect()
        } else {
            cycle.to_vec()
        };
        for s in 0..k {
            let mut rot: Vec<String> = base[s..].to_vec();
            rot.extend_from_slice(&base[..s]);
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.expect("nonempty cycle")
}

fn small_corpus() -> Vec<(String, PlanarGraph)> {
    let mut out = Vec::new();
    for name in PLATONIC_NAMES {
        out.push((name.to_string(), platonic(name).unwrap()));
    }
    for seed in 0..4 {
        out.push((
            format!("triangulation-{seed}"),
            triangulation(8 + seed as usize, seed).unwrap(),
        ));
        out.push((
            format!("sparsified-{seed}"),
            sparsified(10 + seed as usize, seed, 0.35).unwrap(),
        ));
    }
    out
}

fn two_cut_fixture() -> PlanarGraph {
    // Two diamonds glued along {a, b}; removing that pair disconnects.
    let vertices: Vec<String> = ["a", "b", "p", "q", "r", "s"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let rotation: BTreeMap<String, Vec<String>> = [
        ("a", vec!["b", "q", "p", "s", "r"]),
        ("b", vec!["p", "q", "a", "r", "s"]),
        ("p", vec!["a", "q", "b"]),
        ("q", vec!["p", "a", "b"]),
        ("r", vec!["b", "a", "s"]),
        ("s", vec!["b", "r", "a"]),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_owned(), v.into_iter().map(str::to_owned).collect()))
    .collect();
    let outer = ["a", "p", "b", "s"].map(str::to_owned);
    PlanarGraph::new(vertices, &rotation, &outer).unwrap()
}

#[test]
fn connectivity_check_matches_the_flow_oracle() {
    for (label, g) in small_corpus() {
        assert!(
            flow_says_three_connected(&g),
            "{label}: oracle disagrees with generator guarantee"
        );
        assert!(
            g.check_three_connected().is_ok(),
            "{label}: library disagrees with oracle"
        );
    }
    let bad = two_cut_fixture();
    assert!(!flow_says_three_connected(&bad));
    assert!(bad.check_three_connected().is_err());
}

#[test]
fn face_traversal_matches_rotation_list_walk() {
    for (label, g) in small_corpus() {
        let oracle = faces_from_rotations(&g);
        let library: BTreeSet<Vec<String>> = g
            .faces()
            .iter()
            .map(|cyc| {
                canonical_cycle(&cyc.iter().map(|&v| g.name(v).to_owned()).collect::<Vec<_>>())
            })
            .collect();
        assert_eq!(oracle, library, "{label}: face sets differ");
        assert_eq!(
            g.faces().len(),
            g.edge_count() + 2 - g.vertex_count(),
            "{label}: Euler count"
        );
    }
}

#[test]
fn radial_graph_matches_the_incidence_oracle() {
    for (label, g) in small_corpus() {
        let q = QuadGraph::build(g.clone(), BendTarget::Primal).unwrap();
        let r = q.radial();
        assert_eq!(r.vertex_count(), g.vertex_count() + g.faces().len());

        // Every radial edge is one primal-dual incidence; collect them.
        let mut incidences: BTreeSet<(u32, u32)> = BTreeSet::new();
        for (x, y) in r.edges() {
            let pair = match (q.kind(x), q.kind(y)) {
                (NodeKind::Primal(v), NodeKind::Dual(f)) => (v, f),
                (NodeKind::Dual(f), NodeKind::Primal(v)) => (v, f),
                _ => panic!("{label}: radial edge within one class"),
            };
            assert!(incidences.insert(pair), "{label}: duplicate incidence");
        }
        let expected: BTreeSet<(u32, u32)> = g
            .faces()
            .iter()
            .enumerate()
            .flat_map(|(f, cyc)| cyc.iter().map(move |&v| (v, f as u32)))
            .collect();
        assert_eq!(incidences, expected, "{label}: incidence sets differ");
        assert_eq!(r.edge_count(), expected.len(), "{label}: edge count");

        // One quadrilateral face per primal edge, bounded by the edge's
        // endpoints and the duals of its two sides.
        assert_eq!(r.faces().len(), g.edge_count(), "{label}: face count");
        assert!(r.faces().iter().all(|c| c.len() == 4), "{label}: non-quad");
        for (x, y) in g.edges() {
            let (fa, fb) = q
                .dual_counterpart(x, y)
                .map(|(da, db)| match (q.kind(da), q.kind(db)) {
                    (NodeKind::Dual(fa), NodeKind::Dual(fb)) => (fa, fb),
                    _ => panic!("{label}: counterpart not dual"),
                })
                .unwrap_or_else(|| panic!("{label}: edge without dual counterpart"));
            assert_ne!(fa, fb, "{label}: bridge edge");
            for f in [fa, fb] {
                let cyc = &g.faces()[f as usize];
                let pos = cyc.iter().position(|&v| v == x).unwrap();
                let k = cyc.len();
                assert!(
                    cyc[(pos + 1) % k] == y || cyc[(pos + k - 1) % k] == y,
                    "{label}: face {f} does not walk edge ({x},{y})"
                );
            }
        }

        // The radial graph of a 3-connected planar graph is 3-connected;
        // check the small ones with the flow oracle.
        if r.vertex_count() <= 40 {
            assert!(flow_says_three_connected(r), "{label}: radial not 3-conn");
            assert!(r.check_three_connected().is_ok(), "{label}: library");
        }
    }
}

/// Simulate the frontier from the group sequence alone and check every
/// structural property placement relies on.
fn simulate_frontier(q: &QuadGraph, label: &str) {
    let lab = find_labeling(q).unwrap();
    let r = q.radial();
    let roles = q.role_order();
    let (a, b) = match lab.group(1) {
        Group::Pair(a, b) => (a, b),
        Group::Single(_) => panic!("{label}: group 1 not a pair"),
    };
    assert_eq!([a, b], [roles[0], roles[1]], "{label}: base pair");

    let mut placed = vec![false; r.vertex_count()];
    placed[a as usize] = true;
    placed[b as usize] = true;
    let mut frontier = vec![a, b];
    for k in 2..=lab.m() {
        match lab.group(k) {
            Group::Single(z) => {
                let pos: Vec<usize> = (0..frontier.len())
                    .filter(|&i| r.has_edge(z, frontier[i]))
                    .collect();
                assert!(pos.len() >= 2, "{label} k={k}: singleton needs 2 anchors");
                let (p, qq) = (pos[0], *pos.last().unwrap());
                // Placed neighbors sit at every other slot of the covered run.
                assert_eq!(
                    pos,
                    (p..=qq).step_by(2).collect::<Vec<_>>(),
                    "{label} k={k}: anchors not alternating"
                );
                // Skipped-over vertices are finished: all neighbors placed.
                for i in (p + 1..qq).step_by(2) {
                    let c = frontier[i];
                    assert!(
                        r.neighbors(c).iter().all(|&w| placed[w as usize]),
                        "{label} k={k}: covered vertex still has pending edges"
                    );
                }
                placed[z as usize] = true;
                frontier.splice(p + 1..qq, [z]);
            }
            Group::Pair(z0, z1) => {
                assert!(r.has_edge(z0, z1), "{label} k={k}: pair not adjacent");
                let anchor = |z: u32| {
                    let pos: Vec<usize> = (0..frontier.len())
                        .filter(|&i| r.has_edge(z, frontier[i]))
                        .collect();
                    assert_eq!(pos.len(), 1, "{label} k={k}: pair member anchors");
                    pos[0]
                };
                let (p0, p1) = (anchor(z0), anchor(z1));
                assert_eq!(p1, p0 + 1, "{label} k={k}: pair anchors not consecutive");
                placed[z0 as usize] = true;
                placed[z1 as usize] = true;
                frontier.splice(p0 + 1..p0 + 1, [z0, z1]);
            }
        }
    }
    assert!(placed.iter().all(|&x| x), "{label}: unplaced vertices remain");
    assert_eq!(
        frontier,
        vec![roles[0], roles[3], roles[2], roles[1]],
        "{label}: final frontier"
    );
}

#[test]
fn labelings_survive_a_frontier_simulation() {
    for (label, g) in small_corpus() {
        for bend in [BendTarget::Primal, BendTarget::Dual] {
            let q = QuadGraph::build(g.clone(), bend).unwrap();
            simulate_frontier(&q, &label);
        }
    }
    for seed in 10..30 {
        let g = triangulation(4 + (seed as usize * 5) % 40, seed).unwrap();
        let q = QuadGraph::build(g, BendTarget::Primal).unwrap();
        simulate_frontier(&q, &format!("large-{seed}"));
    }
}
