//! Planar graphs given by rotation systems.
//!
//! A vertex's rotation is the counterclockwise cyclic order of its neighbors.
//! Faces are the orbits of the dart traversal `(u, v) -> (v, pred(v, u))`;
//! with counterclockwise rotations this walks every face with its region on
//! the left, so each directed edge lies on exactly one face. The embedding is
//! a sphere embedding iff Euler's formula `V - E + F = 2` holds, which for a
//! rotation system also forces connectivity.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

/// Vertex index; equal to the rank of the vertex name in lexicographic order.
pub type VertexId = u32;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("invalid graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format {0} (expected 1)")]
    UnsupportedFormat(u64),
    #[error("graph needs at least 4 vertices, got {0}")]
    TooSmall(usize),
    #[error("empty vertex name")]
    EmptyName,
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("missing rotation for vertex {0:?}")]
    MissingRotation(String),
    #[error("self-loop at vertex {0:?}")]
    SelfLoop(String),
    #[error("vertex {vertex:?} lists neighbor {neighbor:?} twice")]
    RepeatedNeighbor { vertex: String, neighbor: String },
    #[error("vertex {from:?} lists {to:?} but not vice versa")]
    AsymmetricAdjacency { from: String, to: String },
    #[error("not a connected sphere embedding: V={vertices} E={edges} F={faces}")]
    NotSphereEmbedding {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    #[error("vertex {vertex:?} has degree {degree}, need at least 3")]
    DegreeTooSmall { vertex: String, degree: usize },
    #[error("outer_face does not match any face of the embedding")]
    OuterFaceMismatch,
    #[error("not 3-connected: removing {{{}}} disconnects the graph", cut.join(", "))]
    NotThreeConnected { cut: Vec<String> },
}

/// A connected simple planar graph with a fixed sphere embedding and a
/// designated outer face.
///
/// Construction validates everything except 3-connectivity, which is a
/// separate (quadratic) check: simplicity, rotation symmetry, minimum degree
/// 3, Euler's formula, and that the designated outer face is a face of the
/// embedding (matched up to cyclic rotation and reversal, then stored in
/// traversal direction).
/// Map from a dart `(u, v)` to a small index: a rotation position or a
/// face number depending on use.
type DartMap = HashMap<(VertexId, VertexId), u32>;

#[derive(Debug, Clone)]
pub struct PlanarGraph {
    names: Vec<String>,
    rotation: Vec<Vec<VertexId>>,
    /// Position of `v` within `rotation[u]`, keyed by dart `(u, v)`.
    pos: DartMap,
    /// Directed face cycles in trace order. Each face starts at its first
    /// dart in (tail, rotation position) order, so indices are deterministic.
    faces: Vec<Vec<VertexId>>,
    dart_face: DartMap,
    outer: u32,
}

#[derive(Deserialize)]
struct RawGraph {
    #[serde(default = "format_one")]
    format: u64,
    vertices: Vec<String>,
    rotation: BTreeMap<String, Vec<String>>,
    outer_face: Vec<String>,
}

#[derive(Serialize)]
struct RawGraphOut<'a> {
    format: u64,
    vertices: &'a [String],
    rotation: BTreeMap<&'a str, Vec<&'a str>>,
    outer_face: Vec<&'a str>,
}

fn format_one() -> u64 {
    1
}

impl PlanarGraph {
    pub fn new(
        vertices: Vec<String>,
        rotation: &BTreeMap<String, Vec<String>>,
        outer_face: &[String],
    ) -> Result<Self, GraphError> {
        let mut names = vertices;
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0].clone()));
        }
        if names.iter().any(|n| n.is_empty()) {
            return Err(GraphError::EmptyName);
        }
        if names.len() < 4 {
            return Err(GraphError::TooSmall(names.len()));
        }
        let index: HashMap<&str, VertexId> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i as VertexId))
            .collect();
        for key in rotation.keys() {
            if !index.contains_key(key.as_str()) {
                return Err(GraphError::UnknownVertex(key.clone()));
            }
        }

        let mut rot: Vec<Vec<VertexId>> = Vec::with_capacity(names.len());
        for name in &names {
            let nbrs = rotation
                .get(name)
                .ok_or_else(|| GraphError::MissingRotation(name.clone()))?;
            if nbrs.len() < 3 {
                return Err(GraphError::DegreeTooSmall {
                    vertex: name.clone(),
                    degree: nbrs.len(),
                });
            }
            let row = nbrs
                .iter()
                .map(|nb| {
                    index
                        .get(nb.as_str())
                        .copied()
                        .ok_or_else(|| GraphError::UnknownVertex(nb.clone()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            rot.push(row);
        }

        let mut pos = HashMap::with_capacity(2 * rot.iter().map(Vec::len).sum::<usize>());
        for (u, row) in rot.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v as usize == u {
                    return Err(GraphError::SelfLoop(names[u].clone()));
                }
                if pos.insert((u as VertexId, v), j as u32).is_some() {
                    return Err(GraphError::RepeatedNeighbor {
                        vertex: names[u].clone(),
                        neighbor: names[v as usize].clone(),
                    });
                }
            }
        }
        for &(u, v) in pos.keys() {
            if !pos.contains_key(&(v, u)) {
                return Err(GraphError::AsymmetricAdjacency {
                    from: names[u as usize].clone(),
                    to: names[v as usize].clone(),
                });
            }
        }

        let (faces, dart_face) = trace_faces(&rot, &pos);
        let edges = pos.len() / 2;
        if names.len() + faces.len() != edges + 2 {
            return Err(GraphError::NotSphereEmbedding {
                vertices: names.len(),
                edges,
                faces: faces.len(),
            });
        }

        let outer_ids = outer_face
            .iter()
            .map(|s| {
                index
                    .get(s.as_str())
                    .copied()
                    .ok_or_else(|| GraphError::UnknownVertex(s.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let outer = find_face_matching(&faces, &outer_ids).ok_or(GraphError::OuterFaceMismatch)?;

        Ok(Self {
            names,
            rotation: rot,
            pos,
            faces,
            dart_face,
            outer,
        })
    }

    pub fn from_json(s: &str) -> Result<Self, GraphError> {
        let raw: RawGraph = serde_json::from_str(s)?;
        if raw.format != 1 {
            return Err(GraphError::UnsupportedFormat(raw.format));
        }
        Self::new(raw.vertices, &raw.rotation, &raw.outer_face)
    }

    pub fn to_json(&self) -> String {
        let rotation = self
            .names
            .iter()
            .enumerate()
            .map(|(u, n)| {
                let row = self.rotation[u].iter().map(|&v| self.name(v)).collect();
                (n.as_str(), row)
            })
            .collect();
        let out = RawGraphOut {
            format: 1,
            vertices: &self.names,
            rotation,
            outer_face: self.outer_cycle().iter().map(|&v| self.name(v)).collect(),
        };
        serde_json::to_string_pretty(&out).expect("graph serialization cannot fail")
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.pos.len() / 2
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<VertexId> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .ok()
            .map(|i| i as VertexId)
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v as usize].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.pos.contains_key(&(u, v))
    }

    /// Undirected edges as `(u, v)` with `u < v`, in deterministic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.rotation.len() as VertexId).flat_map(move |u| {
            self.rotation[u as usize]
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Faces as directed vertex cycles with the face region on the left.
    pub fn faces(&self) -> &[Vec<VertexId>] {
        &self.faces
    }

    pub fn outer_face(&self) -> u32 {
        self.outer
    }

    /// The outer face in traversal direction (its region on the left, which
    /// for the outer face is the unbounded side).
    pub fn outer_cycle(&self) -> &[VertexId] {
        &self.faces[self.outer as usize]
    }

    /// The unique face containing the directed edge `(u, v)`.
    pub fn face_of_dart(&self, u: VertexId, v: VertexId) -> Option<u32> {
        self.dart_face.get(&(u, v)).copied()
    }

    /// Neighbor immediately before `u` in the rotation of `v`.
    pub fn pred_neighbor(&self, v: VertexId, u: VertexId) -> Option<VertexId> {
        let j = *self.pos.get(&(v, u))? as usize;
        let row = &self.rotation[v as usize];
        Some(row[(j + row.len() - 1) % row.len()])
    }

    /// Neighbor immediately after `u` in the rotation of `v`.
    pub fn succ_neighbor(&self, v: VertexId, u: VertexId) -> Option<VertexId> {
        let j = *self.pos.get(&(v, u))? as usize;
        let row = &self.rotation[v as usize];
        Some(row[(j + 1) % row.len()])
    }

    /// Exhaustive 3-connectivity test: every pair removal must leave the
    /// graph connected. For `|V| >= 4` this subsumes 1-cuts (a cut vertex
    /// extends to a cut pair). Quadratic in `|V|`; callers working with
    /// generated graphs that are 3-connected by construction may skip it.
    pub fn check_three_connected(&self) -> Result<(), GraphError> {
        let n = self.names.len() as VertexId;
        for a in 0..n {
            for b in (a + 1)..n {
                if !self.connected_without(a, b) {
                    return Err(GraphError::NotThreeConnected {
                        cut: vec![self.name(a).to_owned(), self.name(b).to_owned()],
                    });
                }
            }
        }
        Ok(())
    }

    fn connected_without(&self, a: VertexId, b: VertexId) -> bool {
        let n = self.names.len();
        let mut seen = vec![false; n];
        seen[a as usize] = true;
        seen[b as usize] = true;
        let start = (0..n as VertexId)
            .find(|&v| v != a && v != b)
            .expect("graph has at least 4 vertices");
        seen[start as usize] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == n - 2
    }
}

fn trace_faces(
    rot: &[Vec<VertexId>],
    pos: &DartMap,
) -> (Vec<Vec<VertexId>>, DartMap) {
    let mut faces = Vec::new();
    let mut dart_face = HashMap::with_capacity(pos.len());
    for u in 0..rot.len() as VertexId {
        for &v in &rot[u as usize] {
            if dart_face.contains_key(&(u, v)) {
                continue;
            }
            let fi = faces.len() as u32;
            let mut cycle = Vec::new();
            let (mut a, mut b) = (u, v);
            // `(a, b) -> (b, pred(b, a))` is a bijection on darts, so the
            // orbit returns to the start.
            loop {
                cycle.push(a);
                dart_face.insert((a, b), fi);
                let row = &rot[b as usize];
                let j = pos[&(b, a)] as usize;
                let c = row[(j + row.len() - 1) % row.len()];
                a = b;
                b = c;
                if (a, b) == (u, v) {
                    break;
                }
            }
            faces.push(cycle);
        }
    }
    (faces, dart_face)
}

fn cyclic_eq(a: &[VertexId], b: &[VertexId]) -> bool {
    a.len() == b.len()
        && !a.is_empty()
        && (0..a.len()).any(|s| (0..a.len()).all(|i| a[(s + i) % a.len()] == b[i]))
}

fn find_face_matching(faces: &[Vec<VertexId>], cycle: &[VertexId]) -> Option<u32> {
    if cycle.len() < 3 {
        return None;
    }
    let rev: Vec<VertexId> = cycle.iter().rev().copied().collect();
    faces
        .iter()
        .position(|f| cyclic_eq(f, cycle) || cyclic_eq(f, &rev))
        .map(|i| i as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_parts() -> (Vec<String>, BTreeMap<String, Vec<String>>, Vec<String>) {
        let vertices = vec!["1", "2", "3", "4"];
        let rotation = [
            ("1", vec!["2", "4", "3"]),
            ("2", vec!["3", "4", "1"]),
            ("3", vec!["1", "4", "2"]),
            ("4", vec!["3", "1", "2"]),
        ];
        let rot = rotation
            .into_iter()
            .map(|(k, v)| (k.to_owned(), v.into_iter().map(str::to_owned).collect()))
            .collect();
        (
            vertices.into_iter().map(str::to_owned).collect(),
            rot,
            vec!["1".to_owned(), "2".to_owned(), "3".to_owned()],
        )
    }

    fn k4() -> PlanarGraph {
        let (v, r, o) = k4_parts();
        PlanarGraph::new(v, &r, &o).unwrap()
    }

    #[test]
    fn k4_faces_traced_in_deterministic_order() {
        let g = k4();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        let by_name = |f: &[VertexId]| f.iter().map(|&v| g.name(v)).collect::<Vec<_>>();
        let faces: Vec<Vec<&str>> = g.faces().iter().map(|f| by_name(f)).collect();
        assert_eq!(
            faces,
            vec![
                vec!["1", "2", "4"],
                vec!["1", "4", "3"],
                vec!["1", "3", "2"],
                vec!["2", "3", "4"],
            ]
        );
        // The outer face was designated as 1,2,3 and matches face (1,3,2)
        // after reversal.
        assert_eq!(g.outer_face(), 2);
    }

    #[test]
    fn k4_dart_faces_and_rotation_neighbors() {
        let g = k4();
        let v1 = g.index_of("1").unwrap();
        let v2 = g.index_of("2").unwrap();
        let v3 = g.index_of("3").unwrap();
        let v4 = g.index_of("4").unwrap();
        assert_eq!(g.face_of_dart(v1, v2), Some(0));
        assert_eq!(g.face_of_dart(v2, v1), Some(2));
        assert_eq!(g.face_of_dart(v2, v3), Some(3));
        assert_eq!(g.pred_neighbor(v1, v2), Some(v3));
        assert_eq!(g.succ_neighbor(v1, v2), Some(v4));
        assert_eq!(g.pred_neighbor(v4, v3), Some(v2));
        assert!(g.has_edge(v1, v4));
        assert_eq!(g.edges().count(), 6);
    }

    #[test]
    fn k4_is_three_connected() {
        k4().check_three_connected().unwrap();
    }

    #[test]
    fn json_round_trip_is_stable() {
        let g = k4();
        let s = g.to_json();
        let h = PlanarGraph::from_json(&s).unwrap();
        assert_eq!(h.to_json(), s);
        assert_eq!(h.outer_face(), g.outer_face());
    }

    #[test]
    fn missing_format_defaults_to_one() {
        let s = r#"{
            "vertices": ["1", "2", "3", "4"],
            "rotation": {
                "1": ["2", "4", "3"],
                "2": ["3", "4", "1"],
                "3": ["1", "4", "2"],
                "4": ["3", "1", "2"]
            },
            "outer_face": ["1", "2", "3"]
        }"#;
        PlanarGraph::from_json(s).unwrap();
    }

    #[test]
    fn rejects_asymmetric_rotation() {
        let (v, mut r, o) = k4_parts();
        r.get_mut("1").unwrap()[0] = "3".to_owned();
        // Now vertex 1 lists 3 twice and never lists 2.
        let err = PlanarGraph::new(v, &r, &o).unwrap_err();
        assert!(matches!(err, GraphError::RepeatedNeighbor { .. }));
    }

    #[test]
    fn rejects_non_spherical_rotation() {
        // Reversing one vertex's rotation turns the K4 sphere embedding into
        // a torus embedding with 2 faces.
        let (v, mut r, o) = k4_parts();
        *r.get_mut("4").unwrap() = vec!["1".into(), "3".into(), "2".into()];
        let err = PlanarGraph::new(v, &r, &o).unwrap_err();
        assert!(matches!(
            err,
            GraphError::NotSphereEmbedding {
                vertices: 4,
                edges: 6,
                faces: 2
            }
        ));
    }

    #[test]
    fn outer_face_matches_in_either_direction() {
        // (1, 2, 4) is traced forward as face 0; (1, 2, 3) only matches the
        // traced face (1, 3, 2) after reversal; a non-face never matches.
        let (v, r, _) = k4_parts();
        let g = PlanarGraph::new(v, &r, &["1".into(), "2".into(), "4".into()]).unwrap();
        assert_eq!(g.outer_face(), 0);
        let (v, r, _) = k4_parts();
        let err = PlanarGraph::new(
            v,
            &r,
            &["1".to_owned(), "2".to_owned(), "3".to_owned(), "4".to_owned()],
        )
        .unwrap_err();
        assert!(matches!(err, GraphError::OuterFaceMismatch));
    }

    #[test]
    fn detects_two_cut() {
        // Two diamonds glued along the edge {a, b}: removing that pair
        // leaves {p, q} and {r, s} in separate components. Rotations come
        // from the drawing with a=(0,0), b=(4,0), q=(2,1), p=(2,2),
        // r=(2,-1), s=(2,-2).
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
        let outer = vec!["a".to_owned(), "p".to_owned(), "b".to_owned(), "s".to_owned()];
        let g = match PlanarGraph::new(vertices, &rotation, &outer) {
            Ok(g) => g,
            Err(e) => panic!("fixture should embed: {e}"),
        };
        let err = g.check_three_connected().unwrap_err();
        match err {
            GraphError::NotThreeConnected { cut } => {
                assert_eq!(cut, vec!["a".to_owned(), "b".to_owned()]);
            }
            other => panic!("unexpected error {other}"),
        }
    }
}
