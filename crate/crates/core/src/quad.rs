//! Radial graph construction: the vertex-face incidence graph of a planar
//! graph, which is a quadrangulation, plus the outer-quad selection that
//! seeds labeling and placement.
//!
//! For a graph with `V` vertices and `F` faces the radial graph has
//! `n = V + F` vertices, `2n - 4` edges and `n - 2` faces, every face a
//! quadrilateral: the quad of primal edge `{a, b}` is traversed
//! `a -> dual(right face) -> b -> dual(left face)`. Original edges of the
//! input are not edges here; each survives as the diagonal pair of one quad.

use crate::graph::{GraphError, PlanarGraph, VertexId};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuadError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cannot name dual vertices: both the f<k> and f#<k> schemes collide with input names")]
    DualNameClash,
    #[error("edge {a:?},{b:?} is not an edge of the outer face")]
    NotOuterEdge { a: String, b: String },
    #[error("input is not 3-connected: radial graph has a face of length {0}, expected 4")]
    NotQuadrangulation(usize),
}

/// Which of the two corresponding outer-quad diagonals is drawn with a bend.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BendTarget {
    Primal,
    Dual,
}

impl BendTarget {
    pub fn as_str(self) -> &'static str {
        match self {
            BendTarget::Primal => "primal",
            BendTarget::Dual => "dual",
        }
    }
}

/// What a radial-graph vertex stands for: a vertex of the input graph or one
/// of its faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Primal(VertexId),
    Dual(u32),
}

#[derive(Debug)]
pub struct QuadGraph {
    g1: PlanarGraph,
    g2: PlanarGraph,
    kind: Vec<NodeKind>,
    primal_in_g2: Vec<VertexId>,
    dual_in_g2: Vec<VertexId>,
    // Outer quad (u, v, w, w'): u, w primal endpoints of an outer edge of
    // g1; v the dual of the outer face; w' the dual of the other face at
    // that edge. Stored in g2 ids, in the traversal direction of the quad.
    u: VertexId,
    v: VertexId,
    w: VertexId,
    wp: VertexId,
    bend: BendTarget,
}

impl QuadGraph {
    /// Build the radial graph, choosing the outer quad over the
    /// lexicographically least outer edge of `g1`.
    pub fn build(g1: PlanarGraph, bend: BendTarget) -> Result<Self, QuadError> {
        Self::construct(g1, bend, None)
    }

    /// Build the radial graph with the outer quad over a caller-chosen outer
    /// edge `{a, b}` of `g1`.
    pub fn build_with_edge(
        g1: PlanarGraph,
        bend: BendTarget,
        a: &str,
        b: &str,
    ) -> Result<Self, QuadError> {
        Self::construct(g1, bend, Some((a, b)))
    }

    fn construct(
        g1: PlanarGraph,
        bend: BendTarget,
        edge: Option<(&str, &str)>,
    ) -> Result<Self, QuadError> {
        let dual_names = dual_names(&g1)?;

        // Around a primal vertex: the faces of its darts, in rotation order.
        // Around a dual vertex: the face's boundary cycle. Both orders are
        // inherited from g1, so the radial rotation system is consistent.
        let mut rotation: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for p in 0..g1.vertex_count() as VertexId {
            let row = g1
                .neighbors(p)
                .iter()
                .map(|&nb| {
                    let f = g1.face_of_dart(p, nb).expect("dart of a valid graph");
                    dual_names[f as usize].clone()
                })
                .collect();
            rotation.insert(g1.name(p).to_owned(), row);
        }
        for (k, face) in g1.faces().iter().enumerate() {
            let row = face.iter().map(|&x| g1.name(x).to_owned()).collect();
            rotation.insert(dual_names[k].clone(), row);
        }
        let vertices: Vec<String> = rotation.keys().cloned().collect();

        // The outer quad sits over an outer edge of g1. The outer cycle
        // contains exactly one dart per outer edge; name its head u and its
        // tail w, so the radial quad over {u, w} is traversed (u, v, w, w').
        let o = g1.outer_cycle().to_vec();
        let dart = |j: usize| (o[j], o[(j + 1) % o.len()]);
        let picked = match edge {
            Some((a, b)) => (0..o.len())
                .find(|&j| {
                    let (x, y) = dart(j);
                    (g1.name(x) == a && g1.name(y) == b) || (g1.name(x) == b && g1.name(y) == a)
                })
                .ok_or_else(|| QuadError::NotOuterEdge {
                    a: a.to_owned(),
                    b: b.to_owned(),
                })?,
            None => (0..o.len())
                .min_by_key(|&j| {
                    let (x, y) = dart(j);
                    let (x, y) = (g1.name(x), g1.name(y));
                    (x.min(y), x.max(y))
                })
                .expect("outer cycle is nonempty"),
        };
        let (w1, u1) = dart(picked);
        let v_face = g1.outer_face();
        let wp_face = g1
            .face_of_dart(u1, w1)
            .expect("outer edge exists in both directions");

        let outer_quad_names = [
            g1.name(u1).to_owned(),
            dual_names[v_face as usize].clone(),
            g1.name(w1).to_owned(),
            dual_names[wp_face as usize].clone(),
        ];
        let g2 = PlanarGraph::new(vertices, &rotation, &outer_quad_names)?;
        if let Some(f) = g2.faces().iter().find(|f| f.len() != 4) {
            return Err(QuadError::NotQuadrangulation(f.len()));
        }

        let primal_in_g2: Vec<VertexId> = (0..g1.vertex_count() as VertexId)
            .map(|p| g2.index_of(g1.name(p)).expect("primal name is in g2"))
            .collect();
        let dual_in_g2: Vec<VertexId> = dual_names
            .iter()
            .map(|n| g2.index_of(n).expect("dual name is in g2"))
            .collect();
        let mut kind = vec![NodeKind::Primal(0); g2.vertex_count()];
        for (p, &x) in primal_in_g2.iter().enumerate() {
            kind[x as usize] = NodeKind::Primal(p as VertexId);
        }
        for (f, &x) in dual_in_g2.iter().enumerate() {
            kind[x as usize] = NodeKind::Dual(f as u32);
        }

        let n = g2.vertex_count();
        assert_eq!(n, g1.vertex_count() + g1.face_count());
        assert_eq!(g2.edge_count(), 2 * n - 4);
        assert_eq!(g2.face_count(), n - 2);

        let u = primal_in_g2[u1 as usize];
        let w = primal_in_g2[w1 as usize];
        let v = dual_in_g2[v_face as usize];
        let wp = dual_in_g2[wp_face as usize];
        Ok(Self {
            g1,
            g2,
            kind,
            primal_in_g2,
            dual_in_g2,
            u,
            v,
            w,
            wp,
            bend,
        })
    }

    pub fn primal(&self) -> &PlanarGraph {
        &self.g1
    }

    pub fn radial(&self) -> &PlanarGraph {
        &self.g2
    }

    /// Vertex count of the radial graph: input vertices plus input faces.
    pub fn n(&self) -> usize {
        self.g2.vertex_count()
    }

    pub fn bend(&self) -> BendTarget {
        self.bend
    }

    pub fn kind(&self, x: VertexId) -> NodeKind {
        self.kind[x as usize]
    }

    pub fn of_primal(&self, p: VertexId) -> VertexId {
        self.primal_in_g2[p as usize]
    }

    pub fn of_face(&self, f: u32) -> VertexId {
        self.dual_in_g2[f as usize]
    }

    /// Outer quad as (u, v, w, w').
    pub fn outer_quad(&self) -> (VertexId, VertexId, VertexId, VertexId) {
        (self.u, self.v, self.w, self.wp)
    }

    /// The outer quad read in placement-role order (A, B, C, D): A and B
    /// become the base corners, D is placed last. The bent edge is always
    /// {A, C}; its straight counterpart is the diagonal {B, D}.
    pub fn role_order(&self) -> [VertexId; 4] {
        match self.bend {
            BendTarget::Primal => [self.u, self.v, self.w, self.wp],
            BendTarget::Dual => [self.v, self.w, self.wp, self.u],
        }
    }

    /// Endpoints of the edge drawn with one bend, as radial-graph ids.
    pub fn bent_pair(&self) -> (VertexId, VertexId) {
        match self.bend {
            BendTarget::Primal => (self.u, self.w),
            BendTarget::Dual => (self.v, self.wp),
        }
    }

    /// The dual edge corresponding to primal edge `{a, b}` (g1 ids): the
    /// radial-graph ids of the duals of the two faces at that edge.
    pub fn dual_counterpart(&self, a: VertexId, b: VertexId) -> Option<(VertexId, VertexId)> {
        let left = self.g1.face_of_dart(a, b)?;
        let right = self.g1.face_of_dart(b, a)?;
        Some((
            self.dual_in_g2[left as usize],
            self.dual_in_g2[right as usize],
        ))
    }

    /// The primal edge corresponding to the dual edge between faces `fa` and
    /// `fb` (g1 face indices): the unique g1 edge they share.
    pub fn primal_counterpart(&self, fa: u32, fb: u32) -> Option<(VertexId, VertexId)> {
        let cyc = &self.g1.faces()[fa as usize];
        (0..cyc.len()).find_map(|j| {
            let (x, y) = (cyc[j], cyc[(j + 1) % cyc.len()]);
            (self.g1.face_of_dart(y, x) == Some(fb)).then_some((x, y))
        })
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            format: u64,
            vertices: &'a [String],
            rotation: BTreeMap<&'a str, Vec<&'a str>>,
            outer_face: Vec<&'a str>,
            tags: BTreeMap<&'a str, &'static str>,
            outer_quad: [&'a str; 4],
            bend_on: &'static str,
        }
        let g2 = &self.g2;
        let rotation = (0..g2.vertex_count() as VertexId)
            .map(|x| {
                (
                    g2.name(x),
                    g2.neighbors(x).iter().map(|&y| g2.name(y)).collect(),
                )
            })
            .collect();
        let tags = (0..g2.vertex_count() as VertexId)
            .map(|x| {
                let t = match self.kind[x as usize] {
                    NodeKind::Primal(_) => "primal",
                    NodeKind::Dual(_) => "dual",
                };
                (g2.name(x), t)
            })
            .collect();
        let out = Out {
            format: 1,
            vertices: g2.names(),
            rotation,
            outer_face: g2.outer_cycle().iter().map(|&x| g2.name(x)).collect(),
            tags,
            outer_quad: [
                g2.name(self.u),
                g2.name(self.v),
                g2.name(self.w),
                g2.name(self.wp),
            ],
            bend_on: self.bend.as_str(),
        };
        serde_json::to_string_pretty(&out).expect("quad graph serialization cannot fail")
    }
}

/// Deterministic dual vertex names: `f<face index>`, falling back to
/// `f#<face index>` when the input already uses such a name.
fn dual_names(g1: &PlanarGraph) -> Result<Vec<String>, QuadError> {
    for prefix in ["f", "f#"] {
        let names: Vec<String> = (0..g1.face_count()).map(|k| format!("{prefix}{k}")).collect();
        if names.iter().all(|n| g1.index_of(n).is_none()) {
            return Ok(names);
        }
    }
    Err(QuadError::DualNameClash)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::platonic;

    fn k4_quad() -> QuadGraph {
        QuadGraph::build(platonic("tetrahedron").unwrap(), BendTarget::Primal).unwrap()
    }

    #[test]
    fn k4_radial_structure() {
        let q = k4_quad();
        let g2 = q.radial();
        assert_eq!(q.n(), 8);
        assert_eq!(g2.edge_count(), 12);
        assert_eq!(g2.face_count(), 6);
        assert!(g2.faces().iter().all(|f| f.len() == 4));
        let row = |name: &str| {
            let x = g2.index_of(name).unwrap();
            g2.neighbors(x).iter().map(|&y| g2.name(y)).collect::<Vec<_>>()
        };
        // Faces of the tetrahedron trace as f0=(1,2,4), f1=(1,4,3),
        // f2=(1,3,2) outer, f3=(2,3,4).
        assert_eq!(row("1"), ["f0", "f1", "f2"]);
        assert_eq!(row("2"), ["f3", "f0", "f2"]);
        assert_eq!(row("3"), ["f1", "f3", "f2"]);
        assert_eq!(row("4"), ["f1", "f0", "f3"]);
        assert_eq!(row("f0"), ["1", "2", "4"]);
        assert_eq!(row("f2"), ["1", "3", "2"]);
    }

    #[test]
    fn k4_outer_quad_over_least_outer_edge() {
        let q = k4_quad();
        let g2 = q.radial();
        let (u, v, w, wp) = q.outer_quad();
        assert_eq!(
            [g2.name(u), g2.name(v), g2.name(w), g2.name(wp)],
            ["1", "f2", "2", "f0"]
        );
        // The designated outer face of g2 is exactly that quad, in
        // traversal direction.
        let names: Vec<&str> = g2.outer_cycle().iter().map(|&x| g2.name(x)).collect();
        assert_eq!(names, ["1", "f2", "2", "f0"]);
        assert!(matches!(q.kind(u), NodeKind::Primal(_)));
        assert!(matches!(q.kind(v), NodeKind::Dual(f) if f == q.primal().outer_face()));
        assert!(matches!(q.kind(w), NodeKind::Primal(_)));
        assert!(matches!(q.kind(wp), NodeKind::Dual(_)));
    }

    #[test]
    fn bend_flag_only_permutes_roles() {
        let g = platonic("tetrahedron").unwrap();
        let qp = QuadGraph::build(g.clone(), BendTarget::Primal).unwrap();
        let qd = QuadGraph::build(g, BendTarget::Dual).unwrap();
        assert_eq!(qp.outer_quad(), qd.outer_quad());
        let (u, v, w, wp) = qp.outer_quad();
        assert_eq!(qp.role_order(), [u, v, w, wp]);
        assert_eq!(qd.role_order(), [v, w, wp, u]);
        assert_eq!(qp.bent_pair(), (u, w));
        assert_eq!(qd.bent_pair(), (v, wp));
    }

    #[test]
    fn outer_edge_override() {
        let g = platonic("tetrahedron").unwrap();
        let q = QuadGraph::build_with_edge(g, BendTarget::Primal, "3", "2").unwrap();
        let g2 = q.radial();
        let (u, _, w, _) = q.outer_quad();
        // Outer cycle (1, 3, 2) contains the dart (3, 2), so w = 3, u = 2.
        assert_eq!(g2.name(u), "2");
        assert_eq!(g2.name(w), "3");
        let g = platonic("tetrahedron").unwrap();
        let err = QuadGraph::build_with_edge(g, BendTarget::Primal, "1", "4").unwrap_err();
        assert!(matches!(err, QuadError::NotOuterEdge { .. }));
    }

    #[test]
    fn edge_correspondence_round_trips() {
        let q = QuadGraph::build(platonic("cube").unwrap(), BendTarget::Primal).unwrap();
        let g1 = q.primal();
        for (a, b) in g1.edges() {
            let (da, db) = q.dual_counterpart(a, b).unwrap();
            let (NodeKind::Dual(fa), NodeKind::Dual(fb)) = (q.kind(da), q.kind(db)) else {
                panic!("dual counterpart must be dual vertices");
            };
            let (x, y) = q.primal_counterpart(fa, fb).unwrap();
            assert_eq!((x.min(y), x.max(y)), (a.min(b), a.max(b)));
        }
    }

    #[test]
    fn radial_graph_is_bipartite_between_kinds() {
        for name in super::super::generate::PLATONIC_NAMES {
            let q = QuadGraph::build(platonic(name).unwrap(), BendTarget::Primal).unwrap();
            let g2 = q.radial();
            for (x, y) in g2.edges() {
                let crossing = matches!(
                    (q.kind(x), q.kind(y)),
                    (NodeKind::Primal(_), NodeKind::Dual(_))
                        | (NodeKind::Dual(_), NodeKind::Primal(_))
                );
                assert!(crossing, "{name}: edge {}-{}", g2.name(x), g2.name(y));
            }
        }
    }

    #[test]
    fn dual_name_fallback_and_clash() {
        // Rename a tetrahedron vertex to "f0": dual names fall back to f#<k>.
        let mk = |names: [&str; 4]| {
            let rot: BTreeMap<String, Vec<String>> = [
                (names[0], vec![names[1], names[3], names[2]]),
                (names[1], vec![names[2], names[3], names[0]]),
                (names[2], vec![names[0], names[3], names[1]]),
                (names[3], vec![names[2], names[0], names[1]]),
            ]
            .into_iter()
            .map(|(k, v)| (k.to_owned(), v.into_iter().map(str::to_owned).collect()))
            .collect();
            let outer = vec![
                names[0].to_owned(),
                names[1].to_owned(),
                names[2].to_owned(),
            ];
            PlanarGraph::new(rot.keys().cloned().collect(), &rot, &outer).unwrap()
        };
        let q = QuadGraph::build(mk(["f0", "2", "3", "4"]), BendTarget::Primal).unwrap();
        assert!(q.radial().index_of("f#0").is_some());
        assert!(q.radial().index_of("f1").is_none());
        let err = QuadGraph::build(mk(["f0", "f#2", "3", "4"]), BendTarget::Primal).unwrap_err();
        assert!(matches!(err, QuadError::DualNameClash));
    }
}
