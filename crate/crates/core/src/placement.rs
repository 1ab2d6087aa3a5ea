//! Grid placement of the radial graph along its canonical order.
//!
//! Groups are inserted left to right above the current frontier. Every step
//! shifts the frontier suffix from the rightmost anchor to make room, places
//! the group by the anchor coordinates, and repairs up to one degeneracy of
//! each kind so faces stay strictly convex. Vertices covered by a new vertex
//! join a shift set so later shifts move them along. After the last group
//! the outer quad is a right triangle with one corner on its hypotenuse; the
//! right corner moves one unit right, everything translates one unit right,
//! and the single bent edge gets its bend point just outside the top corner.
//!
//! Two engines share these semantics exactly: a reference engine with
//! absolute coordinates and literal shift sets (quadratic, traceable), and
//! an offset engine storing x offsets relative to the left frontier neighbor
//! or cover parent, making every shift O(1) (near linear overall).

use crate::graph::{PlanarGraph, VertexId};
use crate::labeling::{Group, Labeling};
use crate::quad::{BendTarget, NodeKind, QuadGraph};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::{self, Write};
use thiserror::Error;

const NONE: VertexId = VertexId::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Reference,
    Offset,
}

/// A finished drawing: one grid point per radial-graph vertex plus the bend
/// point of the single bent edge.
#[derive(Debug, Clone)]
pub struct Drawing {
    /// Indexed by radial-graph vertex id.
    pub coords: Vec<(i64, i64)>,
    /// Radial-graph ids of the bent edge's endpoints.
    pub bend_pair: (VertexId, VertexId),
    pub bend_point: (i64, i64),
    /// Repairs performed, by kind d1..d4.
    pub degeneracies: [u64; 4],
    /// Vertex count of the radial graph.
    pub n: usize,
    pub bend_on: BendTarget,
}

#[derive(Debug, Error)]
pub enum DrawingError {
    #[error("drawing JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("drawing JSON: {0}")]
    Malformed(&'static str),
    #[error(transparent)]
    Quad(#[from] crate::quad::QuadError),
    #[error("unsupported drawing format {0}")]
    UnsupportedFormat(u64),
    #[error("drawing names unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("drawing is missing vertex {0:?}")]
    MissingVertex(String),
    #[error("unknown bend target {0:?}")]
    BadBendTarget(String),
    #[error("bent dual edge {{{0}, {1}}} does not join the outer face dual to a neighbouring face dual")]
    BadDualEdge(String, String),
    #[error("drawing bends edge {drawn:?} but the quadrangulation bends {expected:?}")]
    WrongBendEdge {
        drawn: (String, String),
        expected: (String, String),
    },
}

fn format_one() -> u64 {
    1
}

#[derive(Serialize, Deserialize)]
struct RawDrawing {
    #[serde(default = "format_one")]
    format: u64,
    n: usize,
    bend_on: String,
    coords: BTreeMap<String, [i64; 2]>,
    bend: RawBend,
    degeneracies: RawDegeneracies,
}

#[derive(Serialize, Deserialize)]
struct RawBend {
    edge: [String; 2],
    point: [i64; 2],
}

#[derive(Serialize, Deserialize)]
struct RawDegeneracies {
    d1: u64,
    d2: u64,
    d3: u64,
    d4: u64,
}

impl Drawing {
    pub fn to_json(&self, q: &QuadGraph) -> String {
        let g = q.radial();
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| (g.name(i as VertexId).to_owned(), [x, y]))
            .collect();
        let raw = RawDrawing {
            format: 1,
            n: self.n,
            bend_on: self.bend_on.as_str().to_owned(),
            coords,
            bend: RawBend {
                edge: [
                    g.name(self.bend_pair.0).to_owned(),
                    g.name(self.bend_pair.1).to_owned(),
                ],
                point: [self.bend_point.0, self.bend_point.1],
            },
            degeneracies: RawDegeneracies {
                d1: self.degeneracies[0],
                d2: self.degeneracies[1],
                d3: self.degeneracies[2],
                d4: self.degeneracies[3],
            },
        };
        serde_json::to_string_pretty(&raw).expect("drawing serializes")
    }

    /// Parse a drawing against the quadrangulation it claims to draw. Every
    /// radial vertex must have coordinates and the bent edge must match.
    pub fn from_json(s: &str, q: &QuadGraph) -> Result<Self, DrawingError> {
        let raw: RawDrawing = serde_json::from_str(s)?;
        if raw.format != 1 {
            return Err(DrawingError::UnsupportedFormat(raw.format));
        }
        let g = q.radial();
        let bend_on = match raw.bend_on.as_str() {
            "primal" => BendTarget::Primal,
            "dual" => BendTarget::Dual,
            other => return Err(DrawingError::BadBendTarget(other.to_owned())),
        };
        let mut coords = vec![None; g.vertex_count()];
        for (name, [x, y]) in &raw.coords {
            let id = g
                .index_of(name)
                .ok_or_else(|| DrawingError::UnknownVertex(name.clone()))?;
            coords[id as usize] = Some((*x, *y));
        }
        let coords: Vec<(i64, i64)> = coords
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| DrawingError::MissingVertex(g.name(i as VertexId).to_owned())))
            .collect::<Result<_, _>>()?;
        let e0 = g
            .index_of(&raw.bend.edge[0])
            .ok_or_else(|| DrawingError::UnknownVertex(raw.bend.edge[0].clone()))?;
        let e1 = g
            .index_of(&raw.bend.edge[1])
            .ok_or_else(|| DrawingError::UnknownVertex(raw.bend.edge[1].clone()))?;
        let expected = q.bent_pair();
        if (e0, e1) != expected && (e1, e0) != expected {
            return Err(DrawingError::WrongBendEdge {
                drawn: (raw.bend.edge[0].clone(), raw.bend.edge[1].clone()),
                expected: (
                    g.name(expected.0).to_owned(),
                    g.name(expected.1).to_owned(),
                ),
            });
        }
        Ok(Drawing {
            coords,
            bend_pair: expected,
            bend_point: (raw.bend.point[0], raw.bend.point[1]),
            degeneracies: [
                raw.degeneracies.d1,
                raw.degeneracies.d2,
                raw.degeneracies.d3,
                raw.degeneracies.d4,
            ],
            n: raw.n,
            bend_on,
        })
    }
}

/// One frontier snapshot, emitted per step as a JSON line.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceStep {
    pub k: usize,
    pub m: usize,
    pub frontier: Vec<TraceVertex>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceVertex {
    pub id: String,
    pub x: i64,
    pub y: i64,
    pub pending: u32,
    pub group: u32,
}

/// Place the radial graph on the grid.
pub fn place(q: &QuadGraph, lab: &Labeling, engine: Engine) -> Drawing {
    match engine {
        Engine::Reference => {
            RefEngine::new(q, lab).run(&mut None).expect("no trace sink, no io")
        }
        Engine::Offset => OffEngine::new(q, lab).run(),
    }
}

/// Place with the reference engine, writing one frontier snapshot per step
/// (k = 2..m, coordinates before the final shifts) as JSON lines.
pub fn place_traced(
    q: &QuadGraph,
    lab: &Labeling,
    sink: &mut dyn Write,
) -> io::Result<Drawing> {
    RefEngine::new(q, lab).run(&mut Some(sink))
}

/// Rebuild the quadrangulation a drawing was made against, reading the bend
/// target and bent edge from the drawing JSON. For a primal bend the edge
/// names the chosen outer edge directly; for a dual bend the bent edge joins
/// the outer face's dual to the dual across the chosen outer edge, so that
/// edge is recovered by name.
pub fn quad_for_drawing(g1: PlanarGraph, drawing_json: &str) -> Result<QuadGraph, DrawingError> {
    let raw: serde_json::Value = serde_json::from_str(drawing_json)?;
    let bend_on = raw
        .get("bend_on")
        .and_then(|v| v.as_str())
        .ok_or(DrawingError::Malformed("lacks \"bend_on\""))?;
    let edge: Vec<&str> = raw
        .get("bend")
        .and_then(|b| b.get("edge"))
        .and_then(|e| e.as_array())
        .map(|a| a.iter().filter_map(|x| x.as_str()).collect())
        .ok_or(DrawingError::Malformed("lacks \"bend\".\"edge\""))?;
    let [e0, e1] = edge[..] else {
        return Err(DrawingError::Malformed("bend edge must name two vertices"));
    };
    let bad_dual = || DrawingError::BadDualEdge(e0.to_owned(), e1.to_owned());
    match bend_on {
        "primal" => Ok(QuadGraph::build_with_edge(
            g1,
            BendTarget::Primal,
            e0,
            e1,
        )?),
        "dual" => {
            let probe = QuadGraph::build(g1.clone(), BendTarget::Dual)?;
            let vname = probe.radial().name(probe.outer_quad().1).to_owned();
            let other = if e0 == vname {
                e1
            } else if e1 == vname {
                e0
            } else {
                return Err(bad_dual());
            };
            let of = probe
                .radial()
                .index_of(other)
                .ok_or_else(|| DrawingError::UnknownVertex(other.to_owned()))?;
            let NodeKind::Dual(f) = probe.kind(of) else {
                return Err(bad_dual());
            };
            let (x, y) = probe
                .primal_counterpart(probe.primal().outer_face(), f)
                .ok_or_else(bad_dual)?;
            let (xn, yn) = (
                probe.primal().name(x).to_owned(),
                probe.primal().name(y).to_owned(),
            );
            Ok(QuadGraph::build_with_edge(g1, BendTarget::Dual, &xn, &yn)?)
        }
        other => Err(DrawingError::BadBendTarget(other.to_owned())),
    }
}

fn collinear(p: (i64, i64), q: (i64, i64), r: (i64, i64)) -> bool {
    (q.0 - p.0) * (r.1 - p.1) == (q.1 - p.1) * (r.0 - p.0)
}

/// Shared startup: group 1 at (0,0) and (3,0), group 2 at (1,1) and (2,1),
/// left member of group 2 adjacent to the left member of group 1.
fn base_quad(q: &QuadGraph, lab: &Labeling) -> [VertexId; 4] {
    let [a, b, _, _] = q.role_order();
    let Group::Pair(a1, b1) = lab.group(1) else {
        panic!("group 1 is a pair")
    };
    assert_eq!((a1, b1), (a, b), "labeling belongs to this quadrangulation");
    let Group::Pair(za, zb) = lab.group(2) else {
        panic!("group 2 is a pair")
    };
    debug_assert!(q.radial().has_edge(a, za) && q.radial().has_edge(b, zb));
    [a, za, zb, b]
}

fn init_pending(g: &PlanarGraph, placed: &[bool], pending: &mut [u32], quartet: [VertexId; 4]) {
    for v in quartet {
        pending[v as usize] = g
            .neighbors(v)
            .iter()
            .filter(|&&nb| !placed[nb as usize])
            .count() as u32;
    }
}

/// Common per-step bookkeeping: placed neighbors lose one pending neighbor,
/// then the members count their own unplaced neighbors.
fn update_pending(g: &PlanarGraph, placed: &mut [bool], pending: &mut [u32], members: &[VertexId]) {
    for &z in members {
        for &nb in g.neighbors(z) {
            if placed[nb as usize] {
                pending[nb as usize] -= 1;
            }
        }
    }
    for &z in members {
        placed[z as usize] = true;
    }
    for &z in members {
        pending[z as usize] = g
            .neighbors(z)
            .iter()
            .filter(|&&nb| !placed[nb as usize])
            .count() as u32;
    }
}

fn final_shape_checks(
    coords: &[(i64, i64)],
    roles: [VertexId; 4],
    n: usize,
    repairs: u64,
) -> (i64, i64) {
    let [a, b, c, d] = roles;
    let (xa, ya) = coords[a as usize];
    let (xb, yb) = coords[b as usize];
    let (xc, yc) = coords[c as usize];
    let (xd, yd) = coords[d as usize];
    assert_eq!((xa, ya), (1, 0), "left corner after translation");
    assert_eq!(yb, 0, "right corner on the base line");
    assert_eq!(xb, n as i64 + 1 + repairs as i64, "width bookkeeping");
    assert_eq!((xd, yd), (1, xb - 2), "top corner closes the right triangle");
    assert_eq!(xc + yc, xb - 1, "third corner on the hypotenuse");
    assert!(xc > xa && yc > 0, "third corner strictly between");
    (xd - 1, yd + 2)
}

struct RefEngine<'a> {
    g: &'a PlanarGraph,
    lab: &'a Labeling,
    q: &'a QuadGraph,
    m: usize,
    roles: [VertexId; 4],
    x: Vec<i64>,
    y: Vec<i64>,
    sets: Vec<Vec<VertexId>>,
    stamp: Vec<u64>,
    epoch: u64,
    frontier: Vec<VertexId>,
    placed: Vec<bool>,
    pending: Vec<u32>,
    nbr_mark: Vec<bool>,
    degs: [u64; 4],
}

impl<'a> RefEngine<'a> {
    fn new(q: &'a QuadGraph, lab: &'a Labeling) -> Self {
        let g = q.radial();
        let n = g.vertex_count();
        let [a, za, zb, b] = base_quad(q, lab);
        let mut eng = Self {
            g,
            lab,
            q,
            m: lab.m(),
            roles: q.role_order(),
            x: vec![0; n],
            y: vec![0; n],
            sets: (0..n as VertexId).map(|v| vec![v]).collect(),
            stamp: vec![0; n],
            epoch: 0,
            frontier: vec![a, za, zb, b],
            placed: vec![false; n],
            pending: vec![0; n],
            nbr_mark: vec![false; n],
            degs: [0; 4],
        };
        for (v, (x, y)) in [(a, (0, 0)), (za, (1, 1)), (zb, (2, 1)), (b, (3, 0))] {
            eng.x[v as usize] = x;
            eng.y[v as usize] = y;
            eng.placed[v as usize] = true;
        }
        init_pending(g, &eng.placed, &mut eng.pending, [a, za, zb, b]);
        eng
    }

    /// Shift the union of the sets under the frontier suffix starting at
    /// `idx`. Sets may overlap after merges; each vertex moves once.
    fn shift_from(&mut self, idx: usize, delta: i64) {
        self.epoch += 1;
        for fi in idx..self.frontier.len() {
            let owner = self.frontier[fi] as usize;
            for mi in 0..self.sets[owner].len() {
                let v = self.sets[owner][mi] as usize;
                if self.stamp[v] != self.epoch {
                    self.stamp[v] = self.epoch;
                    self.x[v] += delta;
                }
            }
        }
    }

    fn merge(&mut self, owner: VertexId, other: VertexId) {
        let extra = self.sets[other as usize].clone();
        self.sets[owner as usize].extend(extra);
    }

    fn locate(&self, cp: VertexId, cq: VertexId, size: i64) -> (i64, i64) {
        let (xcp, xcq) = (self.x[cp as usize], self.x[cq as usize]);
        let ycq = self.y[cq as usize];
        if self.pending[cp as usize] == 0 {
            (xcp, ycq + xcq - xcp - size + 1)
        } else {
            (xcp + 1, ycq + xcq - xcp - size)
        }
    }

    fn place_group(&mut self, k: usize) {
        match self.lab.group(k) {
            Group::Single(z0) => self.place_single(k, z0),
            Group::Pair(m0, m1) => self.place_pair(k, m0, m1),
        }
    }

    fn place_single(&mut self, k: usize, z0: VertexId) {
        for &nb in self.g.neighbors(z0) {
            self.nbr_mark[nb as usize] = true;
        }
        let mut p = usize::MAX;
        let mut q = 0;
        for (i, &cv) in self.frontier.iter().enumerate() {
            if self.nbr_mark[cv as usize] {
                if p == usize::MAX {
                    p = i;
                }
                q = i;
            }
        }
        for &nb in self.g.neighbors(z0) {
            self.nbr_mark[nb as usize] = false;
        }
        debug_assert!(p + 2 <= q && (q - p) % 2 == 0, "anchors alternate");
        update_pending(self.g, &mut self.placed, &mut self.pending, &[z0]);

        // Covered vertices join the shift set of the left anchor, the right
        // anchor, or the new vertex, split by which anchor side is lower in
        // the canonical order.
        let gof = |v: VertexId| self.lab.group_of(v);
        let low_p = if gof(self.frontier[p + 1]) < gof(self.frontier[p]) {
            p + 1
        } else {
            p
        };
        let low_q = if gof(self.frontier[q - 2]) <= gof(self.frontier[q - 1]) {
            q - 2
        } else {
            q - 1
        };
        if low_p == p + 1 {
            self.merge(self.frontier[p], self.frontier[p + 1]);
        }
        if low_q == q - 2 {
            self.merge(self.frontier[q], self.frontier[q - 1]);
        }
        for i in low_p + 1..=low_q {
            self.merge(z0, self.frontier[i]);
        }

        self.shift_from(q, 1);
        let (cp, cq) = (self.frontier[p], self.frontier[q]);
        let (xz, yz) = self.locate(cp, cq, 1);
        self.x[z0 as usize] = xz;
        self.y[z0 as usize] = yz;

        let (xp1, xp2) = (
            self.x[self.frontier[p + 1] as usize],
            self.x[self.frontier[p + 2] as usize],
        );
        if xz == xp1 && xz == xp2 {
            self.degs[0] += 1;
            self.shift_from(p + 1, 1);
            let (xz, yz) = self.locate(cp, cq, 1);
            self.x[z0 as usize] = xz;
            self.y[z0 as usize] = yz;
        }
        if k < self.m && q + 1 < self.frontier.len() && self.pending[cq as usize] == 0 {
            let cq1 = self.frontier[q + 1];
            let pz = (self.x[z0 as usize], self.y[z0 as usize]);
            let pq = (self.x[cq as usize], self.y[cq as usize]);
            let pq1 = (self.x[cq1 as usize], self.y[cq1 as usize]);
            if collinear(pz, pq, pq1) {
                self.degs[1] += 1;
                self.shift_from(q + 1, 1);
            }
        }
        self.frontier.splice(p + 1..q, [z0]);
    }

    fn place_pair(&mut self, k: usize, m0: VertexId, m1: VertexId) {
        let anchor = |z: VertexId| -> VertexId {
            let mut hits = self
                .g
                .neighbors(z)
                .iter()
                .copied()
                .filter(|&nb| self.placed[nb as usize]);
            let first = hits.next().expect("pair member is anchored");
            debug_assert_eq!(hits.next(), None, "pair member has one anchor");
            first
        };
        let (a0, a1) = (anchor(m0), anchor(m1));
        let i0 = self.frontier.iter().position(|&v| v == a0).expect("anchor on frontier");
        let i1 = self.frontier.iter().position(|&v| v == a1).expect("anchor on frontier");
        let (z0, z1, p) = if i1 == i0 + 1 {
            (m0, m1, i0)
        } else {
            debug_assert_eq!(i0, i1 + 1, "pair anchors are consecutive");
            (m1, m0, i1)
        };
        debug_assert_eq!(self.lab.group(k), Group::Pair(z0, z1), "stored pair order is left first");
        let q = p + 1;
        update_pending(self.g, &mut self.placed, &mut self.pending, &[z0, z1]);

        self.shift_from(q, 2);
        let (cp, cq) = (self.frontier[p], self.frontier[q]);
        let (mut xz, mut yz) = self.locate(cp, cq, 2);

        if yz == self.y[cp as usize] {
            self.degs[2] += 1;
            self.shift_from(q, 1);
            let again = self.locate(cp, cq, 2);
            xz = again.0;
            yz = again.1;
        }
        self.x[z0 as usize] = xz;
        self.y[z0 as usize] = yz;
        self.x[z1 as usize] = xz + 1;
        self.y[z1 as usize] = yz;

        if k < self.m && q + 1 < self.frontier.len() && self.pending[cq as usize] == 0 {
            let cq1 = self.frontier[q + 1];
            let pz1 = (xz + 1, yz);
            let pq = (self.x[cq as usize], self.y[cq as usize]);
            let pq1 = (self.x[cq1 as usize], self.y[cq1 as usize]);
            if collinear(pz1, pq, pq1) {
                self.degs[3] += 1;
                self.shift_from(q + 1, 1);
            }
        }
        self.frontier.splice(p + 1..q, [z0, z1]);
    }

    fn emit(&self, k: usize, sink: &mut dyn Write) -> io::Result<()> {
        let step = TraceStep {
            k,
            m: self.m,
            frontier: self
                .frontier
                .iter()
                .map(|&v| TraceVertex {
                    id: self.g.name(v).to_owned(),
                    x: self.x[v as usize],
                    y: self.y[v as usize],
                    pending: self.pending[v as usize],
                    group: self.lab.group_of(v),
                })
                .collect(),
        };
        serde_json::to_writer(&mut *sink, &step).map_err(io::Error::other)?;
        sink.write_all(b"\n")
    }

    fn run(mut self, trace: &mut Option<&mut dyn Write>) -> io::Result<Drawing> {
        if let Some(sink) = trace.as_deref_mut() {
            self.emit(2, sink)?;
        }
        for k in 3..=self.m {
            self.place_group(k);
            if let Some(sink) = trace.as_deref_mut() {
                self.emit(k, sink)?;
            }
        }
        let [a, b, c, d] = self.roles;
        assert_eq!(self.frontier, vec![a, d, c, b], "final frontier is the outer quad");
        let repairs: u64 = self.degs.iter().sum();
        self.x[b as usize] += 1;
        let n = self.g.vertex_count();
        for v in 0..n {
            self.x[v] += 1;
        }
        let coords: Vec<(i64, i64)> = self.x.iter().copied().zip(self.y.iter().copied()).collect();
        let bend_point = final_shape_checks(&coords, self.roles, n, repairs);
        Ok(Drawing {
            coords,
            bend_pair: self.q.bent_pair(),
            bend_point,
            degeneracies: self.degs,
            n,
            bend_on: self.q.bend(),
        })
    }
}

struct OffEngine<'a> {
    g: &'a PlanarGraph,
    lab: &'a Labeling,
    q: &'a QuadGraph,
    m: usize,
    roles: [VertexId; 4],
    /// Relative x: frontier vertices to their left neighbor, covered
    /// vertices to their cover parent, the left corner to the origin.
    xoff: Vec<i64>,
    y: Vec<i64>,
    next_f: Vec<VertexId>,
    prev_f: Vec<VertexId>,
    kids: Vec<Vec<VertexId>>,
    placed: Vec<bool>,
    pending: Vec<u32>,
    nbr_mark: Vec<bool>,
    degs: [u64; 4],
}

impl<'a> OffEngine<'a> {
    fn new(q: &'a QuadGraph, lab: &'a Labeling) -> Self {
        let g = q.radial();
        let n = g.vertex_count();
        let [a, za, zb, b] = base_quad(q, lab);
        let mut eng = Self {
            g,
            lab,
            q,
            m: lab.m(),
            roles: q.role_order(),
            xoff: vec![0; n],
            y: vec![0; n],
            next_f: vec![NONE; n],
            prev_f: vec![NONE; n],
            kids: vec![Vec::new(); n],
            placed: vec![false; n],
            pending: vec![0; n],
            nbr_mark: vec![false; n],
            degs: [0; 4],
        };
        for [x, y] in [[a, za], [za, zb], [zb, b]] {
            eng.next_f[x as usize] = y;
            eng.prev_f[y as usize] = x;
        }
        for (v, (off, y)) in [(a, (0, 0)), (za, (1, 1)), (zb, (1, 1)), (b, (1, 0))] {
            eng.xoff[v as usize] = off;
            eng.y[v as usize] = y;
            eng.placed[v as usize] = true;
        }
        init_pending(g, &eng.placed, &mut eng.pending, [a, za, zb, b]);
        eng
    }

    fn locate(&self, pending_cp_zero: bool, s_q: i64, y_cq: i64, size: i64) -> (i64, i64) {
        if pending_cp_zero {
            (0, y_cq + s_q - size + 1)
        } else {
            (1, y_cq + s_q - size)
        }
    }

    fn place_single(&mut self, k: usize, z0: VertexId) {
        for &nb in self.g.neighbors(z0) {
            self.nbr_mark[nb as usize] = true;
        }
        let start = self
            .g
            .neighbors(z0)
            .iter()
            .copied()
            .find(|&nb| self.placed[nb as usize])
            .expect("singleton is anchored");
        // Anchors sit on every other frontier position; hop left and right
        // two at a time to the ends of the covered strip.
        let mut cp = start;
        loop {
            let l1 = self.prev_f[cp as usize];
            if l1 == NONE {
                break;
            }
            let l2 = self.prev_f[l1 as usize];
            if l2 == NONE || !self.nbr_mark[l2 as usize] {
                break;
            }
            cp = l2;
        }
        let mut cq = start;
        loop {
            let r1 = self.next_f[cq as usize];
            if r1 == NONE {
                break;
            }
            let r2 = self.next_f[r1 as usize];
            if r2 == NONE || !self.nbr_mark[r2 as usize] {
                break;
            }
            cq = r2;
        }
        // Walk the strip once, keeping x relative to the left anchor.
        let mut strip: Vec<(VertexId, i64)> = vec![(cp, 0)];
        {
            let mut cur = cp;
            let mut acc = 0;
            while cur != cq {
                let nx = self.next_f[cur as usize];
                acc += self.xoff[nx as usize];
                strip.push((nx, acc));
                cur = nx;
            }
        }
        let ll = strip.len();
        debug_assert!(ll >= 3 && ll % 2 == 1, "odd strip");
        debug_assert!(
            strip
                .iter()
                .enumerate()
                .all(|(i, &(v, _))| self.nbr_mark[v as usize] == (i % 2 == 0)),
            "anchors alternate"
        );
        for &nb in self.g.neighbors(z0) {
            self.nbr_mark[nb as usize] = false;
        }
        update_pending(self.g, &mut self.placed, &mut self.pending, &[z0]);

        let gof = |v: VertexId| self.lab.group_of(v);
        let rule1 = gof(strip[1].0) < gof(strip[0].0);
        let rule2 = gof(strip[ll - 3].0) <= gof(strip[ll - 2].0);
        let low_p_local = if rule1 { 1 } else { 0 };
        let low_q_local = if rule2 { ll - 3 } else { ll - 2 };

        let mut s_q = strip[ll - 1].1 + 1;
        let mut bump_p1 = 0i64;
        let p0 = self.pending[cp as usize] == 0;
        let (mut xz, mut yz) = self.locate(p0, s_q, self.y[cq as usize], 1);

        // Current relative x of a strip vertex after the shifts so far.
        let cur_sx = |local: usize, bump: i64| -> i64 {
            let mut v = strip[local].1;
            if local == ll - 1 {
                v += 1;
            }
            if local >= 1 {
                v += bump;
            }
            v
        };
        if xz == cur_sx(1, bump_p1) && xz == cur_sx(2, bump_p1) {
            self.degs[0] += 1;
            bump_p1 = 1;
            s_q += 1;
            let again = self.locate(p0, s_q, self.y[cq as usize], 1);
            xz = again.0;
            yz = again.1;
        }
        let cq1 = self.next_f[cq as usize];
        if k < self.m && cq1 != NONE && self.pending[cq as usize] == 0 {
            let pq1 = (s_q + self.xoff[cq1 as usize], self.y[cq1 as usize]);
            if collinear((xz, yz), (s_q, self.y[cq as usize]), pq1) {
                self.degs[1] += 1;
                self.xoff[cq1 as usize] += 1;
            }
        }

        // Cover the strip interior: left end under the left anchor when the
        // anchor side is higher, right end under the right anchor likewise,
        // the rest under the new vertex. The right anchor's subtree moved
        // with the main shift; everything covered moved with a d1 repair.
        for (local, &(v, s_pre)) in strip.iter().enumerate().take(ll - 1).skip(1) {
            let mut s_fin = s_pre + bump_p1;
            if rule2 && local == ll - 2 {
                s_fin += 1;
            }
            let (parent, rel) = if rule1 && local == 1 {
                (cp, s_fin)
            } else if rule2 && local == ll - 2 {
                (cq, s_fin - s_q)
            } else {
                debug_assert!(local > low_p_local && local <= low_q_local);
                (z0, s_fin - xz)
            };
            self.kids[parent as usize].push(v);
            self.xoff[v as usize] = rel;
        }
        self.next_f[cp as usize] = z0;
        self.prev_f[z0 as usize] = cp;
        self.next_f[z0 as usize] = cq;
        self.prev_f[cq as usize] = z0;
        self.xoff[z0 as usize] = xz;
        self.xoff[cq as usize] = s_q - xz;
        self.y[z0 as usize] = yz;
    }

    fn place_pair(&mut self, k: usize, m0: VertexId, m1: VertexId) {
        let anchor = |z: VertexId| -> VertexId {
            let mut hits = self
                .g
                .neighbors(z)
                .iter()
                .copied()
                .filter(|&nb| self.placed[nb as usize]);
            let first = hits.next().expect("pair member is anchored");
            debug_assert_eq!(hits.next(), None, "pair member has one anchor");
            first
        };
        let (a0, a1) = (anchor(m0), anchor(m1));
        let (z0, z1, cp, cq) = if self.next_f[a0 as usize] == a1 {
            (m0, m1, a0, a1)
        } else {
            debug_assert_eq!(self.next_f[a1 as usize], a0, "pair anchors are consecutive");
            (m1, m0, a1, a0)
        };
        debug_assert_eq!(self.lab.group(k), Group::Pair(z0, z1), "stored pair order is left first");
        update_pending(self.g, &mut self.placed, &mut self.pending, &[z0, z1]);

        let mut s_q = self.xoff[cq as usize] + 2;
        let p0 = self.pending[cp as usize] == 0;
        let (mut xz, mut yz) = self.locate(p0, s_q, self.y[cq as usize], 2);
        if yz == self.y[cp as usize] {
            self.degs[2] += 1;
            s_q += 1;
            let again = self.locate(p0, s_q, self.y[cq as usize], 2);
            xz = again.0;
            yz = again.1;
        }
        let cq1 = self.next_f[cq as usize];
        if k < self.m && cq1 != NONE && self.pending[cq as usize] == 0 {
            let pq1 = (s_q + self.xoff[cq1 as usize], self.y[cq1 as usize]);
            if collinear((xz + 1, yz), (s_q, self.y[cq as usize]), pq1) {
                self.degs[3] += 1;
                self.xoff[cq1 as usize] += 1;
            }
        }
        self.next_f[cp as usize] = z0;
        self.prev_f[z0 as usize] = cp;
        self.next_f[z0 as usize] = z1;
        self.prev_f[z1 as usize] = z0;
        self.next_f[z1 as usize] = cq;
        self.prev_f[cq as usize] = z1;
        self.xoff[z0 as usize] = xz;
        self.xoff[z1 as usize] = 1;
        self.xoff[cq as usize] = s_q - xz - 1;
        self.y[z0 as usize] = yz;
        self.y[z1 as usize] = yz;
    }

    fn run(mut self) -> Drawing {
        for k in 3..=self.m {
            match self.lab.group(k) {
                Group::Single(z0) => self.place_single(k, z0),
                Group::Pair(m0, m1) => self.place_pair(k, m0, m1),
            }
        }
        let [a, b, c, d] = self.roles;
        debug_assert_eq!(
            {
                let mut f = vec![a];
                let mut cur = a;
                while self.next_f[cur as usize] != NONE {
                    cur = self.next_f[cur as usize];
                    f.push(cur);
                }
                f
            },
            vec![a, d, c, b],
            "final frontier is the outer quad"
        );
        // Resolve absolute x: the frontier accumulates left to right with
        // the final one-unit translation folded in, then each cover tree
        // resolves below its frontier root.
        let n = self.g.vertex_count();
        let mut xabs = vec![0i64; n];
        let mut stack: Vec<VertexId> = Vec::new();
        let mut acc = 1i64;
        let mut cur = a;
        loop {
            acc += self.xoff[cur as usize];
            xabs[cur as usize] = acc;
            stack.push(cur);
            cur = self.next_f[cur as usize];
            if cur == NONE {
                break;
            }
        }
        while let Some(v) = stack.pop() {
            for &ch in &self.kids[v as usize] {
                xabs[ch as usize] = xabs[v as usize] + self.xoff[ch as usize];
                stack.push(ch);
            }
        }
        xabs[b as usize] += 1;
        let coords: Vec<(i64, i64)> = xabs.into_iter().zip(self.y.iter().copied()).collect();
        let repairs: u64 = self.degs.iter().sum();
        let bend_point = final_shape_checks(&coords, [a, b, c, d], n, repairs);
        Drawing {
            coords,
            bend_pair: self.q.bent_pair(),
            bend_point,
            degeneracies: self.degs,
            n,
            bend_on: self.q.bend(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{platonic, sparsified, triangulation};
    use crate::labeling::find_labeling;

    fn draw(name: &str, bend: BendTarget, engine: Engine) -> (QuadGraph, Drawing) {
        let q = QuadGraph::build(platonic(name).unwrap(), bend).unwrap();
        let lab = find_labeling(&q).unwrap();
        let d = place(&q, &lab, engine);
        (q, d)
    }

    fn coord_of(q: &QuadGraph, d: &Drawing, name: &str) -> (i64, i64) {
        d.coords[q.radial().index_of(name).unwrap() as usize]
    }

    #[test]
    fn k4_reference_drawing_matches_hand_run() {
        let (q, d) = draw("tetrahedron", BendTarget::Primal, Engine::Reference);
        let expect = [
            ("1", (1, 0)),
            ("2", (4, 5)),
            ("3", (6, 1)),
            ("4", (2, 3)),
            ("f0", (1, 8)),
            ("f1", (2, 1)),
            ("f2", (10, 0)),
            ("f3", (4, 3)),
        ];
        for (name, want) in expect {
            assert_eq!(coord_of(&q, &d, name), want, "{name}");
        }
        assert_eq!(d.bend_point, (0, 10));
        assert_eq!(d.degeneracies, [0, 0, 0, 1]);
        let g = q.radial();
        assert_eq!(
            d.bend_pair,
            (g.index_of("1").unwrap(), g.index_of("2").unwrap())
        );
    }

    #[test]
    fn k4_offset_engine_is_identical() {
        let (_, r) = draw("tetrahedron", BendTarget::Primal, Engine::Reference);
        let (_, o) = draw("tetrahedron", BendTarget::Primal, Engine::Offset);
        assert_eq!(r.coords, o.coords);
        assert_eq!(r.bend_point, o.bend_point);
        assert_eq!(r.degeneracies, o.degeneracies);
    }

    #[test]
    fn engines_agree_on_platonics_and_random_graphs() {
        let mut cases: Vec<crate::graph::PlanarGraph> = crate::generate::PLATONIC_NAMES
            .iter()
            .map(|n| platonic(n).unwrap())
            .collect();
        for seed in 0..6 {
            cases.push(triangulation(6 + seed as usize * 3, seed).unwrap());
            cases.push(sparsified(12 + seed as usize * 2, seed, 0.3).unwrap());
        }
        for g in cases {
            for bend in [BendTarget::Primal, BendTarget::Dual] {
                let q = QuadGraph::build(g.clone(), bend).unwrap();
                let lab = find_labeling(&q).unwrap();
                let r = place(&q, &lab, Engine::Reference);
                let o = place(&q, &lab, Engine::Offset);
                assert_eq!(r.coords, o.coords);
                assert_eq!(r.bend_point, o.bend_point);
                assert_eq!(r.degeneracies, o.degeneracies);
                let n = q.n() as i64;
                let bound = 2 * n - 2;
                for &(x, y) in &r.coords {
                    assert!(x >= 0 && y >= 0 && x <= bound && y <= bound);
                }
                assert!(r.bend_point.0 <= bound && r.bend_point.1 <= bound);
            }
        }
    }

    #[test]
    fn trace_snapshots_cover_every_step() {
        let q = QuadGraph::build(platonic("tetrahedron").unwrap(), BendTarget::Primal).unwrap();
        let lab = find_labeling(&q).unwrap();
        let mut buf = Vec::new();
        let d = place_traced(&q, &lab, &mut buf).unwrap();
        let steps: Vec<TraceStep> = String::from_utf8(buf)
            .unwrap()
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(steps.len(), lab.m() - 1);
        assert_eq!(steps[0].k, 2);
        let init: Vec<(&str, i64, i64)> = steps[0]
            .frontier
            .iter()
            .map(|v| (v.id.as_str(), v.x, v.y))
            .collect();
        assert_eq!(
            init,
            vec![("1", 0, 0), ("f1", 1, 1), ("3", 2, 1), ("f2", 3, 0)]
        );
        assert_eq!(steps.last().unwrap().k, lab.m());
        assert_eq!(steps.last().unwrap().frontier.len(), 4);
        assert_eq!(d.degeneracies.iter().sum::<u64>(), 1);
    }

    #[test]
    fn drawing_json_round_trips() {
        let (q, d) = draw("cube", BendTarget::Dual, Engine::Offset);
        let s = d.to_json(&q);
        let back = Drawing::from_json(&s, &q).unwrap();
        assert_eq!(back.coords, d.coords);
        assert_eq!(back.bend_point, d.bend_point);
        assert_eq!(back.bend_pair, d.bend_pair);
        assert_eq!(back.degeneracies, d.degeneracies);
        assert_eq!(back.n, d.n);
        let missing = s.replace("\"b0\"", "\"zz\"");
        assert!(Drawing::from_json(&missing, &q).is_err());
    }
}
