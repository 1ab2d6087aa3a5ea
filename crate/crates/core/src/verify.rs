//! Independent verification of a finished drawing, all in exact integer
//! arithmetic: grid bounds, distinct points, planarity inside each edge
//! class, crossings exactly between corresponding primal/dual edge pairs,
//! dual vertices strictly inside their faces, the outer dual strictly
//! outside, and strict convexity of the radial quads. A separate checker
//! replays frontier snapshots and enforces the slope discipline that makes
//! the incremental placement sound.

use crate::graph::VertexId;
use crate::placement::{Drawing, TraceStep};
use crate::quad::{BendTarget, NodeKind, QuadGraph};
use serde::Serialize;
use std::fmt;

type P = (i64, i64);

fn orient(a: P, b: P, c: P) -> i32 {
    let v = (b.0 - a.0) as i128 * (c.1 - a.1) as i128
        - (b.1 - a.1) as i128 * (c.0 - a.0) as i128;
    match v.cmp(&0) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

fn on_segment(p: P, a: P, b: P) -> bool {
    orient(a, b, p) == 0
        && p.0 >= a.0.min(b.0)
        && p.0 <= a.0.max(b.0)
        && p.1 >= a.1.min(b.1)
        && p.1 <= a.1.max(b.1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Contact {
    None,
    /// Exactly one common point, an endpoint of at least one segment.
    Touch(P),
    /// Exactly one common point, interior to both segments.
    Proper,
    /// A common segment of positive length.
    Overlap,
}

fn seg_contact(a: P, b: P, c: P, d: P) -> Contact {
    if a == b {
        return if on_segment(a, c, d) { Contact::Touch(a) } else { Contact::None };
    }
    if c == d {
        return if on_segment(c, a, b) { Contact::Touch(c) } else { Contact::None };
    }
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0 {
        let usex = a.0 != b.0;
        let key = |p: P| if usex { p.0 } else { p.1 };
        let (lo1, hi1) = (key(a).min(key(b)), key(a).max(key(b)));
        let (lo2, hi2) = (key(c).min(key(d)), key(c).max(key(d)));
        let lo = lo1.max(lo2);
        let hi = hi1.min(hi2);
        return if lo > hi {
            Contact::None
        } else if lo == hi {
            let p = [a, b, c, d]
                .into_iter()
                .find(|&p| key(p) == lo)
                .expect("an endpoint attains the bound");
            Contact::Touch(p)
        } else {
            Contact::Overlap
        };
    }
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return Contact::Proper;
    }
    for (p, s, t) in [(c, a, b), (d, a, b), (a, c, d), (b, c, d)] {
        if on_segment(p, s, t) {
            return Contact::Touch(p);
        }
    }
    Contact::None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Region {
    Inside,
    OnBoundary,
    Outside,
}

/// Exact even-odd location of a point against a simple polygon.
fn locate_in_polygon(pt: P, poly: &[P]) -> Region {
    let mut inside = false;
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        if on_segment(pt, a, b) {
            return Region::OnBoundary;
        }
        if (a.1 > pt.1) != (b.1 > pt.1) {
            // The edge crosses the horizontal through pt; count it when the
            // crossing lies strictly right of pt, compared without division.
            let num = (a.0 - pt.0) as i128 * (b.1 - a.1) as i128
                + (pt.1 - a.1) as i128 * (b.0 - a.0) as i128;
            if num != 0 && (num > 0) == (b.1 > a.1) {
                inside = !inside;
            }
        }
    }
    if inside {
        Region::Inside
    } else {
        Region::Outside
    }
}

struct DrawnEdge {
    a: VertexId,
    b: VertexId,
    pts: Vec<P>,
}

impl DrawnEdge {
    fn segs(&self) -> impl Iterator<Item = (P, P)> + '_ {
        self.pts.windows(2).map(|w| (w[0], w[1]))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub format: u64,
    pub checks: Vec<Check>,
    pub all_pass: bool,
}

impl Report {
    fn new(checks: Vec<Check>) -> Self {
        let all_pass = checks.iter().all(|c| c.pass);
        Report {
            format: 1,
            checks,
            all_pass,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Concatenate two reports into one.
    pub fn merged(mut self, other: Report) -> Report {
        self.checks.extend(other.checks);
        self.all_pass = self.all_pass && other.all_pass;
        self
    }
}

fn check(name: &str, result: Result<(), String>) -> Check {
    match result {
        Ok(()) => Check {
            name: name.to_owned(),
            pass: true,
            witness: None,
        },
        Err(w) => Check {
            name: name.to_owned(),
            pass: false,
            witness: Some(w),
        },
    }
}

/// The g1 ids of the bent primal edge, when the bend is on the primal side.
fn bent_primal_edge(q: &QuadGraph) -> Option<(VertexId, VertexId)> {
    if q.bend() != BendTarget::Primal {
        return None;
    }
    let (bu, bw) = q.bent_pair();
    let NodeKind::Primal(pu) = q.kind(bu) else {
        unreachable!("primal bend endpoints are primal")
    };
    let NodeKind::Primal(pw) = q.kind(bw) else {
        unreachable!("primal bend endpoints are primal")
    };
    Some((pu, pw))
}

/// Boundary polygon of a g1 face, with the bend point spliced in when the
/// bent primal edge lies on that boundary.
fn face_polygon(q: &QuadGraph, d: &Drawing, f: usize) -> Vec<P> {
    let cyc = &q.primal().faces()[f];
    let bent = bent_primal_edge(q);
    let mut poly = Vec::with_capacity(cyc.len() + 1);
    for i in 0..cyc.len() {
        let x = cyc[i];
        let y = cyc[(i + 1) % cyc.len()];
        poly.push(d.coords[q.of_primal(x) as usize]);
        if let Some((pu, pw)) = bent {
            if (x, y) == (pu, pw) || (x, y) == (pw, pu) {
                poly.push(d.bend_point);
            }
        }
    }
    poly
}

/// Both edge classes as drawn polylines, index-aligned so that primal edge
/// `i` corresponds to dual edge `i`.
fn drawn_edges(q: &QuadGraph, d: &Drawing) -> (Vec<DrawnEdge>, Vec<DrawnEdge>) {
    let bent = q.bent_pair();
    let polyline = |a: VertexId, b: VertexId| -> DrawnEdge {
        let pa = d.coords[a as usize];
        let pb = d.coords[b as usize];
        let pts = if (a, b) == bent || (b, a) == bent {
            vec![pa, d.bend_point, pb]
        } else {
            vec![pa, pb]
        };
        DrawnEdge { a, b, pts }
    };
    let mut primal = Vec::new();
    let mut dual = Vec::new();
    for (x, y) in q.primal().edges() {
        primal.push(polyline(q.of_primal(x), q.of_primal(y)));
        let (fl, fr) = q
            .dual_counterpart(x, y)
            .expect("every edge borders two faces");
        dual.push(polyline(fl, fr));
    }
    (primal, dual)
}

fn edge_label(q: &QuadGraph, e: &DrawnEdge) -> String {
    format!(
        "{{{}, {}}}",
        q.radial().name(e.a),
        q.radial().name(e.b)
    )
}

/// Two edges of one class: if they share a vertex they may meet only at its
/// point; otherwise they may not meet at all.
fn same_class_pair(q: &QuadGraph, d: &Drawing, e: &DrawnEdge, f: &DrawnEdge) -> Result<(), String> {
    let shared: Vec<VertexId> = [e.a, e.b]
        .into_iter()
        .filter(|v| *v == f.a || *v == f.b)
        .collect();
    debug_assert!(shared.len() <= 1, "simple graphs share at most one endpoint");
    let allowed = shared.first().map(|&v| d.coords[v as usize]);
    for (s1, s2) in e.segs().flat_map(|s1| f.segs().map(move |s2| (s1, s2))) {
        let c = seg_contact(s1.0, s1.1, s2.0, s2.1);
        let ok = match c {
            Contact::None => true,
            Contact::Touch(p) => allowed == Some(p),
            Contact::Proper | Contact::Overlap => false,
        };
        if !ok {
            return Err(format!(
                "edges {} and {} meet at {:?}",
                edge_label(q, e),
                edge_label(q, f),
                c
            ));
        }
    }
    Ok(())
}

fn planarity_of_class(q: &QuadGraph, d: &Drawing, edges: &[DrawnEdge]) -> Result<(), String> {
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            same_class_pair(q, d, &edges[i], &edges[j])?;
        }
    }
    Ok(())
}

fn cross_class(q: &QuadGraph, primal: &[DrawnEdge], dual: &[DrawnEdge]) -> Result<(), String> {
    for (i, e) in primal.iter().enumerate() {
        for (j, f) in dual.iter().enumerate() {
            let mut contacts = Vec::new();
            for (s1, s2) in e.segs().flat_map(|s1| f.segs().map(move |s2| (s1, s2))) {
                let c = seg_contact(s1.0, s1.1, s2.0, s2.1);
                if c != Contact::None {
                    contacts.push(c);
                }
            }
            let label = || {
                format!(
                    "primal {} and dual {}",
                    edge_label(q, e),
                    edge_label(q, f)
                )
            };
            if i == j {
                if contacts != [Contact::Proper] {
                    return Err(format!(
                        "{} must cross exactly once, found {:?}",
                        label(),
                        contacts
                    ));
                }
            } else if !contacts.is_empty() {
                return Err(format!("{} must be disjoint, found {:?}", label(), contacts));
            }
        }
    }
    Ok(())
}

/// All drawing requirements, reported one named check at a time.
pub fn check_requirements(q: &QuadGraph, d: &Drawing) -> Report {
    let n = q.n();
    if d.coords.len() != n || d.n != n {
        return Report::new(vec![check(
            "census",
            Err(format!(
                "drawing carries {} coordinates for n={}, claims n={}",
                d.coords.len(),
                n,
                d.n
            )),
        )]);
    }
    let mut checks = vec![check("census", Ok(()))];
    let g2 = q.radial();

    let bound = 2 * n as i64 - 2;
    let mut bounds = Ok(());
    for (v, &(x, y)) in d.coords.iter().enumerate() {
        if x < 0 || y < 0 || x > bound || y > bound {
            bounds = Err(format!(
                "vertex {} at ({x}, {y}) outside [0, {bound}]",
                g2.name(v as VertexId)
            ));
            break;
        }
    }
    if bounds.is_ok() {
        let (bx, by) = d.bend_point;
        if bx < 0 || by < 0 || bx > bound || by > bound {
            bounds = Err(format!("bend point ({bx}, {by}) outside [0, {bound}]"));
        }
    }
    checks.push(check("grid-bounds", bounds));

    let mut points: Vec<(P, String)> = d
        .coords
        .iter()
        .enumerate()
        .map(|(v, &p)| (p, g2.name(v as VertexId).to_owned()))
        .collect();
    points.push((d.bend_point, "bend point".to_owned()));
    points.sort();
    let dup = points
        .windows(2)
        .find(|w| w[0].0 == w[1].0)
        .map(|w| format!("{} and {} both at {:?}", w[0].1, w[1].1, w[0].0));
    checks.push(check("distinct-points", dup.map_or(Ok(()), Err)));

    let single_bend = {
        let expected = q.bent_pair();
        if d.bend_on != q.bend() {
            Err(format!(
                "drawing bends the {} side, quadrangulation bends the {}",
                d.bend_on.as_str(),
                q.bend().as_str()
            ))
        } else if d.bend_pair != expected && (d.bend_pair.1, d.bend_pair.0) != expected {
            Err(format!(
                "bent edge is {{{}, {}}}, expected {{{}, {}}}",
                g2.name(d.bend_pair.0),
                g2.name(d.bend_pair.1),
                g2.name(expected.0),
                g2.name(expected.1)
            ))
        } else if orient(
            d.coords[d.bend_pair.0 as usize],
            d.bend_point,
            d.coords[d.bend_pair.1 as usize],
        ) == 0
        {
            Err(format!(
                "bend point {:?} is collinear with its endpoints",
                d.bend_point
            ))
        } else {
            Ok(())
        }
    };
    checks.push(check("single-bend", single_bend));

    let (primal, dual) = drawn_edges(q, d);
    checks.push(check("primal-planar", planarity_of_class(q, d, &primal)));
    checks.push(check("dual-planar", planarity_of_class(q, d, &dual)));
    checks.push(check(
        "primal-dual-crossings",
        cross_class(q, &primal, &dual),
    ));

    let outer = q.primal().outer_face() as usize;
    let mut inner_ok = Ok(());
    let mut outer_ok = Ok(());
    for f in 0..q.primal().face_count() {
        let poly = face_polygon(q, d, f);
        let dv = q.of_face(f as u32);
        let where_ = locate_in_polygon(d.coords[dv as usize], &poly);
        if f == outer {
            if where_ != Region::Outside {
                outer_ok = Err(format!(
                    "outer dual {} is {:?} the outer boundary",
                    g2.name(dv),
                    where_
                ));
            }
        } else if where_ != Region::Inside && inner_ok.is_ok() {
            inner_ok = Err(format!(
                "dual {} is {:?} its face polygon",
                g2.name(dv),
                where_
            ));
        }
    }
    checks.push(check("duals-inside-faces", inner_ok));
    checks.push(check("outer-dual-outside", outer_ok));

    Report::new(checks)
}

/// Strict convexity of the radial quads: every bounded quad has four strict
/// turns of one sign; the outer quad is strictly concave with its single
/// reflex corner at the far endpoint of the bent edge.
pub fn check_strict_convexity(q: &QuadGraph, d: &Drawing) -> Report {
    let n = q.n();
    if d.coords.len() != n {
        return Report::new(vec![check(
            "census",
            Err(format!("drawing carries {} coordinates for n={n}", d.coords.len())),
        )]);
    }
    let g2 = q.radial();
    let mut convex = Ok(());
    let outer2 = g2.outer_face() as usize;
    // The reflex corner of the outer quad is the far endpoint of the bent
    // edge: the corner placed on the triangle's hypotenuse.
    let w = q.role_order()[2];
    'faces: for (fi, cyc) in g2.faces().iter().enumerate() {
        let pts: Vec<P> = cyc.iter().map(|&v| d.coords[v as usize]).collect();
        let len = pts.len();
        let corner = |i: usize| {
            orient(
                pts[(i + len - 1) % len],
                pts[i],
                pts[(i + 1) % len],
            )
        };
        if fi == outer2 {
            let signs: Vec<i32> = (0..len).map(corner).collect();
            let plus = signs.iter().filter(|&&s| s > 0).count();
            let minus = signs.iter().filter(|&&s| s < 0).count();
            let minority = if plus == 1 && minus == 3 {
                1
            } else if minus == 1 && plus == 3 {
                -1
            } else {
                convex = Err(format!(
                    "outer quad corner signs {signs:?}, expected one reflex"
                ));
                break 'faces;
            };
            let at = signs.iter().position(|&s| s == minority).unwrap();
            if cyc[at] != w {
                convex = Err(format!(
                    "outer quad reflex at {}, expected {}",
                    g2.name(cyc[at]),
                    g2.name(w)
                ));
                break 'faces;
            }
        } else {
            let s0 = corner(0);
            for i in 0..len {
                if corner(i) != s0 || s0 == 0 {
                    convex = Err(format!(
                        "quad {:?} is not strictly convex",
                        cyc.iter().map(|&v| g2.name(v)).collect::<Vec<_>>()
                    ));
                    break 'faces;
                }
            }
        }
    }
    Report::new(vec![check("convex-quads", convex)])
}

/// A violated slope rule in a frontier snapshot.
#[derive(Debug)]
pub struct AngleViolation {
    pub k: usize,
    pub position: usize,
    pub rule: &'static str,
    pub detail: String,
}

impl fmt::Display for AngleViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "step {}, frontier position {}: {} ({})",
            self.k, self.position, self.rule, self.detail
        )
    }
}

impl std::error::Error for AngleViolation {}

fn seg90(dx: i64, dy: i64) -> bool {
    dx == 0 && dy > 0
}

fn seg_m45(dx: i64, dy: i64) -> bool {
    dx > 0 && dy == -dx
}

/// Slope classes a frontier segment may take: up in [45, 90] degrees, flat
/// right, or down in [-45, atan(-1/2)] degrees.
fn slope_allowed(dx: i64, dy: i64) -> bool {
    (dx > 0 && dy == 0)
        || (dy > 0 && dx >= 0 && dy >= dx)
        || (dx > 0 && dy < 0 && dy >= -dx && 2 * dy <= -dx)
}

/// Down slopes strictly shallower than -45 degrees, which demand that the
/// segment's tail has no unplaced neighbors.
fn slope_settled_only(dx: i64, dy: i64) -> bool {
    dx > 0 && dy > -dx && 2 * dy <= -dx
}

/// Replay frontier snapshots (all but the last step) and enforce the slope
/// discipline: every segment in an allowed class, shallow descents only
/// after settled vertices, and settled interior vertices bounded by the
/// vertical/diagonal rules that keep the next insertions planar.
pub fn check_angles(steps: &[TraceStep]) -> Result<(), AngleViolation> {
    for st in steps.iter().filter(|s| s.k < s.m) {
        let f = &st.frontier;
        let delta = |j: usize| (f[j + 1].x - f[j].x, f[j + 1].y - f[j].y);
        for j in 0..f.len() - 1 {
            let (dx, dy) = delta(j);
            if !slope_allowed(dx, dy) {
                return Err(AngleViolation {
                    k: st.k,
                    position: j,
                    rule: "slope-range",
                    detail: format!("segment {} -> {} has slope ({dx}, {dy})", f[j].id, f[j + 1].id),
                });
            }
            if f[j].pending > 0 && slope_settled_only(dx, dy) {
                return Err(AngleViolation {
                    k: st.k,
                    position: j,
                    rule: "pending-shallow-descent",
                    detail: format!(
                        "{} still has {} unplaced neighbors but descends at ({dx}, {dy})",
                        f[j].id, f[j].pending
                    ),
                });
            }
        }
        for j in 1..f.len() - 1 {
            if f[j].pending != 0 {
                continue;
            }
            let (ix, iy) = delta(j - 1);
            let (ox, oy) = delta(j);
            let low_left = f[j - 1].group <= f[j].group;
            if low_left {
                if !seg90(ox, oy) {
                    return Err(AngleViolation {
                        k: st.k,
                        position: j,
                        rule: "settled-after-lower-left",
                        detail: format!(
                            "{} must leave vertically, leaves at ({ox}, {oy})",
                            f[j].id
                        ),
                    });
                }
            } else if !seg_m45(ix, iy) {
                return Err(AngleViolation {
                    k: st.k,
                    position: j,
                    rule: "settled-after-higher-left",
                    detail: format!("{} must be entered at -45, entered at ({ix}, {iy})", f[j].id),
                });
            }
            if seg90(ix, iy) && seg90(ox, oy) {
                return Err(AngleViolation {
                    k: st.k,
                    position: j,
                    rule: "double-vertical",
                    detail: format!("two vertical segments meet at {}", f[j].id),
                });
            }
            if seg_m45(ix, iy) && seg_m45(ox, oy) {
                return Err(AngleViolation {
                    k: st.k,
                    position: j,
                    rule: "double-diagonal",
                    detail: format!("two -45 segments meet at {}", f[j].id),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{platonic, sparsified, PLATONIC_NAMES};
    use crate::labeling::find_labeling;
    use crate::placement::{place, place_traced, Engine};

    fn drawing_for(name: &str, bend: BendTarget) -> (QuadGraph, Drawing) {
        let q = QuadGraph::build(platonic(name).unwrap(), bend).unwrap();
        let lab = find_labeling(&q).unwrap();
        let d = place(&q, &lab, Engine::Offset);
        (q, d)
    }

    #[test]
    fn segment_contacts_are_classified_exactly() {
        let c = |a, b, cc, d| seg_contact(a, b, cc, d);
        assert_eq!(c((0, 0), (4, 4), (0, 4), (4, 0)), Contact::Proper);
        assert_eq!(c((0, 0), (4, 0), (4, 0), (6, 2)), Contact::Touch((4, 0)));
        assert_eq!(c((0, 0), (4, 0), (2, 0), (2, 3)), Contact::Touch((2, 0)));
        assert_eq!(c((0, 0), (4, 0), (2, 0), (6, 0)), Contact::Overlap);
        assert_eq!(c((0, 0), (4, 0), (4, 0), (8, 0)), Contact::Touch((4, 0)));
        assert_eq!(c((0, 0), (4, 0), (5, 0), (8, 0)), Contact::None);
        assert_eq!(c((0, 0), (4, 0), (1, 1), (3, 5)), Contact::None);
        assert_eq!(c((0, 0), (0, 4), (0, 5), (0, 9)), Contact::None);
        assert_eq!(c((0, 0), (0, 4), (0, 2), (0, 9)), Contact::Overlap);
    }

    #[test]
    fn polygon_location_is_exact_with_a_bend_corner() {
        // The bent boundary from the smallest instance: without the bend
        // point the polygon misses the dual vertex, with it the vertex is
        // strictly inside.
        let without = [(1, 0), (4, 5), (2, 3)];
        let with_bend = [(1, 0), (0, 10), (4, 5), (2, 3)];
        assert_eq!(locate_in_polygon((1, 8), &without), Region::Outside);
        assert_eq!(locate_in_polygon((1, 8), &with_bend), Region::Inside);
        assert_eq!(locate_in_polygon((2, 3), &with_bend), Region::OnBoundary);
        assert_eq!(locate_in_polygon((3, 4), &with_bend), Region::OnBoundary);
        assert_eq!(locate_in_polygon((10, 0), &with_bend), Region::Outside);
    }

    #[test]
    fn finished_drawings_pass_every_check() {
        for name in PLATONIC_NAMES {
            for bend in [BendTarget::Primal, BendTarget::Dual] {
                let (q, d) = drawing_for(name, bend);
                let report =
                    check_requirements(&q, &d).merged(check_strict_convexity(&q, &d));
                assert!(
                    report.all_pass,
                    "{name} {:?}: {}",
                    bend,
                    report.to_json()
                );
            }
        }
    }

    #[test]
    fn undoing_the_final_corner_shift_breaks_outer_concavity() {
        let (q, d) = drawing_for("octahedron", BendTarget::Primal);
        let b = q.role_order()[1];
        let mut undone = d.clone();
        undone.coords[b as usize].0 -= 1;
        let r = check_strict_convexity(&q, &undone);
        assert!(!r.all_pass, "{}", r.to_json());
        assert!(check_strict_convexity(&q, &d).all_pass);
    }

    #[test]
    fn tampering_is_caught_by_name() {
        let (q, d) = drawing_for("tetrahedron", BendTarget::Primal);
        let g2 = q.radial();
        let at = |n: &str| g2.index_of(n).unwrap() as usize;

        let mut dup = d.clone();
        dup.coords[at("f1")] = dup.coords[at("4")];
        let r = check_requirements(&q, &dup);
        assert!(!r.all_pass);
        assert!(!r.checks.iter().find(|c| c.name == "distinct-points").unwrap().pass);

        let mut outside = d.clone();
        outside.coords[at("f0")] = (9, 9);
        let r = check_requirements(&q, &outside);
        assert!(!r.checks.iter().find(|c| c.name == "duals-inside-faces").unwrap().pass);

        let mut straight = d.clone();
        straight.bend_point = (2, 3);
        let r = check_requirements(&q, &straight);
        assert!(!r.all_pass);

        let mut flat = d.clone();
        // Collinear with the bent edge endpoints (1,0) and (4,5) is not
        // reachable on integers; collapse onto an endpoint instead.
        flat.bend_point = d.coords[at("2")];
        let r = check_requirements(&q, &flat);
        assert!(!r.checks.iter().find(|c| c.name == "single-bend").unwrap().pass);

        let mut crossed = d.clone();
        crossed.coords.swap(at("f1"), at("f3"));
        let r = check_requirements(&q, &crossed);
        assert!(!r.all_pass);
    }

    #[test]
    fn out_of_bounds_coordinates_are_reported() {
        let (q, d) = drawing_for("tetrahedron", BendTarget::Primal);
        let mut far = d.clone();
        far.coords[0] = (far.coords[0].0, 10_000);
        let r = check_requirements(&q, &far);
        assert!(!r.checks.iter().find(|c| c.name == "grid-bounds").unwrap().pass);
    }

    #[test]
    fn traces_obey_the_slope_rules() {
        let mut cases = Vec::new();
        for name in PLATONIC_NAMES {
            cases.push(platonic(name).unwrap());
        }
        for seed in 0..6 {
            cases.push(sparsified(13 + seed as usize, seed, 0.3).unwrap());
        }
        for g in cases {
            for bend in [BendTarget::Primal, BendTarget::Dual] {
                let q = QuadGraph::build(g.clone(), bend).unwrap();
                let lab = find_labeling(&q).unwrap();
                let mut buf = Vec::new();
                place_traced(&q, &lab, &mut buf).unwrap();
                let steps: Vec<TraceStep> = String::from_utf8(buf)
                    .unwrap()
                    .lines()
                    .map(|l| serde_json::from_str(l).unwrap())
                    .collect();
                check_angles(&steps).unwrap();
            }
        }
    }

    #[test]
    fn corrupted_trace_is_rejected() {
        let q = QuadGraph::build(platonic("tetrahedron").unwrap(), BendTarget::Primal).unwrap();
        let lab = find_labeling(&q).unwrap();
        let mut buf = Vec::new();
        place_traced(&q, &lab, &mut buf).unwrap();
        let mut steps: Vec<TraceStep> = String::from_utf8(buf)
            .unwrap()
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        let last = steps[0].frontier.len() - 1;
        steps[0].frontier[last].x += 2;
        let err = check_angles(&steps).unwrap_err();
        assert_eq!(err.rule, "slope-range");
        assert_eq!(err.k, 2);
    }
}
