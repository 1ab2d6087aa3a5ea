//! Canonical vertex order of the radial graph.
//!
//! The drawing algorithm consumes the radial graph as an ordered sequence of
//! groups v_1 .. v_m: group 1 is {A, B} (two corners of the outer quad),
//! group 2 the other two corners of the base quad, group m a single vertex,
//! and every middle group either one vertex with at least two earlier
//! neighbors or an adjacent pair, each member with exactly one earlier
//! neighbor. Every prefix graph must be biconnected with every bounded face
//! a quadrilateral of the full graph, and every group before the last needs
//! at least one later neighbor.
//!
//! [`find_labeling`] peels groups off in reverse, maintaining the exterior
//! cycle of the remaining graph as a doubly linked list. Removing a boundary
//! vertex exposes the far corners of the quads under it, so the cycle is
//! patched locally; a candidate peel is valid exactly when those local
//! conditions hold. Candidates are kept in an ordered set and rechecked only
//! in the neighborhood a peel can affect, which keeps the peeling near
//! linear. [`verify_labeling`] re-derives every invariant per prefix from
//! scratch, independently of how the order was found.

use crate::graph::{PlanarGraph, VertexId};
use crate::quad::QuadGraph;
use std::collections::{BTreeSet, HashSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabelingError {
    #[error("no canonical order: stuck with {remaining} vertices left (input may not be 3-connected)")]
    NotFound { remaining: usize },
    #[error("labeling invalid at group {group}: {reason}")]
    Invalid { group: usize, reason: String },
}

/// One group of the canonical order. Pairs are stored left member first,
/// where left/right refers to the frontier position their anchors take
/// during placement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    Single(VertexId),
    Pair(VertexId, VertexId),
}

impl Group {
    pub fn size(&self) -> usize {
        match self {
            Group::Single(_) => 1,
            Group::Pair(..) => 2,
        }
    }

    pub fn members(&self) -> Vec<VertexId> {
        match *self {
            Group::Single(z) => vec![z],
            Group::Pair(z0, z1) => vec![z0, z1],
        }
    }
}

#[derive(Debug, Clone)]
pub struct Labeling {
    groups: Vec<Group>,
    group_of: Vec<u32>,
}

impl Labeling {
    /// Number of groups, m.
    pub fn m(&self) -> usize {
        self.groups.len()
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    /// 1-based group, so `group(1)` is {A, B}.
    pub fn group(&self, k: usize) -> Group {
        self.groups[k - 1]
    }

    /// 1-based group number of a radial-graph vertex.
    pub fn group_of(&self, x: VertexId) -> u32 {
        self.group_of[x as usize]
    }
}

/// Find the canonical order of `q`'s radial graph for its bend choice.
/// Deterministic: among all valid groups the one with the smallest member
/// (by vertex name order) is taken, singletons before pairs on a tie.
pub fn find_labeling(q: &QuadGraph) -> Result<Labeling, LabelingError> {
    Peeler::new(q).run()
}

struct Peeler<'a> {
    g: &'a PlanarGraph,
    a: VertexId,
    b: VertexId,
    alive: Vec<bool>,
    on_cycle: Vec<bool>,
    next_c: Vec<VertexId>,
    prev_c: Vec<VertexId>,
    alive_deg: Vec<u32>,
    peeled_adj: Vec<u32>,
    alive_count: usize,
    cycle_len: usize,
    /// Valid peels keyed (smallest member, kind, lead vertex) with kind 0 =
    /// singleton, 1 = pair; the set minimum is the next group.
    cands: BTreeSet<(VertexId, u8, VertexId)>,
    cached_single: Vec<bool>,
    cached_pair: Vec<Option<VertexId>>,
    first_peel: VertexId,
}

impl<'a> Peeler<'a> {
    fn new(q: &'a QuadGraph) -> Self {
        let g = q.radial();
        let n = g.vertex_count();
        let [a, b, c, d] = q.role_order();
        let mut alive_deg = vec![0u32; n];
        for x in 0..n as VertexId {
            alive_deg[x as usize] = g.degree(x) as u32;
        }
        let mut p = Self {
            g,
            a,
            b,
            alive: vec![true; n],
            on_cycle: vec![false; n],
            next_c: vec![0; n],
            prev_c: vec![0; n],
            alive_deg,
            peeled_adj: vec![0; n],
            alive_count: n,
            cycle_len: 4,
            cands: BTreeSet::new(),
            cached_single: vec![false; n],
            cached_pair: vec![None; n],
            first_peel: d,
        };
        // The exterior cycle of the full graph is the outer quad; left to
        // right it reads (A, D, C, B), the reverse of its traced direction.
        for [x, y] in [[a, d], [d, c], [c, b], [b, a]] {
            p.next_c[x as usize] = y;
            p.prev_c[y as usize] = x;
            p.on_cycle[x as usize] = true;
        }
        p
    }

    fn run(mut self) -> Result<Labeling, LabelingError> {
        let n = self.g.vertex_count();
        let mut rev = Vec::new();
        // Group m is always the last-placed outer corner; nothing is peeled
        // yet, so its later-neighbor requirement is vacuous.
        let d = self.first_peel;
        if !self.valid_single(d, true) {
            return Err(LabelingError::NotFound { remaining: n });
        }
        self.peel_single(d);
        rev.push(Group::Single(d));

        while self.alive_count > 4 {
            let &(_, kind, lead) = self
                .cands
                .iter()
                .next()
                .ok_or(LabelingError::NotFound {
                    remaining: self.alive_count,
                })?;
            if kind == 0 {
                self.peel_single(lead);
                rev.push(Group::Single(lead));
            } else {
                let partner = self.next_c[lead as usize];
                self.peel_pair(lead, partner);
                rev.push(Group::Pair(lead, partner));
            }
        }

        // Terminal state: the base quad (A, zA, zB, B).
        let za = self.next_c[self.a as usize];
        let zb = self.next_c[za as usize];
        let ok = self.cycle_len == 4
            && self.next_c[zb as usize] == self.b
            && self.next_c[self.b as usize] == self.a
            && za != self.b
            && zb != self.a
            && quad_at(self.g, self.a, za) == Some((zb, self.b));
        if !ok {
            return Err(LabelingError::NotFound { remaining: 4 });
        }
        rev.push(Group::Pair(za, zb));
        rev.push(Group::Pair(self.a, self.b));
        rev.reverse();

        let mut group_of = vec![0u32; n];
        let mut seen = 0usize;
        for (i, g) in rev.iter().enumerate() {
            for x in g.members() {
                group_of[x as usize] = (i + 1) as u32;
                seen += 1;
            }
        }
        assert_eq!(seen, n, "groups partition the vertex set");
        Ok(Labeling {
            groups: rev,
            group_of,
        })
    }

    /// Alive neighbors of `z` from `next_c[z]`, walking the rotation
    /// forward. They are usable only if they form one contiguous arc ending
    /// at `prev_c[z]`.
    fn alive_arc(&self, z: VertexId) -> Option<Vec<VertexId>> {
        let row = self.g.neighbors(z);
        let start = self.next_c[z as usize];
        let sp = row.iter().position(|&x| x == start)?;
        let deg = row.len();
        let mut arc = Vec::new();
        for i in 0..deg {
            let x = row[(sp + i) % deg];
            if !self.alive[x as usize] {
                break;
            }
            arc.push(x);
        }
        let contiguous = arc.len() == self.alive_deg[z as usize] as usize && arc.len() >= 2;
        (contiguous && *arc.last().unwrap() == self.prev_c[z as usize]).then_some(arc)
    }

    /// The far corners of the quads under `z` between consecutive arc
    /// members. Peeling `z` promotes them onto the cycle, so each must be
    /// alive, off the cycle, and they must be pairwise distinct; interior
    /// arc members join the cycle too and must be off it as well.
    fn corridor(&self, z: VertexId, arc: &[VertexId]) -> Option<Vec<VertexId>> {
        let mut xs = Vec::with_capacity(arc.len() - 1);
        for i in 0..arc.len() - 1 {
            let (s, t) = quad_at(self.g, z, arc[i])?;
            debug_assert_eq!(t, arc[i + 1], "arc members are rotation-consecutive");
            if !self.alive[s as usize] || self.on_cycle[s as usize] {
                return None;
            }
            xs.push(s);
        }
        if arc[1..arc.len() - 1].iter().any(|&x| self.on_cycle[x as usize]) {
            return None;
        }
        let mut sorted = xs.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(xs)
    }

    fn valid_single(&self, z: VertexId, first: bool) -> bool {
        let zi = z as usize;
        self.alive[zi]
            && self.on_cycle[zi]
            && z != self.a
            && z != self.b
            && (first || self.peeled_adj[zi] >= 1)
            && self.alive_deg[zi] >= 2
            && self
                .alive_arc(z)
                .and_then(|arc| self.corridor(z, &arc))
                .is_some()
    }

    /// A pair peel removes `z` and its right cycle neighbor when the quad
    /// under them closes the cycle directly (its far corners are exactly the
    /// outer cycle neighbors).
    fn valid_pair(&self, z: VertexId) -> Option<VertexId> {
        let zi = z as usize;
        if !self.alive[zi] || !self.on_cycle[zi] || z == self.a || z == self.b {
            return None;
        }
        let p = self.next_c[zi];
        let pi = p as usize;
        if p == self.a || p == self.b {
            return None;
        }
        if self.alive_deg[zi] != 2 || self.alive_deg[pi] != 2 {
            return None;
        }
        if self.cycle_len < 6 || self.peeled_adj[zi] < 1 || self.peeled_adj[pi] < 1 {
            return None;
        }
        let (s, t) = quad_at(self.g, z, p)?;
        (s == self.next_c[pi] && t == self.prev_c[zi]).then_some(p)
    }

    fn peel_single(&mut self, z: VertexId) {
        let arc = self.alive_arc(z).expect("peel of a validated singleton");
        let xs = self.corridor(z, &arc).expect("peel of a validated singleton");
        let zi = z as usize;
        self.alive[zi] = false;
        self.on_cycle[zi] = false;
        self.alive_count -= 1;
        for &nb in self.g.neighbors(z) {
            if self.alive[nb as usize] {
                self.alive_deg[nb as usize] -= 1;
                self.peeled_adj[nb as usize] += 1;
            }
        }
        let l = self.prev_c[zi];
        let r = self.next_c[zi];
        // Left-to-right replacement of z between l and r: far corners and
        // interior arc members, interleaved, reversed relative to the arc.
        let mut seq = Vec::with_capacity(2 * arc.len() - 3);
        for i in (0..arc.len() - 1).rev() {
            seq.push(xs[i]);
            if i >= 1 {
                seq.push(arc[i]);
            }
        }
        let mut cur = l;
        for &snew in &seq {
            self.next_c[cur as usize] = snew;
            self.prev_c[snew as usize] = cur;
            self.on_cycle[snew as usize] = true;
            cur = snew;
        }
        self.next_c[cur as usize] = r;
        self.prev_c[r as usize] = cur;
        self.cycle_len = self.cycle_len + seq.len() - 1;

        let mut s0 = vec![z, l, r];
        s0.extend_from_slice(&seq);
        self.recheck_around(&s0);
    }

    fn peel_pair(&mut self, z: VertexId, p: VertexId) {
        debug_assert_eq!(self.valid_pair(z), Some(p));
        let l = self.prev_c[z as usize];
        let r = self.next_c[p as usize];
        for x in [z, p] {
            self.alive[x as usize] = false;
            self.on_cycle[x as usize] = false;
            self.alive_count -= 1;
        }
        for x in [z, p] {
            for &nb in self.g.neighbors(x) {
                if self.alive[nb as usize] {
                    self.alive_deg[nb as usize] -= 1;
                    self.peeled_adj[nb as usize] += 1;
                }
            }
        }
        self.next_c[l as usize] = r;
        self.prev_c[r as usize] = l;
        self.cycle_len -= 2;
        self.recheck_around(&[z, p, l, r]);
    }

    /// Recheck candidacy in the neighborhood a peel can affect: the touched
    /// vertices themselves, their neighbors, and everyone sharing a face
    /// with them. Outside this ball no validity input changed.
    fn recheck_around(&mut self, s0: &[VertexId]) {
        let mut ball: HashSet<VertexId> = HashSet::new();
        for &s in s0 {
            ball.insert(s);
            for &nb in self.g.neighbors(s) {
                if self.alive[nb as usize] {
                    ball.insert(nb);
                }
            }
            for &nb in self.g.neighbors(s) {
                let f = self.g.face_of_dart(s, nb).expect("dart of valid graph");
                for &m in &self.g.faces()[f as usize] {
                    ball.insert(m);
                }
            }
        }
        let refresh: Vec<VertexId> = ball.into_iter().collect();
        for x in refresh {
            self.recheck(x);
        }
    }

    fn recheck(&mut self, x: VertexId) {
        let xi = x as usize;
        let single_ok = self.valid_single(x, false);
        if single_ok != self.cached_single[xi] {
            let key = (x, 0u8, x);
            if single_ok {
                self.cands.insert(key);
            } else {
                self.cands.remove(&key);
            }
            self.cached_single[xi] = single_ok;
        }
        let pair_min = self.valid_pair(x).map(|p| x.min(p));
        if pair_min != self.cached_pair[xi] {
            if let Some(old) = self.cached_pair[xi] {
                self.cands.remove(&(old, 1, x));
            }
            if let Some(new) = pair_min {
                self.cands.insert((new, 1, x));
            }
            self.cached_pair[xi] = pair_min;
        }
    }
}

/// Corners of the quad at dart `(x, y)`: the traced face is `(x, y, s, t)`,
/// returned as `(s, t)`. None if the face is not a quadrilateral.
fn quad_at(g: &PlanarGraph, x: VertexId, y: VertexId) -> Option<(VertexId, VertexId)> {
    let f = &g.faces()[g.face_of_dart(x, y)? as usize];
    if f.len() != 4 {
        return None;
    }
    let px = f.iter().position(|&v| v == x)?;
    debug_assert_eq!(f[(px + 1) % 4], y);
    Some((f[(px + 2) % 4], f[(px + 3) % 4]))
}

/// Re-check every invariant of a canonical order against the radial graph,
/// prefix by prefix, from scratch. Quadratic; meant for tests and small to
/// medium instances.
pub fn verify_labeling(q: &QuadGraph, lab: &Labeling) -> Result<(), LabelingError> {
    let g = q.radial();
    let n = g.vertex_count();
    let [a, b, _c, d] = q.role_order();
    let m = lab.m();
    let err = |group: usize, reason: String| Err(LabelingError::Invalid { group, reason });

    // Partition and the fixed roles of the first and last groups.
    let mut seen = vec![false; n];
    for grp in lab.groups() {
        for x in grp.members() {
            if std::mem::replace(&mut seen[x as usize], true) {
                return err(0, format!("vertex {} in two groups", g.name(x)));
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return err(0, "groups do not cover all vertices".into());
    }
    if lab.group(1) != Group::Pair(a, b) {
        return err(1, "group 1 must be the base corner pair".into());
    }
    if lab.group(m) != Group::Single(d) {
        return err(m, "last group must be the remaining outer corner".into());
    }
    match lab.group(2) {
        Group::Pair(za, zb) if g.has_edge(a, za) && g.has_edge(b, zb) => {}
        _ => return err(2, "group 2 must bridge the base corners".into()),
    }

    let mut in_set = vec![false; n];
    for x in lab.group(1).members() {
        in_set[x as usize] = true;
    }
    let mut size = 2usize;
    for k in 2..=m {
        let grp = lab.group(k);
        // Group k conditions are judged against the exterior cycle of the
        // previous prefix.
        if k >= 3 {
            let ext = induced_cycle_from_dart(g, &in_set, a, b)
                .ok_or(LabelingError::Invalid {
                    group: k,
                    reason: "exterior boundary of the prefix is not a simple cycle".into(),
                })?;
            // Frontier left-to-right: reverse of the traced exterior.
            let mut frontier = vec![ext[0]];
            frontier.extend(ext[2..].iter().rev());
            frontier.push(ext[1]);
            let pos_of = |x: VertexId| frontier.iter().position(|&y| y == x);
            match grp {
                Group::Single(z) => {
                    let anchors: Vec<usize> = g
                        .neighbors(z)
                        .iter()
                        .filter(|&&nb| in_set[nb as usize])
                        .map(|&nb| {
                            pos_of(nb).ok_or(LabelingError::Invalid {
                                group: k,
                                reason: format!(
                                    "earlier neighbor {} of {} is not on the frontier",
                                    g.name(nb),
                                    g.name(z)
                                ),
                            })
                        })
                        .collect::<Result<_, _>>()?;
                    let mut sorted = anchors.clone();
                    sorted.sort_unstable();
                    if sorted.len() < 2 {
                        return err(k, format!("{} needs two earlier neighbors", g.name(z)));
                    }
                    if sorted.windows(2).any(|w| w[1] - w[0] != 2) {
                        return err(
                            k,
                            format!("earlier neighbors of {} do not alternate", g.name(z)),
                        );
                    }
                }
                Group::Pair(z0, z1) => {
                    if !g.has_edge(z0, z1) {
                        return err(k, "pair is not adjacent".into());
                    }
                    let anchor = |z: VertexId| -> Result<usize, LabelingError> {
                        let mut hits = g
                            .neighbors(z)
                            .iter()
                            .filter(|&&nb| in_set[nb as usize]);
                        let first = hits.next();
                        match (first, hits.next()) {
                            (Some(&nb), None) => pos_of(nb).ok_or(LabelingError::Invalid {
                                group: k,
                                reason: format!("anchor of {} off the frontier", g.name(z)),
                            }),
                            _ => Err(LabelingError::Invalid {
                                group: k,
                                reason: format!(
                                    "{} must have exactly one earlier neighbor",
                                    g.name(z)
                                ),
                            }),
                        }
                    };
                    let (p0, p1) = (anchor(z0)?, anchor(z1)?);
                    if p1 != p0 + 1 {
                        return err(k, "pair anchors must be consecutive, left first".into());
                    }
                }
            }
        }
        for x in grp.members() {
            in_set[x as usize] = true;
        }
        size += grp.size();

        // Later-neighbor requirement, vacuous for the last group.
        if k < m {
            for x in grp.members() {
                if !g.neighbors(x).iter().any(|&nb| !in_set[nb as usize]) {
                    return err(k, format!("{} has no later neighbor", g.name(x)));
                }
            }
        }

        // The prefix itself: biconnected, simple exterior, bounded faces
        // all quadrilaterals.
        if !is_biconnected(g, &in_set, size, a) {
            return err(k, "prefix is not biconnected".into());
        }
        let ext = induced_cycle_from_dart(g, &in_set, a, b).ok_or(LabelingError::Invalid {
            group: k,
            reason: "exterior boundary of the prefix is not a simple cycle".into(),
        })?;
        if !bounded_faces_are_quads(g, &in_set, (ext[0], ext[1])) {
            return err(k, "prefix closes a non-quadrilateral face".into());
        }
    }
    Ok(())
}

/// Trace the face of the prefix embedding containing dart `(a, b)`,
/// restricting rotations to `in_set`. None when the walk revisits a vertex
/// (boundary not simple) or the dart is missing.
fn induced_cycle_from_dart(
    g: &PlanarGraph,
    in_set: &[bool],
    a: VertexId,
    b: VertexId,
) -> Option<Vec<VertexId>> {
    if !in_set[a as usize] || !in_set[b as usize] || !g.has_edge(a, b) {
        return None;
    }
    let mut cyc = Vec::new();
    let (mut x, mut y) = (a, b);
    loop {
        cyc.push(x);
        let row = g.neighbors(y);
        let p = row.iter().position(|&t| t == x)?;
        let mut j = (p + row.len() - 1) % row.len();
        while !in_set[row[j] as usize] {
            j = (j + row.len() - 1) % row.len();
        }
        let nxt = row[j];
        x = y;
        y = nxt;
        if (x, y) == (a, b) {
            break;
        }
        if cyc.len() > g.vertex_count() {
            return None;
        }
    }
    let mut sorted = cyc.clone();
    sorted.sort_unstable();
    (!sorted.windows(2).any(|w| w[0] == w[1])).then_some(cyc)
}

/// Every face of the prefix embedding must be a quadrilateral except the
/// exterior one, identified by the dart it contains.
fn bounded_faces_are_quads(g: &PlanarGraph, in_set: &[bool], ext_dart: (VertexId, VertexId)) -> bool {
    let mut visited: HashSet<(VertexId, VertexId)> = HashSet::new();
    for u in 0..g.vertex_count() as VertexId {
        if !in_set[u as usize] {
            continue;
        }
        for &v in g.neighbors(u) {
            if !in_set[v as usize] || visited.contains(&(u, v)) {
                continue;
            }
            let mut len = 0usize;
            let mut is_ext = false;
            let (mut x, mut y) = (u, v);
            loop {
                visited.insert((x, y));
                len += 1;
                if (x, y) == ext_dart {
                    is_ext = true;
                }
                let row = g.neighbors(y);
                let p = row.iter().position(|&t| t == x).expect("reverse dart");
                let mut j = (p + row.len() - 1) % row.len();
                while !in_set[row[j] as usize] {
                    j = (j + row.len() - 1) % row.len();
                }
                let nxt = row[j];
                x = y;
                y = nxt;
                if (x, y) == (u, v) {
                    break;
                }
            }
            if !is_ext && len != 4 {
                return false;
            }
        }
    }
    true
}

/// Connectivity plus absence of articulation points over `in_set`, via one
/// iterative depth-first search.
fn is_biconnected(g: &PlanarGraph, in_set: &[bool], count: usize, start: VertexId) -> bool {
    if count < 3 {
        return false;
    }
    let n = g.vertex_count();
    let mut num = vec![0u32; n];
    let mut low = vec![0u32; n];
    let mut parent = vec![VertexId::MAX; n];
    let mut counter = 1u32;
    num[start as usize] = 1;
    low[start as usize] = 1;
    let mut visited = 1usize;
    let mut root_children = 0usize;
    let mut articulation = false;
    let mut stack: Vec<(VertexId, usize)> = vec![(start, 0)];
    loop {
        let (v, advance) = {
            let Some(frame) = stack.last_mut() else { break };
            let v = frame.0;
            let row = g.neighbors(v);
            if frame.1 < row.len() {
                let w = row[frame.1];
                frame.1 += 1;
                (v, Some(w))
            } else {
                (v, None)
            }
        };
        match advance {
            None => {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    let lv = low[v as usize];
                    if lv < low[p as usize] {
                        low[p as usize] = lv;
                    }
                    if p != start && lv >= num[p as usize] {
                        articulation = true;
                    }
                }
            }
            Some(w) if in_set[w as usize] => {
                if num[w as usize] == 0 {
                    counter += 1;
                    num[w as usize] = counter;
                    low[w as usize] = counter;
                    parent[w as usize] = v;
                    visited += 1;
                    if v == start {
                        root_children += 1;
                    }
                    stack.push((w, 0));
                } else if w != parent[v as usize] && num[w as usize] < low[v as usize] {
                    low[v as usize] = num[w as usize];
                }
            }
            Some(_) => {}
        }
    }
    visited == count && !articulation && root_children <= 1
}
