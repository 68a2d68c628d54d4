//! Exact minimal-position intersection machinery.
//!
//! Strands crossing a common edge are ordered by unfolding both itineraries
//! away from the edge until they diverge; the divergence direction fixes the
//! order the geodesic representatives would have. With those per-edge orders,
//! crossings are counted face by face via cyclic interleaving of chord
//! endpoints, with no bigon removal required: the arrangement is already taut.

use crate::diagram::{ArcDiagram, CurveDiagram, Step};
use crate::model::{FaceId, Model, VertId};
use std::cmp::Ordering;

const MOD1: u128 = (1 << 61) - 1;
const MOD2: u128 = (1 << 31) - 1;
const BASE1: u128 = 1_000_003;
const BASE2: u128 = 65_537;

#[derive(Clone, Debug)]
pub enum TrackKind {
    Closed,
    Arc {
        start_vert: VertId,
        start_face: FaceId,
        end_vert: VertId,
        end_face: FaceId,
    },
}

#[derive(Clone, Debug)]
pub struct Track {
    pub steps: Vec<Step>,
    pub kind: TrackKind,
}

impl Track {
    pub fn closed(d: &CurveDiagram) -> Track {
        Track {
            steps: d.steps.clone(),
            kind: TrackKind::Closed,
        }
    }
    pub fn arc(d: &ArcDiagram) -> Track {
        Track {
            steps: d.steps.clone(),
            kind: TrackKind::Arc {
                start_vert: d.start_vert,
                start_face: d.start_face,
                end_vert: d.end_vert,
                end_face: d.end_face,
            },
        }
    }
    fn is_closed(&self) -> bool {
        matches!(self.kind, TrackKind::Closed)
    }
}

struct HashedSeq {
    items: Vec<Step>,
    h1: Vec<u64>,
    h2: Vec<u64>,
}

impl HashedSeq {
    fn new(items: Vec<Step>) -> HashedSeq {
        let mut h1 = Vec::with_capacity(items.len() + 1);
        let mut h2 = Vec::with_capacity(items.len() + 1);
        h1.push(0);
        h2.push(0);
        for s in &items {
            let code = (s.edge as u128) * 2 + s.to_right as u128 + 1;
            let a = (*h1.last().unwrap() as u128 * BASE1 + code) % MOD1;
            let b = (*h2.last().unwrap() as u128 * BASE2 + code) % MOD2;
            h1.push(a as u64);
            h2.push(b as u64);
        }
        HashedSeq { items, h1, h2 }
    }

    fn range_hash(&self, s: usize, l: usize, pow1: &[u64], pow2: &[u64]) -> (u64, u64) {
        let a = (self.h1[s + l] as u128 + MOD1 * MOD1
            - (self.h1[s] as u128 * pow1[l] as u128) % MOD1)
            % MOD1;
        let b = (self.h2[s + l] as u128 + MOD2 * MOD2
            - (self.h2[s] as u128 * pow2[l] as u128) % MOD2)
            % MOD2;
        (a as u64, b as u64)
    }
}

/// A visit of a track to an edge: `step` indexes into the track's steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Visit {
    pub track: usize,
    pub step: usize,
}

#[derive(Clone, Copy)]
struct Ray {
    track: usize,
    backward: bool,
    start: usize,
    /// Number of items before the ray terminates in a cusp; usize::MAX when cyclic.
    remaining: usize,
}

enum RayEvent {
    Item(Step),
    Terminal(VertId, FaceId),
}

/// A crossing between two tracks, located on the chords following `step_a`
/// and `step_b`; `order_key` sorts crossings along track a's chord.
#[derive(Clone, Debug)]
pub struct Crossing {
    pub step_a: usize,
    pub step_b: usize,
    pub order_key: u64,
}

pub struct Arrangement<'m> {
    pub m: &'m Model,
    pub tracks: Vec<Track>,
    fwd: Vec<HashedSeq>,
    bwd: Vec<HashedSeq>,
    pow1: Vec<u64>,
    pow2: Vec<u64>,
    /// Per edge, visits sorted tail -> head.
    pub edge_visits: Vec<Vec<Visit>>,
    /// order_index[track][step] = sorted index on that step's edge.
    order_index: Vec<Vec<usize>>,
}

impl<'m> Arrangement<'m> {
    pub fn new(m: &'m Model, tracks: Vec<Track>) -> Arrangement<'m> {
        let total: usize = tracks.iter().map(|t| t.steps.len()).sum();
        let cap = 2 * total + 4;
        let mut fwd = Vec::new();
        let mut bwd = Vec::new();
        for t in &tracks {
            let l = t.steps.len();
            let reps = if t.is_closed() {
                (cap + l) / l.max(1) + 2
            } else {
                1
            };
            let mut f = Vec::with_capacity(l * reps);
            for _ in 0..reps {
                f.extend_from_slice(&t.steps);
            }
            let mut b: Vec<Step> = t.steps.iter().rev().map(|s| s.flipped()).collect();
            let b1 = b.clone();
            for _ in 1..reps {
                b.extend_from_slice(&b1);
            }
            fwd.push(HashedSeq::new(f));
            bwd.push(HashedSeq::new(b));
        }
        let maxlen = fwd
            .iter()
            .chain(bwd.iter())
            .map(|h| h.items.len())
            .max()
            .unwrap_or(0);
        let mut pow1 = vec![1u64; maxlen + 1];
        let mut pow2 = vec![1u64; maxlen + 1];
        for i in 1..=maxlen {
            pow1[i] = ((pow1[i - 1] as u128 * BASE1) % MOD1) as u64;
            pow2[i] = ((pow2[i - 1] as u128 * BASE2) % MOD2) as u64;
        }

        let mut arr = Arrangement {
            m,
            tracks,
            fwd,
            bwd,
            pow1,
            pow2,
            edge_visits: vec![Vec::new(); m.edge_count()],
            order_index: Vec::new(),
        };

        let mut per_edge: Vec<Vec<Visit>> = vec![Vec::new(); m.edge_count()];
        for (ti, t) in arr.tracks.iter().enumerate() {
            for (si, s) in t.steps.iter().enumerate() {
                per_edge[s.edge as usize].push(Visit {
                    track: ti,
                    step: si,
                });
            }
        }
        for list in per_edge.iter_mut() {
            list.sort_by(|a, b| arr.cmp_visits(*a, *b));
        }
        arr.order_index = arr
            .tracks
            .iter()
            .map(|t| vec![usize::MAX; t.steps.len()])
            .collect();
        for list in &per_edge {
            for (i, v) in list.iter().enumerate() {
                arr.order_index[v.track][v.step] = i;
            }
        }
        arr.edge_visits = per_edge;
        arr
    }

    fn step_of(&self, v: Visit) -> Step {
        self.tracks[v.track].steps[v.step]
    }

    fn ray(&self, v: Visit, into_left: bool) -> Ray {
        let s = self.step_of(v);
        let l = self.tracks[v.track].steps.len();
        let backward = s.to_right == into_left;
        let closed = self.tracks[v.track].is_closed();
        if backward {
            Ray {
                track: v.track,
                backward: true,
                start: l - v.step,
                remaining: if closed { usize::MAX } else { v.step },
            }
        } else {
            Ray {
                track: v.track,
                backward: false,
                start: v.step + 1,
                remaining: if closed { usize::MAX } else { l - 1 - v.step },
            }
        }
    }

    fn seq(&self, r: &Ray) -> &HashedSeq {
        if r.backward {
            &self.bwd[r.track]
        } else {
            &self.fwd[r.track]
        }
    }

    fn ray_event(&self, r: &Ray, idx: usize) -> RayEvent {
        if idx < r.remaining {
            RayEvent::Item(self.seq(r).items[r.start + idx])
        } else {
            match &self.tracks[r.track].kind {
                TrackKind::Closed => unreachable!(),
                TrackKind::Arc {
                    start_vert,
                    start_face,
                    end_vert,
                    end_face,
                } => {
                    if r.backward {
                        RayEvent::Terminal(*start_vert, *start_face)
                    } else {
                        RayEvent::Terminal(*end_vert, *end_face)
                    }
                }
            }
        }
    }

    /// Length of the longest common item prefix of two rays, capped.
    fn lcp(&self, a: &Ray, b: &Ray, cap: usize) -> usize {
        let cap = cap.min(a.remaining).min(b.remaining);
        let sa = self.seq(a);
        let sb = self.seq(b);
        let cap = cap
            .min(sa.items.len() - a.start)
            .min(sb.items.len() - b.start);
        let (mut lo, mut hi) = (0usize, cap);
        while lo < hi {
            let mid = (lo + hi + 1) / 2;
            let ha = sa.range_hash(a.start, mid, &self.pow1, &self.pow2);
            let hb = sb.range_hash(b.start, mid, &self.pow1, &self.pow2);
            if ha == hb {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo
    }

    /// Compare the positions of two visits along their common edge, unfolding
    /// into one side. Returns the order dictated by the divergence at that
    /// end of the shared corridor, plus an intrinsic key identifying the end,
    /// or None when the rays are parallel (or both end in the same cusp).
    fn cmp_side(&self, u: Visit, v: Visit, into_left: bool) -> Option<(Ordering, DivKey)> {
        let e = self.step_of(u).edge as usize;
        debug_assert_eq!(e, self.step_of(v).edge as usize);
        let ru = self.ray(u, into_left);
        let rv = self.ray(v, into_left);
        let total = self.tracks[u.track].steps.len() + self.tracks[v.track].steps.len();
        let cap = total + 2;
        let l = self.lcp(&ru, &rv, cap);
        if l >= cap {
            return None;
        }
        let eu = self.ray_event(&ru, l);
        let ev = self.ray_event(&rv, l);
        // Divergence face and its entry edge.
        let (f_div, e_entry) = if l == 0 {
            let f = if into_left {
                self.m.edges[e].left_face
            } else {
                self.m.edges[e].right_face
            };
            (f, e)
        } else {
            let prev = self.seq(&ru).items[ru.start + l - 1];
            (
                self.m.face_entered(prev.edge as usize, prev.to_right),
                prev.edge as usize,
            )
        };
        let rank_u = self.event_rank(&eu, f_div, e_entry);
        let rank_v = self.event_rank(&ev, f_div, e_entry);
        if rank_u == rank_v {
            // Both rays terminate at the same corner.
            return None;
        }
        // Smaller rank = exits closer to the ccw end of the entry side =
        // larger position in the face's ccw boundary coordinate. No net
        // inversion accumulates along the shared corridor.
        let u_pos_greater = rank_u < rank_v;
        let f_walk = if into_left {
            self.m.edges[e].left_face
        } else {
            self.m.edges[e].right_face
        };
        // Convert the boundary coordinate on the original edge to the global
        // tail->head slot order.
        let forward = self.m.edges[e].left_face == f_walk;
        let u_greater_th = u_pos_greater == forward;
        let enc = |ev: &RayEvent| -> u64 {
            match ev {
                RayEvent::Item(s) => 2 * (s.edge as u64) + s.to_right as u64,
                RayEvent::Terminal(v, f) => (1 << 40) + ((*v as u64) << 20) + *f as u64,
            }
        };
        let (a, b) = (enc(&eu), enc(&ev));
        let key = DivKey {
            face: f_div,
            entry: e_entry,
            ev_lo: a.min(b),
            ev_hi: a.max(b),
        };
        Some((
            if u_greater_th {
                Ordering::Greater
            } else {
                Ordering::Less
            },
            key,
        ))
    }

    /// Boundary rank of a ray event within face `f`, counted ccw from the
    /// entry side: 1,3,5 for the corners, 2,4 for the other two sides.
    fn event_rank(&self, ev: &RayEvent, f: FaceId, e_entry: usize) -> u8 {
        let face = &self.m.faces[f];
        let i_in = face.side_index(e_entry);
        match ev {
            RayEvent::Item(s) => {
                debug_assert_eq!(self.m.face_exited(s.edge as usize, s.to_right), f);
                let i = face.side_index(s.edge as usize);
                let off = (i + 3 - i_in) % 3;
                debug_assert!(off == 1 || off == 2);
                (2 * off) as u8
            }
            RayEvent::Terminal(v, tf) => {
                debug_assert_eq!(*tf, f);
                let c = face
                    .corners
                    .iter()
                    .position(|x| x == v)
                    .expect("terminal vertex not on face");
                let off = (c + 3 - i_in) % 3;
                (2 * off + 1) as u8
            }
        }
    }

    fn cmp_visits(&self, u: Visit, v: Visit) -> Ordering {
        if u == v {
            return Ordering::Equal;
        }
        let left = self.cmp_side(u, v, true);
        let right = self.cmp_side(u, v, false);
        match (left, right) {
            // Orders dictated by the two corridor ends agree for pairs that
            // do not cross; for crossing pairs the crossing is pushed towards
            // the end with the larger intrinsic key, so the order everywhere
            // along the corridor is the one dictated by the smaller key.
            (Some((ol, _)), None) => return ol,
            (None, Some((or_, _))) => return or_,
            (Some((ol, kl)), Some((or_, kr))) => {
                if ol == or_ {
                    return ol;
                }
                assert!(kl != kr, "cannot anchor a crossing strand pair");
                return if kl < kr { ol } else { or_ };
            }
            (None, None) => {}
        }
        // Fully parallel strands never cross. Order them as consistently
        // pushed-off copies: a fixed bundle order, flipped at crossings that
        // run against the edge co-orientation so the realization transports
        // without creating phantom crossings.
        let base = if u.track != v.track {
            u.track.cmp(&v.track)
        } else {
            let l = self.tracks[u.track].steps.len();
            let d = (v.step + l - u.step) % l;
            assert!(
                2 * d != l,
                "unexpected half-period symmetric strand pairing"
            );
            if d < l - d {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        };
        if self.step_of(u).to_right {
            base
        } else {
            base.reverse()
        }
    }

    /// Boundary coordinate layout of a face: each side contributes its visit
    /// slots then one corner marker.
    fn face_coord(&self, f: FaceId, item: &ChordEnd) -> u64 {
        let face = &self.m.faces[f];
        let mut off = 0u64;
        for i in 0..3 {
            let s = face.sides[i];
            let x = self.edge_visits[s.edge].len() as u64;
            match item {
                ChordEnd::Side { side_idx, pos } if *side_idx == i => {
                    return off + *pos as u64;
                }
                ChordEnd::Corner { corner_idx } if *corner_idx == i => {
                    return off + x;
                }
                _ => {}
            }
            off += x + 1;
        }
        unreachable!("chord end not located in face")
    }

    fn face_coord_total(&self, f: FaceId) -> u64 {
        let face = &self.m.faces[f];
        face.sides
            .iter()
            .map(|s| self.edge_visits[s.edge].len() as u64 + 1)
            .sum()
    }

    /// The chords of one track through each face, as boundary coordinates.
    fn chords_of(&self, ti: usize) -> Vec<(FaceId, u64, u64, usize)> {
        let t = &self.tracks[ti];
        let l = t.steps.len();
        let mut out = Vec::new();
        let end_of_visit = |step: usize, leaving: bool| -> (FaceId, ChordEnd) {
            let s = t.steps[step];
            let e = s.edge as usize;
            let f = if leaving {
                self.m.face_entered(e, s.to_right)
            } else {
                self.m.face_exited(e, s.to_right)
            };
            let face = &self.m.faces[f];
            let side_idx = face.side_index(e);
            let idx = self.order_index[ti][step];
            let x = self.edge_visits[e].len();
            let pos = if face.sides[side_idx].forward {
                idx
            } else {
                x - 1 - idx
            };
            (f, ChordEnd::Side { side_idx, pos })
        };
        match &t.kind {
            TrackKind::Closed => {
                for i in 0..l {
                    let j = (i + 1) % l;
                    let (f, a) = end_of_visit(i, true);
                    let (f2, b) = end_of_visit(j, false);
                    debug_assert_eq!(f, f2);
                    out.push((f, self.face_coord(f, &a), self.face_coord(f, &b), i));
                }
            }
            TrackKind::Arc {
                start_vert,
                start_face,
                end_vert,
                end_face,
            } => {
                let corner_end = |f: FaceId, v: VertId| -> ChordEnd {
                    let c = self.m.faces[f]
                        .corners
                        .iter()
                        .position(|x| x == &v)
                        .expect("corner not on face");
                    ChordEnd::Corner { corner_idx: c }
                };
                if l == 0 {
                    // An edge-parallel arc is a single corner-to-corner chord.
                    debug_assert_eq!(start_face, end_face);
                    let f = *start_face;
                    let a = corner_end(f, *start_vert);
                    let b = corner_end(f, *end_vert);
                    out.push((f, self.face_coord(f, &a), self.face_coord(f, &b), 0));
                    return out;
                }
                let (f0, b0) = end_of_visit(0, false);
                debug_assert_eq!(f0, *start_face);
                let a0 = corner_end(f0, *start_vert);
                out.push((f0, self.face_coord(f0, &a0), self.face_coord(f0, &b0), l));
                for i in 0..l - 1 {
                    let (f, a) = end_of_visit(i, true);
                    let (f2, b) = end_of_visit(i + 1, false);
                    debug_assert_eq!(f, f2);
                    out.push((f, self.face_coord(f, &a), self.face_coord(f, &b), i));
                }
                let (fl, al) = end_of_visit(l - 1, true);
                debug_assert_eq!(fl, *end_face);
                let bl = corner_end(fl, *end_vert);
                out.push((
                    fl,
                    self.face_coord(fl, &al),
                    self.face_coord(fl, &bl),
                    l - 1,
                ));
            }
        }
        out
    }

    /// All crossings between two tracks. `step_a`/`step_b` name the chord the
    /// crossing sits on (the chord after that step; an arc's initial chord is
    /// labeled `len`), and `order_key` orders crossings along a's chord away
    /// from its entry point.
    pub fn crossings_between(&self, ta: usize, tb: usize) -> Vec<Crossing> {
        assert_ne!(ta, tb);
        let ca = self.chords_of(ta);
        let cb = self.chords_of(tb);
        let mut per_face: Vec<Vec<&(FaceId, u64, u64, usize)>> =
            vec![Vec::new(); self.m.face_count()];
        for c in &cb {
            per_face[c.0].push(c);
        }
        let mut out = Vec::new();
        for a in &ca {
            let cyc = self.face_coord_total(a.0);
            for b in &per_face[a.0] {
                if let Some(key) = chord_cross_key(a.1, a.2, b.1, b.2, cyc) {
                    out.push(Crossing {
                        step_a: a.3,
                        step_b: b.3,
                        order_key: key,
                    });
                }
            }
        }
        out
    }

    pub fn count_between(&self, ta: usize, tb: usize) -> u64 {
        self.crossings_between(ta, tb).len() as u64
    }
}

enum ChordEnd {
    Side { side_idx: usize, pos: usize },
    Corner { corner_idx: usize },
}

/// Intrinsic identification of one end of a shared strand corridor: the
/// divergence face, the corridor edge entering it, and the two divergence
/// events. Identical no matter which corridor edge the walk started from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct DivKey {
    face: FaceId,
    entry: usize,
    ev_lo: u64,
    ev_hi: u64,
}

/// Do chords (a1,a2) and (b1,b2) cross inside the face, given cyclic boundary
/// coordinates? Returns the position key of b's endpoint inside the ccw arc
/// a1 -> a2 when they do.
fn chord_cross_key(a1: u64, a2: u64, b1: u64, b2: u64, cyc: u64) -> Option<u64> {
    if a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2 {
        // Shared corners: arcs into the same cusp do not cross there.
        return None;
    }
    let rel = |x: u64| (x + cyc - a1) % cyc;
    let ra2 = rel(a2);
    let rb1 = rel(b1);
    let rb2 = rel(b2);
    let in1 = rb1 > 0 && rb1 < ra2;
    let in2 = rb2 > 0 && rb2 < ra2;
    if in1 != in2 {
        Some(if in1 { rb1 } else { rb2 })
    } else {
        None
    }
}

/// Minimal geometric intersection number of two closed curve diagrams.
pub fn intersection_number(m: &Model, a: &CurveDiagram, b: &CurveDiagram) -> u64 {
    if a.steps == b.steps {
        return 0;
    }
    let arr = Arrangement::new(m, vec![Track::closed(a), Track::closed(b)]);
    arr.count_between(0, 1)
}

/// Minimal intersection number of a closed curve with an ideal arc.
pub fn curve_arc_intersection(m: &Model, a: &CurveDiagram, r: &ArcDiagram) -> u64 {
    let arr = Arrangement::new(m, vec![Track::closed(a), Track::arc(r)]);
    arr.count_between(0, 1)
}

/// Interior intersection number of two ideal arcs (endpoint meetings ignored).
pub fn arc_arc_intersection(m: &Model, r1: &ArcDiagram, r2: &ArcDiagram) -> u64 {
    let arr = Arrangement::new(m, vec![Track::arc(r1), Track::arc(r2)]);
    arr.count_between(0, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::trace;
    use crate::model::model;

    #[test]
    fn disjoint_links_have_zero_intersection() {
        let m = model(6);
        let a = trace(&m, &m.link_vector(1)).unwrap().remove(0);
        let b = trace(&m, &m.link_vector(3)).unwrap().remove(0);
        assert_eq!(intersection_number(&m, &a, &b), 0);
        assert_eq!(intersection_number(&m, &a, &a.clone()), 0);
    }

    #[test]
    fn parallel_copies_do_not_cross() {
        let m = model(5);
        for v in 0..5 {
            let a = trace(&m, &m.link_vector(v)).unwrap().remove(0);
            let b = a.clone();
            let arr = Arrangement::new(&m, vec![Track::closed(&a), Track::closed(&b)]);
            assert_eq!(arr.count_between(0, 1), 0);
        }
    }
}
