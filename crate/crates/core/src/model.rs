//! The fixed drawn triangulation of the n-punctured sphere.
//!
//! Punctures sit on a circle in the plane (the sphere is the plane plus a
//! point at infinity, which is NOT a puncture; it lives inside the outermost
//! face). Edges are ideal arcs between punctures:
//!
//!   - rim edges between circle-consecutive punctures (straight chords),
//!   - inner diagonals fanning from puncture 0 (straight chords),
//!   - outer diagonals fanning from puncture 0, routed outside the circle.
//!
//! This gives 3n-6 edges and 2n-4 triangles. All combinatorics (rotation
//! system, faces, links) are DERIVED from the drawing and validated, so no
//! incidence table is maintained by hand. Everything is exact rational.

use crate::geom::{angle_cmp, q, qr, seg_isect, Polyline, Pt, Q, SegIsect};
use num::traits::Signed;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub type EdgeId = usize;
pub type FaceId = usize;
pub type VertId = usize;

#[derive(Clone, Debug)]
pub struct ModelEdge {
    pub tail: VertId,
    pub head: VertId,
    pub line: Polyline,
    /// Face on the left when traveling tail -> head.
    pub left_face: FaceId,
    pub right_face: FaceId,
}

/// One side of a triangle, in counterclockwise boundary order.
/// `forward` is true when the ccw boundary traverses the edge tail -> head.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SideRef {
    pub edge: EdgeId,
    pub forward: bool,
}

#[derive(Clone, Debug)]
pub struct Face {
    /// The three sides in ccw order (interior on the left).
    pub sides: [SideRef; 3],
    /// corners[i] is the vertex between sides[i] and sides[(i+1)%3].
    pub corners: [VertId; 3],
}

impl Face {
    pub fn side_index(&self, edge: EdgeId) -> usize {
        self.sides
            .iter()
            .position(|s| s.edge == edge)
            .expect("edge is not a side of this face")
    }
    pub fn corner_between(&self, i: usize) -> VertId {
        self.corners[i]
    }
}

/// An end of an edge: `at_tail` marks the tail end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeEnd {
    pub edge: EdgeId,
    pub at_tail: bool,
}

#[derive(Clone, Debug)]
pub struct Model {
    pub n: usize,
    pub punctures: Vec<Pt>,
    pub edges: Vec<ModelEdge>,
    pub faces: Vec<Face>,
    /// Per puncture, incident edge ends in ccw cyclic order.
    pub links: Vec<Vec<EdgeEnd>>,
}

impl Model {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Face entered when crossing `edge` in the given direction
    /// (`to_right` = crossing from the left side to the right side).
    pub fn face_entered(&self, edge: EdgeId, to_right: bool) -> FaceId {
        if to_right {
            self.edges[edge].right_face
        } else {
            self.edges[edge].left_face
        }
    }

    pub fn face_exited(&self, edge: EdgeId, to_right: bool) -> FaceId {
        self.face_entered(edge, !to_right)
    }

    /// The normal coordinate vector of the link of puncture `v` (the
    /// peripheral curve around it): one crossing per incident edge end.
    pub fn link_vector(&self, v: VertId) -> Vec<u64> {
        let mut x = vec![0u64; self.edges.len()];
        for end in &self.links[v] {
            x[end.edge] += 1;
        }
        x
    }

    /// Position of an edge end in the ccw link of the vertex it lands on.
    pub fn link_index(&self, v: VertId, end: EdgeEnd) -> usize {
        self.links[v]
            .iter()
            .position(|e| *e == end)
            .expect("edge end not in link")
    }
}

/// Build (or fetch the cached) model for the n-punctured sphere, n >= 4.
pub fn model(n: usize) -> Arc<Model> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Model>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(build_model(n)))
        .clone()
}

const RADIUS: i64 = 16;
const SNAP: i64 = 1 << 12;

/// Rational point exactly on the circle of radius RADIUS at angle ~ 2*pi*k/n,
/// via the tangent half-angle parameterization.
fn circle_point(k: usize, n: usize) -> Pt {
    if 2 * k == n {
        return Pt::of(-RADIUS, 0);
    }
    let theta_half = std::f64::consts::PI * (k as f64) / (n as f64);
    let t_f = theta_half.tan();
    let t = qr((t_f * SNAP as f64).round() as i64, SNAP);
    let t2 = &t * &t;
    let denom = q(1) + &t2;
    let x = q(RADIUS) * (q(1) - &t2) / denom.clone();
    let y = q(RADIUS) * q(2) * &t / denom;
    Pt::new(x, y)
}

fn build_model(n: usize) -> Model {
    assert!(n >= 4, "need at least 4 punctures");
    let punctures: Vec<Pt> = (0..n).map(|k| circle_point(k, n)).collect();

    let mut edges: Vec<(VertId, VertId, Polyline)> = Vec::new();
    // Rim chords.
    for k in 0..n {
        let j = (k + 1) % n;
        edges.push((
            k,
            j,
            Polyline::new(vec![punctures[k].clone(), punctures[j].clone()]),
        ));
    }
    // Inner diagonals from puncture 0.
    for j in 2..=(n - 2) {
        edges.push((
            0,
            j,
            Polyline::new(vec![punctures[0].clone(), punctures[j].clone()]),
        ));
    }
    // Outer diagonals from puncture 0, routed outside past punctures 1..j-1.
    for j in 2..=(n - 2) {
        let s = q(1) + qr(j as i64 + 2, 2 * n as i64);
        let b = qr((n as i64 - 2 * j as i64) * RADIUS, 4 * n as i64);
        let mut pts = vec![punctures[0].clone()];
        // Departure waypoint, fanned so distinct outer diagonals leave p0 in
        // distinct directions.
        pts.push(Pt::new(q(RADIUS) * &s, b));
        for m in 1..=j {
            pts.push(punctures[m].scale(&s));
        }
        pts.push(punctures[j].clone());
        edges.push((0, j, Polyline::new(pts)));
    }
    assert_eq!(edges.len(), 3 * n - 6);

    validate_drawing(n, &punctures, &edges);

    // Rotation system: ccw-sorted edge ends at each puncture.
    let mut links: Vec<Vec<EdgeEnd>> = vec![Vec::new(); n];
    for (id, (tail, head, line)) in edges.iter().enumerate() {
        links[*tail].push(EdgeEnd {
            edge: id,
            at_tail: true,
        });
        links[*head].push(EdgeEnd {
            edge: id,
            at_tail: false,
        });
    }
    for v in 0..n {
        let dir = |end: &EdgeEnd| -> Pt {
            let line = &edges[end.edge].2;
            if end.at_tail {
                line.dir_from_start()
            } else {
                line.dir_from_end()
            }
        };
        links[v].sort_by(|a, b| angle_cmp(&dir(a), &dir(b)));
    }

    // Face tracing with half-edges. Half-edge id: 2*edge + (forward? 0 : 1).
    let he_count = 2 * edges.len();
    let he_head = |h: usize| -> VertId {
        let (t, hd, _) = &edges[h / 2];
        if h % 2 == 0 {
            *hd
        } else {
            *t
        }
    };
    let twin = |h: usize| -> usize { h ^ 1 };
    // cw-next in the rotation at a vertex, keyed by the half-edge DEPARTING it.
    let mut cw_next: HashMap<usize, usize> = HashMap::new();
    for v in 0..n {
        let ends = &links[v];
        let k = ends.len();
        for (i, end) in ends.iter().enumerate() {
            let dep = 2 * end.edge + if end.at_tail { 0 } else { 1 };
            let prev = &ends[(i + k - 1) % k];
            let dep_prev = 2 * prev.edge + if prev.at_tail { 0 } else { 1 };
            cw_next.insert(dep, dep_prev);
        }
    }

    let mut face_of = vec![usize::MAX; he_count];
    let mut faces: Vec<Face> = Vec::new();
    for start in 0..he_count {
        if face_of[start] != usize::MAX {
            continue;
        }
        let mut cycle = Vec::new();
        let mut h = start;
        loop {
            cycle.push(h);
            face_of[h] = faces.len();
            h = cw_next[&twin(h)];
            if h == start {
                break;
            }
        }
        assert_eq!(cycle.len(), 3, "face is not a triangle: {:?}", cycle);
        let sides = [
            SideRef {
                edge: cycle[0] / 2,
                forward: cycle[0] % 2 == 0,
            },
            SideRef {
                edge: cycle[1] / 2,
                forward: cycle[1] % 2 == 0,
            },
            SideRef {
                edge: cycle[2] / 2,
                forward: cycle[2] % 2 == 0,
            },
        ];
        let corners = [he_head(cycle[0]), he_head(cycle[1]), he_head(cycle[2])];
        faces.push(Face { sides, corners });
    }
    assert_eq!(faces.len(), 2 * n - 4, "face count mismatch");

    let model_edges: Vec<ModelEdge> = edges
        .into_iter()
        .enumerate()
        .map(|(id, (tail, head, line))| ModelEdge {
            tail,
            head,
            line,
            left_face: face_of[2 * id],
            right_face: face_of[2 * id + 1],
        })
        .collect();

    let model = Model {
        n,
        punctures,
        edges: model_edges,
        faces,
        links,
    };
    sanity_check(&model);
    model
}

/// Every pair of segments from distinct edges must be disjoint except at
/// shared puncture endpoints; punctures must avoid all segment interiors.
fn validate_drawing(n: usize, punctures: &[Pt], edges: &[(VertId, VertId, Polyline)]) {
    for (i, (_, _, a)) in edges.iter().enumerate() {
        // Non-adjacent segments within one polyline must not meet.
        let segs: Vec<_> = a.segments().collect();
        for s in 0..segs.len() {
            for t in (s + 2)..segs.len() {
                let r = seg_isect(segs[s].0, segs[s].1, segs[t].0, segs[t].1);
                assert!(
                    matches!(r, SegIsect::None),
                    "edge {} self-intersects at segments {}-{}",
                    i,
                    s,
                    t
                );
            }
        }
        for (j, (_, _, b)) in edges.iter().enumerate().skip(i + 1) {
            for (p, pn) in a.segments() {
                for (r, rn) in b.segments() {
                    match seg_isect(p, pn, r, rn) {
                        SegIsect::None => {}
                        SegIsect::Proper { .. } => {
                            panic!("edges {} and {} cross in the drawing (n={})", i, j, n)
                        }
                        SegIsect::Degenerate => {
                            // Shared puncture endpoints are the only excuse.
                            let shared = endpoint_shared(p, pn, r, rn, punctures);
                            assert!(
                                shared,
                                "edges {} and {} touch degenerately (n={})",
                                i, j, n
                            );
                        }
                    }
                }
            }
        }
    }
    for (k, pu) in punctures.iter().enumerate() {
        for (i, (t, h, line)) in edges.iter().enumerate() {
            for (a, b) in line.segments() {
                if crate::geom::orient(a, b, pu) == 0 && strictly_inside(a, b, pu) {
                    panic!("puncture {} lies on edge {} interior", k, i);
                }
                let _ = (t, h);
            }
        }
    }
    let _ = n;
}

fn endpoint_shared(p: &Pt, pn: &Pt, r: &Pt, rn: &Pt, punctures: &[Pt]) -> bool {
    for pu in punctures {
        let on_a = pu == p || pu == pn;
        let on_b = pu == r || pu == rn;
        if on_a && on_b {
            return true;
        }
    }
    false
}

fn strictly_inside(a: &Pt, b: &Pt, p: &Pt) -> bool {
    if p == a || p == b {
        return false;
    }
    let dx = (&b.x - &a.x).abs();
    let dy = (&b.y - &a.y).abs();
    if dx > dy {
        let lo = a.x.clone().min(b.x.clone());
        let hi = a.x.clone().max(b.x.clone());
        p.x > lo && p.x < hi
    } else {
        let lo = a.y.clone().min(b.y.clone());
        let hi = a.y.clone().max(b.y.clone());
        p.y > lo && p.y < hi
    }
}

fn sanity_check(m: &Model) {
    // Euler characteristic of the sphere.
    let v = m.n as i64;
    let e = m.edges.len() as i64;
    let f = m.faces.len() as i64;
    assert_eq!(v - e + f, 2, "not a sphere triangulation");
    // Each face has three distinct vertices and three distinct edges.
    for face in &m.faces {
        assert_ne!(face.sides[0].edge, face.sides[1].edge);
        assert_ne!(face.sides[1].edge, face.sides[2].edge);
        assert_ne!(face.sides[0].edge, face.sides[2].edge);
        assert_ne!(face.corners[0], face.corners[1]);
        assert_ne!(face.corners[1], face.corners[2]);
        assert_ne!(face.corners[0], face.corners[2]);
    }
    // Side/corner coherence: side[i] runs from corners[i-1] to corners[i].
    for face in &m.faces {
        for i in 0..3 {
            let s = face.sides[i];
            let e = &m.edges[s.edge];
            let (from, to) = if s.forward {
                (e.tail, e.head)
            } else {
                (e.head, e.tail)
            };
            let prev = face.corners[(i + 2) % 3];
            let here = face.corners[i];
            assert_eq!(from, prev, "side orientation mismatch");
            assert_eq!(to, here, "side orientation mismatch");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn models_build_for_small_n() {
        for n in 4..=12 {
            let m = model(n);
            assert_eq!(m.edge_count(), 3 * n - 6);
            assert_eq!(m.face_count(), 2 * n - 4);
            for v in 0..n {
                assert!(m.links[v].len() >= 2);
            }
        }
    }

    #[test]
    fn left_right_faces_differ_nowhere_needed() {
        let m = model(5);
        for e in &m.edges {
            // A triangle never borders itself along an edge here.
            assert_ne!(e.left_face, e.right_face);
        }
    }
}
