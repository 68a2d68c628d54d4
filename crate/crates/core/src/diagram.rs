//! Combinatorial diagrams of curves and ideal arcs over the fixed
//! triangulation: cyclic (or end-anchored) sequences of directed edge
//! crossings, plus the reductions that bring a diagram to taut position and
//! the slot tracing that reconstructs diagrams from normal coordinates.

use crate::model::{FaceId, Model, VertId};
use thiserror::Error;

/// One transverse crossing of a triangulation edge. `to_right` means the
/// strand passes from the edge's left side to its right side (left/right as
/// seen traveling tail -> head along the edge).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Step {
    pub edge: u32,
    pub to_right: bool,
}

impl Step {
    pub fn flipped(self) -> Step {
        Step {
            edge: self.edge,
            to_right: !self.to_right,
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("coordinates violate the matching conditions")]
    NotRealizable,
    #[error("coordinates describe a multicurve with {0} components")]
    NotConnected(usize),
    #[error("curve is trivial or isotopic into a puncture")]
    Peripheral,
}

/// A closed curve as a cyclic crossing sequence. Consecutive steps (cyclically)
/// always share a face: the face entered by one step is exited by the next.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveDiagram {
    pub steps: Vec<Step>,
}

/// An ideal arc between two punctures. The arc leaves its start vertex inside
/// the corner of `start_face` at `start_vert`, crosses `steps` in order, and
/// lands in the corner of `end_face` at `end_vert`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcDiagram {
    pub start_vert: VertId,
    pub start_face: FaceId,
    pub steps: Vec<Step>,
    pub end_vert: VertId,
    pub end_face: FaceId,
}

impl CurveDiagram {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn coords(&self, m: &Model) -> Vec<u64> {
        let mut x = vec![0u64; m.edge_count()];
        for s in &self.steps {
            x[s.edge as usize] += 1;
        }
        x
    }

    pub fn assert_valid(&self, m: &Model) {
        let k = self.steps.len();
        for i in 0..k {
            let cur = self.steps[i];
            let nxt = self.steps[(i + 1) % k];
            let entered = m.face_entered(cur.edge as usize, cur.to_right);
            let exited = m.face_exited(nxt.edge as usize, nxt.to_right);
            assert_eq!(entered, exited, "invalid step sequence at {}", i);
        }
    }
}

impl ArcDiagram {
    pub fn coords(&self, m: &Model) -> Vec<u64> {
        let mut x = vec![0u64; m.edge_count()];
        for s in &self.steps {
            x[s.edge as usize] += 1;
        }
        x
    }

    pub fn assert_valid(&self, m: &Model) {
        if let Some(first) = self.steps.first() {
            assert_eq!(
                m.face_exited(first.edge as usize, first.to_right),
                self.start_face
            );
            let last = self.steps.last().unwrap();
            assert_eq!(
                m.face_entered(last.edge as usize, last.to_right),
                self.end_face
            );
            for w in self.steps.windows(2) {
                let entered = m.face_entered(w[0].edge as usize, w[0].to_right);
                let exited = m.face_exited(w[1].edge as usize, w[1].to_right);
                assert_eq!(entered, exited, "invalid arc step sequence");
            }
        } else {
            assert_eq!(self.start_face, self.end_face);
        }
        // Terminal corners must be corners of the terminal faces.
        assert!(crate::model::model(m.n).faces[self.start_face]
            .corners
            .contains(&self.start_vert));
        assert!(crate::model::model(m.n).faces[self.end_face]
            .corners
            .contains(&self.end_vert));
    }

    /// The arc with the opposite orientation.
    pub fn reversed(&self) -> ArcDiagram {
        ArcDiagram {
            start_vert: self.end_vert,
            start_face: self.end_face,
            steps: self.steps.iter().rev().map(|s| s.flipped()).collect(),
            end_vert: self.start_vert,
            end_face: self.start_face,
        }
    }
}

/// Cancel consecutive same-edge crossings of a closed diagram (a strand that
/// enters a face and immediately backs out over the same edge), cyclically,
/// until none remain. This is a complete tightening procedure: a taut
/// diagram's crossing counts are the normal coordinates of the curve class.
pub fn normalize_curve_steps(mut steps: Vec<Step>) -> Vec<Step> {
    let mut stack: Vec<Step> = Vec::with_capacity(steps.len());
    for s in steps.drain(..) {
        if let Some(top) = stack.last() {
            if top.edge == s.edge && top.to_right != s.to_right {
                stack.pop();
                continue;
            }
        }
        stack.push(s);
    }
    // Wraparound cancellation.
    loop {
        if stack.len() >= 2 {
            let first = stack[0];
            let last = *stack.last().unwrap();
            if first.edge == last.edge && first.to_right != last.to_right {
                stack.pop();
                stack.remove(0);
                continue;
            }
        }
        break;
    }
    stack
}

/// Tighten an ideal arc: interior backtracks cancel as for curves, and a
/// first/last crossing over an edge incident to the terminal corner slides
/// off around the endpoint.
pub fn normalize_arc(m: &Model, mut arc: ArcDiagram) -> ArcDiagram {
    loop {
        let before = arc.steps.len();
        // Interior backtracks.
        let mut stack: Vec<Step> = Vec::with_capacity(arc.steps.len());
        for s in arc.steps.drain(..) {
            if let Some(top) = stack.last() {
                if top.edge == s.edge && top.to_right != s.to_right {
                    stack.pop();
                    continue;
                }
            }
            stack.push(s);
        }
        arc.steps = stack;
        // End reductions at the start.
        loop {
            let Some(&first) = arc.steps.first() else {
                break;
            };
            let face = &m.faces[arc.start_face];
            let ci = face
                .corners
                .iter()
                .position(|&v| v == arc.start_vert)
                .expect("start corner not on start face");
            let adj1 = face.sides[ci].edge;
            let adj2 = face.sides[(ci + 1) % 3].edge;
            if first.edge as usize == adj1 || first.edge as usize == adj2 {
                arc.start_face = m.face_entered(first.edge as usize, first.to_right);
                arc.steps.remove(0);
            } else {
                break;
            }
        }
        // End reductions at the end.
        loop {
            let Some(&last) = arc.steps.last() else {
                break;
            };
            let face = &m.faces[arc.end_face];
            let ci = face
                .corners
                .iter()
                .position(|&v| v == arc.end_vert)
                .expect("end corner not on end face");
            let adj1 = face.sides[ci].edge;
            let adj2 = face.sides[(ci + 1) % 3].edge;
            if last.edge as usize == adj1 || last.edge as usize == adj2 {
                arc.end_face = m.face_exited(last.edge as usize, last.to_right);
                arc.steps.pop();
            } else {
                break;
            }
        }
        if arc.steps.len() == before {
            break;
        }
    }
    arc
}

/// Slot-trace normal coordinates into connected components.
///
/// Within each face, corner arcs pair the innermost slots of the two adjacent
/// sides; crossing points along each edge are indexed tail -> head.
pub fn trace(m: &Model, coords: &[u64]) -> Result<Vec<CurveDiagram>, DiagramError> {
    assert_eq!(coords.len(), m.edge_count());
    if coords.iter().all(|&x| x == 0) {
        return Err(DiagramError::NotRealizable);
    }
    // Matching conditions per face.
    for face in &m.faces {
        let x: Vec<i64> = face
            .sides
            .iter()
            .map(|s| coords[s.edge] as i64)
            .collect();
        let total = x[0] + x[1] + x[2];
        if total % 2 != 0 {
            return Err(DiagramError::NotRealizable);
        }
        for i in 0..3 {
            // Arcs cutting the corner between sides i and i+1.
            let t = x[i] + x[(i + 1) % 3] - x[(i + 2) % 3];
            if t < 0 || t % 2 != 0 {
                return Err(DiagramError::NotRealizable);
            }
        }
    }

    // Global crossing-point ids: per edge, slots 0..x[e] in tail->head order.
    let mut offset = vec![0usize; m.edge_count() + 1];
    for e in 0..m.edge_count() {
        offset[e + 1] = offset[e] + coords[e] as usize;
    }
    let total_pts = offset[m.edge_count()];
    let mut pt_edge = vec![0usize; total_pts];
    for e in 0..m.edge_count() {
        for p in offset[e]..offset[e + 1] {
            pt_edge[p] = e;
        }
    }

    // Each crossing point gets exactly one in-face arc per adjacent face.
    let mut conn: Vec<Vec<(usize, FaceId)>> = vec![Vec::with_capacity(2); total_pts];

    // Point id for a face-side position (pos in ccw boundary order of the face).
    let pt_at = |face: &crate::model::Face, side_idx: usize, pos: usize| -> usize {
        let s = face.sides[side_idx];
        let x = coords[s.edge] as usize;
        let slot = if s.forward { pos } else { x - 1 - pos };
        offset[s.edge] + slot
    };

    for (fid, face) in m.faces.iter().enumerate() {
        let x: Vec<usize> = face
            .sides
            .iter()
            .map(|s| coords[s.edge] as usize)
            .collect();
        for i in 0..3 {
            let j = (i + 1) % 3;
            let k = (i + 2) % 3;
            let t = (x[i] + x[j] - x[k]) / 2;
            // Corner arcs between side i (its last t positions, ccw order)
            // and side j (its first t positions), nested.
            for a in 0..t {
                let p = pt_at(face, i, x[i] - 1 - a);
                let q = pt_at(face, j, a);
                conn[p].push((q, fid));
                conn[q].push((p, fid));
            }
        }
    }

    for c in conn.iter() {
        if c.len() != 2 {
            return Err(DiagramError::NotRealizable);
        }
        debug_assert_ne!(c[0].1, c[1].1);
    }

    // Trace cycles, alternating faces at each point.
    let mut seen = vec![false; total_pts];
    let mut components = Vec::new();
    for start in 0..total_pts {
        if seen[start] {
            continue;
        }
        let mut steps = Vec::new();
        let step_of = |pt: usize, f_out: FaceId| -> Step {
            let e = pt_edge[pt];
            Step {
                edge: e as u32,
                to_right: f_out == m.edges[e].right_face,
            }
        };
        seen[start] = true;
        let (mut cur, mut via) = conn[start][0];
        steps.push(step_of(start, via));
        while cur != start {
            seen[cur] = true;
            let (nxt, f) = if conn[cur][0].1 != via {
                conn[cur][0]
            } else {
                conn[cur][1]
            };
            steps.push(step_of(cur, f));
            via = f;
            cur = nxt;
        }
        components.push(CurveDiagram { steps });
    }
    Ok(components)
}

/// The two sides of a separating curve on the sphere, as puncture sets.
/// Punctures joined by an edge are on the same side iff the edge is crossed
/// an even number of times.
pub fn puncture_sides(m: &Model, coords: &[u64]) -> (Vec<VertId>, Vec<VertId>) {
    let n = m.n;
    let mut side = vec![u8::MAX; n];
    side[0] = 0;
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(0usize);
    while let Some(v) = queue.pop_front() {
        for end in &m.links[v] {
            let e = &m.edges[end.edge];
            let w = if e.tail == v { e.head } else { e.tail };
            let flip = coords[end.edge] % 2 == 1;
            let want = if flip { 1 - side[v] } else { side[v] };
            if side[w] == u8::MAX {
                side[w] = want;
                queue.push_back(w);
            } else {
                debug_assert_eq!(side[w], want, "inconsistent crossing parities");
            }
        }
    }
    let a = (0..n).filter(|&v| side[v] == 0).collect();
    let b = (0..n).filter(|&v| side[v] == 1).collect();
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::model;

    #[test]
    fn link_vectors_trace_to_single_cycles() {
        let m = model(5);
        for v in 0..5 {
            let coords = m.link_vector(v);
            let comps = trace(&m, &coords).unwrap();
            assert_eq!(comps.len(), 1, "link of {} should be one cycle", v);
            let d = &comps[0];
            d.assert_valid(&m);
            assert_eq!(d.coords(&m), coords);
        }
    }

    #[test]
    fn normalize_cancels_backtracks() {
        let steps = vec![
            Step {
                edge: 3,
                to_right: true,
            },
            Step {
                edge: 7,
                to_right: true,
            },
            Step {
                edge: 7,
                to_right: false,
            },
            Step {
                edge: 3,
                to_right: false,
            },
        ];
        assert!(normalize_curve_steps(steps).is_empty());
    }

    #[test]
    fn sides_of_link_are_singleton() {
        let m = model(6);
        let coords = m.link_vector(3);
        let (a, b) = puncture_sides(&m, &coords);
        let small = if a.len() < b.len() { &a } else { &b };
        assert_eq!(small, &vec![3usize]);
    }
}
