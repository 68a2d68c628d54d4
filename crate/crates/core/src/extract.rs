//! Turning drawn polylines into combinatorial diagrams: collect the ordered
//! transverse crossings with the triangulation edges and tighten. Drawing is
//! only ever used at startup (seed curves, generator transport tables), so
//! exact big-rational arithmetic is fine here.

use crate::diagram::{normalize_arc, normalize_curve_steps, ArcDiagram, CurveDiagram, Step};
use crate::geom::{angle_cmp, seg_isect, Polyline, Pt, SegIsect, Q};
use crate::model::{EdgeEnd, Model, VertId};
use std::cmp::Ordering;

/// A crossing of the input polyline with a triangulation edge, ordered along
/// the input.
struct RawCrossing {
    seg: usize,
    t: Q,
    step: Step,
}

fn collect_crossings(m: &Model, pts: &[Pt], closed: bool) -> Vec<RawCrossing> {
    let mut out = Vec::new();
    let count = if closed { pts.len() } else { pts.len() - 1 };
    for si in 0..count {
        let a = &pts[si];
        let b = &pts[(si + 1) % pts.len()];
        for (eid, edge) in m.edges.iter().enumerate() {
            for (u, v) in edge.line.segments() {
                match seg_isect(a, b, u, v) {
                    SegIsect::None => {}
                    SegIsect::Proper { t_ab, .. } => {
                        let to_right = crate::geom::orient(u, v, a) > 0;
                        out.push(RawCrossing {
                            seg: si,
                            t: t_ab,
                            step: Step {
                                edge: eid as u32,
                                to_right,
                            },
                        });
                    }
                    SegIsect::Degenerate => {
                        // Endpoint incidences at punctures are expected for
                        // arcs; everything else means the drawing constants
                        // need adjusting.
                        let at_puncture = m.punctures.iter().any(|p| {
                            (p == a || p == b) && (p == u || p == v)
                        });
                        assert!(
                            at_puncture,
                            "degenerate crossing while extracting a drawn curve"
                        );
                    }
                }
            }
        }
    }
    out.sort_by(|x, y| match x.seg.cmp(&y.seg) {
        Ordering::Equal => x.t.cmp(&y.t),
        o => o,
    });
    out
}

/// Extract the diagram of a drawn closed curve.
pub fn extract_closed(m: &Model, line: &[Pt]) -> CurveDiagram {
    let steps: Vec<Step> = collect_crossings(m, line, true)
        .into_iter()
        .map(|c| c.step)
        .collect();
    let steps = normalize_curve_steps(steps);
    let d = CurveDiagram { steps };
    if !d.is_empty() {
        d.assert_valid(m);
    }
    d
}

/// The face filling the ccw wedge at a vertex that starts at the given
/// incident edge end.
pub fn wedge_face_after(m: &Model, end: EdgeEnd) -> usize {
    if end.at_tail {
        m.edges[end.edge].left_face
    } else {
        m.edges[end.edge].right_face
    }
}

/// Locate the corner (face) at vertex `v` containing the departure
/// direction `dir`.
pub fn corner_at_direction(m: &Model, v: VertId, dir: &Pt) -> usize {
    let link = &m.links[v];
    let k = link.len();
    let end_dir = |end: &EdgeEnd| -> Pt {
        let line = &m.edges[end.edge].line;
        if end.at_tail {
            line.dir_from_start()
        } else {
            line.dir_from_end()
        }
    };
    for i in 0..k {
        let a = end_dir(&link[i]);
        let b = end_dir(&link[(i + 1) % k]);
        // dir lies in the ccw wedge from a to b.
        let in_wedge = if angle_cmp(&a, &b) == Ordering::Less {
            angle_cmp(&a, dir) == Ordering::Less && angle_cmp(dir, &b) == Ordering::Less
        } else {
            angle_cmp(&a, dir) == Ordering::Less || angle_cmp(dir, &b) == Ordering::Less
        };
        if in_wedge {
            return wedge_face_after(m, link[i]);
        }
        assert!(
            angle_cmp(&a, dir) != Ordering::Equal,
            "arc departs a vertex along an edge direction"
        );
    }
    unreachable!("direction not located in any wedge")
}

/// A slightly bent copy of an edge's polyline, isotopic to the edge but in
/// general position with respect to the whole drawing. Callers must verify
/// the isotopy class via `extract_arc` (empty steps, a face adjacent to the
/// edge); the bend amount is not trusted.
pub fn pushed_off_copy(line: &Polyline) -> Vec<Pt> {
    let eps = crate::geom::qr(1, 4096);
    let mut out = vec![line.pts[0].clone()];
    let k = line.pts.len() - 1;
    for i in 0..k {
        let a = &line.pts[i];
        let b = &line.pts[i + 1];
        let perp = Pt::new(a.y.clone() - b.y.clone(), b.x.clone() - a.x.clone());
        let mid = a.add(b).scale(&crate::geom::qr(1, 2));
        out.push(mid.add(&perp.scale(&eps)));
        if i + 1 < k {
            let c = &line.pts[i + 2];
            let perp2 = Pt::new(b.y.clone() - c.y.clone(), c.x.clone() - b.x.clone());
            let avg = perp.add(&perp2).scale(&crate::geom::qr(1, 2));
            out.push(b.add(&avg.scale(&eps)));
        }
    }
    out.push(line.pts[k].clone());
    out
}

/// Extract the diagram of a drawn ideal arc running from one puncture to
/// another; the polyline must start and end exactly at the punctures.
pub fn extract_arc(m: &Model, line: &[Pt]) -> ArcDiagram {
    assert!(line.len() >= 2);
    let start_vert = m
        .punctures
        .iter()
        .position(|p| p == &line[0])
        .expect("arc must start at a puncture");
    let end_vert = m
        .punctures
        .iter()
        .position(|p| p == line.last().unwrap())
        .expect("arc must end at a puncture");
    let steps: Vec<Step> = collect_crossings(m, line, false)
        .into_iter()
        .map(|c| c.step)
        .collect();
    let dep = line[1].sub(&line[0]);
    let arr_rev = line[line.len() - 2].sub(line.last().unwrap());
    let start_face = corner_at_direction(m, start_vert, &dep);
    let end_face = corner_at_direction(m, end_vert, &arr_rev);
    let arc = ArcDiagram {
        start_vert,
        start_face,
        steps,
        end_vert,
        end_face,
    };
    let arc = normalize_arc(m, arc);
    arc.assert_valid(m);
    arc
}
