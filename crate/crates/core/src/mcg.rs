//! Mapping classes acting on curve codes: Dehn twists about arbitrary curves
//! (diagram splicing) and the half-twist generators that swap adjacent
//! punctures (transported through the exact PL model once, then applied
//! combinatorially via arc intersections).

use crate::curve::{CurveCode, CurveError};
use crate::diagram::{normalize_curve_steps, ArcDiagram, CurveDiagram, Step};
use crate::extract::extract_arc;
use crate::isect::{Arrangement, Track};
use crate::model::model;
use crate::pl::HalfTwistMap;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// One token of a mapping class word. `HalfTwist { index: i }` swaps
/// punctures i and i+1 mod n (counterclockwise for `inverse = false`);
/// `Twist` is the Dehn twist about an arbitrary essential curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gen {
    HalfTwist { index: usize, inverse: bool },
    Twist { about: CurveCode, power: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingClassWord {
    pub n: usize,
    pub gens: Vec<Gen>,
}

impl MappingClassWord {
    pub fn identity(n: usize) -> Self {
        MappingClassWord { n, gens: Vec::new() }
    }

    pub fn sigma(n: usize, index: usize) -> Self {
        MappingClassWord {
            n,
            gens: vec![Gen::HalfTwist {
                index,
                inverse: false,
            }],
        }
    }

    pub fn then(mut self, g: Gen) -> Self {
        self.gens.push(g);
        self
    }

    pub fn inverse(&self) -> Self {
        MappingClassWord {
            n: self.n,
            gens: self
                .gens
                .iter()
                .rev()
                .map(|g| match g {
                    Gen::HalfTwist { index, inverse } => Gen::HalfTwist {
                        index: *index,
                        inverse: !inverse,
                    },
                    Gen::Twist { about, power } => Gen::Twist {
                        about: about.clone(),
                        power: -power,
                    },
                })
                .collect(),
        }
    }
}

/// Apply a word, first token first.
pub fn apply_word(a: &CurveCode, w: &MappingClassWord) -> Result<CurveCode, CurveError> {
    assert_eq!(a.n, w.n);
    let mut cur = a.clone();
    for g in &w.gens {
        cur = apply_gen(&cur, g)?;
    }
    Ok(cur)
}

pub fn apply_gen(a: &CurveCode, g: &Gen) -> Result<CurveCode, CurveError> {
    match g {
        Gen::HalfTwist { index, inverse } => Ok(half_twist(a, *index, *inverse)),
        Gen::Twist { about, power } => Ok(dehn_twist(a, about, *power)),
    }
}

/// T_t^k(a): splice |k| parallel copies of t into a at every crossing.
/// Positive k follows t's orientation as traced; the sign convention is
/// pinned by `half_twist` squaring to the positive twist about its loop.
pub fn dehn_twist(a: &CurveCode, t: &CurveCode, k: i64) -> CurveCode {
    assert_eq!(a.n, t.n);
    if k == 0 || a == t {
        return a.clone();
    }
    let m = model(a.n);
    let da = a.diagram();
    let dt = t.diagram();
    let arr = Arrangement::new(&m, vec![Track::closed(&da), Track::closed(&dt)]);
    let mut crossings = arr.crossings_between(0, 1);
    if crossings.is_empty() {
        return a.clone();
    }
    crossings.sort_by_key(|c| (c.step_a, c.order_key));
    let la = da.steps.len();
    let lt = dt.steps.len();
    let reps = k.unsigned_abs() as usize;
    let mut out: Vec<Step> = Vec::with_capacity(la + crossings.len() * reps * lt);
    let mut ci = 0usize;
    for i in 0..la {
        out.push(da.steps[i]);
        while ci < crossings.len() && crossings[ci].step_a == i {
            let j = crossings[ci].step_b;
            if k > 0 {
                for s in 0..reps * lt {
                    out.push(dt.steps[(j + 1 + s) % lt]);
                }
            } else {
                for s in 0..reps * lt {
                    out.push(dt.steps[(j + lt - (s % lt)) % lt].flipped());
                }
            }
            ci += 1;
        }
    }
    let steps = normalize_curve_steps(out);
    let d = CurveDiagram { steps };
    CurveCode::from_diagram(&m, &d).expect("twist image of an essential curve is essential")
}

struct GenTable {
    /// arcs[e] = image of edge e under the inverse of this generator.
    arcs: Vec<ArcDiagram>,
}

fn gen_table(n: usize, index: usize, inverse: bool) -> Arc<GenTable> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize, bool), Arc<GenTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry((n, index, inverse))
        .or_insert_with(|| {
            let m = model(n);
            // Images of edges under the INVERSE map give coordinates of the
            // forward action: x_e(g a) = i(a, g^{-1} e). Each edge is
            // transported as a pushed-off copy so the image stays in general
            // position; the copy's class is verified before use.
            let map = HalfTwistMap::new(&m, index, !inverse);
            let arcs = m
                .edges
                .iter()
                .enumerate()
                .map(|(eid, e)| {
                    let copy = crate::extract::pushed_off_copy(&e.line);
                    let base = extract_arc(&m, &copy);
                    assert!(
                        base.steps.is_empty()
                            && base.start_vert == e.tail
                            && base.end_vert == e.head
                            && (base.start_face == e.left_face
                                || base.start_face == e.right_face),
                        "pushed-off copy of edge {} is not edge-parallel",
                        eid
                    );
                    let img = map.map_polyline(&copy);
                    extract_arc(&m, &img)
                })
                .collect();
            Arc::new(GenTable { arcs })
        })
        .clone()
}

/// The half-twist generator swapping punctures index and index+1 mod n.
pub fn half_twist(a: &CurveCode, index: usize, inverse: bool) -> CurveCode {
    let m = model(a.n);
    assert!(index < a.n, "generator index out of range");
    let tbl = gen_table(a.n, index, inverse);
    let da = a.diagram();
    let mut tracks = vec![Track::closed(&da)];
    for arc in &tbl.arcs {
        tracks.push(Track::arc(arc));
    }
    let arr = Arrangement::new(&m, tracks);
    let coords: Vec<u64> = (0..m.edge_count())
        .map(|e| arr.count_between(0, 1 + e))
        .collect();
    CurveCode::canonicalize(a.n, &coords)
        .expect("half-twist image of an essential curve is essential")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{geometric_intersection, seed_loop, standard_seeds};

    #[test]
    fn half_twist_fixes_its_own_loop_and_far_loops() {
        let n = 6;
        let c1 = seed_loop(n, 1, 2);
        assert_eq!(half_twist(&c1, 1, false), c1);
        let far = seed_loop(n, 4, 2);
        assert_eq!(half_twist(&far, 1, false), far);
    }

    #[test]
    fn half_twist_permutes_partitions() {
        let n = 6;
        let c0 = seed_loop(n, 0, 2); // around {0,1}
        let img = half_twist(&c0, 1, false); // swap punctures 1,2
        assert_eq!(img.small_side(), vec![0, 2]);
        let img_back = half_twist(&img, 1, true);
        assert_eq!(img_back, c0);
    }

    #[test]
    fn half_twist_squares_to_dehn_twist() {
        let n = 5;
        let c1 = seed_loop(n, 1, 2);
        let x = seed_loop(n, 2, 2);
        let twice = half_twist(&half_twist(&x, 1, false), 1, false);
        let plus = dehn_twist(&x, &c1, 1);
        let minus = dehn_twist(&x, &c1, -1);
        assert!(
            twice == plus || twice == minus,
            "sigma^2 is not a single twist about its loop"
        );
        assert_eq!(twice, plus, "sign convention: sigma_i^2 = T_{{c_i}}^{{+1}}");
    }

    #[test]
    fn braid_relations_hold() {
        let n = 5;
        let seeds = standard_seeds(n);
        for i in 0..2usize {
            let j = i + 1;
            for x in &seeds {
                let lhs = half_twist(&half_twist(&half_twist(x, i, false), j, false), i, false);
                let rhs = half_twist(&half_twist(&half_twist(x, j, false), i, false), j, false);
                assert_eq!(lhs, rhs, "braid relation at i={}", i);
            }
        }
        // Distant generators commute.
        let x = seed_loop(n, 4, 2);
        let ab = half_twist(&half_twist(&x, 0, false), 2, false);
        let ba = half_twist(&half_twist(&x, 2, false), 0, false);
        assert_eq!(ab, ba);
    }

    #[test]
    fn twists_preserve_intersection_numbers() {
        let n = 5;
        let a = seed_loop(n, 0, 2);
        let b = seed_loop(n, 1, 2);
        let t = seed_loop(n, 3, 2);
        for k in [-2i64, 1, 3] {
            let ta = dehn_twist(&a, &t, k);
            let tb = dehn_twist(&b, &t, k);
            assert_eq!(
                geometric_intersection(&ta, &tb),
                geometric_intersection(&a, &b),
                "k={}",
                k
            );
        }
    }

    #[test]
    fn twist_growth_formulas() {
        let n = 5;
        let a = seed_loop(n, 0, 2);
        let t = seed_loop(n, 1, 2);
        let i_at = geometric_intersection(&a, &t);
        assert_eq!(i_at, 2);
        for k in [-3i64, -1, 1, 2, 4] {
            let ta = dehn_twist(&a, &t, k);
            assert_eq!(
                geometric_intersection(&ta, &t),
                i_at,
                "twist preserves crossings with its core (k={})",
                k
            );
            assert_eq!(
                geometric_intersection(&ta, &a),
                k.unsigned_abs() * i_at * i_at,
                "k={}",
                k
            );
        }
    }

    #[test]
    fn half_twists_preserve_intersections() {
        let n = 6;
        let a = seed_loop(n, 0, 3);
        let b = seed_loop(n, 2, 2);
        let want = geometric_intersection(&a, &b);
        let ia = half_twist(&a, 2, false);
        let ib = half_twist(&b, 2, false);
        assert_eq!(geometric_intersection(&ia, &ib), want);
    }
}
