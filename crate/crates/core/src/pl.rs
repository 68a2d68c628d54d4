//! An exact piecewise-linear model of the half-twist swapping two adjacent
//! punctures: point reflection inside a slim rectangle around the chord, the
//! identity outside a larger one, and a graded perimeter shift in the collar
//! between. Only used at startup to transport the triangulation's edges, so
//! big-rational arithmetic is acceptable.

use crate::geom::{orient, q, qr, Pt, Q};
use crate::model::Model;
use num::traits::{Signed, Zero};

pub struct HalfTwistMap {
    center: Pt,
    chord: Pt,
    /// Anisotropy: frame coordinates are (u, lambda*v), making the support slim.
    lambda: Q,
    w1: Q,
    w2: Q,
    pub inverse: bool,
}

impl HalfTwistMap {
    /// The half-twist exchanging punctures `i` and `i+1 mod n` (ccw when
    /// `inverse` is false).
    pub fn new(m: &Model, i: usize, inverse: bool) -> HalfTwistMap {
        let a = &m.punctures[i];
        let b = &m.punctures[(i + 1) % m.n];
        let center = a.add(b).scale(&qr(1, 2));
        let chord = b.sub(a);
        let d2 = chord.dot(&chord);
        let w1 = &d2 * qr(3, 5);
        let w2 = &d2 * qr(4, 5);
        let mut lambda = q(4);
        'search: loop {
            let mt = HalfTwistMap {
                center: center.clone(),
                chord: chord.clone(),
                lambda: lambda.clone(),
                w1: w1.clone(),
                w2: w2.clone(),
                inverse,
            };
            for (k, p) in m.punctures.iter().enumerate() {
                if k == i || k == (i + 1) % m.n {
                    continue;
                }
                let (u, vt) = mt.to_frame(p);
                let r = u.abs().max(vt.abs());
                if r <= mt.w2 {
                    lambda = lambda * q(2);
                    assert!(lambda < q(1 << 20), "cannot isolate half-twist support");
                    continue 'search;
                }
            }
            return mt;
        }
    }

    fn to_frame(&self, p: &Pt) -> (Q, Q) {
        let rel = p.sub(&self.center);
        let u = self.chord.dot(&rel);
        let perp = Pt::new(-self.chord.y.clone(), self.chord.x.clone());
        let v = perp.dot(&rel);
        (u, v * &self.lambda)
    }

    fn from_frame(&self, u: &Q, vt: &Q) -> Pt {
        let d2 = self.chord.dot(&self.chord);
        let v = vt / &self.lambda;
        let perp = Pt::new(-self.chord.y.clone(), self.chord.x.clone());
        self.center
            .add(&self.chord.scale(&(u / &d2)))
            .add(&perp.scale(&(v / d2)))
    }

    /// Perimeter coordinate on the frame square of radius r, ccw from the
    /// SE corner (r, -r). Total length 8r.
    fn perim(u: &Q, vt: &Q, r: &Q) -> Q {
        if u == r {
            vt + r
        } else if vt == r {
            q(2) * r + (r - u)
        } else if &-u.clone() == r {
            q(4) * r + (r - vt)
        } else {
            debug_assert_eq!(&-vt.clone(), r);
            q(6) * r + (u + r)
        }
    }

    fn unperim(t: &Q, r: &Q) -> (Q, Q) {
        let two_r = q(2) * r;
        if t < &two_r {
            (r.clone(), t - r)
        } else if t < &(q(4) * r) {
            (r - (t - &two_r), r.clone())
        } else if t < &(q(6) * r) {
            (-r.clone(), r - (t - q(4) * r))
        } else {
            (t - q(6) * r - r, -r.clone())
        }
    }

    pub fn map_point(&self, p: &Pt) -> Pt {
        let (u, vt) = self.to_frame(p);
        let r = u.abs().max(vt.abs());
        if r >= self.w2 {
            return p.clone();
        }
        if r <= self.w1 {
            return self.from_frame(&-u, &-vt);
        }
        let t = Self::perim(&u, &vt, &r);
        let mut s = q(4) * &self.w1 * (&self.w2 - &r) / (&self.w2 - &self.w1);
        if self.inverse {
            s = q(8) * &r - s;
        }
        let mut t2 = t + s;
        let per = q(8) * &r;
        while t2 >= per {
            t2 = t2 - &per;
        }
        let (u2, vt2) = Self::unperim(&t2, &r);
        self.from_frame(&u2, &vt2)
    }

    /// Map a polyline exactly: subdivide at the map's breakpoint lines, then
    /// verify flatness of each mapped piece by midpoint refinement.
    pub fn map_polyline(&self, pts: &[Pt]) -> Vec<Pt> {
        let mut out: Vec<Pt> = vec![self.map_point(&pts[0])];
        for w in pts.windows(2) {
            let mut cuts = self.cut_params(&w[0], &w[1]);
            cuts.sort();
            cuts.dedup();
            let mut prev = w[0].clone();
            for t in cuts {
                let pt = w[0].lerp(&w[1], &t);
                self.refine(&prev, &pt, &mut out, 0);
                prev = pt;
            }
            self.refine(&prev, &w[1], &mut out, 0);
        }
        // Merge collinear runs to keep things small.
        let mut compact: Vec<Pt> = Vec::with_capacity(out.len());
        for p in out {
            while compact.len() >= 2 {
                let k = compact.len();
                if orient(&compact[k - 2], &compact[k - 1], &p) == 0 {
                    compact.pop();
                } else {
                    break;
                }
            }
            if compact.last() != Some(&p) {
                compact.push(p);
            }
        }
        compact
    }

    fn refine(&self, a: &Pt, b: &Pt, out: &mut Vec<Pt>, depth: usize) {
        if a == b {
            return;
        }
        let ma = self.map_point(a);
        let mb = self.map_point(b);
        let mid = a.add(b).scale(&qr(1, 2));
        let mmid = self.map_point(&mid);
        let flat = orient(&ma, &mmid, &mb) == 0;
        if flat || depth > 48 {
            assert!(flat, "piecewise-linear refinement did not converge");
            if out.last() != Some(&mb) {
                out.push(mb);
            }
            return;
        }
        self.refine(a, &mid, out, depth + 1);
        self.refine(&mid, b, out, depth + 1);
    }

    /// Parameters in (0,1) where the segment crosses candidate breakpoint
    /// lines of the map, in frame coordinates.
    fn cut_params(&self, a: &Pt, b: &Pt) -> Vec<Q> {
        let (ua, va) = self.to_frame(a);
        let (ub, vb) = self.to_frame(b);
        let mut out = Vec::new();
        let mut add_line = |c_u: Q, c_v: Q, c_r: Q, rhs: Q| {
            // Line c_u*u + c_v*vt + c_r*r_expr = rhs is handled by the caller
            // passing r already substituted; here we solve
            // c_u*u + c_v*vt = rhs along the segment.
            let fa = &c_u * &ua + &c_v * &va;
            let fb = &c_u * &ub + &c_v * &vb;
            let _ = c_r;
            if (fa.clone() - &rhs).is_zero() && (fb.clone() - &rhs).is_zero() {
                return;
            }
            let da = fa.clone() - &rhs;
            let db = fb.clone() - &rhs;
            if (da.is_positive() && db.is_negative()) || (da.is_negative() && db.is_positive()) {
                let t = da.clone() / (da - db);
                out.push(t);
            }
        };
        // Square boundaries and diagonals.
        for w in [self.w1.clone(), self.w2.clone()] {
            add_line(q(1), q(0), q(0), w.clone());
            add_line(q(1), q(0), q(0), -w.clone());
            add_line(q(0), q(1), q(0), w.clone());
            add_line(q(0), q(1), q(0), -w);
        }
        add_line(q(1), q(-1), q(0), q(0));
        add_line(q(1), q(1), q(0), q(0));
        // Corner trajectories: within each sector r is +-u or +-vt, and the
        // shifted perimeter coordinate hits a corner along a line
        //   t(u,vt) + s(r) = c*r,   s(r) = 4*w1*(w2-r)/(w2-w1).
        // Expand per sector; enumerate a generous set of corner multiples.
        let k = q(4) * &self.w1 / (&self.w2 - &self.w1);
        // s(r) = k*(w2 - r); sign of s flips for the inverse map modulo 8r,
        // which the c-range absorbs.
        for sector in 0..4 {
            for c2 in -16i64..=32 {
                let c = qr(c2, 2);
                // t expressions per sector with r substituted:
                //  E: r=u,  t = vt + u
                //  N: r=vt, t = 3*vt - u
                //  W: r=-u, t = -5*u - vt
                //  S: r=-vt, t = u - 7*vt
                let (tu, tv, ru, rv) = match sector {
                    0 => (q(1), q(1), q(1), q(0)),
                    1 => (q(-1), q(3), q(0), q(1)),
                    2 => (q(-5), q(-1), q(-1), q(0)),
                    _ => (q(1), q(-7), q(0), q(-1)),
                };
                // Forward shift: t + k*(w2 - r) = c*r  =>  t - (c + k)*r = -k*w2.
                let cu = tu.clone() - (c.clone() + &k) * &ru;
                let cv = tv.clone() - (c.clone() + &k) * &rv;
                add_line(cu, cv, q(0), -(k.clone() * &self.w2));
                // Reverse shift: t - k*(w2 - r) = c*r  =>  t - (c - k)*r = k*w2.
                let cu = tu - (c.clone() - &k) * &ru;
                let cv = tv - (c - &k) * &rv;
                add_line(cu, cv, q(0), k.clone() * &self.w2);
            }
        }
        out.retain(|t| t > &q(0) && t < &q(1));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::model;

    #[test]
    fn map_fixes_far_points_and_swaps_punctures() {
        let m = model(5);
        let mt = HalfTwistMap::new(&m, 1, false);
        let far = Pt::of(100, 100);
        assert_eq!(mt.map_point(&far), far);
        assert_eq!(mt.map_point(&m.punctures[1]), m.punctures[2]);
        assert_eq!(mt.map_point(&m.punctures[2]), m.punctures[1]);
    }

    #[test]
    fn inverse_composes_to_identity_on_points() {
        let m = model(6);
        let f = HalfTwistMap::new(&m, 3, false);
        let g = HalfTwistMap::new(&m, 3, true);
        for k in 0..24 {
            let p = Pt::new(qr(3 * k - 20, 7), qr(2 * k - 11, 5));
            assert_eq!(g.map_point(&f.map_point(&p)), p, "k={}", k);
        }
    }
}
