//! Exact rational plane geometry used to pin down the drawn triangulation
//! and the piecewise-linear generator maps. Everything here is startup-time
//! machinery; the hot paths never touch rationals.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::cmp::Ordering;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pt {
    pub x: Q,
    pub y: Q,
}

impl Pt {
    pub fn new(x: Q, y: Q) -> Pt {
        Pt { x, y }
    }

    pub fn of(x: i64, y: i64) -> Pt {
        Pt::new(q(x), q(y))
    }

    pub fn add(&self, o: &Pt) -> Pt {
        Pt::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Pt) -> Pt {
        Pt::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, s: &Q) -> Pt {
        Pt::new(&self.x * s, &self.y * s)
    }

    pub fn lerp(&self, o: &Pt, t: &Q) -> Pt {
        let omt = Q::one() - t;
        Pt::new(&self.x * &omt + &o.x * t, &self.y * &omt + &o.y * t)
    }

    pub fn cross(&self, o: &Pt) -> Q {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn dot(&self, o: &Pt) -> Q {
        &self.x * &o.x + &self.y * &o.y
    }
}

/// Sign of the signed area of (a, b, c): positive when c lies to the left of a->b.
pub fn orient(a: &Pt, b: &Pt, c: &Pt) -> i32 {
    let v = b.sub(a).cross(&c.sub(a));
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SegIsect {
    None,
    /// Transverse crossing in the open interior of both segments, with the
    /// parameters along each segment.
    Proper { t_ab: Q, t_cd: Q },
    /// Any touching, endpoint incidence or collinear overlap. The drawn model
    /// must be free of these; curve extraction treats them as fatal.
    Degenerate,
}

/// Exact segment intersection for segments ab and cd.
pub fn seg_isect(a: &Pt, b: &Pt, c: &Pt, d: &Pt) -> SegIsect {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        let r = b.sub(a);
        let s = d.sub(c);
        let denom = r.cross(&s);
        let qp = c.sub(a);
        let t_ab = qp.cross(&s) / denom.clone();
        let t_cd = qp.cross(&r) / denom;
        return SegIsect::Proper { t_ab, t_cd };
    }
    // Anything collinear or touching an endpoint counts as degenerate.
    let touching = (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b));
    if touching {
        SegIsect::Degenerate
    } else {
        SegIsect::None
    }
}

/// Whether p lies on the closed segment ab, assuming collinearity was established.
fn on_segment(a: &Pt, b: &Pt, p: &Pt) -> bool {
    let min_x = a.x.clone().min(b.x.clone());
    let max_x = a.x.clone().max(b.x.clone());
    let min_y = a.y.clone().min(b.y.clone());
    let max_y = a.y.clone().max(b.y.clone());
    p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y
}

/// Compare two direction vectors by counterclockwise angle from the positive
/// x-axis, exactly. Used to build vertex rotation systems.
pub fn angle_cmp(u: &Pt, v: &Pt) -> Ordering {
    let hu = half(u);
    let hv = half(v);
    if hu != hv {
        return hu.cmp(&hv);
    }
    let c = u.cross(v);
    if c.is_positive() {
        Ordering::Less
    } else if c.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

fn half(u: &Pt) -> u8 {
    // 0 for the upper half plane (including positive x-axis), 1 for the lower.
    if u.y.is_positive() || (u.y.is_zero() && u.x.is_positive()) {
        0
    } else {
        1
    }
}

/// A polyline with rational vertices. Edges of the triangulation and drawn
/// seed curves are polylines; closed ones repeat no vertex.
#[derive(Clone, Debug)]
pub struct Polyline {
    pub pts: Vec<Pt>,
}

impl Polyline {
    pub fn new(pts: Vec<Pt>) -> Polyline {
        assert!(pts.len() >= 2, "polyline needs at least two points");
        Polyline { pts }
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Pt, &Pt)> {
        self.pts.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn first(&self) -> &Pt {
        &self.pts[0]
    }

    pub fn last(&self) -> &Pt {
        self.pts.last().unwrap()
    }

    /// Direction of departure from the first point.
    pub fn dir_from_start(&self) -> Pt {
        self.pts[1].sub(&self.pts[0])
    }

    /// Direction of departure from the last point (towards the interior reversed).
    pub fn dir_from_end(&self) -> Pt {
        let k = self.pts.len();
        self.pts[k - 2].sub(&self.pts[k - 1])
    }
}
