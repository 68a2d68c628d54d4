//! Canonical codes for essential simple closed curves on the n-punctured
//! sphere, plus the drawn seed curves everything is generated from.
//!
//! A `CurveCode` is the vector of minimal intersection numbers with the fixed
//! triangulation's edges. Two codes are equal exactly when the curves are
//! isotopic, so the vector itself is the canonical form.

use crate::diagram::{puncture_sides, trace, CurveDiagram, DiagramError};
use crate::extract::extract_closed;
use crate::geom::{qr, Pt, Q};
use crate::isect::intersection_number;
use crate::model::{model, Model};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("coordinate vector has wrong length")]
    WrongLength,
    #[error("not realizable as a normal multicurve")]
    NotRealizable,
    #[error("multicurve with {0} components, not a single curve")]
    NotConnected(usize),
    #[error("trivial or puncture-parallel curve")]
    Peripheral,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CurveCode {
    pub n: usize,
    pub coords: Vec<u64>,
}

impl std::fmt::Debug for CurveCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CurveCode(n={}, {:?})", self.n, self.coords)
    }
}

impl CurveCode {
    /// Validate a raw coordinate vector and wrap it as the canonical code of
    /// an essential curve.
    pub fn canonicalize(n: usize, raw: &[u64]) -> Result<CurveCode, CurveError> {
        let m = model(n);
        if raw.len() != m.edge_count() {
            return Err(CurveError::WrongLength);
        }
        let comps = trace(&m, raw).map_err(|e| match e {
            DiagramError::NotRealizable => CurveError::NotRealizable,
            DiagramError::NotConnected(k) => CurveError::NotConnected(k),
            DiagramError::Peripheral => CurveError::Peripheral,
        })?;
        if comps.len() != 1 {
            return Err(CurveError::NotConnected(comps.len()));
        }
        Self::check_essential(&m, raw)?;
        Ok(CurveCode {
            n,
            coords: raw.to_vec(),
        })
    }

    fn check_essential(m: &Model, coords: &[u64]) -> Result<(), CurveError> {
        if coords.iter().all(|&x| x == 0) {
            return Err(CurveError::Peripheral);
        }
        for v in 0..m.n {
            if coords == m.link_vector(v).as_slice() {
                return Err(CurveError::Peripheral);
            }
        }
        Ok(())
    }

    /// Canonical code of a (taut) closed diagram.
    pub fn from_diagram(m: &Model, d: &CurveDiagram) -> Result<CurveCode, CurveError> {
        if d.is_empty() {
            return Err(CurveError::Peripheral);
        }
        let coords = d.coords(m);
        Self::check_essential(m, &coords)?;
        // A single closed diagram is connected by construction.
        Ok(CurveCode {
            n: m.n,
            coords,
        })
    }

    pub fn model(&self) -> std::sync::Arc<Model> {
        model(self.n)
    }

    pub fn diagram(&self) -> CurveDiagram {
        let m = model(self.n);
        let mut comps = trace(&m, &self.coords).expect("canonical code must trace");
        debug_assert_eq!(comps.len(), 1);
        comps.remove(0)
    }

    pub fn weight(&self) -> u64 {
        self.coords.iter().sum()
    }

    /// The two sides of the curve as sorted puncture sets; the side
    /// containing puncture 0 comes first.
    pub fn partition(&self) -> (Vec<usize>, Vec<usize>) {
        let m = model(self.n);
        puncture_sides(&m, &self.coords)
    }

    /// The smaller side of the partition (ties broken towards the side
    /// containing the smallest puncture).
    pub fn small_side(&self) -> Vec<usize> {
        let (a, b) = self.partition();
        if a.len() < b.len() || (a.len() == b.len() && a < b) {
            a
        } else {
            b
        }
    }

    /// Pants curves bound a disc with exactly two punctures.
    pub fn is_pants(&self) -> bool {
        self.small_side().len() == 2
    }

    /// On a sphere every curve separates, so essentially non-separating
    /// reduces to being a pants curve.
    pub fn is_essentially_nonseparating(&self) -> bool {
        self.is_pants()
    }

    /// Side mask as a bitset over punctures: bit v set iff puncture v lies on
    /// the side not containing puncture 0.
    pub fn side_mask(&self) -> u64 {
        let (_, b) = self.partition();
        b.iter().fold(0u64, |m, &v| m | (1 << v))
    }
}

/// Geometric intersection number.
pub fn geometric_intersection(a: &CurveCode, b: &CurveCode) -> u64 {
    assert_eq!(a.n, b.n, "curves live on different surfaces");
    if a == b {
        return 0;
    }
    let m = model(a.n);
    intersection_number(&m, &a.diagram(), &b.diagram())
}

/// Quick necessary condition for disjointness on the sphere: the two
/// partitions must be laminar (nested or disjoint small sides).
pub fn partitions_compatible(a: &CurveCode, b: &CurveCode) -> bool {
    let full = (1u64 << a.n) - 1;
    let x = a.side_mask();
    let y = b.side_mask();
    x & y == 0 || x & y == x || x & y == y || x | y == full
}

/// The standard loop around a consecutive run of punctures
/// (start, start+1, ..., start+len-1 mod n), drawn and extracted.
pub fn seed_loop(n: usize, start: usize, len: usize) -> CurveCode {
    assert!(len >= 2 && len <= n - 2, "side sizes must both be >= 2");
    let m = model(n);
    let run: Vec<usize> = (0..len).map(|k| (start + k) % n).collect();
    let prev = (start + n - 1) % n;
    let next = (start + len) % n;
    let inner: Q = qr(7, 8);
    let outer: Q = qr(17, 16);
    let a_mid = m.punctures[prev]
        .add(&m.punctures[run[0]])
        .scale(&qr(1, 2))
        .scale(&inner);
    let b_mid = m.punctures[*run.last().unwrap()]
        .add(&m.punctures[next])
        .scale(&qr(1, 2))
        .scale(&inner);
    let mut pts: Vec<Pt> = Vec::new();
    pts.push(a_mid);
    for (c, &k) in run.iter().enumerate() {
        let before = m.punctures[(k + n - 1) % n].clone();
        let after = m.punctures[(k + 1) % n].clone();
        let nudge = after.sub(&before).scale(&qr(1, 64 + c as i64));
        pts.push(m.punctures[k].scale(&outer).add(&nudge));
    }
    pts.push(b_mid);
    let d = extract_closed(&m, &pts);
    CurveCode::from_diagram(&m, &d).expect("seed loop must be essential")
}

/// All loops around consecutive pairs (the standard pants-curve seeds).
pub fn standard_seeds(n: usize) -> Vec<CurveCode> {
    (0..n).map(|k| seed_loop(n, k, 2)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_partitions_are_their_runs() {
        for n in [5usize, 6, 7] {
            for start in 0..n {
                for len in 2..=(n - 2) {
                    let c = seed_loop(n, start, len);
                    let mut want: Vec<usize> = (0..len).map(|k| (start + k) % n).collect();
                    want.sort_unstable();
                    let side = if c.partition().0 == want || c.partition().1 == want {
                        true
                    } else {
                        false
                    };
                    assert!(side, "seed run {:?} (n={}) got {:?}", want, n, c.partition());
                    assert_eq!(c.is_pants(), len == 2 || len == n - 2);
                }
            }
        }
    }

    #[test]
    fn pentagon_intersection_pattern() {
        // On the 5-punctured sphere the loops around consecutive pairs form
        // a pentagon: adjacent pairs meet twice, distant pairs are disjoint.
        let seeds = standard_seeds(5);
        for i in 0..5 {
            for j in 0..5 {
                let d = (j + 5 - i) % 5;
                let want = match d {
                    0 => 0,
                    1 | 4 => 2,
                    _ => 0,
                };
                assert_eq!(
                    geometric_intersection(&seeds[i], &seeds[j]),
                    want,
                    "i(a{}, a{})",
                    i,
                    j
                );
            }
        }
    }

    #[test]
    fn intersection_is_symmetric_on_seeds() {
        for n in [5usize, 6] {
            let mut all = Vec::new();
            for start in 0..n {
                for len in 2..=(n - 2) {
                    all.push(seed_loop(n, start, len));
                }
            }
            for a in &all {
                for b in &all {
                    assert_eq!(geometric_intersection(a, b), geometric_intersection(b, a));
                }
            }
        }
    }

    #[test]
    fn canonicalize_rejects_junk() {
        let m = model(5);
        let zero = vec![0u64; m.edge_count()];
        assert_eq!(
            CurveCode::canonicalize(5, &zero),
            Err(CurveError::NotRealizable)
        );
        let link = m.link_vector(2);
        assert!(matches!(
            CurveCode::canonicalize(5, &link),
            Err(CurveError::Peripheral)
        ));
        let mut odd = zero.clone();
        odd[0] = 1;
        assert_eq!(
            CurveCode::canonicalize(5, &odd),
            Err(CurveError::NotRealizable)
        );
    }
}
