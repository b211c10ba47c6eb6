//! Classical invariants of a plane-curve germ at the origin, and the bridge
//! that attaches instanton numbers to a curve.
//!
//! Local colengths `dim O/I` are computed as `dim Q[x,y]/(I + m^N)` with
//! monomial multiples of the generators truncated below degree `N`. That
//! number grows with `N` and, by Nakayama, equals the colength as soon as it
//! agrees for `N` and `N + 1`.

use num_traits::Zero;
use serde::Serialize;

use crate::bundle::{from_curve, TransitionData};
use crate::cohomology::{instanton_numbers, NumbersReport, WindowSchedule};
use crate::error::{Error, Result};
use crate::linalg::{integer_row, Echelon};
use crate::poly::{LaurentPoly, Monomial, Vars};
use crate::puiseux;
use crate::scalar::{to_fraction_string, Rational};

/// A nonzero polynomial in `x, y` vanishing at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveGerm {
    f: LaurentPoly,
}

impl CurveGerm {
    pub fn new(f: LaurentPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroCurve);
        }
        if f.has_negative_exponent() {
            return Err(Error::NegativeExponentInput(f.display(Vars::XY).to_string()));
        }
        let c = f.constant_term();
        if !c.is_zero() {
            return Err(Error::CurveMissesOrigin(to_fraction_string(&c)));
        }
        Ok(Self { f })
    }

    pub fn f(&self) -> &LaurentPoly {
        &self.f
    }

    /// Default truncation cap for colength computations, `4 deg f + 8`.
    pub fn degree_cap(&self) -> usize {
        4 * self.f.total_degree().unwrap_or(0) as usize + 8
    }

    fn jacobian(&self) -> [LaurentPoly; 2] {
        [self.f.derivative(0), self.f.derivative(1)]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalInvariants {
    pub multiplicity: usize,
    pub milnor: usize,
    pub tjurina: usize,
    pub branches: usize,
    pub delta: usize,
}

pub fn multiplicity(g: &CurveGerm) -> usize {
    g.f.order().unwrap_or(0) as usize
}

/// `dim Q[x,y] / (ideal + m^n)`.
pub fn truncated_colength(generators: &[LaurentPoly], n: usize) -> usize {
    let n = n as i32;
    let index = |m: Monomial| {
        let d = m.total_degree();
        (d * (d + 1) / 2 + m.x()) as usize
    };
    let total = (n * (n + 1) / 2) as usize;
    let mut echelon = Echelon::default();
    for g in generators {
        let Some(order) = g.order() else { continue };
        for k in 0..(n - order).max(0) {
            for a in 0..=k {
                let shifted = g.shift(Monomial::xy(a, k - a)).truncate_total_degree(n);
                let mut entries: Vec<(usize, Rational)> =
                    shifted.terms().map(|(m, c)| (index(m), c.clone())).collect();
                entries.sort_by_key(|e| e.0);
                if echelon.insert(integer_row(&entries)) && echelon.rank() == total {
                    return 0;
                }
            }
        }
    }
    total - echelon.rank()
}

/// Colength of the ideal in the local ring at the origin, certified by two
/// equal consecutive truncations at degree at most `cap`.
pub fn local_colength(generators: &[LaurentPoly], cap: usize) -> Result<usize> {
    let mut previous = None;
    for n in 1..=cap {
        let c = truncated_colength(generators, n);
        if previous == Some(c) {
            return Ok(c);
        }
        previous = Some(c);
    }
    Err(Error::NonIsolatedSingularity { cap })
}

pub fn milnor(g: &CurveGerm) -> Result<usize> {
    milnor_with_cap(g, g.degree_cap())
}

pub fn milnor_with_cap(g: &CurveGerm, cap: usize) -> Result<usize> {
    local_colength(&g.jacobian(), cap)
}

pub fn tjurina(g: &CurveGerm) -> Result<usize> {
    let [fx, fy] = g.jacobian();
    local_colength(&[g.f.clone(), fx, fy], g.degree_cap())
}

pub fn branch_count(g: &CurveGerm) -> Result<usize> {
    puiseux::branch_count(&g.f)
}

/// `(mu + r - 1) / 2`.
pub fn delta_from(milnor: usize, branches: usize) -> Result<usize> {
    let twice = milnor as i64 + branches as i64 - 1;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::ParityViolation(twice));
    }
    Ok((twice / 2) as usize)
}

pub fn delta(g: &CurveGerm) -> Result<usize> {
    delta_from(milnor(g)?, branch_count(g)?)
}

pub fn classical_invariants(g: &CurveGerm) -> Result<ClassicalInvariants> {
    // The Milnor number comes first: a non-isolated singularity should be
    // reported as such rather than through the branch recursion.
    let milnor = milnor(g)?;
    let tjurina = tjurina(g)?;
    let branches = branch_count(g)?;
    Ok(ClassicalInvariants {
        multiplicity: multiplicity(g),
        milnor,
        tjurina,
        branches,
        delta: delta_from(milnor, branches)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveReport {
    pub classical: ClassicalInvariants,
    pub data: TransitionData,
    pub numbers: NumbersReport,
}

/// One row of a curve table: classical invariants of `g` and the instanton
/// numbers of `E(j, g(u, z u))`.
pub fn curve_invariants(g: &CurveGerm, j: u32, schedule: &WindowSchedule) -> Result<CurveReport> {
    if j == 0 {
        return Err(Error::InvalidArgument("j must be at least 1".into()));
    }
    let classical = classical_invariants(g)?;
    let data = from_curve(&g.f, j)?;
    let numbers = instanton_numbers(&data, schedule)?;
    Ok(CurveReport {
        classical,
        data,
        numbers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn germ(terms: &[(i64, i32, i32)]) -> CurveGerm {
        CurveGerm::new(LaurentPoly::from_int_terms(terms)).unwrap()
    }

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity(&germ(&[(1, 3, 0), (-1, 2, 1), (1, 0, 3)])), 3);
        assert_eq!(multiplicity(&germ(&[(1, 2, 0), (-1, 0, 7)])), 2);
        assert_eq!(multiplicity(&germ(&[(1, 5, 1), (-1, 0, 4)])), 4);
    }

    #[test]
    fn milnor_numbers() {
        assert_eq!(milnor(&germ(&[(1, 5, 1), (-1, 0, 4)])).unwrap(), 17);
        assert_eq!(milnor(&germ(&[(1, 3, 0), (-1, 0, 4)])).unwrap(), 6);
        assert_eq!(milnor(&germ(&[(1, 3, 0), (-1, 2, 1), (1, 0, 3)])).unwrap(), 4);
        assert_eq!(milnor(&germ(&[(1, 1, 0)])).unwrap(), 0);
        assert_eq!(milnor(&germ(&[(1, 1, 1)])).unwrap(), 1);
    }

    #[test]
    fn tjurina_numbers() {
        let g = germ(&[(1, 8, 0), (-1, 5, 2), (-1, 3, 2), (1, 0, 4)]);
        assert_eq!(tjurina(&g).unwrap(), 15);
        assert_eq!(milnor(&g).unwrap(), 17);
        assert_eq!(tjurina(&germ(&[(1, 5, 1), (-1, 0, 4)])).unwrap(), 17);
        assert_eq!(tjurina(&germ(&[(1, 3, 0), (-1, 2, 1), (1, 0, 3)])).unwrap(), 4);
    }

    #[test]
    fn deltas() {
        assert_eq!(delta(&germ(&[(1, 5, 1), (-1, 0, 4)])).unwrap(), 9);
        assert_eq!(delta(&germ(&[(1, 2, 0), (-1, 0, 7)])).unwrap(), 3);
        assert_eq!(delta(&germ(&[(1, 3, 0), (-1, 2, 2), (1, 0, 3)])).unwrap(), 3);
        assert!(matches!(delta_from(4, 2), Err(Error::ParityViolation(5))));
    }

    #[test]
    fn non_isolated_singularity_is_reported() {
        let g = germ(&[(1, 2, 2)]);
        assert!(matches!(milnor(&g), Err(Error::NonIsolatedSingularity { .. })));
        let g = germ(&[(1, 0, 2), (-2, 2, 1), (1, 4, 0)]);
        assert!(matches!(
            classical_invariants(&g),
            Err(Error::NonIsolatedSingularity { .. })
        ));
    }

    #[test]
    fn germ_validation() {
        assert_eq!(CurveGerm::new(LaurentPoly::zero()), Err(Error::ZeroCurve));
        assert!(matches!(
            CurveGerm::new(LaurentPoly::from_int_terms(&[(1, 0, 0), (1, 1, 0)])),
            Err(Error::CurveMissesOrigin(_))
        ));
        assert!(matches!(
            CurveGerm::new(LaurentPoly::from_int_terms(&[(1, -1, 2)])),
            Err(Error::NegativeExponentInput(_))
        ));
    }

    #[test]
    fn table_rows() {
        let s = WindowSchedule::default();
        let g = germ(&[(1, 8, 0), (-1, 5, 2), (-1, 3, 2), (1, 0, 4)]);
        let r = curve_invariants(&g, 4, &s).unwrap();
        assert_eq!((r.classical.delta, r.classical.milnor, r.classical.tjurina), (9, 17, 15));
        assert_eq!((r.numbers.numbers.width, r.numbers.numbers.height), (8, 6));
    }
}
