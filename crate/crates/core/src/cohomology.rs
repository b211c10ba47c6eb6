//! Width, height and charge of `E(j, p)`.
//!
//! Both numbers are dimensions of quotients of infinite-dimensional spaces of
//! Laurent monomials `z^l u^i`, computed on finite windows of exponents and
//! certified by agreement over three consecutive windows.
//!
//! Chart holomorphy is read off monomials: on the chart `U` a monomial is
//! holomorphic iff `l >= 0, i >= 0`; on `V`, with coordinates
//! `(z^-1, z u)`, iff `l <= i, i >= 0`. Off the exceptional divisor the
//! condition `i >= 0` is dropped.
//!
//! * **height** is `dim H^1` of the two-chart Čech complex. Cochains are
//!   pairs over `U ∩ V` written in the `V` frame; coboundaries are spanned by
//!   `T a` for `U`-holomorphic pairs `a` and by `V`-holomorphic pairs, where
//!   `T = [[z^j, p], [0, z^-j]]`. The complex is taken modulo `u^(i_max + 1)`,
//!   which does not change `H^1` once `i_max >= j - 2`.
//! * **width** is `dim Γ(off divisor) / Γ(everywhere)`: pairs `s` of
//!   `U`-monomials with arbitrary `u`-exponent such that `T s` is holomorphic
//!   on `V` off the divisor, projected onto their part with negative
//!   `u`-exponent.

use std::collections::BTreeSet;

use num_traits::One;
use serde::Serialize;

use crate::bundle::TransitionData;
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::scalar::Rational;

/// Exponent box `i_min <= i <= i_max`, `l_min <= l <= l_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Window {
    pub i_min: i32,
    pub i_max: i32,
    pub l_min: i32,
    pub l_max: i32,
}

impl Window {
    /// Smallest window for which every constraint on a retained unknown only
    /// mentions monomials inside it.
    pub fn initial(d: &TransitionData) -> Window {
        let j = d.j() as i32;
        let max_u = d.p().second_range().map_or(0, |(_, hi)| hi);
        Self::for_rows(d, -j, (2 * j - 2).max(max_u).max(0))
    }

    fn for_rows(d: &TransitionData, i_min: i32, i_max: i32) -> Window {
        let j = d.j() as i32;
        let (min_z, max_z) = d.p().first_range().unwrap_or((0, 0));
        Window {
            i_min,
            i_max,
            l_min: (-j + min_z - 1).min(-j),
            l_max: (i_max + j + max_z).max(i_max).max(j - 1),
        }
    }

    /// Doubles both row bounds and widens the column range to match.
    pub fn grow(&self, d: &TransitionData) -> Window {
        Self::for_rows(d, 2 * self.i_min, (2 * self.i_max).max(1))
    }
}

/// How far the window may be enlarged before giving up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowSchedule {
    pub max_doublings: u32,
    /// Windows with a larger `i_max` are never evaluated.
    pub max_i_max: Option<i32>,
}

impl Default for WindowSchedule {
    fn default() -> Self {
        Self {
            max_doublings: 3,
            max_i_max: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Stabilized {
    pub value: usize,
    /// Largest of the three agreeing windows.
    pub window: Window,
}

/// Evaluates `build` on the window schedule and returns the first value
/// attained on three consecutive windows.
pub fn stabilized_dimension<G, F>(
    quantity: &'static str,
    initial: Window,
    grow: G,
    schedule: &WindowSchedule,
    mut build: F,
) -> Result<Stabilized>
where
    G: Fn(&Window) -> Window,
    F: FnMut(&Window) -> usize,
{
    let mut values = Vec::new();
    let mut window = initial;
    let mut last_i_max = initial.i_max;
    for _ in 0..=schedule.max_doublings {
        if schedule.max_i_max.is_some_and(|cap| window.i_max > cap) {
            break;
        }
        values.push(build(&window));
        last_i_max = window.i_max;
        if let [.., a, b, c] = values[..] {
            if a == b && b == c {
                return Ok(Stabilized { value: c, window });
            }
        }
        window = grow(&window);
    }
    Err(Error::StabilizationFailure {
        quantity,
        last_i_max,
        values,
    })
}

/// Height of `d` on one fixed window.
pub fn height_on_window(d: &TransitionData, w: &Window) -> usize {
    let j = d.j() as i32;
    let rows_u = (w.i_max + 1).max(0) as usize;
    let cols_l = (w.l_max - w.l_min + 1) as usize;
    let in_l = |l: i32| (w.l_min..=w.l_max).contains(&l);
    let index = |comp: usize, l: i32, i: i32| -> usize {
        (comp * rows_u + i as usize) * cols_l + (l - w.l_min) as usize
    };
    let one = Rational::one();
    // Unit rows go in first so that the rows carrying `p` are reduced against
    // them (which only deletes entries) before meeting each other.
    let mut m = SparseMatrix::zero(0, 2 * rows_u * cols_l);
    let mut mixed = Vec::new();
    for i in 0..=w.i_max {
        // V-holomorphic pairs.
        for l in w.l_min..=w.l_max.min(i) {
            m.push_row([(index(0, l, i), one.clone())]);
            m.push_row([(index(1, l, i), one.clone())]);
        }
        for l in 0..=(w.l_max + j) {
            // T (z^l u^i, 0) = (z^(l+j) u^i, 0).
            if in_l(l + j) {
                m.push_row([(index(0, l + j, i), one.clone())]);
            }
            // T (0, z^l u^i) = (p z^l u^i, z^(l-j) u^i). First-component terms
            // outside the window are U- or V-holomorphic and therefore dropped.
            if in_l(l - j) {
                let mut row = vec![(index(1, l - j, i), one.clone())];
                for (pm, c) in d.p().terms() {
                    let (lz, iu) = (pm.z() + l, pm.u() + i);
                    if iu <= w.i_max && in_l(lz) {
                        row.push((index(0, lz, iu), c.clone()));
                    }
                }
                mixed.push(row);
            }
        }
    }
    for row in mixed {
        m.push_row(row);
    }
    m.cols() - m.rank()
}

/// Width of `d` on one fixed window.
pub fn width_on_window(d: &TransitionData, w: &Window) -> usize {
    let j = d.j() as i32;
    let rows_u = (w.i_max - w.i_min + 1) as usize;
    let cols_l = (w.l_max + 1) as usize;
    let index = |comp: usize, l: i32, i: i32| -> usize {
        (comp * rows_u + (i - w.i_min) as usize) * cols_l + l as usize
    };
    let in_box = |l: i32, i: i32| (0..=w.l_max).contains(&l) && (w.i_min..=w.i_max).contains(&i);
    let one = Rational::one();
    let mut m = SparseMatrix::zero(0, 2 * rows_u * cols_l);
    for i in w.i_min..=w.i_max {
        // z^-j s2 has a pole along z^-1 = 0 unless l - j <= i.
        for l in 0..=w.l_max {
            if l - j > i {
                m.push_row([(index(1, l, i), one.clone())]);
            }
        }
        // Coefficient of z^m u^i in z^j s1 + p s2 must vanish for m > i.
        for mz in (i + 1)..=(w.l_max + j) {
            let mut row = Vec::new();
            if mz - j >= 0 {
                row.push((index(0, mz - j, i), one.clone()));
            }
            for (pm, c) in d.p().terms() {
                let (l2, i2) = (mz - pm.z(), i - pm.u());
                if in_box(l2, i2) {
                    row.push((index(1, l2, i2), c.clone()));
                }
            }
            if !row.is_empty() {
                m.push_row(row);
            }
        }
    }
    let keep: BTreeSet<usize> = (0..2)
        .flat_map(|comp| {
            (w.i_min..0).flat_map(move |i| (0..=w.l_max).map(move |l| (comp, l, i)))
        })
        .map(|(comp, l, i)| index(comp, l, i))
        .collect();
    m.projected_solution_dim(&keep)
}

pub fn height(d: &TransitionData, schedule: &WindowSchedule) -> Result<Stabilized> {
    stabilized_dimension(
        "height",
        Window::initial(d),
        |w| w.grow(d),
        schedule,
        |w| height_on_window(d, w),
    )
}

pub fn width(d: &TransitionData, schedule: &WindowSchedule) -> Result<Stabilized> {
    stabilized_dimension(
        "width",
        Window::initial(d),
        |w| w.grow(d),
        schedule,
        |w| width_on_window(d, w),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct InstantonNumbers {
    pub width: usize,
    pub height: usize,
    pub charge: usize,
}

impl InstantonNumbers {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            charge: width + height,
        }
    }

    /// The pair attained by the split bundle `O(j) + O(-j)`.
    pub fn split(j: u32) -> Self {
        let j = j as usize;
        Self::new(j * (j + 1) / 2, j * (j.saturating_sub(1)) / 2)
    }

    /// The pair attained on the generic stratum (`j >= 1`).
    pub fn generic(j: u32) -> Self {
        Self::new(1, j.saturating_sub(1) as usize)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NumbersReport {
    pub numbers: InstantonNumbers,
    pub width_window: Window,
    pub height_window: Window,
}

/// Width, height and charge, checked against `j <= charge <= j^2`.
pub fn instanton_numbers(d: &TransitionData, schedule: &WindowSchedule) -> Result<NumbersReport> {
    let w = width(d, schedule)?;
    let h = height(d, schedule)?;
    let numbers = InstantonNumbers::new(w.value, h.value);
    let j = d.j() as usize;
    if numbers.charge < j || numbers.charge > j * j {
        return Err(Error::BoundViolation(format!(
            "{d}: charge {} outside [{j}, {}]",
            numbers.charge,
            j * j
        )));
    }
    let (lo, hi) = (InstantonNumbers::generic(d.j()), InstantonNumbers::split(d.j()));
    if j >= 1
        && (numbers.width < lo.width
            || numbers.width > hi.width
            || numbers.height < lo.height
            || numbers.height > hi.height)
    {
        log::warn!(
            "{d}: (w, h) = ({}, {}) outside the stratification bounds {:?}..{:?}",
            numbers.width,
            numbers.height,
            (lo.width, lo.height),
            (hi.width, hi.height)
        );
    }
    Ok(NumbersReport {
        numbers,
        width_window: w.window,
        height_window: h.window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LaurentPoly;

    fn data(j: u32, terms: &[(i64, i32, i32)]) -> TransitionData {
        TransitionData::new(j, LaurentPoly::from_int_terms(terms)).unwrap()
    }

    fn numbers(d: &TransitionData) -> InstantonNumbers {
        instanton_numbers(d, &WindowSchedule::default()).unwrap().numbers
    }

    #[test]
    fn split_bundle_small_j() {
        assert_eq!(numbers(&TransitionData::split(1)), InstantonNumbers::new(1, 0));
        assert_eq!(numbers(&TransitionData::split(2)), InstantonNumbers::new(3, 1));
        assert_eq!(numbers(&TransitionData::split(4)), InstantonNumbers::new(10, 6));
        assert_eq!(numbers(&TransitionData::split(0)), InstantonNumbers::new(0, 0));
    }

    #[test]
    fn second_example_strata() {
        assert_eq!(numbers(&data(2, &[(1, 1, 2)])), InstantonNumbers::new(2, 1));
        assert_eq!(numbers(&data(2, &[(1, 0, 1)])), InstantonNumbers::new(1, 1));
    }

    #[test]
    fn constant_builder_stabilizes_at_first_window() {
        let d = TransitionData::split(2);
        let s = stabilized_dimension("const", Window::initial(&d), |w| w.grow(&d), &WindowSchedule::default(), |_| 7)
            .unwrap();
        assert_eq!(s.value, 7);
        assert_eq!(s.window, Window::initial(&d).grow(&d).grow(&d));
    }

    #[test]
    fn split_builders_for_j3_at_every_window() {
        let d = TransitionData::split(3);
        let mut w = Window::initial(&d);
        for _ in 0..3 {
            assert_eq!(height_on_window(&d, &w), 3);
            assert_eq!(width_on_window(&d, &w), 6);
            w = w.grow(&d);
        }
    }

    #[test]
    fn growing_builder_fails_to_stabilize() {
        let d = TransitionData::split(2);
        let err = stabilized_dimension("grow", Window::initial(&d), |w| w.grow(&d), &WindowSchedule::default(), |w| {
            w.i_max as usize
        })
        .unwrap_err();
        assert!(matches!(err, Error::StabilizationFailure { .. }));
    }

    #[test]
    fn window_cap_forces_failure() {
        let schedule = WindowSchedule {
            max_doublings: 3,
            max_i_max: Some(4),
        };
        let err = instanton_numbers(&TransitionData::split(4), &schedule).unwrap_err();
        assert!(matches!(err, Error::StabilizationFailure { .. }));
        assert_eq!(err.kind(), crate::error::ErrorKind::Solver);
    }

    #[test]
    fn initial_window_shape() {
        let d = data(4, &[(1, -2, 3), (1, 3, 5)]);
        let w = Window::initial(&d);
        assert_eq!(w, Window { i_min: -4, i_max: 6, l_min: -7, l_max: 13 });
    }
}
