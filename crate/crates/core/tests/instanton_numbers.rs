mod common;

use common::one;

use instanton_core::bundle::{canonical_slots, canonicalize, from_curve};
use instanton_core::cohomology::instanton_numbers;
use instanton_core::scalar::rat;
use instanton_core::strata::add_removable_terms;
use instanton_core::{InstantonNumbers, LaurentPoly, Monomial, TransitionData, Vars, WindowSchedule};

fn numbers(j: u32, p: &LaurentPoly) -> InstantonNumbers {
    let d = TransitionData::new(j, p.clone()).unwrap();
    instanton_numbers(&d, &WindowSchedule::default()).unwrap().numbers
}

#[test]
fn generic_stratum() {
    for j in 1..=5 {
        assert_eq!(numbers(j, &LaurentPoly::from_int_terms(&[(1, 0, 1)])), InstantonNumbers::generic(j));
    }
    // A nonzero coefficient of u or z u is enough.
    let p = LaurentPoly::from_int_terms(&[(2, 1, 1), (-1, 2, 3), (1, 0, 4)]);
    assert_eq!(numbers(3, &p), InstantonNumbers::new(1, 2));
}

// A lone z^l u is generic only for l in {0, 1}; the width grows as the
// triangular number of max(l, 1 - l), symmetric under l -> 1 - l.
#[test]
fn lone_linear_monomials() {
    for j in 2..=5i32 {
        for l in (2 - j)..=(j - 1) {
            let p = LaurentPoly::from_int_terms(&[(1, l, 1)]);
            let k = l.max(1 - l) as usize;
            let n = numbers(j as u32, &p);
            assert_eq!(n.width, k * (k + 1) / 2, "j={j} l={l}");
            assert_eq!(n.width, common::reduced_width(j, &p), "j={j} l={l}");
            assert_eq!(n.height, common::reduced_height(j, &p), "j={j} l={l}");
        }
    }
    // two edge monomials together are generic again
    let p = LaurentPoly::from_int_terms(&[(1, 2, 1), (1, -1, 1)]);
    assert_eq!(numbers(4, &p), InstantonNumbers::generic(4));
}

/// Rank of the (j-1) x j Hankel matrix of the `u^1` coefficients
/// a_{2-j}, ..., a_{j-1}.
fn linear_hankel_rank(j: i32, p: &LaurentPoly) -> usize {
    let rows = (0..j - 1)
        .map(|r| (0..j).map(|c| p.coeff(Monomial::zu(2 - j + r + c, 1))).collect())
        .collect();
    common::dense_rank(rows)
}

// Observed, not proven: the generic pair occurs exactly when that Hankel
// matrix has full rank.
#[test]
fn generic_iff_linear_hankel_matrix_has_full_rank() {
    let mut rng = common::rng(23);
    let mut seen = [0usize; 2];
    for j in 2..=5u32 {
        for k in 0..60 {
            let mut p = common::random_canonical(j, &mut rng);
            if k % 3 == 0 {
                // force a rank-deficient geometric u^1 part
                p = p.filter(|m| m.u() > 1);
                let ratio = rat(k as i64 % 5 - 2, 1 + k as i64 % 2);
                let mut c = one();
                for l in (2 - j as i32)..=(j as i32 - 1) {
                    p.add_term(Monomial::zu(l, 1), c.clone());
                    c *= &ratio;
                }
            }
            let full = linear_hankel_rank(j as i32, &p) == j as usize - 1;
            let generic = numbers(j, &p) == InstantonNumbers::generic(j);
            assert_eq!(full, generic, "j={j} p={}", p.display(Vars::ZU));
            seen[usize::from(full)] += 1;
        }
    }
    assert!(seen[0] > 20 && seen[1] > 20, "{seen:?}");
}

#[test]
fn solvers_agree_with_reduced_oracles() {
    let mut rng = common::rng(11);
    for j in 1..=4u32 {
        for _ in 0..25 {
            let p = common::random_canonical(j, &mut rng);
            let n = numbers(j, &p);
            assert_eq!(n.width, common::reduced_width(j as i32, &p), "w: j={j}, p={p:?}");
            assert_eq!(n.height, common::reduced_height(j as i32, &p), "h: j={j}, p={p:?}");
        }
    }
}

#[test]
fn every_single_monomial_at_j3() {
    for m in canonical_slots(3) {
        let p = LaurentPoly::monomial(m);
        let n = numbers(3, &p);
        assert_eq!(n.width, common::reduced_width(3, &p), "{m:?}");
        assert_eq!(n.height, common::reduced_height(3, &p), "{m:?}");
    }
}

#[test]
fn bounds_hold_on_random_samples() {
    let mut rng = common::rng(5);
    for j in 2..=4u32 {
        let ju = j as usize;
        for _ in 0..30 {
            let n = numbers(j, &common::random_canonical(j, &mut rng));
            assert!(ju <= n.charge && n.charge <= ju * ju);
            assert!(1 <= n.width && n.width <= ju * (ju + 1) / 2);
            assert!(ju - 1 <= n.height && n.height <= ju * (ju - 1) / 2);
        }
    }
}

#[test]
fn invariance_under_scaling_and_removable_terms() {
    let mut rng = common::rng(21);
    for j in 2..=4u32 {
        for _ in 0..8 {
            let p = common::random_canonical(j, &mut rng);
            let base = numbers(j, &p);
            for lambda in [rat(2, 1), rat(-3, 1), rat(1, 2)] {
                assert_eq!(numbers(j, &p.scale(&lambda)), base);
            }
            let noisy = add_removable_terms(j, &p, &mut rng);
            assert_eq!(numbers(j, &noisy), base);
            assert_eq!(canonicalize(j, &noisy).unwrap().p(), &p);
        }
    }
}

#[test]
fn raw_and_canonical_curve_data_agree() {
    // z u^6 - z^4 u^4 is entirely removable at j = 4.
    let raw = LaurentPoly::from_int_terms(&[(1, 1, 6), (-1, 4, 4)]);
    assert_eq!(numbers(4, &raw), numbers(4, &LaurentPoly::zero()));
}

fn quasi_homogeneous(n: i32, m: i32) -> LaurentPoly {
    LaurentPoly::from_int_terms(&[(1, 0, n), (-1, m, 0)])
}

fn qh_width(n: i32, m: i32, j: u32) -> usize {
    let f = quasi_homogeneous(n, m);
    let d = from_curve(&f, j).unwrap();
    let w = instanton_numbers(&d, &WindowSchedule::default()).unwrap().numbers.width;
    assert_eq!(w, common::reduced_width(j as i32, d.p()), "y^{n} - x^{m}, j = {j}");
    w
}

#[test]
fn width_of_quasi_homogeneous_curves_for_large_j() {
    for (n, m) in [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5)] {
        for j in (m + n - 1)..=(m + n + 1) {
            assert_eq!(qh_width(n, m, j as u32) as i32, n * (n + 1) / 2, "y^{n} - x^{m}, j = {j}");
        }
    }
}

#[test]
fn width_of_quasi_homogeneous_curves_just_above_m() {
    // At j = m + 1 the term z^m u^m is still in the canonical range; for
    // y^3 - x^4 it removes one direction (s2 at z^0 u^-3), so w = 5, not 6.
    let expected = [((2, 3), 3), ((2, 5), 3), ((2, 7), 3), ((3, 4), 5), ((3, 5), 6)];
    for ((n, m), w) in expected {
        assert_eq!(qh_width(n, m, (m + 1) as u32), w, "y^{n} - x^{m}");
    }
}

#[test]
fn width_separates_multiplicities() {
    let pairs = [((2, 3), (3, 4)), ((2, 5), (3, 5)), ((3, 4), (4, 5))];
    for ((n1, m1), (n2, m2)) in pairs {
        let j = (m2 + 1) as u32;
        let w = |n, m| {
            let d = from_curve(&quasi_homogeneous(n, m), j).unwrap();
            instanton_numbers(&d, &WindowSchedule::default()).unwrap().numbers.width
        };
        assert!(w(n1, m1) < w(n2, m2), "({n1},{m1}) vs ({n2},{m2}) at j = {j}");
    }
}

#[test]
fn height_ignores_terms_beyond_order_j_minus_2() {
    // h only sees p modulo u^(j-1).
    let p = LaurentPoly::from_int_terms(&[(1, 0, 3), (-1, 1, 3), (1, 3, 3)]);
    assert_eq!(numbers(4, &p).height, 6);
    assert_eq!(common::reduced_height(4, &p), 6);
}
