//! Independent oracles, deliberately sharing no code with the library solvers.
#![allow(dead_code)]

use instanton_core::bundle::canonical_slots;
use instanton_core::{LaurentPoly, Rational};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rank by dense Gaussian elimination over the rationals.
pub fn dense_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for k in c..cols {
                    row[k] -= &f * &pivot[k];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Split-bundle width: lattice points `(l, i)` with `i < 0`, `l >= 0` (a
/// `U`-section) whose image `z^(l+j) u^i` or `z^(l-j) u^i` satisfies the
/// `V`-holomorphy predicate `exponent of z <= exponent of u`.
pub fn split_width_by_counting(j: i32) -> usize {
    let mut n = 0;
    for i in -4 * j - 4..0 {
        for l in 0..=8 * j + 8 {
            if l + j <= i {
                n += 1;
            }
            if l - j <= i {
                n += 1;
            }
        }
    }
    n
}

/// Split-bundle height: first-component cochains `z^l u^i`, `i >= 0`, that
/// are neither `V`-holomorphic (`l <= i`) nor of the form `z^j * U`-holomorphic
/// (`l >= j`). The second component is always covered.
pub fn split_height_by_counting(j: i32) -> usize {
    let mut n = 0;
    for i in 0..=4 * j + 4 {
        for l in -4 * j - 4..=8 * j + 8 {
            if !(l <= i) && !(l >= j) {
                n += 1;
            }
        }
    }
    n
}

/// Height from the finite system obtained by eliminating every unit
/// coboundary: `h = |G| - rank` of the `G`-parts of `p z^l u^i`,
/// `0 <= l <= i + j`, `i >= 0`, where `G = {(m, i) : 0 <= i < m < j}`.
pub fn reduced_height(j: i32, p: &LaurentPoly) -> usize {
    let cells: Vec<(i32, i32)> = (0..j)
        .flat_map(|i| ((i + 1)..j).map(move |m| (m, i)))
        .collect();
    if cells.is_empty() {
        return 0;
    }
    let mut rows = Vec::new();
    for i in 0..=j {
        for l in 0..=(i + j) {
            let mut row = vec![Rational::zero(); cells.len()];
            for (m, c) in p.terms() {
                let at = (m.z() + l, m.u() + i);
                if let Some(k) = cells.iter().position(|&x| x == at) {
                    row[k] += c;
                }
            }
            rows.push(row);
        }
    }
    cells.len() - dense_rank(rows)
}

/// Width from the finite system in the second component alone. The first
/// component only absorbs terms `z^m` with `m >= j`, and its negative part
/// is a function of the negative part of `s2`, so
/// `w = dim` of the negative parts of those `s2` (supported on
/// `0 <= l <= i + j`) with `(p s2)[m, i] = 0` whenever `i < m < j`.
pub fn reduced_width(j: i32, p: &LaurentPoly) -> usize {
    let unknowns: Vec<(i32, i32)> = (-j..=(j - 2))
        .flat_map(|i| (0..=(i + j)).map(move |l| (l, i)))
        .collect();
    let col = |l: i32, i: i32| unknowns.iter().position(|&x| x == (l, i));
    let min_m = -2 * j - 4 + p.first_range().map_or(0, |r| r.0);
    let mut rows = Vec::new();
    for i in -j..=(j - 2) {
        for m in min_m.max(i + 1)..j {
            let mut row = vec![Rational::zero(); unknowns.len()];
            for (pm, c) in p.terms() {
                if let Some(k) = col(m - pm.z(), i - pm.u()) {
                    row[k] += c;
                }
            }
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(row);
            }
        }
    }
    let nonneg: Vec<usize> = (0..unknowns.len()).filter(|&k| unknowns[k].1 >= 0).collect();
    let all = unknowns.len();
    let rank_all = if rows.is_empty() { 0 } else { dense_rank(rows.clone()) };
    let rank_nonneg = if rows.is_empty() {
        0
    } else {
        dense_rank(
            rows.iter()
                .map(|r| nonneg.iter().map(|&k| r[k].clone()).collect())
                .collect(),
        )
    };
    // dim ker - dim (ker with negative part zero)
    (all - rank_all) - (nonneg.len() - rank_nonneg)
}

/// Random canonical polynomial with small rational coefficients; roughly
/// half of the draws clear the lower `u`-degrees.
pub fn random_canonical(j: u32, rng: &mut ChaCha8Rng) -> LaurentPoly {
    let depth = rng.random_range(1..=(2 * j as i32 - 2).max(1));
    let mut p = LaurentPoly::zero();
    for m in canonical_slots(j) {
        if m.u() >= depth && rng.random_bool(0.7) {
            let num: i64 = rng.random_range(-3..=3);
            let den: i64 = rng.random_range(1..=2);
            p.add_term(m, Rational::new(num.into(), den.into()));
        }
    }
    p
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn one() -> Rational {
    Rational::one()
}
