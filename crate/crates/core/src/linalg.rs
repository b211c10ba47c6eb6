//! Sparse exact linear algebra over the rationals.
//!
//! Rank computations convert each row to a primitive integer vector and run
//! fraction-free elimination: a row is reduced against the pivot sharing its
//! leading column by `b*row - a*pivot` and then divided by its content, so no
//! intermediate denominators appear. Pivots are keyed by leading column, so
//! the result never depends on hash order.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for k in 0..n {
            m.set(k, k, Rational::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, Rational::from_integer(BigInt::from(v)));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Overwrites an entry; zero removes it.
    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: Rational) {
        let current = self.get(row, col);
        self.set(row, col, current + value);
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Appends a row given as `(column, value)` pairs and returns its index.
    pub fn push_row<I: IntoIterator<Item = (usize, Rational)>>(&mut self, entries: I) -> usize {
        let r = self.rows;
        self.rows += 1;
        for (c, v) in entries {
            self.add_to(r, c, v);
        }
        r
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    fn sparse_rows(&self) -> Vec<Vec<(usize, Rational)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].push((c, v.clone()));
        }
        rows
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        self.rank_restricted(|_| true)
    }

    /// Rank of the submatrix formed by the columns selected by `keep`.
    pub fn rank_restricted<F: Fn(usize) -> bool>(&self, keep: F) -> usize {
        let mut echelon = Echelon::default();
        for row in self.sparse_rows() {
            let filtered: Vec<_> = row.into_iter().filter(|(c, _)| keep(*c)).collect();
            echelon.insert(integer_row(&filtered));
        }
        echelon.rank()
    }

    /// Reduced row echelon form over the rationals: `(pivot columns, rows)`,
    /// each row normalized to leading coefficient 1 with zeros in all other
    /// pivot columns. Pivots are chosen in increasing column order.
    pub fn rref(&self) -> (Vec<usize>, Vec<BTreeMap<usize, Rational>>) {
        let mut rows: Vec<BTreeMap<usize, Rational>> = self
            .sparse_rows()
            .into_iter()
            .map(|r| r.into_iter().collect())
            .filter(|r: &BTreeMap<usize, Rational>| !r.is_empty())
            .collect();
        let mut pivots = Vec::new();
        let mut reduced: Vec<BTreeMap<usize, Rational>> = Vec::new();
        for col in 0..self.cols {
            let Some(pos) = rows.iter().position(|r| r.contains_key(&col)) else {
                continue;
            };
            let mut pivot = rows.swap_remove(pos);
            let inv = pivot[&col].recip();
            for v in pivot.values_mut() {
                *v *= &inv;
            }
            for other in rows.iter_mut().chain(reduced.iter_mut()) {
                if let Some(factor) = other.get(&col).cloned() {
                    for (c, v) in &pivot {
                        let entry = other.entry(*c).or_insert_with(Rational::zero);
                        *entry -= &factor * v;
                    }
                    other.retain(|_, v| !v.is_zero());
                }
            }
            rows.retain(|r| !r.is_empty());
            pivots.push(col);
            reduced.push(pivot);
        }
        (pivots, reduced)
    }

    /// Basis of the right kernel, one vector per non-pivot column, in
    /// increasing order of that column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (pivots, rows) = self.rref();
        let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
        (0..self.cols)
            .filter(|c| !pivot_set.contains(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (pc, row) in pivots.iter().zip(&rows) {
                    if let Some(a) = row.get(&free) {
                        v[*pc] = -a.clone();
                    }
                }
                v
            })
            .collect()
    }

    /// Dimension of the image of `ker self` under projection onto the
    /// coordinates in `keep`.
    ///
    /// Uses `dim pi(ker M) = |keep| - rank(M) + rank(M restricted to the other columns)`.
    pub fn projected_solution_dim(&self, keep: &BTreeSet<usize>) -> usize {
        assert!(keep.iter().all(|&c| c < self.cols), "keep index out of range");
        let full = self.rank();
        let dropped = self.rank_restricted(|c| !keep.contains(&c));
        keep.len() + dropped - full
    }
}

pub(crate) type IntRow = Vec<(usize, BigInt)>;

/// Scales a rational row to a primitive integer row.
pub(crate) fn integer_row(entries: &[(usize, Rational)]) -> IntRow {
    let lcm = entries
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let row: IntRow = entries
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect();
    make_primitive(row)
}

fn make_primitive(mut row: IntRow) -> IntRow {
    let mut g = BigInt::zero();
    for (_, v) in &row {
        g = g.gcd(v);
        if g.is_one() {
            return row;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    row
}

/// `b*row - a*pivot`, where `a`, `b` are the leading entries divided by their gcd.
fn eliminate(row: &IntRow, pivot: &IntRow) -> IntRow {
    let a = &row[0].1;
    let b = &pivot[0].1;
    let g = a.gcd(b);
    let row_factor = b / &g;
    let pivot_factor = a / &g;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut k) = (1, 1);
    while i < row.len() || k < pivot.len() {
        let next_row = row.get(i).map(|e| e.0);
        let next_piv = pivot.get(k).map(|e| e.0);
        let (col, value) = match (next_row, next_piv) {
            (Some(cr), Some(cp)) if cr == cp => {
                let v = &row[i].1 * &row_factor - &pivot[k].1 * &pivot_factor;
                i += 1;
                k += 1;
                (cr, v)
            }
            (Some(cr), Some(cp)) if cr < cp => {
                i += 1;
                (cr, &row[i - 1].1 * &row_factor)
            }
            (Some(cr), None) => {
                i += 1;
                (cr, &row[i - 1].1 * &row_factor)
            }
            (_, Some(cp)) => {
                k += 1;
                (cp, -(&pivot[k - 1].1 * &pivot_factor))
            }
            (None, None) => unreachable!(),
        };
        if !value.is_zero() {
            out.push((col, value));
        }
    }
    make_primitive(out)
}

/// Incrementally built row echelon form with integer rows.
#[derive(Default)]
pub(crate) struct Echelon {
    pivots: HashMap<usize, IntRow>,
}

impl Echelon {
    /// Reduces `row` against the current pivots; returns whether it was independent.
    pub(crate) fn insert(&mut self, mut row: IntRow) -> bool {
        loop {
            let Some(&(lead, _)) = row.first() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(pivot) => row = eliminate(&row, pivot),
                None => {
                    if row[0].1.is_negative() {
                        for (_, v) in row.iter_mut() {
                            *v = -std::mem::take(v);
                        }
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(SparseMatrix::identity(3).rank(), 3);
        assert_eq!(SparseMatrix::zero(4, 2).rank(), 0);
        assert_eq!(SparseMatrix::from_dense(&[vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn rank_with_fractions() {
        let mut m = SparseMatrix::zero(2, 2);
        m.set(0, 0, crate::scalar::rat(1, 3));
        m.set(0, 1, crate::scalar::rat(1, 2));
        m.set(1, 0, crate::scalar::rat(2, 3));
        m.set(1, 1, int(1));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(SparseMatrix::identity(4).kernel_basis().is_empty());
        assert_eq!(SparseMatrix::zero(1, 3).kernel_basis().len(), 3);
        let k = SparseMatrix::from_dense(&[vec![1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn projected_dim_examples() {
        let keep: BTreeSet<usize> = [0, 1].into_iter().collect();
        assert_eq!(SparseMatrix::zero(1, 3).projected_solution_dim(&keep), 2);
        for keep in [vec![], vec![0], vec![1, 2], vec![0, 1, 2]] {
            let keep = keep.into_iter().collect();
            assert_eq!(SparseMatrix::identity(3).projected_solution_dim(&keep), 0);
        }
        let m = SparseMatrix::from_dense(&[vec![1, -1, 0]]);
        assert_eq!(m.projected_solution_dim(&[2].into_iter().collect()), 1);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(
                prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], c),
                r,
            )
        })
    }

    /// Projection dimension computed from an explicit kernel basis.
    fn projected_dim_via_basis(m: &SparseMatrix, keep: &BTreeSet<usize>) -> usize {
        let basis = m.kernel_basis();
        let mut proj = SparseMatrix::zero(0, m.cols());
        for v in basis {
            proj.push_row(keep.iter().map(|&c| (c, v[c].clone())));
        }
        proj.rank()
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(d in small_matrix()) {
            let m = SparseMatrix::from_dense(&d);
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert!(m.rank() <= m.rows().min(m.cols()));
        }

        #[test]
        fn kernel_dimension_and_membership(d in small_matrix()) {
            let m = SparseMatrix::from_dense(&d);
            let basis = m.kernel_basis();
            prop_assert_eq!(basis.len() + m.rank(), m.cols());
            for v in &basis {
                for r in 0..m.rows() {
                    let dot = (0..m.cols())
                        .fold(Rational::zero(), |acc, c| acc + m.get(r, c) * &v[c]);
                    prop_assert!(dot.is_zero());
                }
            }
        }

        #[test]
        fn projected_dim_matches_basis_projection(
            d in small_matrix(),
            mask in prop::collection::vec(any::<bool>(), 6),
        ) {
            let m = SparseMatrix::from_dense(&d);
            let keep: BTreeSet<usize> = (0..m.cols()).filter(|&c| mask[c]).collect();
            prop_assert_eq!(m.projected_solution_dim(&keep), projected_dim_via_basis(&m, &keep));
            let all: BTreeSet<usize> = (0..m.cols()).collect();
            prop_assert_eq!(m.projected_solution_dim(&all), m.cols() - m.rank());
        }
    }
}
