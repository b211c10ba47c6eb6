//! Bivariate Laurent polynomials with exact rational coefficients.
//!
//! The same type carries curve equations in `(x, y)` and extension classes in
//! `(z, u)`. Slot 0 holds the exponent of `x` (resp. `z`), slot 1 the exponent
//! of `y` (resp. `u`). Terms iterate in lexicographic order on
//! `(slot 1, slot 0)`, i.e. by `u`-exponent first, so every matrix assembled
//! from a polynomial is reproducible.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{int, Rational};

/// Names of the two variables, used for display and parsing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vars {
    /// Plane-curve coordinates.
    XY,
    /// Chart coordinates on the blow-up; `u = 0` is the exceptional divisor.
    ZU,
}

impl Vars {
    pub fn names(self) -> [char; 2] {
        match self {
            Vars::XY => ['x', 'y'],
            Vars::ZU => ['z', 'u'],
        }
    }

    pub fn index_of(self, c: char) -> Option<usize> {
        self.names().iter().position(|&n| n == c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub [i32; 2]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0]);

    pub fn zu(z: i32, u: i32) -> Self {
        Monomial([z, u])
    }

    pub fn xy(x: i32, y: i32) -> Self {
        Monomial([x, y])
    }

    pub fn z(self) -> i32 {
        self.0[0]
    }

    pub fn u(self) -> i32 {
        self.0[1]
    }

    pub fn x(self) -> i32 {
        self.0[0]
    }

    pub fn y(self) -> i32 {
        self.0[1]
    }

    pub fn total_degree(self) -> i32 {
        self.0[0] + self.0[1]
    }

    pub fn is_polynomial(self) -> bool {
        self.0[0] >= 0 && self.0[1] >= 0
    }

    pub fn times(self, other: Monomial) -> Monomial {
        Monomial([self.0[0] + other.0[0], self.0[1] + other.0[1]])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0[1], self.0[0]).cmp(&(other.0[1], other.0[0]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(int(1), m)
    }

    /// Builds a polynomial from `(coefficient, slot0, slot1)` triples with integer
    /// coefficients; repeated monomials are summed.
    pub fn from_int_terms(terms: &[(i64, i32, i32)]) -> Self {
        let mut p = Self::zero();
        for &(c, a, b) in terms {
            p.add_term(Monomial([a, b]), int(c));
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m`, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.keys().copied()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn shift(&self, by: Monomial) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, a)| (m.times(by), a.clone())).collect(),
        }
    }

    pub fn filter<F: Fn(Monomial) -> bool>(&self, keep: F) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(**m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    fn slot_range(&self, slot: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m.0[slot]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// `(min, max)` of the slot-0 exponent (`z` or `x`), `None` for zero.
    pub fn first_range(&self) -> Option<(i32, i32)> {
        self.slot_range(0)
    }

    /// `(min, max)` of the slot-1 exponent (`u` or `y`), `None` for zero.
    pub fn second_range(&self) -> Option<(i32, i32)> {
        self.slot_range(1)
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(|m| !m.is_polynomial())
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(Monomial::ONE)
    }

    /// Minimal total degree of a term, `None` for zero.
    pub fn order(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.total_degree()).min()
    }

    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Partial derivative with respect to the variable in `slot`.
    pub fn derivative(&self, slot: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.0[slot];
            if e == 0 {
                continue;
            }
            let mut d = *m;
            d.0[slot] -= 1;
            out.add_term(d, c * int(e as i64));
        }
        out
    }

    /// Drops all terms of total degree `>= bound`.
    pub fn truncate_total_degree(&self, bound: i32) -> Self {
        self.filter(|m| m.total_degree() < bound)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `x -> u`, `y -> z u`: the term `x^a y^b` becomes `z^b u^(a+b)`.
    pub fn substitute_blowup(&self) -> Result<Self> {
        if self.has_negative_exponent() {
            return Err(Error::NegativeExponentInput(self.display(Vars::XY).to_string()));
        }
        Ok(Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::zu(m.y(), m.x() + m.y()), c.clone()))
                .collect(),
        })
    }

    pub fn display(&self, vars: Vars) -> PolyDisplay<'_> {
        PolyDisplay { poly: self, vars }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(*mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&int(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -(&self)
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a LaurentPoly,
    vars: Vars,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let names = self.vars.names();
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || *m == Monomial::ONE {
                factors.push(if abs.is_integer() {
                    abs.numer().to_string()
                } else {
                    format!("{}/{}", abs.numer(), abs.denom())
                });
            }
            for (name, e) in names.iter().zip(m.0) {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
