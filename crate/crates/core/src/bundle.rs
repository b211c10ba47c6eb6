//! Transition data `(j, p)` of rank-2 bundles on the blown-up plane.
//!
//! In the chart coordinates `(z, u)` the bundle `E(j, p)` has transition
//! matrix `[[z^j, p], [0, z^-j]]`. Changing trivializations on either chart
//! adds `z^j q` (with `q` holomorphic in `z, u`) or `z^-j r` (with `r`
//! holomorphic in `z^-1, z u`) to `p`, which deletes exactly the monomials
//! `z^l u^i` with `l >= j` or `l <= i - j`. What survives is the canonical
//! range `1 <= i <= 2j - 2`, `i - j + 1 <= l <= j - 1`.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Monomial, Vars};
use crate::scalar::{to_fraction_string, Rational};

/// Whether `z^l u^i` can be removed by a change of trivialization.
pub fn is_removable(j: u32, m: Monomial) -> bool {
    let j = j as i32;
    m.z() >= j || m.z() <= m.u() - j
}

/// Whether `z^l u^i` lies in the canonical range for splitting type `j`.
pub fn in_canonical_range(j: u32, m: Monomial) -> bool {
    let ji = j as i32;
    m.u() >= 1 && m.u() <= 2 * ji - 2 && !is_removable(j, m)
}

/// Canonical monomials in lexicographic `(i, l)` order.
pub fn canonical_slots(j: u32) -> Vec<Monomial> {
    let j = j as i32;
    let mut slots = Vec::new();
    for i in 1..=(2 * j - 2) {
        for l in (i - j + 1)..=(j - 1) {
            slots.push(Monomial::zu(l, i));
        }
    }
    slots
}

/// Number of canonical coefficients, `(j - 1)(2j - 1)` for `j >= 1`.
pub fn coefficient_count(j: u32) -> usize {
    if j == 0 {
        0
    } else {
        ((j - 1) * (2 * j - 1)) as usize
    }
}

fn check_extension_class(p: &LaurentPoly) -> Result<()> {
    if let Some(bad) = p.monomials().find(|m| m.u() < 0) {
        return Err(Error::NegativeUExponent(
            LaurentPoly::term(p.coeff(bad), bad).display(Vars::ZU).to_string(),
        ));
    }
    let divisor_part = p.filter(|m| m.u() == 0);
    if !divisor_part.is_zero() {
        return Err(Error::NonzeroDivisorRestriction(
            divisor_part.display(Vars::ZU).to_string(),
        ));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TransitionData {
    j: u32,
    p: LaurentPoly,
}

impl TransitionData {
    /// Validates that `p` has only positive `u`-exponents; `p` need not be canonical.
    pub fn new(j: u32, p: LaurentPoly) -> Result<Self> {
        check_extension_class(&p)?;
        Ok(Self { j, p })
    }

    pub fn split(j: u32) -> Self {
        Self {
            j,
            p: LaurentPoly::zero(),
        }
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn p(&self) -> &LaurentPoly {
        &self.p
    }

    pub fn is_canonical(&self) -> bool {
        self.p.monomials().all(|m| in_canonical_range(self.j, m))
    }

    pub fn canonical(&self) -> Self {
        Self {
            j: self.j,
            p: self.p.filter(|m| !is_removable(self.j, m)),
        }
    }

    pub fn coefficients(&self) -> CanonicalCoefficients {
        CanonicalCoefficients::from_data(&self.canonical())
    }
}

impl fmt::Display for TransitionData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(j={}, p={})", self.j, self.p.display(Vars::ZU))
    }
}

/// Deletes every removable monomial of `p`.
pub fn canonicalize(j: u32, p: &LaurentPoly) -> Result<TransitionData> {
    Ok(TransitionData::new(j, p.clone())?.canonical())
}

/// The map `(j, p) -> (j + 1, z u^2 p)`.
pub fn embed(d: &TransitionData) -> TransitionData {
    TransitionData {
        j: d.j + 1,
        p: d.p.shift(Monomial::zu(1, 2)),
    }
}

/// Whether the bundle is split on the `n`-th formal neighbourhood of the
/// exceptional divisor, i.e. every canonical term has `u`-exponent above `n`.
pub fn splits_on_neighborhood(d: &TransitionData, n: u32) -> bool {
    d.canonical().p.monomials().all(|m| m.u() > n as i32)
}

/// Largest `n` with [`splits_on_neighborhood`] true; `None` for the split bundle.
pub fn splitting_depth(d: &TransitionData) -> Option<u32> {
    d.canonical()
        .p
        .monomials()
        .map(|m| (m.u() - 1) as u32)
        .min()
}

/// Transition data of `E(j, f(u, z u))`.
pub fn from_curve(f: &LaurentPoly, j: u32) -> Result<TransitionData> {
    let c = f.constant_term();
    if !c.is_zero() {
        return Err(Error::CurveMissesOrigin(to_fraction_string(&c)));
    }
    canonicalize(j, &f.substitute_blowup()?)
}

/// Canonical coefficients in lexicographic `(i, l)` order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalCoefficients {
    pub j: u32,
    pub coeffs: Vec<Rational>,
}

impl CanonicalCoefficients {
    pub fn new(j: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != coefficient_count(j) {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients for j = {j}, got {}",
                coefficient_count(j),
                coeffs.len()
            )));
        }
        Ok(Self { j, coeffs })
    }

    pub fn from_data(d: &TransitionData) -> Self {
        let coeffs = canonical_slots(d.j)
            .into_iter()
            .map(|m| d.p.coeff(m))
            .collect();
        Self { j: d.j, coeffs }
    }

    pub fn to_data(&self) -> TransitionData {
        let p = LaurentPoly::from_terms(
            canonical_slots(self.j)
                .into_iter()
                .zip(self.coeffs.iter().cloned()),
        );
        TransitionData { j: self.j, p }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl Serialize for CanonicalCoefficients {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(to_fraction_string))
    }
}
