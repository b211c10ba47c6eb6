//! Sweeps over the canonical coefficient space of `M_j`, binned by `(w, h)`.
//!
//! Samples are drawn up front from a seeded generator, evaluated in parallel
//! and aggregated in sample order, so a sweep is a pure function of its spec.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bundle::{
    canonical_slots, coefficient_count, embed, is_removable, splits_on_neighborhood,
    CanonicalCoefficients, TransitionData,
};
use crate::cohomology::{instanton_numbers, InstantonNumbers, WindowSchedule};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::poly::{LaurentPoly, Monomial, Vars};
use crate::scalar::{int, Rational};

/// Default bound on the number of points of an exhaustive grid.
pub const DEFAULT_GRID_CAP: u128 = 4096;
/// Representatives kept per stratum.
pub const MAX_REPRESENTATIVES: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum SweepMode {
    ExhaustiveGrid,
    RandomSample,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSpec {
    pub j: u32,
    pub mode: SweepMode,
    /// Grid values for [`SweepMode::ExhaustiveGrid`].
    pub coefficient_set: Vec<Rational>,
    pub sample_count: usize,
    pub seed: u64,
    pub grid_cap: u128,
    pub schedule: WindowSchedule,
}

impl SweepSpec {
    pub fn grid(j: u32) -> Self {
        Self {
            j,
            mode: SweepMode::ExhaustiveGrid,
            coefficient_set: vec![int(-1), int(0), int(1)],
            sample_count: 0,
            seed: 0,
            grid_cap: DEFAULT_GRID_CAP,
            schedule: WindowSchedule::default(),
        }
    }

    pub fn random(j: u32, sample_count: usize, seed: u64) -> Self {
        Self {
            mode: SweepMode::RandomSample,
            sample_count,
            seed,
            ..Self::grid(j)
        }
    }

    pub fn with_j(&self, j: u32) -> Self {
        Self { j, ..self.clone() }
    }

    /// Number of grid points, `|set|^J`, saturating.
    pub fn grid_size(&self) -> u128 {
        let base = self.coefficient_set.len() as u128;
        (0..coefficient_count(self.j)).fold(1u128, |acc, _| acc.saturating_mul(base))
    }

    /// The coefficient vectors this spec evaluates, in evaluation order.
    pub fn samples(&self) -> Result<Vec<CanonicalCoefficients>> {
        match self.mode {
            SweepMode::ExhaustiveGrid => self.grid_points(),
            SweepMode::RandomSample => Ok(self.random_points()),
        }
    }

    fn grid_points(&self) -> Result<Vec<CanonicalCoefficients>> {
        let size = self.grid_size();
        if size > self.grid_cap {
            return Err(Error::InfeasibleGrid {
                size,
                cap: self.grid_cap,
            });
        }
        if self.coefficient_set.is_empty() {
            return Err(Error::InvalidArgument("empty coefficient set".into()));
        }
        let n = coefficient_count(self.j);
        let base = self.coefficient_set.len();
        let mut digits = vec![0usize; n];
        let mut out = Vec::with_capacity(size as usize);
        loop {
            let coeffs = digits.iter().map(|&d| self.coefficient_set[d].clone()).collect();
            out.push(CanonicalCoefficients { j: self.j, coeffs });
            // Odometer with the last coordinate running fastest.
            let Some(k) = (0..n).rev().find(|&k| digits[k] + 1 < base) else {
                return Ok(out);
            };
            digits[k] += 1;
            digits[k + 1..].iter_mut().for_each(|d| *d = 0);
        }
    }

    /// Numerators in `[-2, 2]`, denominators in `[1, 3]`; each sample also
    /// clears every coefficient with `u`-exponent below a random depth, so
    /// that the deeper strata are visited as well as the generic one.
    fn random_points(&self) -> Vec<CanonicalCoefficients> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let slots = canonical_slots(self.j);
        let max_depth = (2 * self.j as i32 - 2).max(1);
        (0..self.sample_count)
            .map(|_| {
                let depth = rng.random_range(1..=max_depth);
                let coeffs = slots
                    .iter()
                    .map(|m| {
                        let num: i64 = rng.random_range(-2..=2);
                        let den: i64 = rng.random_range(1..=3);
                        if m.u() < depth {
                            Rational::zero()
                        } else {
                            Rational::new(BigInt::from(num), BigInt::from(den))
                        }
                    })
                    .collect();
                CanonicalCoefficients { j: self.j, coeffs }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StratumRecord {
    pub width: usize,
    pub height: usize,
    pub charge: usize,
    pub sample_count: usize,
    pub representatives: Vec<CanonicalCoefficients>,
    /// Rank of the lowest-order parts of the samples, minus one. An
    /// observation on the sampled points, not a dimension computation.
    pub observed_parameter_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepReport {
    pub j: u32,
    pub mode: SweepMode,
    pub samples: usize,
    pub records: Vec<StratumRecord>,
    /// Bound and split-uniqueness failures; empty when all hold.
    pub violations: Vec<String>,
    /// Samples with a nonzero `u^1` part off the generic pair. Observational:
    /// `z^l u` alone is generic only for `l` in {0, 1}, so these are expected.
    pub genericity_proxy_misses: Vec<String>,
}

/// Part of `c` in the smallest `u`-degree where it is nonzero.
fn lowest_part(c: &CanonicalCoefficients) -> Vec<Rational> {
    let slots = canonical_slots(c.j);
    let lowest = slots
        .iter()
        .zip(&c.coeffs)
        .filter(|(_, v)| !v.is_zero())
        .map(|(m, _)| m.u())
        .min();
    slots
        .iter()
        .zip(&c.coeffs)
        .map(|(m, v)| {
            if Some(m.u()) == lowest {
                v.clone()
            } else {
                Rational::zero()
            }
        })
        .collect()
}

fn observed_parameter_count(members: &[&CanonicalCoefficients]) -> usize {
    let n = members.first().map_or(0, |c| c.coeffs.len());
    let mut m = SparseMatrix::zero(0, n);
    for c in members {
        m.push_row(
            lowest_part(c)
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero()),
        );
    }
    m.rank().saturating_sub(1)
}

fn has_linear_part(c: &CanonicalCoefficients) -> bool {
    canonical_slots(c.j)
        .iter()
        .zip(&c.coeffs)
        .any(|(m, v)| m.u() == 1 && !v.is_zero())
}

/// Checks every proven bound on one sample.
pub fn bound_violations(j: u32, n: &InstantonNumbers) -> Vec<String> {
    let mut out = Vec::new();
    let ju = j as usize;
    if n.charge < ju || n.charge > ju * ju {
        out.push(format!("charge {} outside [{ju}, {}]", n.charge, ju * ju));
    }
    if j >= 1 {
        let (lo, hi) = (InstantonNumbers::generic(j), InstantonNumbers::split(j));
        if n.width < lo.width || n.width > hi.width {
            out.push(format!("width {} outside [{}, {}]", n.width, lo.width, hi.width));
        }
        if n.height < lo.height || n.height > hi.height {
            out.push(format!("height {} outside [{}, {}]", n.height, lo.height, hi.height));
        }
    }
    out
}

pub fn evaluate(
    samples: &[CanonicalCoefficients],
    schedule: &WindowSchedule,
) -> Result<Vec<InstantonNumbers>> {
    samples
        .par_iter()
        .map(|c| instanton_numbers(&c.to_data(), schedule).map(|r| r.numbers))
        .collect()
}

pub fn sweep(spec: &SweepSpec) -> Result<SweepReport> {
    let samples = spec.samples()?;
    let numbers = evaluate(&samples, &spec.schedule)?;
    let j = spec.j;
    let mut violations = Vec::new();
    let mut genericity_proxy_misses = Vec::new();
    let mut bins: BTreeMap<(usize, usize), Vec<&CanonicalCoefficients>> = BTreeMap::new();
    for (c, n) in samples.iter().zip(&numbers) {
        let label = c.to_data().p().display(Vars::ZU).to_string();
        for v in bound_violations(j, n) {
            violations.push(format!("p = {label}: {v}"));
        }
        if j >= 1 && has_linear_part(c) && *n != InstantonNumbers::generic(j) {
            genericity_proxy_misses.push(format!(
                "p = {label} has a nonzero u^1 part but (w, h) = ({}, {})",
                n.width, n.height
            ));
        }
        if *n == InstantonNumbers::split(j) && !c.is_zero() {
            violations.push(format!("p = {label} attains the split-bundle pair"));
        }
        bins.entry((n.charge, n.width)).or_default().push(c);
    }
    let records = bins
        .into_iter()
        .map(|((charge, width), members)| StratumRecord {
            width,
            height: charge - width,
            charge,
            sample_count: members.len(),
            representatives: members
                .iter()
                .take(MAX_REPRESENTATIVES)
                .map(|&c| c.clone())
                .collect(),
            observed_parameter_count: observed_parameter_count(&members),
        })
        .collect();
    Ok(SweepReport {
        j,
        mode: spec.mode,
        samples: samples.len(),
        records,
        violations,
        genericity_proxy_misses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModuliStratum {
    pub j: u32,
    pub mode: SweepMode,
    pub record: StratumRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModuliSummary {
    pub charge: usize,
    pub max_j: u32,
    pub strata: Vec<ModuliStratum>,
    /// For charges 0, 1, 2: whether the observed strata look like a point,
    /// a point and a projective line.
    pub expected_shape: Option<String>,
    pub shape_consistent: Option<bool>,
}

/// Strata of charge `i` over all `j <= max_j` that can carry it
/// (`j <= i <= j^2`). Each `j` is swept exhaustively when the template's
/// grid fits under its cap and by random sampling otherwise.
pub fn local_moduli_summary(i: usize, max_j: u32, template: &SweepSpec) -> Result<ModuliSummary> {
    let mut strata = Vec::new();
    for j in 0..=max_j {
        let ju = j as usize;
        if ju > i || ju * ju < i {
            continue;
        }
        let mut spec = template.with_j(j);
        if spec.mode == SweepMode::ExhaustiveGrid && spec.grid_size() > spec.grid_cap {
            spec.mode = SweepMode::RandomSample;
            spec.sample_count = spec.sample_count.max(200);
        }
        for record in sweep(&spec)?.records {
            if record.charge == i {
                strata.push(ModuliStratum {
                    j,
                    mode: spec.mode,
                    record,
                });
            }
        }
    }
    let (expected_shape, shape_consistent) = match i {
        0 | 1 => (
            Some("point".to_string()),
            Some(strata.len() == 1 && strata[0].record.observed_parameter_count == 0),
        ),
        2 => (
            Some("projective line".to_string()),
            Some(strata.len() == 1 && strata[0].record.observed_parameter_count == 1),
        ),
        _ => (None, None),
    };
    Ok(ModuliSummary {
        charge: i,
        max_j,
        strata,
        expected_shape,
        shape_consistent,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EmbeddingCase {
    pub p: String,
    pub image: String,
    pub variant: String,
    pub image_numbers: InstantonNumbers,
    pub variant_numbers: InstantonNumbers,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EmbeddingReport {
    pub j: u32,
    pub cases: Vec<EmbeddingCase>,
    pub violations: Vec<String>,
}

/// Adds one to three removable monomials to `p`, with coefficients from `rng`.
pub fn add_removable_terms<R: Rng>(j: u32, p: &LaurentPoly, rng: &mut R) -> LaurentPoly {
    let ji = j as i32;
    let mut out = p.clone();
    for _ in 0..rng.random_range(1..=3) {
        let i = rng.random_range(1..=2 * ji + 2);
        let l = if rng.random_bool(0.5) {
            rng.random_range(ji..=ji + 3)
        } else {
            rng.random_range(i - ji - 3..=i - ji)
        };
        let m = Monomial::zu(l, i);
        debug_assert!(is_removable(j, m));
        let c: i64 = rng.random_range(1..=3) * if rng.random_bool(0.5) { 1 } else { -1 };
        out.add_term(m, int(c));
    }
    out
}

/// For every sample of `spec` at `j`: the image under `embed` is canonical
/// for `j + 1` and split on the second neighbourhood, and adding removable
/// terms before embedding does not change the image's `(w, h)`.
pub fn check_embedding(j: u32, spec: &SweepSpec) -> Result<EmbeddingReport> {
    if j < 2 {
        return Err(Error::InvalidArgument("the embedding check needs j >= 2".into()));
    }
    let spec = spec.with_j(j);
    let samples = spec.samples()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x9e37_79b9_7f4a_7c15);
    let pairs: Vec<(TransitionData, TransitionData)> = samples
        .iter()
        .map(|c| {
            let d = c.to_data();
            let variant = TransitionData::new(j, add_removable_terms(j, d.p(), &mut rng))
                .expect("removable terms have positive u-exponent");
            (d, variant)
        })
        .collect();
    let results: Vec<(InstantonNumbers, InstantonNumbers)> = pairs
        .par_iter()
        .map(|(d, v)| {
            let a = instanton_numbers(&embed(d), &spec.schedule)?.numbers;
            let b = instanton_numbers(&embed(v), &spec.schedule)?.numbers;
            Ok((a, b))
        })
        .collect::<Result<_>>()?;
    let mut cases = Vec::new();
    let mut violations = Vec::new();
    for ((d, v), (a, b)) in pairs.iter().zip(results) {
        let image = embed(d);
        let p = d.p().display(Vars::ZU).to_string();
        if !image.is_canonical() {
            violations.push(format!("image of p = {p} is not canonical for j = {}", j + 1));
        }
        if !splits_on_neighborhood(&image, 2) {
            violations.push(format!("image of p = {p} does not split on the second neighbourhood"));
        }
        if a != b {
            violations.push(format!(
                "p = {p}: image numbers {a:?} differ from those of the variant {}",
                v.p().display(Vars::ZU)
            ));
        }
        cases.push(EmbeddingCase {
            p,
            image: image.p().display(Vars::ZU).to_string(),
            variant: v.p().display(Vars::ZU).to_string(),
            image_numbers: a,
            variant_numbers: b,
        });
    }
    Ok(EmbeddingReport {
        j,
        cases,
        violations,
    })
}
