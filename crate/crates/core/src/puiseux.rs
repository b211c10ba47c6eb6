//! Counting analytic branches of a plane-curve germ at the origin by the
//! Newton–Puiseux recursion, staying inside the rationals.
//!
//! Each compact edge of the Newton polygon with primitive direction `(P, -Q)`
//! contributes a quasi-homogeneous initial form whose factors
//! `x^P - r y^Q` are in bijection with the roots `r` of the edge polynomial.
//! A simple root carries exactly one branch. A repeated rational root is
//! resolved by the toric chart `x = s^Q w^a`, `y = s^P w^b` (`Qb - Pa = 1`),
//! in which the strict transform passes through `(0, 1/r)`; the recursion
//! continues there.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Monomial, Vars};
use crate::scalar::Rational;
use crate::univariate::UniPoly;

const MAX_DEPTH: usize = 48;

pub fn branch_count(f: &LaurentPoly) -> Result<usize> {
    count(f, 0)
}

fn count(f: &LaurentPoly, depth: usize) -> Result<usize> {
    if depth > MAX_DEPTH {
        return Err(Error::NonReducedGerm(
            "Newton-Puiseux recursion did not terminate".into(),
        ));
    }
    if f.is_zero() {
        return Err(Error::ZeroCurve);
    }
    if !f.constant_term().is_zero() {
        return Ok(0);
    }
    let (ax, _) = f.first_range().expect("nonzero");
    let (by, _) = f.second_range().expect("nonzero");
    if ax >= 2 || by >= 2 {
        return Err(Error::NonReducedGerm(format!(
            "{} has a repeated coordinate-axis factor",
            f.display(Vars::XY)
        )));
    }
    let mut branches = (ax + by) as usize;
    let g = f.shift(Monomial::xy(-ax, -by));
    if !g.constant_term().is_zero() {
        return Ok(branches);
    }
    for edge in lower_edges(&g) {
        branches += edge_branches(&g, &edge, depth)?;
    }
    Ok(branches)
}

#[derive(Debug, Clone, Copy)]
struct Edge {
    start: (i32, i32),
    steps: i32,
    /// Primitive step along x.
    p: i32,
    /// Primitive step down in y.
    q: i32,
}

/// Compact edges of the Newton polygon of `g`, which has a pure power of `y`
/// and a pure power of `x` in its support.
fn lower_edges(g: &LaurentPoly) -> Vec<Edge> {
    let b0 = g
        .monomials()
        .filter(|m| m.x() == 0)
        .map(|m| m.y())
        .min()
        .expect("y-axis point");
    let a0 = g
        .monomials()
        .filter(|m| m.y() == 0)
        .map(|m| m.x())
        .min()
        .expect("x-axis point");
    let mut points: Vec<(i32, i32)> = g
        .monomials()
        .map(|m| (m.x(), m.y()))
        .filter(|&(a, b)| a <= a0 && b <= b0)
        .collect();
    points.sort();
    let mut hull: Vec<(i32, i32)> = Vec::new();
    for pt in points {
        if hull.last().is_some_and(|last| last.0 == pt.0) {
            continue;
        }
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) as i64 * (pt.1 - o.1) as i64
                - (a.1 - o.1) as i64 * (pt.0 - o.0) as i64;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2)
        .map(|w| {
            let (da, db) = (w[1].0 - w[0].0, w[0].1 - w[1].1);
            let steps = gcd(da, db);
            Edge {
                start: w[0],
                steps,
                p: da / steps,
                q: db / steps,
            }
        })
        .collect()
}

fn gcd(a: i32, b: i32) -> i32 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn edge_polynomial(g: &LaurentPoly, e: &Edge) -> UniPoly {
    UniPoly::new(
        (0..=e.steps)
            .map(|k| g.coeff(Monomial::xy(e.start.0 + k * e.p, e.start.1 - k * e.q)))
            .collect(),
    )
}

fn edge_branches(g: &LaurentPoly, e: &Edge, depth: usize) -> Result<usize> {
    let mut rest = edge_polynomial(g, e);
    let mut branches = 0;
    for r in rest.rational_roots() {
        let multiplicity = rest.deflate(&r);
        branches += if multiplicity == 1 {
            1
        } else {
            count(&toric_transform(g, e, &r), depth + 1)?
        };
    }
    if rest.degree() > 0 {
        let repeated = rest.gcd(&rest.derivative());
        if repeated.degree() > 0 {
            return Err(Error::ExtensionFieldRecursionUnsupported {
                degree: repeated.degree(),
            });
        }
        branches += rest.degree();
    }
    Ok(branches)
}

/// Strict transform of `g` in the toric chart adapted to edge `e`, recentred
/// at the point corresponding to the root `r`.
fn toric_transform(g: &LaurentPoly, e: &Edge, r: &Rational) -> LaurentPoly {
    let (p, q) = (e.p, e.q);
    let b = (1..=p.max(1))
        .find(|b| (q * b - 1).rem_euclid(p) == 0)
        .expect("coprime steps");
    let a = (q * b - 1) / p;
    let chart = LaurentPoly::from_terms(g.terms().map(|(m, c)| {
        (
            Monomial::xy(q * m.x() + p * m.y(), a * m.x() + b * m.y()),
            c.clone(),
        )
    }));
    let (s0, _) = chart.first_range().expect("nonzero");
    let (w0, _) = chart.second_range().expect("nonzero");
    let chart = chart.shift(Monomial::xy(-s0, -w0));
    let centre = r.recip();
    let shifted_w = LaurentPoly::from_terms([
        (Monomial::ONE, centre),
        (Monomial::xy(0, 1), Rational::one()),
    ]);
    let mut out = LaurentPoly::zero();
    for (m, c) in chart.terms() {
        let factor = shifted_w.pow(m.y() as u32);
        out = &out + &factor.shift(Monomial::xy(m.x(), 0)).scale(c);
    }
    out
}
