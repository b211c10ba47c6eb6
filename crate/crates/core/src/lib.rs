//! Instanton numbers of rank-2 bundles on the blown-up plane and their use
//! as invariants of plane-curve singularities.

pub mod bundle;
pub mod cohomology;
pub mod error;
pub mod expr;
pub mod linalg;
pub mod poly;
mod puiseux;
pub mod scalar;
pub mod singularities;
pub mod strata;
pub mod tables;
pub mod univariate;

pub use bundle::{CanonicalCoefficients, TransitionData};
pub use cohomology::{InstantonNumbers, Window, WindowSchedule};
pub use error::{Error, ErrorKind, Result};
pub use expr::{parse_laurent, parse_poly, PolyExpr};
pub use linalg::SparseMatrix;
pub use poly::{LaurentPoly, Monomial, Vars};
pub use scalar::Rational;
pub use singularities::{ClassicalInvariants, CurveGerm};
pub use strata::{StratumRecord, SweepMode, SweepSpec};
