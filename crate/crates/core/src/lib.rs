//! Exact minimum-modulus laboratory for operators on finite sections of
//! sup-norm sequence spaces.
//!
//! Everything is generic over [`Scalar`]; the crate-root aliases fix the
//! scalar to [`Rational`], an arbitrary-precision exact rational.

pub mod constructions;
pub mod exactnum;
pub mod harness;
pub mod linops;
pub mod lpsolve;
pub mod minmod;
pub mod regression;
pub mod report;
pub mod scalar;

pub use exactnum::rat;
pub use scalar::Scalar;

/// Exact arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
pub type Vector = exactnum::Vector<Rational>;
pub type Covector = exactnum::Covector<Rational>;
pub type Matrix = exactnum::Matrix<Rational>;
pub type Operator = linops::Operator<Rational>;
pub type LinearProgram = lpsolve::LinearProgram<Rational>;
pub type LpResult = lpsolve::LpResult<Rational>;
pub type MinModResult = minmod::MinModResult<Rational>;
pub type OracleResult = minmod::OracleResult<Rational>;
pub type PaperFamily = constructions::PaperFamily<Rational>;
pub type ConvergenceReport = harness::ConvergenceReport<Rational>;
pub type WeakNullVerdict = harness::WeakNullVerdict<Rational>;
pub type SearchOutcome = harness::SearchOutcome<Rational>;
pub type PaperCheckReport = regression::PaperCheckReport<Rational>;
