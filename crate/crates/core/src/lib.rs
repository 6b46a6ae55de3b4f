//! Exact q-series engine for the q-analogues of Euler's evaluation of ζ(2k).
//!
//! The crate builds, with exact rational arithmetic, both sides of the
//! Lambert-series / eta-quotient identities that deform
//! `ζ(2k) = (-1)^{k+1} 2^{2k} B_{2k} π^{2k} / (2 (2k)!)`, extracts the cusp
//! correction term `T_{2k}` as a series, and cross-checks every piece against
//! independent constructions.
//!
//! Module map:
//!
//! - [`exactnum`]: Stirling numbers, Bernoulli numbers, divisor sums, the
//!   normalising constant `d_k`.
//! - [`series`]: truncated power series in `q` over `BigRational`.
//! - [`qpoly`]: the integer polynomial families `P^e`, `Q^e`, `P^o`, `Q^o`.
//! - [`identity`]: both sides of the identities, cusp-term extraction and
//!   the verification report.
//! - [`numerics`]: floating-point evaluation near `q = 1`.

pub mod error;
pub mod exactnum;
pub mod identity;
pub mod numerics;
pub mod qpoly;
mod serde_str;
pub mod series;

pub use error::{Error, Result};
pub use exactnum::{BigInt, BigRational};
pub use identity::{VerificationReport, ZetaCase};
pub use numerics::LimitReport;
pub use qpoly::IntPolynomial;
pub use series::{MulStrategy, ParitySupport, QSeries};
