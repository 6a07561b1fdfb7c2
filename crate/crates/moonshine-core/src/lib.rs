//! Exact and high-precision arithmetic for weight one-half modular forms,
//! traces of singular moduli, and the McKay--Thompson series attached to
//! the Thompson sporadic group.
//!
//! The crate is organized around three independent computation routes that
//! must agree on every published coefficient:
//!
//! - [`qseries`]: exact rational q-series (theta, eta, Eisenstein series,
//!   Rankin--Cohen brackets, the form f3 and its Borcherds product check);
//! - [`cmeval`]: arbitrary-precision evaluation of hauptmoduls at CM points
//!   and character-twisted traces of singular moduli;
//! - [`rademacher`]: multiplier systems, Kloosterman/Salie sums and the
//!   Bessel--Kloosterman coefficient formulas.
//!
//! [`bqf`] supplies the binary quadratic form reduction theory shared by the
//! trace routes, and [`thompson`] assembles the 48 McKay--Thompson series and
//! decomposes the graded supermodule against the Thompson character table.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod bqf;
pub mod cmeval;
pub mod precision;
pub mod qseries;
pub mod rademacher;
pub mod thompson;

use alloc::string::String;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A hauptmodul was requested for a level outside the genus-zero table.
    UnsupportedLevel(u32),
    /// A genus character search exhausted its bound without finding a
    /// represented value coprime to the twisting discriminant.
    GenusCharacterBound { a: i64, b: i64, c: i64, d1: i64 },
    /// An evaluation cannot reach the requested accuracy (for example a CM
    /// point with too small an imaginary part).
    PrecisionInfeasible(String),
    /// A quantity that must round to an integer (or must be real) had a
    /// residue larger than the allowed tolerance.
    ResidueTooLarge { what: String, residue_log10: i32 },
    /// A Rademacher sum failed to stabilize before the cutoff cap.
    Unconverged { what: String, tail: f64 },
    /// Malformed input data (character table, class metadata, golden files).
    Parse(String),
    /// A decomposition multiplicity failed integrality or positivity.
    BadMultiplicity { m: i64, irrep: usize, value: String },
    /// Unknown conjugacy class label.
    UnknownClass(String),
    InvalidInput(String),
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::UnsupportedLevel(n) => write!(f, "no genus-zero hauptmodul for level {n}"),
            Error::GenusCharacterBound { a, b, c, d1 } => write!(
                f,
                "genus character search bound exhausted for [{a},{b},{c}] twisted by {d1}"
            ),
            Error::PrecisionInfeasible(s) => write!(f, "precision infeasible: {s}"),
            Error::ResidueTooLarge {
                what,
                residue_log10,
            } => {
                write!(f, "residue too large for {what} (about 1e{residue_log10})")
            }
            Error::Unconverged { what, tail } => {
                write!(f, "sum did not converge for {what} (tail {tail:e})")
            }
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::BadMultiplicity { m, irrep, value } => {
                write!(f, "multiplicity of V_{irrep} at q^{m} is not in N_0: {value}")
            }
            Error::UnknownClass(s) => write!(f, "unknown conjugacy class {s}"),
            Error::InvalidInput(s) => write!(f, "invalid input: {s}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
