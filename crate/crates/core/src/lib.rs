//! Exact invariants of symmetric differentials near `A_n` surface
//! singularities.
//!
//! The central quantity is the weighted lattice sum [`latticesum::hsum`],
//! checked against the linear-algebra oracle in [`oracle`]. Around it sit
//! the closed asymptotic formulas ([`asymptotics`], [`invariants`]), the
//! extension divisor ([`extension`]), quasi-polynomial fitting
//! ([`quasifit`]) and the bigness test ([`bigness`]).
//!
//! ```
//! use symdiff::{latticesum::hsum, invariants::h1_omega, Rational};
//!
//! assert_eq!(hsum(2, 6), 44);
//! assert_eq!(h1_omega(1), Rational::new(4, 27));
//! ```

pub mod asymptotics;
pub mod bigness;
pub mod cli;
pub mod error;
pub mod exactmath;
pub mod extension;
pub mod invariants;
pub mod latticesum;
pub mod monoblocks;
pub mod oracle;
pub mod quasifit;

pub use error::{Error, Result};
pub use exactmath::Rational;
