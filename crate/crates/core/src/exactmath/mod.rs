//! Exact scalars: rationals, cyclotomic field elements, quasi-polynomials.

mod cyclo;
mod quasi;
mod rational;

pub use cyclo::{cyclotomic_polynomial, totient, CycloElement, CyclotomicField};
pub use quasi::{eval_poly, QuasiPolynomial};
pub use rational::{ceil_div, floor_div, Rational};
