//! Runs the code listings of the guide in `book/src` as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod exact_arithmetic {}

#[doc = include_str!("../../../book/src/blocks-and-charts.md")]
pub mod blocks_and_charts {}

#[doc = include_str!("../../../book/src/lattice-sum.md")]
pub mod lattice_sum {}

#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}

#[doc = include_str!("../../../book/src/asymptotics.md")]
pub mod asymptotics {}

#[doc = include_str!("../../../book/src/invariants.md")]
pub mod invariants {}

#[doc = include_str!("../../../book/src/extension.md")]
pub mod extension {}

#[doc = include_str!("../../../book/src/quasi-polynomials.md")]
pub mod quasi_polynomials {}

#[doc = include_str!("../../../book/src/bigness.md")]
pub mod bigness {}

#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
