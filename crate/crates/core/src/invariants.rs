//! Local invariants of an `A_n` singularity: `chi_orb`, `mu`, `h1` and the
//! leading coefficient `h1_omega`.
//!
//! The group is cyclic of order `n + 1`, generated by
//! `diag(eps, eps^n)` with `eps` a primitive `(n+1)`-th root of unity.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{h0_omega_f64, h0_omega_sequence};
use crate::error::Result;
use crate::exactmath::{CycloElement, CyclotomicField, Rational};
use crate::latticesum::hsum;

/// Chern numbers of the orbifold point: `c1^2 = 0`, `c2 = e(E) - 1/|G|`
/// with `e(E) = n + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernLocal {
    pub n: i64,
    pub c1sq: Rational,
    pub c2: Rational,
    pub s2: Rational,
}

impl ChernLocal {
    pub fn new(n: i64) -> Self {
        assert!(n >= 1, "A_n needs n >= 1");
        let c2 = Rational::from(n + 1) - Rational::new(1, n + 1);
        ChernLocal {
            n,
            c1sq: Rational::zero(),
            s2: -c2.clone(),
            c2,
        }
    }
}

/// `(s2/6) m^3 - (c2/2) m^2 - ((c1^2 + 3 c2)/12) m + (c1^2 + c2)/12`.
pub fn chi_orb(n: i64, m: i64) -> Rational {
    let ch = ChernLocal::new(n);
    let m = Rational::from(m);
    &ch.s2 / 6 * m.pow(3) - &ch.c2 / 2 * m.pow(2) - (&ch.c1sq + &ch.c2 * 3) / 12 * &m
        + (&ch.c1sq + &ch.c2) / 12
}

/// The equivariant correction `mu(A_n, m)`, summed exactly in `Q(zeta_(n+1))`.
///
/// For `g = diag(eps^j, eps^(jn))` the trace on the `m`-th symmetric power
/// is `sum_q eps^(j(m-q) + jnq)` and `det(1 - g) = (1 - eps^j)(1 - eps^(jn))`.
/// Fails only if the sum is not rational, which would be an arithmetic bug.
pub fn mu(n: i64, m: i64) -> Result<Rational> {
    assert!(n >= 1 && m >= 0, "mu needs n >= 1 and m >= 0");
    let order = (n + 1) as u64;
    let field = CyclotomicField::new(order);
    let one = CycloElement::one(&field);
    let mut total = CycloElement::zero(&field);
    for j in 1..=n {
        // Exponent counts mod n+1 of the trace terms.
        let mut counts = vec![0i64; order as usize];
        for q in 0..=m {
            let e = (j * (m - q) + j * n * q).rem_euclid(n + 1);
            counts[e as usize] += 1;
        }
        let trace = CycloElement::from_exponent_counts(&field, &counts);
        let det = (&one - &CycloElement::root_power(&field, j))
            .checked_mul(&(&one - &CycloElement::root_power(&field, j * n)))?;
        total = &total + &trace.checked_div(&det)?;
    }
    Ok(total.to_rational()? / (n + 1))
}

/// `h1(A_n, m) = mu - chi_orb - hsum`.
pub fn h1(n: i64, m: i64) -> Result<Rational> {
    Ok(mu(n, m)? - chi_orb(n, m) - Rational::from(hsum(n, m)))
}

/// The record emitted for one `(n, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub n: i64,
    pub m: i64,
    pub mu: Rational,
    pub chi_orb: Rational,
    pub hsum: i64,
    pub h1: Rational,
}

pub fn invariant_record(n: i64, m: i64) -> Result<InvariantRecord> {
    let mu = mu(n, m)?;
    let chi = chi_orb(n, m);
    let h = hsum(n, m);
    Ok(InvariantRecord {
        n,
        m,
        h1: &mu - &chi - Rational::from(h),
        mu,
        chi_orb: chi,
        hsum: h,
    })
}

/// `(n^5 + 19n^4 + 83n^3 + 137n^2 + 80n) / (6 (n+1)^2 (n+2)^2) - (4/3) sum 1/k^2`.
pub fn h1_omega(n: i64) -> Rational {
    assert!(n >= 1, "h1_omega needs n >= 1");
    let b = BigInt::from(n);
    let p = |e: usize| num_traits::pow(b.clone(), e);
    let num = p(5) + 19 * p(4) + 83 * p(3) + 137 * p(2) + 80 * b.clone();
    let den = 6 * num_traits::pow(BigInt::from(n + 1), 2) * num_traits::pow(BigInt::from(n + 2), 2);
    let harmonic2: Rational = (1..=n).map(|k| Rational::new(1, k * k)).sum();
    Rational::from(num) / Rational::from(den) - Rational::new(4, 3) * harmonic2
}

/// `h1_omega(1..=n_max)` through `h1_omega = -s2/6 - h0_omega`.
pub fn h1_omega_sequence(n_max: i64) -> Vec<Rational> {
    h0_omega_sequence(n_max)
        .into_iter()
        .zip(1..)
        .map(|(h0, n)| -ChernLocal::new(n).s2 / 6 - h0)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub n_max: i64,
    pub values: Vec<Rational>,
    pub strictly_increasing: bool,
    /// `6 h1_omega(n_max) / n_max`.
    pub normalized_growth: f64,
    pub h0_omega_limit: f64,
    pub h0_omega_last: f64,
}

/// Monotonicity and growth of `h1_omega(1..=n_max)`.
pub fn h1_omega_limit_report(n_max: i64) -> LimitReport {
    assert!(n_max >= 2, "limit report needs n_max >= 2");
    let values = h1_omega_sequence(n_max);
    let strictly_increasing = values.windows(2).all(|w| w[0] < w[1]);
    let last = values.last().expect("n_max >= 2").to_f64();
    LimitReport {
        n_max,
        strictly_increasing,
        normalized_growth: 6.0 * last / n_max as f64,
        h0_omega_limit: crate::asymptotics::h0_omega_limit(),
        h0_omega_last: h0_omega_f64(n_max),
        values,
    }
}
