//! Block indexing of invariant symmetric-differential monomials.
//!
//! A degree-`m` monomial block is indexed by `(khat, i, m)` where `i` is the
//! order of vanishing at the origin of the smoothing and `khat` is the
//! invariant block index. On each resolution chart `r` the block maps onto a
//! chart block whose monomials are
//! `u1^(i1+q) u2^(i2-q) (du1)^(m-q) (du2)^q`, `q = 0..=m`.
//!
//! Charts `r = -1` and `r = n + 1` use the same formulas as the genuine
//! charts `0..=n`; they only serve to make the two end conditions uniform.
//!
//! Half-integer quantities are evaluated as [`Rational`]s and converted to
//! integers at the boundary; a non-integral result is reported as an error.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::Rational;

/// Grading index `(n, khat, i, m)` of a block of invariant monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TripleIndex {
    pub n: i64,
    pub khat: i64,
    pub i: i64,
    pub m: i64,
}

impl TripleIndex {
    /// Range-checked constructor (`n >= 1`, `i >= 0`, `m >= 0`). Parity is
    /// checked by each operation, not here.
    pub fn new(n: i64, khat: i64, i: i64, m: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::OutOfRange {
                name: "n",
                value: n,
                expected: ">= 1",
            });
        }
        if i < 0 {
            return Err(Error::OutOfRange {
                name: "i",
                value: i,
                expected: ">= 0",
            });
        }
        if m < 0 {
            return Err(Error::OutOfRange {
                name: "m",
                value: m,
                expected: ">= 0",
            });
        }
        Ok(TripleIndex { n, khat, i, m })
    }

    /// `(n+1) khat ≡ i + m (mod 2)`.
    pub fn parity_holds(&self) -> bool {
        ((self.n + 1) * self.khat - (self.i + self.m)).rem_euclid(2) == 0
    }

    pub fn check_parity(&self) -> Result<()> {
        if self.parity_holds() {
            Ok(())
        } else {
            Err(Error::Parity {
                lhs: (self.n + 1) * self.khat,
                rhs: self.i + self.m,
            })
        }
    }

    /// `|khat| <= (i+m)/(n+1)`: the block has at least one regular monomial.
    pub fn is_admissible(&self) -> bool {
        self.khat.abs() * (self.n + 1) <= self.i + self.m
    }

    /// The same block with `khat` negated.
    pub fn mirrored(&self) -> Self {
        TripleIndex {
            khat: -self.khat,
            ..*self
        }
    }
}

fn half(num: i64) -> Rational {
    Rational::new(num, 2)
}

fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

fn int(x: i64) -> Rational {
    Rational::from_integer(x)
}

/// `k(khat) = (i+m)/2 + ((n+1)/2) khat`.
pub fn k_of_khat(t: &TripleIndex) -> Result<i64> {
    t.check_parity()?;
    (half(t.i + t.m) + half(t.n + 1) * t.khat).expect_integer()
}

/// Inverse of [`k_of_khat`]: `khat = (2k - i - m)/(n+1)`.
pub fn khat_of_k(n: i64, k: i64, i: i64, m: i64) -> Result<i64> {
    q(2 * k - i - m, n + 1).expect_integer()
}

/// Exponent data of the chart-`r` block matching `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartExponents {
    pub r: i64,
    /// `u1` exponent of the `q = 0` monomial.
    pub i1: i64,
    /// `u2` exponent of the `q = 0` monomial.
    pub i2: i64,
}

/// Chart block indices `(k_r, i_r)` such that the pullback of chart block
/// `B_{k_r, i_r, m}` along chart `r` is the invariant block of `t`.
pub fn chart_block(t: &TripleIndex, r: i64) -> Result<(i64, i64)> {
    t.check_parity()?;
    check_chart(t.n, r, -1, t.n + 1)?;
    let k_r = (half(t.i + t.m) + (half(t.n + 1) - int(r)) * t.khat).expect_integer()?;
    let i_r = t.i + (t.n - 2 * r) * t.khat;
    Ok((k_r, i_r))
}

/// Exponents of the chart-`r` block: `u1^(i_r - k_r + q) u2^(k_r - q)`.
pub fn chart_exponents(t: &TripleIndex, r: i64) -> Result<ChartExponents> {
    let (k_r, i_r) = chart_block(t, r)?;
    Ok(ChartExponents {
        r,
        i1: i_r - k_r,
        i2: k_r,
    })
}

/// The closed form `i1 = (i-m)/2 + ((n-1-2r)/2) khat`, kept separate from
/// [`chart_exponents`] so the two can be compared.
pub fn chart_i1_closed_form(t: &TripleIndex, r: i64) -> Result<i64> {
    t.check_parity()?;
    (half(t.i - t.m) + half(t.n - 1 - 2 * r) * t.khat).expect_integer()
}

fn check_chart(n: i64, r: i64, lo: i64, hi: i64) -> Result<()> {
    if r < lo || r > hi {
        return Err(Error::OutOfRange {
            name: "r",
            value: r,
            expected: if hi == n { "-1..=n" } else { "-1..=n+1" },
        });
    }
    Ok(())
}

/// Exponent pair `(j1, j2)` of the leading term when the chart-`r` monomial
/// `u1^i1 u2^i2 (du1)^(m-q) (du2)^q` is pulled back to the smoothing.
pub fn pullback_exponents(i1: i64, i2: i64, m: i64, q: i64, r: i64, n: i64) -> (i64, i64) {
    debug_assert!(0 <= q && q <= m);
    let j1 = (n + 1 - r) * i1 + (r - n) * i2 + (n - r) * m + (2 * r - 2 * n - 1) * q;
    let j2 = -r * i1 + (r + 1) * i2 - r * m + (2 * r + 1) * q;
    (j1, j2)
}

/// Coefficients `c_{q,0}..c_{q,m}` of
/// `[(n+1-r)X - rY]^(m-q) [(r-n)X + (r+1)Y]^q` in the basis `X^(m-l) Y^l`.
pub fn pullback_coeffs(m: i64, q: i64, r: i64, n: i64) -> Vec<Rational> {
    pullback_coeffs_int(m, q, r, n)
        .into_iter()
        .map(Rational::from_bigint)
        .collect()
}

/// Integer form of [`pullback_coeffs`].
pub fn pullback_coeffs_int(m: i64, q: i64, r: i64, n: i64) -> Vec<BigInt> {
    assert!(0 <= q && q <= m, "pullback_coeffs needs 0 <= q <= m");
    let first = binomial_power(n + 1 - r, -r, (m - q) as usize);
    let second = binomial_power(r - n, r + 1, q as usize);
    convolve(&first, &second)
}

/// Coefficients of `(aX + bY)^e` in the basis `X^(e-l) Y^l`.
fn binomial_power(a: i64, b: i64, e: usize) -> Vec<BigInt> {
    let a = BigInt::from(a);
    let b = BigInt::from(b);
    let mut out = Vec::with_capacity(e + 1);
    let mut binom = BigInt::from(1);
    for l in 0..=e {
        out.push(&binom * num_traits::pow(a.clone(), e - l) * num_traits::pow(b.clone(), l));
        binom = binom * BigInt::from(e - l) / BigInt::from(l + 1);
    }
    out
}

fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Codimension of the chart-`r` monomials regular along `u1 = 0`:
/// `max{0, (m-i)/2 + ((2r-n+1)/2) khat}`, for `r` in `-1..=n`.
pub fn codim_reg(t: &TripleIndex, r: i64) -> Result<i64> {
    t.check_parity()?;
    check_chart(t.n, r, -1, t.n)?;
    let v = (half(t.m - t.i) + half(2 * r - t.n + 1) * t.khat).expect_integer()?;
    Ok(v.max(0))
}

/// Dimension of the regular part of the invariant block:
/// `max{0, m + 1 - codim(-1) - codim(n)}`.
pub fn dim_vreg(t: &TripleIndex) -> Result<i64> {
    let c = codim_reg(t, -1)? + codim_reg(t, t.n)?;
    Ok((t.m + 1 - c).max(0))
}
