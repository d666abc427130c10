//! The maximal divisor `D` on the exceptional chain and the holomorphic
//! extension test.
//!
//! On chart `r` an invariant of type `(khat, i)` picks up order
//! `(i+m)/2 + ((n+1)/2 - r) khat` along `E_r`; `D` takes the minimum over
//! all admissible types, and a type extends over `E_r` exactly when the
//! order reaches `m`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::ceil_div;
use crate::monoblocks::TripleIndex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorCoeffs {
    pub n: i64,
    pub m: i64,
    /// `a_1 .. a_n`, the coefficient of `E_r` at index `r - 1`.
    pub coefficients: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleProfile {
    pub triple: TripleIndex,
    /// Order along `E_r` at index `r - 1`.
    pub offsets: Vec<i64>,
}

/// `a_r = sum_{j=0}^{min(r-1, n-r)} ceil((m - 2j)/(n+1))`.
pub fn divisor_d(n: i64, m: i64) -> DivisorCoeffs {
    assert!(n >= 1 && m >= 0, "divisor_d needs n >= 1 and m >= 0");
    let coefficients = (1..=n)
        .map(|r| {
            (0..=(r - 1).min(n - r))
                .map(|j| ceil_div(m - 2 * j, n + 1))
                .sum()
        })
        .collect();
    DivisorCoeffs { n, m, coefficients }
}

/// `(i+m)/2 + ((n+1)/2 - r) khat`, doubled numerator halved exactly.
fn offset(t: &TripleIndex, r: i64) -> i64 {
    (t.i + t.m + (t.n + 1 - 2 * r) * t.khat) / 2
}

pub fn pole_profile(t: &TripleIndex) -> Result<PoleProfile> {
    t.check_parity()?;
    Ok(PoleProfile {
        triple: *t,
        offsets: (1..=t.n).map(|r| offset(t, r)).collect(),
    })
}

/// `D` as the per-component minimum of pole offsets over the admissible
/// types with `i <= i_max`.
pub fn divisor_d_bruteforce(n: i64, m: i64, i_max: i64) -> Result<DivisorCoeffs> {
    let required = (n + 1) * m;
    if i_max < required {
        return Err(Error::WindowTooSmall { i_max, required });
    }
    let mut coefficients = vec![i64::MAX; n as usize];
    for t in crate::latticesum::admissible_triples(n, m, i_max) {
        for (r, a) in (1..=n).zip(coefficients.iter_mut()) {
            *a = (*a).min(offset(&t, r));
        }
    }
    Ok(DivisorCoeffs { n, m, coefficients })
}

/// True iff the order along every `E_r` is at least `m`.
pub fn extends_holomorphically(t: &TripleIndex) -> Result<bool> {
    t.check_parity()?;
    if !t.is_admissible() {
        return Err(Error::OutOfRange {
            name: "khat",
            value: t.khat,
            expected: "|khat| (n+1) <= i + m",
        });
    }
    Ok((1..=t.n).all(|r| offset(t, r) >= t.m))
}

/// Smallest order among the types present in a differential.
pub fn ord(types: &[TripleIndex]) -> Option<i64> {
    types.iter().map(|t| t.i).min()
}

/// An admissible type of order `n m - 1` that does not extend, if any.
pub fn sharpness_witness(n: i64, m: i64) -> Option<TripleIndex> {
    let i = n * m - 1;
    if i < 0 {
        return None;
    }
    let kmax = (i + m) / (n + 1);
    (-kmax..=kmax)
        .map(|khat| TripleIndex { n, khat, i, m })
        .filter(|t| t.parity_holds())
        .find(|t| !extends_holomorphically(t).unwrap_or(true))
}
