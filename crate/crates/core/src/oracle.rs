//! Brute-force `h0(A_n, m)` from exact ranks.
//!
//! Each block of degree-`m` monomials is identified with the binary forms
//! `Q[X, Y]_m` by sending the `q`-th monomial to `X^(m-q) Y^q`. Under that
//! identification, the chart-`r` monomials without a pole along `u1 = 0`
//! span the forms vanishing to order `c_r` at one point of the projective
//! line, where `c_r` counts the chart monomials with a negative `u1`
//! exponent. Every dimension here comes from a fraction-free rank
//! computation over the integers; nothing assumes general position.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::latticesum::admissible_triples;
use crate::monoblocks::{chart_exponents, TripleIndex};

/// Vanishing to order `multiplicity` at the projective point `[a : b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingCondition {
    pub a: i64,
    pub b: i64,
    pub multiplicity: i64,
}

impl VanishingCondition {
    pub fn new(a: i64, b: i64, multiplicity: i64) -> Result<Self> {
        if a == 0 && b == 0 {
            return Err(Error::DegeneratePoint);
        }
        if multiplicity < 0 {
            return Err(Error::OutOfRange {
                name: "multiplicity",
                value: multiplicity,
                expected: ">= 0",
            });
        }
        Ok(VanishingCondition { a, b, multiplicity })
    }
}

/// Linear conditions on the coefficients `p_0..p_m` of
/// `P = sum p_l X^(m-l) Y^l` for vanishing to the given order at `[a : b]`.
///
/// Row `t` is the `s^t` coefficient of `P(a + s u, b + s v)` with the
/// transversal direction `(u, v) = (-b, a)`. Orders above `m + 1` are capped,
/// since `m + 1` conditions already force `P = 0`.
pub fn vanishing_rows(cond: &VanishingCondition, m: i64) -> Result<Vec<Vec<BigInt>>> {
    if cond.a == 0 && cond.b == 0 {
        return Err(Error::DegeneratePoint);
    }
    let (a, b) = (BigInt::from(cond.a), BigInt::from(cond.b));
    let (u, v) = (-b.clone(), a.clone());
    let mu = m as usize;
    let rows = cond.multiplicity.clamp(0, m + 1) as usize;
    let binom = binomial_table(mu);
    let pw = |base: &BigInt, e: usize| num_traits::pow(base.clone(), e);

    let mut out = Vec::with_capacity(rows);
    for t in 0..rows {
        let mut row = Vec::with_capacity(mu + 1);
        for l in 0..=mu {
            // s^t coefficient of (a + s u)^(m-l) (b + s v)^l.
            let mut acc = BigInt::zero();
            for j in 0..=t.min(mu - l) {
                let rest = t - j;
                if rest > l {
                    continue;
                }
                acc += &binom[mu - l][j]
                    * pw(&a, mu - l - j)
                    * pw(&u, j)
                    * &binom[l][rest]
                    * pw(&b, l - rest)
                    * pw(&v, rest);
            }
            row.push(acc);
        }
        out.push(row);
    }
    Ok(out)
}

fn binomial_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut t: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &t[i - 1][j - 1] + &t[i - 1][j];
        }
        t.push(row);
    }
    t
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn rank(matrix: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                // Entries stay (r+1)-minors of the input, so the division is exact.
                let v = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot_row[c].clone();
        r += 1;
    }
    r
}

/// The point of the projective line attached to chart `r`: the zero of the
/// linear form `(r-n) X + (r+1) Y`, namely `[r+1 : n-r]`.
pub fn chart_point(r: i64, n: i64) -> (i64, i64) {
    (r + 1, n - r)
}

/// Number of chart-`r` monomials `u1^(i1+q) ...` with `i1 + q < 0`.
fn pole_count(t: &TripleIndex, r: i64) -> Result<i64> {
    let i1 = chart_exponents(t, r)?.i1;
    Ok((0..=t.m).filter(|q| i1 + q < 0).count() as i64)
}

/// Chart conditions for `r` in `charts`.
pub fn chart_conditions(
    t: &TripleIndex,
    charts: impl IntoIterator<Item = i64>,
) -> Result<Vec<VanishingCondition>> {
    charts
        .into_iter()
        .map(|r| {
            let (a, b) = chart_point(r, t.n);
            VanishingCondition::new(a, b, pole_count(t, r)?)
        })
        .collect()
}

fn stacked_rank(conds: &[VanishingCondition], m: i64) -> Result<usize> {
    let mut rows = Vec::new();
    for c in conds {
        rows.extend(vanishing_rows(c, m)?);
    }
    Ok(rank(&rows))
}

/// Ranks of the two end conditions (`r = -1, n`) and of all conditions
/// (`r = -1..=n`), plus the total multiplicity of the latter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockRanks {
    pub ends: usize,
    pub all: usize,
    pub total_multiplicity: i64,
}

pub fn block_ranks(t: &TripleIndex) -> Result<BlockRanks> {
    t.check_parity()?;
    let ends = chart_conditions(t, [-1, t.n])?;
    let all = chart_conditions(t, -1..=t.n)?;
    Ok(BlockRanks {
        ends: stacked_rank(&ends, t.m)?,
        all: stacked_rank(&all, t.m)?,
        total_multiplicity: all.iter().map(|c| c.multiplicity).sum(),
    })
}

/// `dim V^reg - dim(intersection)` for one block, from ranks.
pub fn hsum_oracle_triple(t: &TripleIndex) -> Result<i64> {
    let r = block_ranks(t)?;
    Ok(r.all as i64 - r.ends as i64)
}

/// Whether the stacked conditions have the expected rank
/// `min(m + 1, total multiplicity)`.
pub fn general_position_check(t: &TripleIndex) -> Result<bool> {
    let r = block_ranks(t)?;
    Ok(r.all as i64 == (t.m + 1).min(r.total_multiplicity))
}

/// Per-block oracle results for one `(n, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub n: i64,
    pub m: i64,
    pub oracle: i64,
    pub blocks: usize,
    /// Blocks whose conditions were not in general position.
    pub non_general: Vec<TripleIndex>,
}

/// Brute-force `h0(A_n, m)`, summed over all admissible blocks in parallel.
pub fn hsum_oracle(n: i64, m: i64) -> Result<i64> {
    Ok(oracle_report(n, m)?.oracle)
}

pub fn oracle_report(n: i64, m: i64) -> Result<OracleReport> {
    if n < 1 || m < 0 {
        return Err(Error::OutOfRange {
            name: if n < 1 { "n" } else { "m" },
            value: if n < 1 { n } else { m },
            expected: "n >= 1 and m >= 0",
        });
    }
    let triples: Vec<_> = admissible_triples(n, m, (n + 1) * m + n).collect();
    let results = triples
        .par_iter()
        .map(|t| {
            let r = block_ranks(t)?;
            let general = r.all as i64 == (t.m + 1).min(r.total_multiplicity);
            Ok((*t, r.all as i64 - r.ends as i64, general))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OracleReport {
        n,
        m,
        oracle: results.iter().map(|(_, v, _)| v).sum(),
        blocks: results.len(),
        non_general: results
            .iter()
            .filter(|(_, _, g)| !g)
            .map(|(t, _, _)| *t)
            .collect(),
    })
}
