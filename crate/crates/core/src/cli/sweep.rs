use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cache::SweepCache;
use crate::error::Result;
use crate::invariants::invariant_record;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub m: i64,
    pub hsum: i64,
    pub mu: Rational,
    pub chi_orb: Rational,
    pub h1: Rational,
}

impl SweepRow {
    pub fn compute(n: i64, m: i64) -> Result<Self> {
        let r = invariant_record(n, m)?;
        Ok(SweepRow {
            m,
            hsum: r.hsum,
            mu: r.mu,
            chi_orb: r.chi_orb,
            h1: r.h1,
        })
    }

    /// `h1` is a nonnegative integer.
    pub fn h1_ok(&self) -> bool {
        self.h1.is_integer() && !self.h1.is_negative()
    }
}

/// Rows for `m_from ..= m_to`, ordered by `m`. Cached rows are reused and
/// new ones appended to the cache by this thread only.
pub fn sweep(
    n: i64,
    m_from: i64,
    m_to: i64,
    parallel: bool,
    cache: Option<&mut SweepCache>,
) -> Result<Vec<SweepRow>> {
    let missing: Vec<i64> = (m_from..=m_to)
        .filter(|&m| cache.as_ref().is_none_or(|c| c.get(n, m).is_none()))
        .collect();
    let fresh: Vec<SweepRow> = if parallel {
        missing
            .par_iter()
            .map(|&m| SweepRow::compute(n, m))
            .collect::<Result<_>>()?
    } else {
        missing
            .iter()
            .map(|&m| SweepRow::compute(n, m))
            .collect::<Result<_>>()?
    };
    let mut rows = fresh.clone();
    if let Some(c) = cache {
        // A failed append only costs a recomputation next time.
        if let Err(e) = c.append(n, &fresh) {
            eprintln!("warning: cache not updated: {e}");
        }
        rows.extend(
            (m_from..=m_to)
                .filter(|m| !missing.contains(m))
                .filter_map(|m| c.get(n, m).cloned()),
        );
    }
    rows.sort_by_key(|r| r.m);
    Ok(rows)
}
