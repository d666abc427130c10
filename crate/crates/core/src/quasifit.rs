//! Exact quasi-polynomial fitting.
//!
//! Samples are split by `m mod p`; each class is interpolated through its
//! first `d + 1` samples and must reproduce the rest exactly. Periods are
//! tried in increasing order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{eval_poly, QuasiPolynomial, Rational};

/// Verification samples required per residue class on top of `d + 1`.
pub const VERIFY_SAMPLES: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitRequest {
    pub values: Vec<(i64, Rational)>,
    pub degree: usize,
    pub max_period: usize,
}

impl FitRequest {
    /// Samples `f(0), f(1), ..., f(count - 1)`.
    pub fn from_fn(
        count: i64,
        degree: usize,
        max_period: usize,
        f: impl Fn(i64) -> Rational,
    ) -> Self {
        FitRequest {
            values: (0..count).map(|m| (m, f(m))).collect(),
            degree,
            max_period,
        }
    }
}

/// Default sample budget: `m = 0 ..= (d + 3) P`.
pub fn default_sample_count(degree: usize, max_period: usize) -> i64 {
    ((degree + 3) * max_period + 1) as i64
}

/// Coefficients (constant first) of the polynomial of degree `< points.len()`
/// through `points`. The abscissae must be distinct.
pub fn interpolate(points: &[(Rational, Rational)]) -> Vec<Rational> {
    let n = points.len();
    let mut out = vec![Rational::zero(); n];
    for (j, (xj, yj)) in points.iter().enumerate() {
        // Build prod_{k != j} (x - x_k) / (x_j - x_k).
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (k, (xk, _)) in points.iter().enumerate() {
            if k == j {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (e, c) in basis.iter().enumerate() {
                next[e + 1] += c;
                next[e] -= c * xk;
            }
            basis = next;
            denom = denom * (xj - xk);
        }
        let scale = yj / &denom;
        for (o, b) in out.iter_mut().zip(&basis) {
            *o += b * &scale;
        }
    }
    out
}

fn fit_period(
    samples: &[(i64, Rational)],
    degree: usize,
    period: usize,
) -> Result<Option<Vec<Vec<Rational>>>> {
    let need = degree + 1 + VERIFY_SAMPLES;
    let mut branches = Vec::with_capacity(period);
    for residue in 0..period {
        let class: Vec<&(i64, Rational)> = samples
            .iter()
            .filter(|(m, _)| m.rem_euclid(period as i64) as usize == residue)
            .collect();
        if class.len() < need {
            return Err(Error::InsufficientSamples {
                period,
                residue,
                have: class.len(),
                need,
            });
        }
        let pts: Vec<(Rational, Rational)> = class[..=degree]
            .iter()
            .map(|(m, v)| (Rational::from(*m), v.clone()))
            .collect();
        let coeffs = interpolate(&pts);
        let ok = class[degree + 1..]
            .iter()
            .all(|(m, v)| eval_poly(&coeffs, &Rational::from(*m)) == *v);
        if !ok {
            return Ok(None);
        }
        branches.push(coeffs);
    }
    Ok(Some(branches))
}

/// The quasi-polynomial of degree `<= d` with the smallest period `<= P`
/// matching every sample.
///
/// Periods whose classes lack `d + 3` samples are only an error if no
/// smaller period fits first.
pub fn fit(req: &FitRequest) -> Result<QuasiPolynomial> {
    let mut samples = req.values.clone();
    samples.sort_by_key(|(m, _)| *m);
    samples.dedup_by_key(|(m, _)| *m);
    for period in 1..=req.max_period.max(1) {
        if let Some(branches) = fit_period(&samples, req.degree, period)? {
            return QuasiPolynomial::new(branches);
        }
    }
    Err(Error::NoPeriodFits {
        max_period: req.max_period,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCoefficients {
    pub degree: usize,
    /// Distinct values across branches, in branch order of first appearance.
    pub values: Vec<Rational>,
    pub branch_independent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientReport {
    pub period: usize,
    pub degrees: Vec<DegreeCoefficients>,
}

pub fn coefficient_report(q: &QuasiPolynomial) -> CoefficientReport {
    let degrees = (0..=q.degree())
        .rev()
        .map(|d| {
            let mut values: Vec<Rational> = Vec::new();
            for b in q.branches() {
                if !values.contains(&b[d]) {
                    values.push(b[d].clone());
                }
            }
            DegreeCoefficients {
                degree: d,
                branch_independent: values.len() == 1,
                values,
            }
        })
        .collect();
    CoefficientReport {
        period: q.period(),
        degrees,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latticesum::hsum;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let f = |x: i64| q(1, 3) * x * x * x - q(2, 1) * x + 7;
        let pts: Vec<_> = [0, 2, 5, 9]
            .iter()
            .map(|&x| (Rational::from(x), f(x)))
            .collect();
        assert_eq!(interpolate(&pts), vec![q(7, 1), q(-2, 1), q(0, 1), q(1, 3)]);
    }

    #[test]
    fn constant_sequence() {
        let req = FitRequest::from_fn(default_sample_count(3, 4), 3, 4, |_| Rational::from(5));
        let qp = fit(&req).unwrap();
        assert_eq!(qp.period(), 1);
        assert_eq!(qp.branches()[0], vec![q(5, 1), q(0, 1), q(0, 1), q(0, 1)]);
        let rep = coefficient_report(&qp);
        assert!(rep.degrees.iter().all(|d| d.branch_independent));
    }

    #[test]
    fn a2_period_six() {
        let req = FitRequest::from_fn(48, 3, 12, |m| Rational::from(hsum(2, m)));
        let qp = fit(&req).unwrap();
        assert_eq!(qp.period(), 6);
        let rep = coefficient_report(&qp);
        assert_eq!(rep.degrees[0].values, vec![q(29, 216)]);
        assert_eq!(rep.degrees[1].values, vec![q(29, 72)]);
        assert_eq!(
            rep.degrees[2].values,
            vec![q(1, 12), q(1, 8), q(7, 36), q(17, 72)]
        );
        assert!(!rep.degrees[3].branch_independent);
        assert_eq!(
            qp.branches()[1],
            vec![q(-143, 216), q(1, 8), q(29, 72), q(29, 216)]
        );
    }

    #[test]
    fn a1_period_six() {
        let req = FitRequest::from_fn(61, 3, 12, |m| Rational::from(hsum(1, m)));
        let qp = fit(&req).unwrap();
        assert_eq!(qp.period(), 6);
        let rep = coefficient_report(&qp);
        assert_eq!(rep.degrees[0].values, vec![q(11, 108)]);
        assert_eq!(rep.degrees[1].values, vec![q(11, 36)]);
    }

    #[test]
    fn leading_coefficients_match_closed_form() {
        for n in 1..=4 {
            let max_period = 60;
            let req =
                FitRequest::from_fn(default_sample_count(3, max_period), 3, max_period, |m| {
                    Rational::from(hsum(n, m))
                });
            let qp = fit(&req).unwrap();
            let omega = crate::asymptotics::h0_omega(n);
            for b in qp.branches() {
                assert_eq!(b[3], omega, "n = {n}");
                assert_eq!(b[2], &omega * 3, "n = {n}");
            }
        }
    }

    #[test]
    fn errors_are_distinct() {
        let alternating = FitRequest::from_fn(40, 0, 1, |m| Rational::from(m % 2));
        assert!(matches!(
            fit(&alternating),
            Err(Error::NoPeriodFits { max_period: 1 })
        ));
        let short = FitRequest::from_fn(4, 3, 2, Rational::from);
        assert!(matches!(
            fit(&short),
            Err(Error::InsufficientSamples { period: 1, .. })
        ));
    }

    proptest! {
        #[test]
        fn fit_reproduces_and_is_minimal(
            period in 1usize..=4,
            seeds in proptest::collection::vec(proptest::collection::vec(-20i64..=20, 3), 4),
        ) {
            let branches: Vec<Vec<Rational>> = seeds[..period]
                .iter()
                .map(|c| c.iter().map(|&x| Rational::from(x)).collect())
                .collect();
            let truth = QuasiPolynomial::new(branches).unwrap();
            let req = FitRequest::from_fn(default_sample_count(2, 4), 2, 4, |m| truth.eval(m));
            let got = fit(&req).unwrap();
            for (m, v) in &req.values {
                prop_assert_eq!(&got.eval(*m), v);
            }
            prop_assert!(period % got.period() == 0);
            for p in 1..got.period() {
                prop_assert!(fit_period(&req.values, 2, p).unwrap().is_none());
            }
        }
    }
}
