use serde::{Deserialize, Serialize};

use super::rational::Rational;
use crate::error::{Error, Result};

/// A quasi-polynomial: one polynomial branch per residue class mod `period`.
///
/// Each branch lists coefficients constant term first. All branches have
/// the same length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPolynomial {
    period: usize,
    branches: Vec<Vec<Rational>>,
}

impl QuasiPolynomial {
    pub fn new(branches: Vec<Vec<Rational>>) -> Result<Self> {
        let period = branches.len();
        if period == 0 {
            return Err(Error::OutOfRange {
                name: "period",
                value: 0,
                expected: ">= 1",
            });
        }
        let len = branches[0].len();
        if len == 0 || branches.iter().any(|b| b.len() != len) {
            return Err(Error::Config(
                "quasi-polynomial branches must be nonempty and equally long".into(),
            ));
        }
        Ok(QuasiPolynomial { period, branches })
    }

    /// A single-branch (period 1) polynomial.
    pub fn polynomial(coeffs: Vec<Rational>) -> Result<Self> {
        Self::new(vec![coeffs])
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// Number of coefficients per branch minus one.
    pub fn degree(&self) -> usize {
        self.branches[0].len() - 1
    }

    pub fn branches(&self) -> &[Vec<Rational>] {
        &self.branches
    }

    pub fn branch(&self, m: i64) -> &[Rational] {
        &self.branches[m.rem_euclid(self.period as i64) as usize]
    }

    /// Value at `m`, using the branch of `m mod period`.
    pub fn eval(&self, m: i64) -> Rational {
        eval_poly(self.branch(m), &Rational::from(m))
    }
}

/// Horner evaluation, coefficients constant term first.
pub fn eval_poly(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    /// The six branches of h0(A_2, m), constant term first.
    fn example_a2() -> QuasiPolynomial {
        let cubic = q(29, 216);
        let quad = q(29, 72);
        let tails = [
            (q(1, 12), q(0, 1)),
            (q(1, 8), q(-143, 216)),
            (q(7, 36), q(-2, 27)),
            (q(1, 8), q(3, 8)),
            (q(1, 12), q(-10, 27)),
            (q(17, 72), q(-7, 216)),
        ];
        let branches = tails
            .iter()
            .map(|(lin, c)| vec![c.clone(), lin.clone(), quad.clone(), cubic.clone()])
            .collect();
        QuasiPolynomial::new(branches).unwrap()
    }

    #[test]
    fn example_table_values() {
        let qp = example_a2();
        assert_eq!(qp.eval(1), Rational::zero());
        assert_eq!(qp.eval(2), Rational::from(3));
        assert_eq!(qp.eval(6), Rational::from(44));
        assert_eq!(qp.period(), 6);
        assert_eq!(qp.degree(), 3);
    }

    #[test]
    fn eval_matches_direct_expansion() {
        let qp = example_a2();
        for m in 0..60i64 {
            let b = qp.branch(m);
            let x = Rational::from(m);
            let direct = &b[0] + &b[1] * &x + &b[2] * &x * &x + &b[3] * &x * &x * &x;
            assert_eq!(qp.eval(m), direct, "m = {m}");
        }
    }

    #[test]
    fn ragged_branches_rejected() {
        assert!(QuasiPolynomial::new(vec![vec![q(1, 1)], vec![q(1, 1), q(2, 1)]]).is_err());
        assert!(QuasiPolynomial::new(Vec::new()).is_err());
    }

    #[test]
    fn serde_roundtrip() {
        let qp = example_a2();
        let s = serde_json::to_string(&qp).unwrap();
        assert!(s.contains("\"29/216\""));
        let back: QuasiPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, qp);
    }
}
