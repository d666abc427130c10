//! Arithmetic in the cyclotomic field Q(zeta_N) = Q[x] / Phi_N(x).
//!
//! Elements are dense coefficient vectors of length `phi(N)` in the power
//! basis `1, x, ..., x^(phi(N)-1)`, where the class of `x` is a primitive
//! N-th root of unity.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// The N-th cyclotomic polynomial as integer coefficients, constant term first.
///
/// Computed as `(x^N - 1) / prod_{d | N, d < N} Phi_d(x)` by exact division.
pub fn cyclotomic_polynomial(order: u64) -> Vec<BigInt> {
    assert!(order >= 1, "cyclotomic order must be positive");
    let mut memo = BTreeMap::new();
    cyclotomic_memo(order, &mut memo)
}

fn cyclotomic_memo(order: u64, memo: &mut BTreeMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&order) {
        return p.clone();
    }
    // x^N - 1
    let mut num = vec![BigInt::zero(); order as usize + 1];
    num[0] = BigInt::from(-1);
    num[order as usize] = BigInt::one();
    for d in (1..order).filter(|d| order.is_multiple_of(*d)) {
        let phi_d = cyclotomic_memo(d, memo);
        num = exact_div_monic(&num, &phi_d);
    }
    memo.insert(order, num.clone());
    num
}

/// Quotient of `num` by the monic `den`; panics if the division leaves a remainder.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The field Q(zeta_N), carrying its defining polynomial.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: u64,
    modulus: Vec<Rational>,
}

impl CyclotomicField {
    pub fn new(order: u64) -> Arc<Self> {
        let modulus = cyclotomic_polynomial(order)
            .into_iter()
            .map(Rational::from_bigint)
            .collect::<Vec<_>>();
        debug_assert_eq!(modulus.len() as u64 - 1, totient(order));
        Arc::new(CyclotomicField { order, modulus })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `phi(N)`, the dimension over Q.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rational] {
        &self.modulus
    }

    /// Reduces an arbitrary polynomial modulo Phi_N.
    fn reduce(&self, mut poly: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        for k in (d..poly.len()).rev() {
            let c = std::mem::take(&mut poly[k]);
            if c.is_zero() {
                continue;
            }
            // x^k = x^(k-d) * x^d and x^d = -(lower terms of Phi_N).
            for j in 0..d {
                if !self.modulus[j].is_zero() {
                    poly[k - d + j] -= &c * &self.modulus[j];
                }
            }
        }
        poly.resize(d, Rational::zero());
        poly
    }
}

/// An element of Q(zeta_N).
#[derive(Clone, PartialEq, Eq)]
pub struct CycloElement {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl CycloElement {
    /// Builds an element from an arbitrary-length coefficient list, reducing mod Phi_N.
    pub fn from_poly(field: &Arc<CyclotomicField>, coeffs: Vec<Rational>) -> Self {
        CycloElement {
            field: Arc::clone(field),
            coeffs: field.reduce(coeffs),
        }
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, value: Rational) -> Self {
        Self::from_poly(field, vec![value])
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Self::from_poly(field, Vec::new())
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    /// The class of `x^k`, i.e. `zeta^k`. Negative powers wrap around modulo N.
    pub fn root_power(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let e = k.rem_euclid(field.order as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::from_poly(field, poly)
    }

    /// Sum of `counts[e] * zeta^e` over exponents `e` in `0..N`.
    pub fn from_exponent_counts(field: &Arc<CyclotomicField>, counts: &[i64]) -> Self {
        let poly = counts.iter().map(|&c| Rational::from_integer(c)).collect();
        Self::from_poly(field, poly)
    }

    pub fn order(&self) -> u64 {
        self.field.order
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// True iff every non-constant coordinate vanishes.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Rational::is_zero)
    }

    /// Constant coordinate in the power basis.
    pub fn rational_part(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant coordinate, or an error if the element is not rational.
    pub fn to_rational(&self) -> Result<Rational> {
        if self.is_rational() {
            Ok(self.rational_part())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.field.order != other.field.order {
            return Err(Error::OrderMismatch(self.field.order, other.field.order));
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        let d = self.field.degree();
        let mut prod = vec![Rational::zero(); (2 * d).saturating_sub(1).max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Self::from_poly(&self.field, prod))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Phi_N.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r0 = trim(self.field.modulus.clone());
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is the gcd; a unit iff it is a nonzero constant.
        if r0.len() != 1 {
            return Err(Error::NotInvertible {
                order: self.field.order,
            });
        }
        let scale = r0[0].recip()?;
        let inv = s0.into_iter().map(|c| c * &scale).collect();
        let inv = Self::from_poly(&self.field, inv);
        if !self.checked_mul(&inv)?.is_one() {
            return Err(Error::NotInvertible {
                order: self.field.order,
            });
        }
        Ok(inv)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        self.checked_mul(&other.invert()?)
    }

    pub fn is_one(&self) -> bool {
        self.is_rational() && self.rational_part() == 1
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        CycloElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(out)
}

/// Polynomial long division over Q. `den` must be trimmed and nonzero.
fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = den.len() - 1;
    let lead_inv = den[dd].recip().expect("nonzero leading coefficient");
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    rem.truncate(dd);
    (trim(quot), trim(rem))
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " [mod Phi_{}]", self.field.order)
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Operator forms panic on mismatched fields; the checked variants return errors.

impl<'b> Add<&'b CycloElement> for &CycloElement {
    type Output = CycloElement;
    fn add(self, rhs: &'b CycloElement) -> CycloElement {
        self.check_same_field(rhs).expect("field mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycloElement {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }
}

impl<'b> Sub<&'b CycloElement> for &CycloElement {
    type Output = CycloElement;
    fn sub(self, rhs: &'b CycloElement) -> CycloElement {
        self.check_same_field(rhs).expect("field mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycloElement {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }
}

impl<'b> Mul<&'b CycloElement> for &CycloElement {
    type Output = CycloElement;
    fn mul(self, rhs: &'b CycloElement) -> CycloElement {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        // First order with a coefficient outside {-1, 0, 1}.
        assert!(cyclotomic_polynomial(105).contains(&BigInt::from(-2)));
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..60u64 {
            assert_eq!(
                cyclotomic_polynomial(n).len() as u64 - 1,
                totient(n),
                "N = {n}"
            );
        }
    }

    #[test]
    fn invert_one_minus_root_order_two() {
        let f = CyclotomicField::new(2);
        let e = &CycloElement::one(&f) - &CycloElement::root_power(&f, 1);
        let inv = e.invert().unwrap();
        assert!(inv.is_rational());
        assert_eq!(inv.rational_part(), Rational::new(1, 2));
    }

    #[test]
    fn invert_one_minus_root_order_three() {
        // (1 - e)(2 + e) = 3 with 1 + e + e^2 = 0.
        let f = CyclotomicField::new(3);
        let e = &CycloElement::one(&f) - &CycloElement::root_power(&f, 1);
        let expected = CycloElement::from_poly(&f, vec![Rational::new(2, 3), Rational::new(1, 3)]);
        assert_eq!(e.invert().unwrap(), expected);
        let back = &e * &expected;
        assert!(back.is_one());
    }

    #[test]
    fn inverse_of_root_is_conjugate_power() {
        for n in 2..20u64 {
            let f = CyclotomicField::new(n);
            let z = CycloElement::root_power(&f, 1);
            assert_eq!(
                z.invert().unwrap(),
                CycloElement::root_power(&f, n as i64 - 1)
            );
        }
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = CyclotomicField::new(5);
        assert_eq!(CycloElement::zero(&f).invert(), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_part_and_predicate() {
        let f = CyclotomicField::new(3);
        let c = CycloElement::from_rational(&f, Rational::new(7, 3));
        assert!(c.is_rational());
        assert_eq!(c.rational_part(), Rational::new(7, 3));

        let z = CycloElement::root_power(&f, 1);
        assert!(!z.is_rational());
        assert_eq!(z.rational_part(), Rational::zero());
        assert!(z.to_rational().is_err());

        let s = &z + &CycloElement::root_power(&f, 2);
        assert!(s.is_rational());
        assert_eq!(s.rational_part(), Rational::from(-1));
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let a = CycloElement::one(&CyclotomicField::new(3));
        let b = CycloElement::one(&CyclotomicField::new(4));
        assert_eq!(a.checked_mul(&b), Err(Error::OrderMismatch(3, 4)));
    }

    #[test]
    fn root_power_wraps() {
        let f = CyclotomicField::new(7);
        assert_eq!(CycloElement::root_power(&f, 7), CycloElement::one(&f));
        assert_eq!(
            CycloElement::root_power(&f, -1),
            CycloElement::root_power(&f, 6)
        );
    }

    proptest! {
        #[test]
        fn inverse_multiplies_to_one(
            order in 2u64..24,
            raw in proptest::collection::vec((-9i64..10, 1i64..6), 1..24),
        ) {
            let f = CyclotomicField::new(order);
            let poly = raw.iter().map(|&(n, d)| Rational::new(n, d)).collect();
            let e = CycloElement::from_poly(&f, poly);
            prop_assume!(!e.is_zero());
            let inv = e.invert().unwrap();
            prop_assert!((&e * &inv).is_one());
        }
    }
}
