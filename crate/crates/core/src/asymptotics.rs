//! Cubic asymptotics of `h0(A_n, m)` and exact integration over the polygon.
//!
//! The upper half `P+_n(m)` of the polygon splits into `n + 2` pieces
//! `P^0 .. P^(n+1)`, each carrying a single affine weight. Their vertices are
//! the corners of `P+_n(m)` together with the points
//!
//! ```text
//! v_j = ( 2j(m+1)/(j-n-3) + 2(j-1)(m+1)/(n+2-j) + m,  2(m+1)/((j-n-3)(j-n-2)) )
//! ```
//!
//! for `j = 1..=n+1` (`v_(n+1)` is the top corner `(n(m+1)-1, m+1)`).
//! Integrating the affine weights exactly gives a cubic polynomial in `m`
//! that differs from the lattice sum by `O(m)`.

use serde::{Deserialize, Serialize};

use crate::exactmath::Rational;
use crate::latticesum::hsum;

pub type Point = (Rational, Rational);

/// `a x1 + b x2 + c m + d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineWeight {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl AffineWeight {
    pub fn eval(&self, x1: &Rational, x2: &Rational, m: &Rational) -> Rational {
        &self.a * x1 + &self.b * x2 + &self.c * m + &self.d
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonPiece {
    pub label: usize,
    pub m: Rational,
    pub vertices: Vec<Point>,
    pub weight: AffineWeight,
}

impl PolygonPiece {
    pub fn weight_at(&self, p: &Point) -> Rational {
        self.weight.eval(&p.0, &p.1, &self.m)
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn int(x: i64) -> Rational {
    Rational::from_integer(x)
}

/// The vertex `v_j`, `1 <= j <= n + 1`.
pub fn vertex(n: i64, m: &Rational, j: i64) -> Point {
    assert!((1..=n + 1).contains(&j), "vertex index out of range");
    let mp1 = m + 1;
    let x = &mp1 * q(2 * j, j - n - 3) + &mp1 * q(2 * (j - 1), n + 2 - j) + m;
    let y = &mp1 * q(2, (j - n - 3) * (j - n - 2));
    (x, y)
}

/// The `n + 2` pieces of `P+_n(m)`, clipped to the closed first quadrant.
pub fn pieces(n: i64, m: &Rational) -> Vec<PolygonPiece> {
    assert!(n >= 1, "pieces needs n >= 1");
    let v = |j: i64| vertex(n, m, j);
    let zero = Rational::zero();
    let left_low = (zero.clone(), m / (n + 1));
    let left_high = (zero.clone(), (m + 2) / (n + 1));
    let split = ((m * n - 2) / (n + 2), zero.clone());
    let corner = (m.clone(), zero.clone());

    let mut out = Vec::with_capacity(n as usize + 2);
    out.push((
        vec![
            left_low.clone(),
            v(1),
            split.clone(),
            (zero.clone(), zero.clone()),
        ],
        AffineWeight {
            a: int(1),
            b: int(0),
            c: int(0),
            d: int(1),
        },
    ));
    out.push((
        vec![v(1), v(2), corner.clone(), split],
        AffineWeight {
            a: q(-n, 2),
            b: int(0),
            c: q(n, 2),
            d: int(0),
        },
    ));
    for j in 2..=n {
        let s = q(j - 1 - n, 2);
        out.push((
            vec![v(j), v(j + 1), corner.clone()],
            AffineWeight {
                a: s.clone(),
                b: -(&s * (j - 1)),
                c: -&s,
                d: int(0),
            },
        ));
    }
    let mut top = vec![left_high];
    top.extend((1..=n + 1).rev().map(v));
    top.push(left_low);
    out.push((
        top,
        AffineWeight {
            a: q(1, 2),
            b: q(-(n + 1), 2),
            c: q(1, 2),
            d: int(1),
        },
    ));

    out.into_iter()
        .enumerate()
        .map(|(label, (vertices, weight))| PolygonPiece {
            label,
            m: m.clone(),
            vertices: clip_to_quadrant(vertices),
            weight,
        })
        .collect()
}

/// Refines the last piece by vertical cuts above `v_2 .. v_n`, so that
/// every sub-polygon is convex. Returns the last piece split into `n` parts.
pub fn convex_refinement(n: i64, m: &Rational) -> Vec<PolygonPiece> {
    let all = pieces(n, m);
    let last = all.last().expect("at least two pieces").clone();
    if n == 1 {
        return vec![last];
    }
    // Top edge: -x1 + (n+1) x2 = m + 2.
    let top_at = |x: &Rational| (x.clone(), (m + 2 + x) / (n + 1));
    let v = |j: i64| vertex(n, m, j);
    let mut parts = Vec::with_capacity(n as usize);
    parts.push(vec![
        (Rational::zero(), (m + 2) / (n + 1)),
        top_at(&v(2).0),
        v(2),
        v(1),
        (Rational::zero(), m / (n + 1)),
    ]);
    for j in 2..n {
        parts.push(vec![top_at(&v(j).0), top_at(&v(j + 1).0), v(j + 1), v(j)]);
    }
    parts.push(vec![top_at(&v(n).0), v(n + 1), v(n)]);
    parts
        .into_iter()
        .map(|vertices| PolygonPiece {
            vertices: clip_to_quadrant(vertices),
            ..last.clone()
        })
        .collect()
}

/// Sutherland-Hodgman clip against `x1 >= 0` and `x2 >= 0`.
fn clip_to_quadrant(poly: Vec<Point>) -> Vec<Point> {
    let clipped = clip_half(poly, |p| p.0.clone());
    let clipped = clip_half(clipped, |p| p.1.clone());
    let mut out: Vec<Point> = Vec::with_capacity(clipped.len());
    for p in clipped {
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// Keeps the part where `f >= 0`, for an affine `f`.
fn clip_half(poly: Vec<Point>, f: impl Fn(&Point) -> Rational) -> Vec<Point> {
    if poly.iter().all(|p| !f(p).is_negative()) {
        return poly;
    }
    let mut out = Vec::new();
    let len = poly.len();
    for k in 0..len {
        let cur = &poly[k];
        let next = &poly[(k + 1) % len];
        let (fc, fn_) = (f(cur), f(next));
        let cur_in = !fc.is_negative();
        let next_in = !fn_.is_negative();
        if cur_in {
            out.push(cur.clone());
        }
        if cur_in != next_in {
            let t = &fc / (&fc - &fn_);
            out.push((
                &cur.0 + &t * (&next.0 - &cur.0),
                &cur.1 + &t * (&next.1 - &cur.1),
            ));
        }
    }
    out
}

/// Signed area (positive for counter-clockwise order).
pub fn signed_area(vertices: &[Point]) -> Rational {
    fan(vertices).map(|(area, _)| area).sum()
}

/// Fan triangles from the first vertex: `(signed area, the three vertices)`.
fn fan(vertices: &[Point]) -> impl Iterator<Item = (Rational, [&Point; 3])> {
    let p0 = vertices.first();
    vertices
        .windows(2)
        .skip(1)
        .filter_map(move |w| p0.map(|p0| (p0, &w[0], &w[1])))
        .map(|(a, b, c)| {
            let cross = (&b.0 - &a.0) * (&c.1 - &a.1) - (&c.0 - &a.0) * (&b.1 - &a.1);
            (cross / 2, [a, b, c])
        })
}

/// Exact integral of an affine function over a simple polygon.
///
/// Each fan triangle contributes its signed area times the mean of the
/// vertex values; the result is normalized to the positive orientation.
/// Degenerate triangles contribute nothing.
pub fn integrate_affine(vertices: &[Point], f: impl Fn(&Point) -> Rational) -> Rational {
    if vertices.len() < 3 {
        return Rational::zero();
    }
    let mut total = Rational::zero();
    let mut area = Rational::zero();
    for (a, [p, q, r]) in fan(vertices) {
        if a.is_zero() {
            continue;
        }
        total += &a * (f(p) + f(q) + f(r)) / 3;
        area += a;
    }
    if area.is_negative() {
        -total
    } else {
        total
    }
}

pub fn integrate_piece(p: &PolygonPiece) -> Rational {
    integrate_affine(&p.vertices, |v| p.weight_at(v))
}

/// `U(n, m)`: the exact integral of the weight over `P+_n(m)`.
pub fn upper_half_integral(n: i64, m: &Rational) -> Rational {
    pieces(n, m).iter().map(integrate_piece).sum()
}

/// The weight function at an arbitrary real point of the upper half plane,
/// with `i` and `khat` treated as continuous.
pub fn continuous_weight(n: i64, m: &Rational, x1: &Rational, x2: &Rational) -> Rational {
    let alpha = |r: i64| {
        let v = (m - x1 + x2 * (2 * r - n + 1)) / 2;
        if v.is_negative() {
            Rational::zero()
        } else {
            v
        }
    };
    let sum: Rational = (0..n).map(alpha).sum();
    let beta = m + 1 - alpha(-1) - alpha(n);
    let beta = if beta.is_negative() {
        Rational::zero()
    } else {
        beta
    };
    sum.min(beta)
}

/// `(4/3) sum_{j<=n} 1/j^2 - (12n^4 + 65n^3 + 117n^2 + 72n) / (6 (n+1)^2 (n+2)^2)`.
pub fn h0_omega(n: i64) -> Rational {
    assert!(n >= 1, "h0_omega needs n >= 1");
    let harmonic2: Rational = (1..=n).map(|j| q(1, j * j)).sum();
    q(4, 3) * harmonic2 - h0_omega_polynomial_part(n)
}

/// `h0_omega(1..=n_max)`, accumulating the harmonic sum once.
pub fn h0_omega_sequence(n_max: i64) -> Vec<Rational> {
    let mut harmonic2 = Rational::zero();
    (1..=n_max)
        .map(|n| {
            harmonic2 += q(1, n * n);
            q(4, 3) * &harmonic2 - h0_omega_polynomial_part(n)
        })
        .collect()
}

fn h0_omega_polynomial_part(n: i64) -> Rational {
    let num = Rational::from(
        12 * pow_big(n, 4)
            + 65 * pow_big(n, 3)
            + 117 * pow_big(n, 2)
            + 72 * num_bigint::BigInt::from(n),
    );
    num / Rational::from(6 * pow_big(n + 1, 2) * pow_big(n + 2, 2))
}

/// Floating-point `h0_omega(n)`, for `n` too large for the exact sum.
pub fn h0_omega_f64(n: i64) -> f64 {
    let harmonic2: f64 = (1..=n).rev().map(|j| 1.0 / (j as f64 * j as f64)).sum();
    let x = n as f64;
    let poly = (12.0 * x.powi(4) + 65.0 * x.powi(3) + 117.0 * x * x + 72.0 * x)
        / (6.0 * (x + 1.0).powi(2) * (x + 2.0).powi(2));
    4.0 / 3.0 * harmonic2 - poly
}

fn pow_big(x: i64, e: usize) -> num_bigint::BigInt {
    num_traits::pow(num_bigint::BigInt::from(x), e)
}

/// `2 pi^2 / 9 - 2`, the limit of `h0_omega(n)` as `n` grows.
pub fn h0_omega_limit() -> f64 {
    2.0 * std::f64::consts::PI.powi(2) / 9.0 - 2.0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualRow {
    pub m: i64,
    pub hsum: i64,
    /// `h0_omega(n) (m^3 + 3 m^2)`.
    pub cubic: Rational,
    pub residual: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticReport {
    pub n: i64,
    pub rows: Vec<ResidualRow>,
    /// `max |residual| / m` over the rows with `m >= 1`.
    pub max_ratio: Rational,
}

/// Residuals `hsum(n, m) - h0_omega(n) (m^3 + 3m^2)` over `m_list`.
pub fn h0_asymptotic_check(n: i64, m_list: &[i64]) -> AsymptoticReport {
    let omega = h0_omega(n);
    let rows: Vec<ResidualRow> = m_list
        .iter()
        .map(|&m| {
            let h = hsum(n, m);
            let cubic = &omega * (m * m * m + 3 * m * m);
            ResidualRow {
                m,
                hsum: h,
                residual: Rational::from(h) - &cubic,
                cubic,
            }
        })
        .collect();
    let max_ratio = rows
        .iter()
        .filter(|r| r.m >= 1)
        .map(|r| r.residual.abs() / r.m)
        .max()
        .unwrap_or_else(Rational::zero);
    AsymptoticReport { n, rows, max_ratio }
}

/// One row of the sum-versus-integral comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralRecord {
    pub n: i64,
    pub m: i64,
    pub hsum: i64,
    pub integral: Rational,
    pub residual: Rational,
}

pub fn integral_vs_sum_check(n: i64, m: i64) -> IntegralRecord {
    let h = hsum(n, m);
    let integral = if m == 0 {
        Rational::zero()
    } else {
        upper_half_integral(n, &Rational::from(m))
    };
    IntegralRecord {
        n,
        m,
        hsum: h,
        residual: Rational::from(h) - &integral,
        integral,
    }
}

/// Linear envelope of residuals: the line `alpha m + beta` through the two
/// fit samples gives `|residual| <= (|alpha| + |beta| / m_min) m` for
/// `m >= m_min`.
pub fn linear_envelope(fit: &[(i64, Rational)]) -> Rational {
    assert!(fit.len() >= 2, "need two samples to fit a line");
    let (m0, r0) = &fit[0];
    let (m1, r1) = &fit[fit.len() - 1];
    let alpha = (r1 - r0) / (m1 - m0);
    let beta = r0 - &alpha * *m0;
    let m_min = fit.iter().map(|(m, _)| *m).min().expect("nonempty");
    alpha.abs() + beta.abs() / m_min
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralSweep {
    pub n: i64,
    pub records: Vec<IntegralRecord>,
    pub constant: Rational,
    pub fit_m: Vec<i64>,
    pub holds: bool,
}

/// Fits the `O(m)` constant on `fit_m` and checks `|residual| <= C m` on
/// every record.
pub fn integral_sweep(n: i64, fit_m: &[i64], validate_m: &[i64]) -> IntegralSweep {
    let fit: Vec<IntegralRecord> = fit_m.iter().map(|&m| integral_vs_sum_check(n, m)).collect();
    let constant = linear_envelope(
        &fit.iter()
            .map(|r| (r.m, r.residual.clone()))
            .collect::<Vec<_>>(),
    );
    let mut records = fit;
    records.extend(validate_m.iter().map(|&m| integral_vs_sum_check(n, m)));
    let holds = records.iter().all(|r| r.residual.abs() <= &constant * r.m);
    IntegralSweep {
        n,
        records,
        constant,
        fit_m: fit_m.to_vec(),
        holds,
    }
}
