//! The weighted lattice sum for `h0(A_n, m)`.
//!
//! Points are `(x1, x2) = (i, khat)`. The polygon `P_n(m)` is symmetric under
//! `x2 -> -x2`; its upper half is cut out by
//! `-x1 <= 0`, `-x2 <= 0`, `x1 - (n-1) x2 <= m`, `-x1 + (n+1) x2 <= m + 2`.
//! The weight of a point is
//! `min{ sum_{r=0}^{n-1} alpha_r, beta }` with
//! `alpha_r = max{0, (m - x1 + (2r - n + 1) x2) / 2}` and
//! `beta = max{0, m + 1 - alpha_{-1} - alpha_n}`.
//!
//! The weight is evaluated in doubled integer coordinates; the triple-wise
//! route in [`hsum_triple`] goes through [`crate::monoblocks`] instead, and
//! the two are checked against each other.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::monoblocks::{codim_reg, dim_vreg, TripleIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    /// Order `i`.
    pub x1: i64,
    /// Block index `khat`.
    pub x2: i64,
}

impl LatticePoint {
    pub fn new(x1: i64, x2: i64) -> Self {
        LatticePoint { x1, x2 }
    }

    pub fn reflected(&self) -> Self {
        LatticePoint::new(self.x1, -self.x2)
    }

    /// `x1 + (n+1) x2 ≡ m (mod 2)`.
    pub fn parity_ok(&self, n: i64, m: i64) -> bool {
        (self.x1 + (n + 1) * self.x2 - m).rem_euclid(2) == 0
    }
}

/// `a x1 + b x2 <= c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfPlane {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl HalfPlane {
    pub fn contains(&self, p: LatticePoint) -> bool {
        self.a * p.x1 + self.b * p.x2 <= self.c
    }
}

/// `P_n(m)`: the upper-half inequalities plus reflection in the `x1` axis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polygon {
    pub n: i64,
    pub m: i64,
    /// Inequalities for the part with `x2 >= 0`.
    pub half_planes: Vec<HalfPlane>,
}

impl Polygon {
    pub fn new(n: i64, m: i64) -> Self {
        let half_planes = vec![
            HalfPlane { a: -1, b: 0, c: 0 },
            HalfPlane { a: 0, b: -1, c: 0 },
            HalfPlane {
                a: 1,
                b: -(n - 1),
                c: m,
            },
            HalfPlane {
                a: -1,
                b: n + 1,
                c: m + 2,
            },
        ];
        Polygon { n, m, half_planes }
    }

    /// Membership in the full polygon, i.e. of `(x1, |x2|)` in the upper half.
    pub fn contains(&self, p: LatticePoint) -> bool {
        let up = LatticePoint::new(p.x1, p.x2.abs());
        self.half_planes.iter().all(|h| h.contains(up))
    }

    /// Largest `|x2|` on the polygon.
    pub fn x2_bound(&self) -> i64 {
        self.m + 1
    }

    /// Scan limit for `x1`; a superset of the polygon's extent.
    pub fn x1_scan_bound(&self) -> i64 {
        (self.n + 1) * self.m + self.n
    }

    /// All integer points of the full polygon, by increasing `x2`, then `x1`.
    pub fn lattice_points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        let b = self.x2_bound();
        (-b..=b).flat_map(move |x2| self.row(x2))
    }

    fn row(&self, x2: i64) -> impl Iterator<Item = LatticePoint> + '_ {
        (0..=self.x1_scan_bound())
            .map(move |x1| LatticePoint::new(x1, x2))
            .filter(move |p| self.contains(*p))
    }
}

/// Convenience for [`Polygon::lattice_points`].
pub fn lattice_points(poly: &Polygon) -> Vec<LatticePoint> {
    poly.lattice_points().collect()
}

/// Twice `alpha_r`, before clamping: `m - x1 + (2r - n + 1) x2`.
#[inline]
fn alpha2_raw(n: i64, m: i64, r: i64, p: LatticePoint) -> i64 {
    m - p.x1 + (2 * r - n + 1) * p.x2
}

/// The weight `h_{n,m}` at `p`.
///
/// Total: points off the polygon or failing parity weigh 0. Points with
/// `x2 < 0` are evaluated at their reflection.
pub fn weight(n: i64, m: i64, p: LatticePoint) -> i64 {
    let poly = Polygon::new(n, m);
    if !poly.contains(p) || !p.parity_ok(n, m) {
        return 0;
    }
    weight_unchecked(n, m, LatticePoint::new(p.x1, p.x2.abs()))
}

/// The weight formula at a parity-valid point, without the polygon test.
fn weight_unchecked(n: i64, m: i64, p: LatticePoint) -> i64 {
    // Parity makes every alpha_r integral, so halving is exact.
    let alpha = |r: i64| alpha2_raw(n, m, r, p).max(0) / 2;
    let sum: i64 = (0..n).map(alpha).sum();
    let beta = (m + 1 - alpha(-1) - alpha(n)).max(0);
    sum.min(beta)
}

/// `h0(A_n, m)`: the weighted count over parity-valid points of `P_n(m)`.
///
/// Rows of constant `x2` are summed in parallel.
pub fn hsum(n: i64, m: i64) -> i64 {
    assert!(n >= 1 && m >= 0, "hsum needs n >= 1 and m >= 0");
    let poly = Polygon::new(n, m);
    let b = poly.x2_bound();
    (-b..=b).into_par_iter().map(|x2| row_sum(&poly, x2)).sum()
}

/// Serial version of [`hsum`], for partition-independence checks.
pub fn hsum_serial(n: i64, m: i64) -> i64 {
    let poly = Polygon::new(n, m);
    let b = poly.x2_bound();
    (-b..=b).map(|x2| row_sum(&poly, x2)).sum()
}

fn row_sum(poly: &Polygon, x2: i64) -> i64 {
    poly.row(x2)
        .filter(|p| p.parity_ok(poly.n, poly.m))
        .map(|p| weight_unchecked(poly.n, poly.m, LatticePoint::new(p.x1, p.x2.abs())))
        .sum()
}

/// Contribution of one block: `min{ sum_{r=0}^{n-1} codim_r, dim V^reg }`.
pub fn hsum_triple(t: &TripleIndex) -> Result<i64> {
    let codims = (0..t.n).map(|r| codim_reg(t, r)).sum::<Result<i64>>()?;
    Ok(codims.min(dim_vreg(t)?))
}

/// Parity-valid triples with `0 <= i <= i_max` and `|khat| <= (i+m)/(n+1)`.
pub fn admissible_triples(n: i64, m: i64, i_max: i64) -> impl Iterator<Item = TripleIndex> {
    (0..=i_max).flat_map(move |i| {
        let kmax = (i + m) / (n + 1);
        (-kmax..=kmax)
            .map(move |khat| TripleIndex { n, khat, i, m })
            .filter(|t| t.parity_holds())
    })
}

/// `h0(A_n, m)` summed block by block.
pub fn hsum_by_triples(n: i64, m: i64) -> Result<i64> {
    let i_max = (n + 1) * m + n;
    admissible_triples(n, m, i_max)
        .map(|t| hsum_triple(&t))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x1: i64, x2: i64) -> LatticePoint {
        LatticePoint::new(x1, x2)
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(1, 2, p(0, 0)), 1);
        assert_eq!(weight(1, 2, p(2, 0)), 0);
        assert_eq!(weight(3, 6, p(2, 0)), 3);
        assert_eq!(weight(1, 2, p(0, 1)), 1);
        assert_eq!(weight(1, 2, p(0, -1)), 1);
    }

    #[test]
    fn off_polygon_and_bad_parity_weigh_zero() {
        assert_eq!(weight(1, 2, p(1, 0)), 0);
        assert_eq!(weight(1, 2, p(0, 5)), 0);
        assert_eq!(weight(2, 4, p(-1, 0)), 0);
    }

    #[test]
    fn positive_points_for_n1_m2() {
        let poly = Polygon::new(1, 2);
        let pos: Vec<_> = poly
            .lattice_points()
            .filter(|q| q.x2 >= 0 && weight(1, 2, *q) > 0)
            .collect();
        assert_eq!(pos, vec![p(0, 0), p(0, 1)]);
    }

    #[test]
    fn lattice_points_are_row_major_and_in_polygon() {
        let poly = Polygon::new(3, 5);
        let pts = lattice_points(&poly);
        assert!(pts
            .windows(2)
            .all(|w| (w[0].x2, w[0].x1) < (w[1].x2, w[1].x1)));
        assert!(pts.iter().all(|q| poly.contains(*q)));
        // Brute count over a generous box.
        let brute = (-20..=20)
            .flat_map(|x2| (-5..=40).map(move |x1| p(x1, x2)))
            .filter(|q| poly.contains(*q))
            .count();
        assert_eq!(pts.len(), brute);
        assert!(poly.contains(p(0, 0)));
    }

    #[test]
    fn hsum_examples() {
        assert_eq!(hsum(2, 2), 3);
        assert_eq!(hsum(2, 6), 44);
        assert_eq!(hsum(1, 2), 3);
        for n in 1..=5 {
            assert_eq!(hsum(n, 0), 0);
        }
        assert_eq!(hsum(1, 1), 0);
        assert_eq!(hsum(2, 1), 0);
        assert_eq!(hsum(1, 0), 0);
    }

    #[test]
    fn hsum_triple_examples() {
        let t = |n, k, i, m| TripleIndex::new(n, k, i, m).unwrap();
        assert_eq!(hsum_triple(&t(1, 0, 0, 2)).unwrap(), 1);
        assert_eq!(hsum_triple(&t(1, 0, 0, 4)).unwrap(), 1);
        assert_eq!(hsum_triple(&t(1, 1, 2, 2)).unwrap(), 0);
        assert!(hsum_triple(&t(2, 1, 0, 2)).is_err());
    }

    #[test]
    fn triple_route_matches_lattice_route() {
        for n in 1..=6 {
            for m in 0..=14 {
                assert_eq!(hsum_by_triples(n, m).unwrap(), hsum(n, m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn weight_matches_triple_pointwise() {
        for n in 1..=5 {
            for m in 0..=10 {
                for t in admissible_triples(n, m, (n + 1) * m + n) {
                    assert_eq!(weight(n, m, p(t.i, t.khat)), hsum_triple(&t).unwrap());
                }
            }
        }
    }

    #[test]
    fn weight_vanishes_beyond_nm() {
        for n in 1..=6 {
            for m in 0..=15 {
                let poly = Polygon::new(n, m);
                for q in poly.lattice_points().filter(|q| q.x1 >= n * m) {
                    assert_eq!(weight(n, m, q), 0, "n={n} m={m} {q:?}");
                }
            }
        }
    }

    #[test]
    fn parallel_equals_serial() {
        for n in 1..=4 {
            for m in [0, 3, 9, 17] {
                assert_eq!(hsum(n, m), hsum_serial(n, m));
            }
        }
    }

    proptest! {
        #[test]
        fn weight_is_even_in_x2(n in 1i64..=7, m in 0i64..=30, x1 in -2i64..=250, x2 in -40i64..=40) {
            prop_assert_eq!(weight(n, m, p(x1, x2)), weight(n, m, p(x1, -x2)));
            prop_assert!(weight(n, m, p(x1, x2)) >= 0);
        }
    }
}
