//! Chains of points in a metric space and their tension.

mod convex;
mod distorted;
pub(crate) mod sample;

pub use convex::{interior_angles, is_convex, open_angle, turn_side};
pub use distorted::{
    canonical_chain, constant_curvature_chain, distorted_chain, regular_polygon_chain,
    tension_closed_form, tension_degenerate,
};
pub use sample::{sample_good_chain, sample_steps_and_gromovs};

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, LN_2};
use core::fmt::Debug;

use libm::{acosh, asinh, atan2, cosh, exp, expm1, log, sinh};

use crate::hyp2::{log_sinh, HPoint, H2};
use crate::{Error, NotGood, Result};

/// Slack used when checking step and Gromov-product bounds of a good chain.
pub const GOOD_TOLERANCE: f64 = 1e-12;

/// A space with a distance function.
pub trait MetricSpace {
    type Point: Clone + Debug;

    fn distance(&self, p: &Self::Point, q: &Self::Point) -> f64;

    /// Whether `p` is a point of this space. Chains refuse points that are not.
    fn contains(&self, _p: &Self::Point) -> bool {
        true
    }
}

impl<T: MetricSpace + ?Sized> MetricSpace for &T {
    type Point = T::Point;

    fn distance(&self, p: &Self::Point, q: &Self::Point) -> f64 {
        (**self).distance(p, q)
    }

    fn contains(&self, p: &Self::Point) -> bool {
        (**self).contains(p)
    }
}

/// Gromov product `(x|y)_z` in any metric space.
pub fn gromov_in<M: MetricSpace>(space: &M, x: &M::Point, y: &M::Point, z: &M::Point) -> f64 {
    (space.distance(x, z) + space.distance(z, y) - space.distance(x, y)) / 2.0
}

/// An ordered list of points `x_0, ..., x_n` with `n >= 1`.
///
/// Step lengths, distances across each interior vertex and interior Gromov
/// products are computed once at construction.
#[derive(Debug, Clone)]
pub struct Chain<M: MetricSpace> {
    space: M,
    points: Vec<M::Point>,
    steps: Vec<f64>,
    skips: Vec<f64>,
    gromovs: Vec<f64>,
}

impl<M: MetricSpace> Chain<M> {
    pub fn new(space: M, points: Vec<M::Point>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::ChainTooShort(points.len()));
        }
        if let Some(i) = points.iter().position(|p| !space.contains(p)) {
            return Err(Error::UnknownPoint(i));
        }
        let mut steps = Vec::with_capacity(points.len() - 1);
        for (j, w) in points.windows(2).enumerate() {
            let s = space.distance(&w[0], &w[1]);
            if !s.is_finite() {
                return Err(Error::NonFinite);
            }
            if s <= 0.0 {
                return Err(Error::RepeatedPoint(j + 1));
            }
            steps.push(s);
        }
        let mut skips = Vec::with_capacity(points.len().saturating_sub(2));
        let mut gromovs = Vec::with_capacity(points.len().saturating_sub(2));
        for (j, w) in points.windows(3).enumerate() {
            let c = space.distance(&w[0], &w[2]);
            let g = (steps[j] + steps[j + 1] - c) / 2.0;
            if !c.is_finite() {
                return Err(Error::NonFinite);
            }
            if g < -GOOD_TOLERANCE * (1.0 + steps[j] + steps[j + 1]) {
                return Err(Error::DegenerateTriple(j + 1));
            }
            skips.push(c);
            gromovs.push(g);
        }
        Ok(Chain {
            space,
            points,
            steps,
            skips,
            gromovs,
        })
    }

    pub fn space(&self) -> &M {
        &self.space
    }

    pub fn points(&self) -> &[M::Point] {
        &self.points
    }

    pub fn into_points(self) -> Vec<M::Point> {
        self.points
    }

    /// Number of steps `n` (one less than the number of points).
    pub fn n(&self) -> usize {
        self.points.len() - 1
    }

    /// `steps()[j] = d(x_j, x_{j+1})`.
    pub fn steps(&self) -> &[f64] {
        &self.steps
    }

    /// `skips()[j] = d(x_j, x_{j+2})`.
    pub fn skips(&self) -> &[f64] {
        &self.skips
    }

    /// `gromovs()[j] = (x_j | x_{j+2})_{x_{j+1}}`.
    pub fn gromovs(&self) -> &[f64] {
        &self.gromovs
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.space.distance(&self.points[i], &self.points[j])
    }

    pub fn endpoint_distance(&self) -> f64 {
        self.distance(0, self.n())
    }

    /// Tension `sum d(x_{j-1}, x_{j+1}) - sum_{j=2}^{n-1} d(x_{j-1}, x_j) - d(x_0, x_n)`.
    ///
    /// Chains with a single step have tension zero.
    pub fn tension(&self) -> f64 {
        let n = self.n();
        if n < 2 {
            return 0.0;
        }
        let skip: f64 = self.skips.iter().sum();
        let inner: f64 = self.steps[1..n - 1].iter().sum();
        skip - inner - self.endpoint_distance()
    }

    /// Smallest step and largest interior Gromov product.
    pub fn extremes(&self) -> (f64, f64) {
        let a = self.steps.iter().copied().fold(f64::INFINITY, f64::min);
        let b = self.gromovs.iter().copied().fold(0.0, f64::max);
        (a, b)
    }

    /// Whether every step is at least `a` and every interior Gromov product at most `b`.
    pub fn is_good_chain(&self, gp: &GoodPair) -> bool {
        self.steps.iter().all(|&s| s >= gp.a - GOOD_TOLERANCE)
            && self.gromovs.iter().all(|&g| g <= gp.b + GOOD_TOLERANCE)
    }

    /// The chain through the points with the given strictly increasing indices.
    pub fn subchain(&self, indices: &[usize]) -> Result<Self>
    where
        M: Clone,
    {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("sub-chain indices must increase"));
        }
        if indices.last().is_some_and(|&i| i > self.n()) {
            return Err(Error::InvalidArgument("sub-chain index out of range"));
        }
        let pts = indices.iter().map(|&i| self.points[i].clone()).collect();
        Chain::new(self.space.clone(), pts)
    }
}

impl Chain<H2> {
    /// Chain of points of the hyperbolic plane.
    pub fn h2(points: Vec<HPoint>) -> Result<Self> {
        Chain::new(H2, points)
    }
}

/// Tension of any chain given as points and a distance function.
pub fn tension<M: MetricSpace>(c: &Chain<M>) -> f64 {
    c.tension()
}

/// A pair `(a, b)` with `a, b >= 0` and `sinh(a - b) > 2 sinh(a/2)`.
///
/// Chains with steps at least `a` and interior Gromov products at most `b`
/// are `(a, b)`-good. The pair determines a translation number `lambda > 1`
/// and a curvature angle `phi` in `(0, pi/2]` by
/// `cosh(log(lambda)/2) = sinh(a-b) / (2 sinh(a/2))` and
/// `sin(phi) = sinh(log(lambda)/2) / sinh(a/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoodPair {
    a: f64,
    b: f64,
    log_lambda: f64,
    phi: f64,
}

/// `acosh(e^u)` for `u >= 0` without overflow.
fn acosh_exp(u: f64) -> f64 {
    if u > 20.0 {
        u + LN_2 - exp(-2.0 * u) / 4.0
    } else {
        acosh(exp(u))
    }
}

impl GoodPair {
    pub fn new(a: f64, b: f64) -> core::result::Result<Self, NotGood> {
        if !(a.is_finite() && b.is_finite()) || a < 0.0 || b < 0.0 {
            return Err(NotGood::OutOfDomain { a, b });
        }
        let lhs = log_sinh(a - b);
        let rhs = LN_2 + log_sinh(a / 2.0);
        if a - b <= 0.0 || !(lhs > rhs) {
            return Err(NotGood::Inequality {
                lhs: sinh(a - b),
                rhs: 2.0 * sinh(a / 2.0),
            });
        }
        let log_lambda = 2.0 * acosh_exp(lhs - rhs);
        // sin(phi) = sinh(L/2) / sinh(a/2) and cos(phi)^2 = sinh(2a - b) sinh(b) / (4 sinh(a/2)^4)
        let ls = log_sinh(log_lambda / 2.0) - log_sinh(a / 2.0);
        let lc = (log_sinh(2.0 * a - b) + log_sinh(b)) / 2.0 - LN_2 - 2.0 * log_sinh(a / 2.0);
        let phi = if lc == f64::NEG_INFINITY {
            FRAC_PI_2
        } else {
            let m = ls.max(lc);
            atan2(exp(ls - m), exp(lc - m))
        };
        Ok(GoodPair {
            a,
            b,
            log_lambda,
            phi,
        })
    }

    /// The pair with translation number `lambda > 1` and curvature angle `phi` in `(0, pi/2]`.
    pub fn from_translation(lambda: f64, phi: f64) -> Result<Self> {
        if !(lambda > 1.0) || !lambda.is_finite() {
            return Err(Error::InvalidArgument("translation number must exceed 1"));
        }
        if !(phi > 0.0 && phi <= FRAC_PI_2) {
            return Err(Error::AngleOutOfRange {
                angle: phi,
                min: 0.0,
                max: FRAC_PI_2,
            });
        }
        let l = log(lambda);
        let a = 2.0 * asinh(sinh(l / 2.0) / libm::sin(phi));
        Self::with_angle(a, phi)
    }

    /// The pair with step bound `a > 0` and curvature angle `phi` in `(0, pi/2]`.
    pub fn with_angle(a: f64, phi: f64) -> Result<Self> {
        if !(phi > 0.0 && phi <= FRAC_PI_2) {
            return Err(Error::AngleOutOfRange {
                angle: phi,
                min: 0.0,
                max: FRAC_PI_2,
            });
        }
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidArgument("step bound must be positive"));
        }
        let l = 2.0 * asinh(libm::sin(phi) * sinh(a / 2.0));
        let b = (a - asinh(2.0 * sinh(a / 2.0) * cosh(l / 2.0))).max(0.0);
        Ok(GoodPair::new(a, b)?)
    }

    /// Largest `b` for which `(a, b)` is good in the closure sense (`b -> b_max` gives `lambda -> 1`).
    pub fn max_b(a: f64) -> f64 {
        (a - asinh(2.0 * sinh(a / 2.0))).max(0.0)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn lambda(&self) -> f64 {
        exp(self.log_lambda)
    }

    pub fn log_lambda(&self) -> f64 {
        self.log_lambda
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `lambda - 1`, accurate when `lambda` is close to 1.
    pub fn lambda_minus_one(&self) -> f64 {
        expm1(self.log_lambda)
    }

    /// Gromov bound of the pair with step bound `a2` and the same curvature angle.
    pub fn b_at_angle(&self, a2: f64) -> f64 {
        let l = 2.0 * asinh(libm::sin(self.phi) * sinh(a2 / 2.0));
        (a2 - asinh(2.0 * sinh(a2 / 2.0) * cosh(l / 2.0))).max(0.0)
    }
}

/// Validates `(a, b)` as a good pair.
pub fn good_pair(a: f64, b: f64) -> core::result::Result<GoodPair, NotGood> {
    GoodPair::new(a, b)
}

/// Avalanche bound `(n - 2) * 2 / (lambda - 1)` for chains with `n` steps.
pub fn ap_bound(n: usize, gp: &GoodPair) -> f64 {
    if n <= 2 {
        return 0.0;
    }
    (n - 2) as f64 * 2.0 / gp.lambda_minus_one()
}

/// Whether the chain is good for some pair with curvature angle `phi`,
/// taking `a` as its smallest step.
pub fn is_phi_good<M: MetricSpace>(c: &Chain<M>, phi: f64) -> bool {
    let (a, b) = c.extremes();
    match GoodPair::with_angle(a, phi) {
        Ok(gp) => b <= gp.b + GOOD_TOLERANCE,
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use libm::fabs;

    fn pt(x: f64, y: f64) -> HPoint {
        HPoint::new(x, y).unwrap()
    }

    #[test]
    fn pair_with_zero_gromov_bound() {
        let gp = GoodPair::new(2.0, 0.0).unwrap();
        assert!(fabs(gp.log_lambda() - 2.0) < 1e-14);
        assert!(fabs(gp.phi() - FRAC_PI_2) < 1e-7);
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(matches!(
            GoodPair::new(0.0, 0.0),
            Err(NotGood::Inequality { .. })
        ));
        assert!(matches!(
            GoodPair::new(1.0, -0.1),
            Err(NotGood::OutOfDomain { .. })
        ));
        assert!(matches!(
            GoodPair::new(1.0, 2.0),
            Err(NotGood::Inequality { .. })
        ));
        assert!(matches!(
            GoodPair::new(3.0, 1.0),
            Err(NotGood::Inequality { .. })
        ));
    }

    #[test]
    fn pair_three_half() {
        assert!(sinh(2.5) > 2.0 * sinh(1.5));
        let gp = GoodPair::new(3.0, 0.5).unwrap();
        let c = sinh(2.5) / (2.0 * sinh(1.5));
        assert!(fabs(cosh(gp.log_lambda() / 2.0) - c) < 1e-12);
        assert!(fabs(sinh(gp.log_lambda() / 2.0) / libm::sin(gp.phi()) - sinh(1.5)) < 1e-12);
    }

    #[test]
    fn translation_round_trip() {
        let phi = 13.404_f64.to_radians();
        let gp = GoodPair::from_translation(1.5, phi).unwrap();
        assert!(fabs(gp.lambda() - 1.5) < 1e-12);
        assert!(fabs(gp.phi() - phi) < 1e-10);
        assert!(fabs(gp.a() - 1.58867) < 1e-4 && fabs(gp.b() - 0.23949) < 1e-4);
    }

    #[test]
    fn with_angle_matches_pair() {
        let gp = GoodPair::new(3.0, 0.5).unwrap();
        assert!(fabs(gp.b_at_angle(3.0) - 0.5) < 1e-12);
        assert!(gp.b_at_angle(4.0) > 0.5);
    }

    #[test]
    fn bound_values() {
        let gp = GoodPair::from_translation(2.0, 1.0).unwrap();
        assert!(fabs(ap_bound(5, &gp) - 6.0) < 1e-12);
        assert_eq!(ap_bound(2, &gp), 0.0);
    }

    #[test]
    fn geodesic_chain_has_zero_tension() {
        let c = Chain::h2((0..6).map(|k| pt(0.0, exp(k as f64 * 0.7))).collect()).unwrap();
        assert!(fabs(c.tension()) < 1e-14);
        let gp = GoodPair::new(0.7, 0.0).unwrap();
        assert!(c.is_good_chain(&gp));
    }

    #[test]
    fn triples_have_zero_tension() {
        let c = Chain::h2(vec![pt(0.0, 1.0), pt(1.0, 2.0), pt(-2.0, 0.5)]).unwrap();
        assert!(fabs(c.tension()) < 1e-14);
    }

    #[test]
    fn short_step_breaks_goodness() {
        let gp = GoodPair::new(1.0, 0.0).unwrap();
        let c = Chain::h2(vec![pt(0.0, 1.0), pt(0.0, exp(0.5)), pt(0.0, exp(2.0))]).unwrap();
        assert!(!c.is_good_chain(&gp));
    }

    #[test]
    fn repeated_points_rejected() {
        assert_eq!(
            Chain::h2(vec![HPoint::I, HPoint::I]).unwrap_err(),
            Error::RepeatedPoint(1)
        );
        assert_eq!(
            Chain::h2(vec![HPoint::I]).unwrap_err(),
            Error::ChainTooShort(1)
        );
    }

    #[test]
    fn subchain_indices() {
        let c = Chain::h2((0..5).map(|k| pt(k as f64, 1.0)).collect()).unwrap();
        let s = c.subchain(&[0, 2, 4]).unwrap();
        assert_eq!(s.n(), 2);
        assert!(c.subchain(&[0, 0]).is_err());
        assert!(c.subchain(&[0, 9]).is_err());
    }
}
