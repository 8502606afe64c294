//! Products of SL(2, R) matrices seen through their action on the upper half-plane.
//!
//! For `A_1, ..., A_n` the orbit `x_0 = i`, `x_j = A_n ... A_{n-j+1} i` satisfies
//! `d(x_{j-1}, x_j) = 2 log ||A_{n-j+1}||`, and the avalanche residual
//!
//! ```text
//! log ||A_n ... A_1|| + sum_{i=2}^{n-1} log ||A_i|| - sum_{i=2}^{n} log ||A_i A_{i-1}||
//! ```
//!
//! equals `-tau(x_0, ..., x_n) / 2`.

use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};

use libm::{acosh, exp, fabs, log, sqrt};
use rand::Rng;

use crate::chains::{sample_good_chain, Chain, GoodPair, GOOD_TOLERANCE};
use crate::hyp2::{
    direction_at_i, dist, mobius_apply, rotate_about_i, walk, wrap_angle, HPoint, Mat2, H2,
    MAX_CHAIN_LENGTH,
};
use crate::oracle::SeedStream;
use crate::{Error, Result};

/// A list of matrices `A_1, ..., A_n` with `n >= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatChain {
    mats: Vec<Mat2>,
}

/// `log ||M||` for an arbitrary (not necessarily unimodular) matrix.
fn log_norm_raw(m: &Mat2) -> f64 {
    log(m.op_norm())
}

/// `log ||M_k ... M_1||` for matrices listed as `M_1, ..., M_k`, rescaling the
/// running product so it never overflows.
pub fn log_norm_of_product(mats: &[Mat2]) -> f64 {
    let mut acc = Mat2::IDENTITY;
    let mut scale = 0.0;
    for m in mats {
        let p = raw_product(m, &acc);
        let s = p.op_norm();
        acc = p.scaled(1.0 / s);
        scale += log(s);
    }
    scale + log_norm_raw(&acc)
}

fn raw_product(x: &Mat2, y: &Mat2) -> Mat2 {
    let [a, b, c, d] = x.entries();
    let [e, f, g, h] = y.entries();
    Mat2 {
        a: a * e + b * g,
        b: a * f + b * h,
        c: c * e + d * g,
        d: c * f + d * h,
    }
}

/// `Aff(q)^{-1} Aff(p)` where `Aff(p)` is the frame sending `i` to `p`.
fn frame_between(q: &HPoint, p: &HPoint) -> Mat2 {
    let r = sqrt(p.im() / q.im());
    Mat2 {
        a: r,
        b: (p.re() - q.re()) / sqrt(p.im() * q.im()),
        c: 0.0,
        d: 1.0 / r,
    }
}

impl MatChain {
    pub fn new(mats: Vec<Mat2>) -> Result<Self> {
        if mats.len() < 2 {
            return Err(Error::ChainTooShort(mats.len() + 1));
        }
        Ok(MatChain { mats })
    }

    /// Matrices whose orbit is the given chain of points, which must start at `i`.
    ///
    /// `twists[j]` is the rotation about `i` composed with the frame at `x_j`; it
    /// does not change the orbit but makes the matrices non-triangular. Missing
    /// twists count as zero.
    pub fn from_orbit(points: &[HPoint], twists: &[f64]) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::ChainTooShort(points.len()));
        }
        if dist(&points[0], &HPoint::I) > 1e-12 {
            return Err(Error::InvalidArgument("orbit must start at i"));
        }
        let n = points.len() - 1;
        let tw = |j: usize| {
            if j == 0 {
                0.0
            } else {
                twists.get(j).copied().unwrap_or(0.0)
            }
        };
        let mut mats = alloc::vec![Mat2::IDENTITY; n];
        for j in 1..=n {
            let m = rotate_about_i(-tw(j - 1))
                * frame_between(&points[j - 1], &points[j])
                * rotate_about_i(tw(j));
            mats[n - j] = m;
        }
        Ok(MatChain { mats })
    }

    /// `A_1, ..., A_n`.
    pub fn mats(&self) -> &[Mat2] {
        &self.mats
    }

    pub fn n(&self) -> usize {
        self.mats.len()
    }

    /// `A_j` for `1 <= j <= n`.
    fn a(&self, j: usize) -> &Mat2 {
        &self.mats[j - 1]
    }

    /// The orbit `x_0 = i`, `x_j = A_n ... A_{n-j+1} i` evaluated by composing the maps.
    ///
    /// Coordinates of this literal orbit lose relative precision once the points
    /// approach the real axis; [`MatChain::orbit_chain`] is the accurate choice for
    /// geometric quantities.
    pub fn orbit(&self) -> Vec<HPoint> {
        let n = self.n();
        let mut pts = Vec::with_capacity(n + 1);
        pts.push(HPoint::I);
        let mut prod = Mat2::IDENTITY;
        for j in 1..=n {
            prod = prod * *self.a(n - j + 1);
            pts.push(mobius_apply(&prod, &HPoint::I));
        }
        pts
    }

    /// A chain congruent to the orbit, laid out with `x_0 = i` and `x_n` on the
    /// upward imaginary axis.
    ///
    /// At the orbit point `x_j` the neighbours are `P_j A_{n-j+1}^{-1} i` and
    /// `P_j A_{n-j} i`, with `P_j = A_n ... A_{n-j+1}`, so each step length and
    /// turning angle comes from a single matrix. Long products are never formed.
    pub fn orbit_chain(&self) -> Result<Chain<H2>> {
        let n = self.n();
        let steps: Vec<f64> = (1..=n)
            .map(|j| dist(&mobius_apply(self.a(n - j + 1), &HPoint::I), &HPoint::I))
            .collect();
        let mut offsets = Vec::with_capacity(n - 1);
        for j in 1..n {
            let back = mobius_apply(&self.a(n - j + 1).inverse(), &HPoint::I);
            let fwd = mobius_apply(self.a(n - j), &HPoint::I);
            offsets.push(wrap_angle(direction_at_i(&fwd) - direction_at_i(&back)));
        }
        if let Some(j) = steps.iter().position(|&s| !(s > 0.0)) {
            return Err(Error::RepeatedPoint(j + 1));
        }
        let total: f64 = steps.iter().sum();
        if total > MAX_CHAIN_LENGTH {
            return Err(Error::TooLong(total));
        }
        Chain::h2(walk(&steps, &offsets))
    }

    /// `log ||A_n ... A_1||`.
    pub fn log_norm_product(&self) -> f64 {
        log_norm_of_product(&self.mats)
    }

    /// Left-hand side of the avalanche estimate without the absolute value.
    pub fn ap_residual(&self) -> f64 {
        let n = self.n();
        let mut r = self.log_norm_product();
        for i in 2..n {
            r += log(self.a(i).op_norm());
        }
        for i in 2..=n {
            r -= log_norm_of_product(&[*self.a(i - 1), *self.a(i)]);
        }
        r
    }

    /// `||A_j|| >= kappa^{-2}` for all `j` and `||A_j A_{j-1}|| / (||A_j|| ||A_{j-1}||) >= epsilon`
    /// for `2 <= j <= n`.
    pub fn dk_hypotheses(&self, kappa: f64, epsilon: f64) -> bool {
        let n = self.n();
        let floor = -2.0 * log(kappa);
        let norms: Vec<f64> = self.mats.iter().map(|m| log(m.op_norm())).collect();
        if norms
            .iter()
            .any(|&l| l < floor - GOOD_TOLERANCE * (1.0 + fabs(floor)))
        {
            return false;
        }
        let ratio_floor = log(epsilon);
        (2..=n).all(|i| {
            let pair = log_norm_of_product(&[*self.a(i - 1), *self.a(i)]);
            pair - norms[i - 1] - norms[i - 2] >= ratio_floor - GOOD_TOLERANCE * (1.0 + pair)
        })
    }
}

/// Left-hand side of the avalanche estimate for a matrix chain.
pub fn ap_residual(mc: &MatChain) -> f64 {
    mc.ap_residual()
}

/// Operator norm, the largest singular value.
pub fn op_norm(m: &Mat2) -> f64 {
    m.op_norm()
}

/// Constants translating good-pair data into the matrix form of the estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApConstants {
    pub kappa: f64,
    pub epsilon: f64,
    pub c0: f64,
    pub c1: f64,
}

/// `(kappa, epsilon, c0, c1) = (e^{-a}, e^{-b}, (c-1)/(4c), 4c)`, valid when
/// `a - 2b > log 4 + log(c/(c-1))`.
pub fn dictionary(a: f64, b: f64, c: f64) -> Result<ApConstants> {
    if !(c > 1.0) || !c.is_finite() {
        return Err(Error::PreconditionFailed("c > 1"));
    }
    if !(a - 2.0 * b > 2.0 * LN_2 + log(c / (c - 1.0))) {
        return Err(Error::PreconditionFailed("a - 2b > log 4 + log(c/(c-1))"));
    }
    Ok(ApConstants {
        kappa: exp(-a),
        epsilon: exp(-b),
        c0: (c - 1.0) / (4.0 * c),
        c1: 4.0 * c,
    })
}

/// `d(f^2 i, i) - d(f i, i) - 2 log 2`, a lower bound for the stable length of `f`.
pub fn stable_length_lb(f: &Mat2) -> f64 {
    let fi = mobius_apply(f, &HPoint::I);
    let ffi = mobius_apply(f, &fi);
    dist(&ffi, &HPoint::I) - dist(&fi, &HPoint::I) - 2.0 * LN_2
}

/// Stable length `lim d(f^N i, i) / N`: `2 acosh(|tr f| / 2)` for hyperbolic `f`, else zero.
pub fn stable_length(f: &Mat2) -> f64 {
    let t = fabs(f.trace());
    if t <= 2.0 {
        0.0
    } else {
        2.0 * acosh(t / 2.0)
    }
}

/// `d(f^N i, i) / N` through a rescaled product, so large `N` does not overflow.
pub fn empirical_stable_length(f: &Mat2, iterations: usize) -> f64 {
    if iterations == 0 {
        return 0.0;
    }
    let powers = alloc::vec![*f; iterations];
    2.0 * log_norm_of_product(&powers) / iterations as f64
}

/// `R(t1) diag(e^{s/2}, e^{-s/2}) R(t2)` with uniform angles and `s` uniform in `s_range`.
///
/// The norm is `e^{s/2}`, so `d(A i, i) = s`.
pub fn random_mat2<R: Rng + ?Sized>(rng: &mut R, s_range: core::ops::RangeInclusive<f64>) -> Mat2 {
    let s = rng.gen_range(s_range);
    let t1 = rng.gen_range(-PI..PI);
    let t2 = rng.gen_range(-PI..PI);
    Mat2::rotation(t1)
        * Mat2 {
            a: exp(s / 2.0),
            b: 0.0,
            c: 0.0,
            d: exp(-s / 2.0),
        }
        * Mat2::rotation(t2)
}

/// A random matrix chain with `n` factors whose orbit is an `(a, b)`-good chain,
/// each factor twisted by a random rotation about `i`. A function of `seed` alone.
///
/// # Panics
///
/// As [`sample_good_chain`], when the sampled orbit is longer than
/// [`MAX_CHAIN_LENGTH`]; `3 a n <= MAX_CHAIN_LENGTH` rules this out.
pub fn sample_good_mat_chain(gp: &GoodPair, n: usize, seed: u64, convex: bool) -> MatChain {
    let c = sample_good_chain(gp, n.max(2), seed, convex);
    let mut rng = SeedStream::new(seed).derive("mat-twists").rng();
    let twists: Vec<f64> = (0..c.points().len())
        .map(|_| rng.gen_range(-PI..PI))
        .collect();
    MatChain::from_orbit(c.points(), &twists)
        .expect("sampled orbit starts at i and has distinct points")
}
