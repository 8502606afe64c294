//! The upper half-plane `{z : Im z > 0}` with its hyperbolic metric.
//!
//! Distances are evaluated as `d = 2 asinh(|z1 - z2| / (2 sqrt(y1 y2)))`,
//! which equals `arccosh(1 + |z1 - z2|^2 / (2 y1 y2))` but keeps full relative
//! precision when the points are close and does not overflow when they are far.

mod layout;
mod mobius;

pub(crate) use layout::walk;
pub use layout::{layout, Turn};
pub use mobius::{
    direction, direction_at_i, mobius_apply, orientation, point_at, reflect_across, rotate_about_i,
    Mat2,
};
pub(crate) use mobius::{point_from_i, wrap_angle};

use core::f64::consts::{LN_2, PI};

use libm::{asinh, atan2, exp, fabs, hypot, log, log1p, sinh, sqrt};

use crate::chains::MetricSpace;
use crate::{Error, Result};

/// Relative slack allowed when three lengths are checked against the triangle inequality.
pub const TRIANGLE_SLACK: f64 = 1e-12;

/// Longest polyline the layouts accept. A point at distance `d` from `i` can have
/// height `e^d` or `e^{-d}`, and `f64` overflows past `e^{709}`.
pub const MAX_CHAIN_LENGTH: f64 = 700.0;

/// A point of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    re: f64,
    im: f64,
}

impl HPoint {
    /// The point `i`.
    pub const I: HPoint = HPoint { re: 0.0, im: 1.0 };

    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::NonFinite);
        }
        if im <= 0.0 {
            return Err(Error::NotInUpperHalf(im));
        }
        Ok(HPoint { re, im })
    }

    /// `t * e^{i phi}` for `t > 0` and `phi` in `(0, pi)`.
    pub fn polar(t: f64, phi: f64) -> Result<Self> {
        HPoint::new(t * libm::cos(phi), t * libm::sin(phi))
    }

    pub(crate) fn new_unchecked(re: f64, im: f64) -> Self {
        debug_assert!(
            im > 0.0 && im.is_finite() && re.is_finite(),
            "bad point {re} + {im}i"
        );
        HPoint { re, im }
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    /// Mirror image `-conj(z)`.
    pub fn mirror(&self) -> Self {
        HPoint {
            re: -self.re,
            im: self.im,
        }
    }
}

/// Hyperbolic distance between two points of the upper half-plane.
pub fn dist(p: &HPoint, q: &HPoint) -> f64 {
    let delta = hypot(p.re - q.re, p.im - q.im);
    if delta == 0.0 {
        return 0.0;
    }
    2.0 * asinh(delta / (2.0 * sqrt(p.im) * sqrt(q.im)))
}

/// Gromov product `(x|y)_z` in the hyperbolic plane.
pub fn gromov(x: &HPoint, y: &HPoint, z: &HPoint) -> f64 {
    gromov_from_distances(dist(x, z), dist(z, y), dist(x, y))
}

/// `(d(x,z) + d(z,y) - d(x,y)) / 2` from the three distances.
pub fn gromov_from_distances(dxz: f64, dzy: f64, dxy: f64) -> f64 {
    (dxz + dzy - dxy) / 2.0
}

/// The hyperbolic plane as a [`MetricSpace`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct H2;

impl MetricSpace for H2 {
    type Point = HPoint;

    fn distance(&self, p: &HPoint, q: &HPoint) -> f64 {
        dist(p, q)
    }
}

/// `log(sinh x)` for `x >= 0`; `-inf` at zero.
pub(crate) fn log_sinh(x: f64) -> f64 {
    if x <= 0.0 {
        f64::NEG_INFINITY
    } else if x < 20.0 {
        log(sinh(x))
    } else {
        x - LN_2 + log1p(-exp(-2.0 * x))
    }
}

/// `asinh(e^u)` without overflow.
pub(crate) fn asinh_exp(u: f64) -> f64 {
    if u > 20.0 {
        u + LN_2 + exp(-2.0 * u) / 4.0
    } else {
        asinh(exp(u))
    }
}

/// `log(e^x + e^y)`.
pub(crate) fn log_add_exp(x: f64, y: f64) -> f64 {
    let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + log1p(exp(lo - hi))
}

fn check_sides(a: f64, b: f64, c: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(Error::NonFinite);
    }
    let slack = TRIANGLE_SLACK * (1.0 + a + b + c);
    if c < 0.0 || c < fabs(a - b) - slack || c > a + b + slack {
        return Err(Error::InvalidSides { a, b, c });
    }
    Ok(())
}

/// Angle `gamma` opposite side `c` in a triangle with sides `a`, `b` adjacent to it.
///
/// Solves `cosh c = cosh a cosh b - sinh a sinh b cos gamma` through the half-angle
/// forms `sin^2(gamma/2) = sinh(a-g) sinh(b-g) / (sinh a sinh b)` and
/// `cos^2(gamma/2) = sinh(g) sinh(g+c) / (sinh a sinh b)`, `g = (a+b-c)/2`.
pub fn angle_from_sides(a: f64, b: f64, c: f64) -> Result<f64> {
    if a <= 0.0 || b <= 0.0 {
        return Err(Error::DegenerateTriangle);
    }
    check_sides(a, b, c)?;
    let c = c.clamp(fabs(a - b), a + b);
    let g = ((a + b - c) / 2.0).max(0.0);
    let ls = log_sinh((a - g).max(0.0)) + log_sinh((b - g).max(0.0));
    let lc = log_sinh(g) + log_sinh(g + c);
    if ls == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    if lc == f64::NEG_INFINITY {
        return Ok(PI);
    }
    let m = ls.max(lc);
    Ok(2.0 * atan2(exp((ls - m) / 2.0), exp((lc - m) / 2.0)))
}

/// Angles opposite the sides `a`, `b`, `c`, in that order.
pub fn triangle_angles(a: f64, b: f64, c: f64) -> Result<[f64; 3]> {
    Ok([
        angle_from_sides(b, c, a)?,
        angle_from_sides(c, a, b)?,
        angle_from_sides(a, b, c)?,
    ])
}

/// Third side of a triangle with sides `a`, `b` meeting at angle `gamma`.
///
/// Uses `sinh^2(L/2) = sinh^2((a-b)/2) + sinh a sinh b sin^2(gamma/2)`.
pub fn lc_length(a: f64, b: f64, gamma: f64) -> f64 {
    let s = libm::sin(gamma / 2.0);
    let t1 = 2.0 * log_sinh(fabs(a - b) / 2.0);
    let t2 = if s == 0.0 {
        f64::NEG_INFINITY
    } else {
        log_sinh(a) + log_sinh(b) + 2.0 * log(fabs(s))
    };
    let u = log_add_exp(t1, t2);
    if u == f64::NEG_INFINITY {
        return 0.0;
    }
    2.0 * asinh_exp(u / 2.0)
}

/// Length of the chord joining the top corners of a Saccheri quadrilateral with
/// equal legs `leg` standing perpendicular on a base of length `base`.
pub fn saccheri_chord(leg: f64, base: f64) -> f64 {
    2.0 * asinh(libm::cosh(leg) * sinh(base / 2.0))
}
