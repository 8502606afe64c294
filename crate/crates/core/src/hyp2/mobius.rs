use core::f64::consts::PI;
use core::ops::Mul;

use libm::{atan2, cos, exp, fabs, hypot, sin, sqrt};

use super::{dist, HPoint};
use crate::{Error, Result};

/// A real 2x2 matrix of determinant one, `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub(crate) a: f64,
    pub(crate) b: f64,
    pub(crate) c: f64,
    pub(crate) d: f64,
}

impl Mat2 {
    /// Largest deviation of the determinant from 1 that is renormalised away.
    pub const DET_TOLERANCE: f64 = 1e-6;

    pub const IDENTITY: Mat2 = Mat2 {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// Builds a matrix, rescaling by `1/sqrt(det)` when the determinant is within
    /// [`Mat2::DET_TOLERANCE`] of one.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite()) {
            return Err(Error::NonFinite);
        }
        let det = a * d - b * c;
        if !(det > 0.0) || fabs(det - 1.0) > Self::DET_TOLERANCE {
            return Err(Error::BadDeterminant(det));
        }
        Ok(Mat2 { a, b, c, d }.renormalized())
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// `diag(t, 1/t)`, which moves points along the imaginary axis by `z -> t^2 z`.
    pub fn diag(t: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::InvalidArgument(
                "diagonal entry must be positive and finite",
            ));
        }
        Ok(Mat2 {
            a: t,
            b: 0.0,
            c: 0.0,
            d: 1.0 / t,
        })
    }

    /// The rotation matrix `[[cos t, -sin t], [sin t, cos t]]`.
    pub fn rotation(t: f64) -> Self {
        let (s, c) = (sin(t), cos(t));
        Mat2 {
            a: c,
            b: -s,
            c: s,
            d: c,
        }
    }

    /// Affine map `z -> p.re + p.im z` sending `i` to `p`.
    pub fn frame(p: &HPoint) -> Self {
        let r = sqrt(p.im());
        Mat2 {
            a: r,
            b: p.re() / r,
            c: 0.0,
            d: 1.0 / r,
        }
    }

    pub fn inverse(&self) -> Self {
        Mat2 {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn transpose(&self) -> Self {
        Mat2 {
            a: self.a,
            b: self.c,
            c: self.b,
            d: self.d,
        }
    }

    pub(crate) fn renormalized(self) -> Self {
        let det = self.det();
        if det > 0.0 && det != 1.0 {
            let s = 1.0 / sqrt(det);
            Mat2 {
                a: self.a * s,
                b: self.b * s,
                c: self.c * s,
                d: self.d * s,
            }
        } else {
            self
        }
    }

    pub(crate) fn scaled(&self, s: f64) -> Self {
        Mat2 {
            a: self.a * s,
            b: self.b * s,
            c: self.c * s,
            d: self.d * s,
        }
    }

    /// Singular values `(s1, s2)` with `s1 >= s2 >= 0`, in closed form.
    pub fn singular_values(&self) -> (f64, f64) {
        let e = (self.a + self.d) / 2.0;
        let f = (self.a - self.d) / 2.0;
        let g = (self.c + self.b) / 2.0;
        let h = (self.c - self.b) / 2.0;
        let q = hypot(e, h);
        let r = hypot(f, g);
        (q + r, fabs(q - r))
    }

    /// Operator norm (largest singular value).
    pub fn op_norm(&self) -> f64 {
        self.singular_values().0
    }

    fn product(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, o: Mat2) -> Mat2 {
        self.product(&o).renormalized()
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, o: &Mat2) -> Mat2 {
        self.product(o).renormalized()
    }
}

/// Fractional linear action `z -> (a z + b) / (c z + d)`.
///
/// Points far from `i` are first pulled back to the unit circle by a diagonal
/// factor, so the evaluation neither overflows nor underflows.
pub fn mobius_apply(m: &Mat2, z: &HPoint) -> HPoint {
    let k = hypot(z.re(), z.im());
    let (m, x, y) = if !(1e-8..=1.0).contains(&k) {
        let r = sqrt(k);
        let m = Mat2 {
            a: m.a * r,
            b: m.b / r,
            c: m.c * r,
            d: m.d / r,
        };
        (m, z.re() / k, z.im() / k)
    } else {
        (*m, z.re(), z.im())
    };
    let p = m.c * x + m.d;
    let q = m.c * y;
    let den = p * p + q * q;
    let re = ((m.a * x + m.b) * p + m.a * m.c * y * y) / den;
    let im = y * m.det() / den;
    HPoint::new_unchecked(re, im)
}

/// Elliptic isometry fixing `i` and turning tangent directions there by `theta`
/// (counter-clockwise).
pub fn rotate_about_i(theta: f64) -> Mat2 {
    let (s, c) = (sin(theta / 2.0), cos(theta / 2.0));
    Mat2 {
        a: c,
        b: s,
        c: -s,
        d: c,
    }
}

/// Direction at `i` of the geodesic ray towards `z`.
///
/// Angles are measured counter-clockwise with `0` pointing up the imaginary axis.
/// The value is the argument of the Cayley image `(z - i)/(z + i)`.
pub fn direction_at_i(z: &HPoint) -> f64 {
    let (x, y) = (z.re(), z.im());
    let k = hypot(x, y);
    if k > 1.0 {
        let (ux, uy) = (x / k / k, -y / k / k);
        let u2 = (ux * ux) + (uy * uy);
        atan2(-2.0 * ux, 1.0 - u2)
    } else {
        atan2(-2.0 * x, x * x + (y - 1.0) * (y + 1.0))
    }
}

/// Direction at `p` of the geodesic ray towards `q`, in the frame [`Mat2::frame`] of `p`.
pub fn direction(p: &HPoint, q: &HPoint) -> f64 {
    direction_at_i(&to_frame(p, q))
}

/// Image of `q` under the inverse of the frame at `p`.
pub(crate) fn to_frame(p: &HPoint, q: &HPoint) -> HPoint {
    HPoint::new_unchecked((q.re() - p.re()) / p.im(), q.im() / p.im())
}

pub(crate) fn from_frame(p: &HPoint, q: &HPoint) -> HPoint {
    HPoint::new_unchecked(p.re() + p.im() * q.re(), p.im() * q.im())
}

/// The point at distance `s` from `i` in direction `theta`.
pub(crate) fn point_from_i(theta: f64, s: f64) -> HPoint {
    let (sn, cs) = (sin(theta / 2.0), cos(theta / 2.0));
    if s <= 0.0 {
        return HPoint::I;
    }
    let u = exp(-s);
    let u2 = u * u;
    let den = cs * cs * u2 + sn * sn;
    let re = cs * sn * (u2 - 1.0) / den;
    let im = u / den;
    HPoint::new_unchecked(re, im)
}

/// The point at distance `s` from `p` in direction `theta` (see [`direction`]).
pub fn point_at(p: &HPoint, theta: f64, s: f64) -> HPoint {
    from_frame(p, &point_from_i(theta, s))
}

/// Signed turn of the path `p -> q -> r` at `q`: positive for a left turn,
/// negative for a right turn, zero when the three points are collinear.
pub fn orientation(p: &HPoint, q: &HPoint, r: &HPoint) -> f64 {
    let tp = direction(q, p);
    let tr = direction(q, r);
    let v = sin(tp - tr);
    if fabs(v) < 1e-12 {
        0.0
    } else {
        v
    }
}

/// Reflection of `p` in the complete geodesic through `g1` and `g2`.
///
/// The geodesic is first moved onto the imaginary axis by an isometry so the
/// mirror is `z -> -conj(z)`.
pub fn reflect_across(p: &HPoint, g1: &HPoint, g2: &HPoint) -> Result<HPoint> {
    if dist(g1, g2) == 0.0 {
        return Err(Error::DegenerateGeodesic);
    }
    let theta = direction(g1, g2);
    let turn = rotate_about_i(-theta);
    let local = mobius_apply(&turn, &to_frame(g1, p));
    let back = mobius_apply(&turn.inverse(), &local.mirror());
    Ok(from_frame(g1, &back))
}

/// Wraps an angle into `(-pi, pi]`.
pub(crate) fn wrap_angle(t: f64) -> f64 {
    let mut t = t % (2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    } else if t <= -PI {
        t += 2.0 * PI;
    }
    t
}
