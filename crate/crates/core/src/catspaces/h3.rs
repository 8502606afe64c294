use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{asinh, atan2, cos, hypot, sin, sqrt};
use rand::Rng;

use crate::chains::{sample_steps_and_gromovs, Chain, GoodPair, MetricSpace};
use crate::hyp2::{direction_at_i, point_from_i, rotate_about_i, HPoint, Mat2, MAX_CHAIN_LENGTH};
use crate::oracle::SeedStream;
use crate::{Error, Result};

/// A point `(x, y, z)` of the upper half-space, `z > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H3Point {
    x: f64,
    y: f64,
    z: f64,
}

impl H3Point {
    /// The point `(0, 0, 1)`.
    pub const J: H3Point = H3Point {
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::NonFinite);
        }
        if z <= 0.0 {
            return Err(Error::NotInUpperHalf(z));
        }
        Ok(H3Point { x, y, z })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// The point of the vertical plane `y = 0` corresponding to `p`.
    pub fn from_plane(p: &HPoint) -> Self {
        H3Point {
            x: p.re(),
            y: 0.0,
            z: p.im(),
        }
    }

    fn plane(&self) -> HPoint {
        HPoint::new_unchecked(self.x, self.z)
    }
}

/// Hyperbolic distance in the upper half-space, `2 asinh(|p - q| / (2 sqrt(p_z q_z)))`.
pub fn h3_dist(p: &H3Point, q: &H3Point) -> f64 {
    let delta = hypot(hypot(p.x - q.x, p.y - q.y), p.z - q.z);
    if delta == 0.0 {
        return 0.0;
    }
    2.0 * asinh(delta / (2.0 * sqrt(p.z) * sqrt(q.z)))
}

/// Upper half-space as a [`MetricSpace`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct H3;

impl MetricSpace for H3 {
    type Point = H3Point;

    fn distance(&self, p: &H3Point, q: &H3Point) -> f64 {
        h3_dist(p, q)
    }
}

/// Poincare extension of the real Mobius map of `m` to the upper half-space.
/// It preserves the vertical plane `y = 0`, where it agrees with the planar action.
fn apply(m: &Mat2, p: &H3Point) -> H3Point {
    let k = hypot(hypot(p.x, p.y), p.z);
    let ([a, b, c, d], x, y, t) = if !(1e-8..=1.0).contains(&k) {
        let r = sqrt(k);
        let [a, b, c, d] = m.entries();
        ([a * r, b / r, c * r, d / r], p.x / k, p.y / k, p.z / k)
    } else {
        (m.entries(), p.x, p.y, p.z)
    };
    // (a w + b) * conj(c w + d) + a c t^2 over |c w + d|^2 + c^2 t^2, w = x + i y
    let (nr, ni) = (a * x + b, a * y);
    let (dr, di) = (c * x + d, c * y);
    let den = dr * dr + di * di + c * c * t * t;
    let re = (nr * dr + ni * di + a * c * t * t) / den;
    let im = (ni * dr - nr * di) / den;
    H3Point {
        x: re,
        y: im,
        z: t * (a * d - b * c) / den,
    }
}

/// Rotation by `psi` about the vertical axis through `(0, 0)`.
fn spin(p: &H3Point, psi: f64) -> H3Point {
    let (s, c) = (sin(psi), cos(psi));
    H3Point {
        x: c * p.x - s * p.y,
        y: s * p.x + c * p.y,
        z: p.z,
    }
}

fn to_frame(q: &H3Point, p: &H3Point) -> H3Point {
    H3Point {
        x: (p.x - q.x) / q.z,
        y: (p.y - q.y) / q.z,
        z: p.z / q.z,
    }
}

fn from_frame(q: &H3Point, p: &H3Point) -> H3Point {
    H3Point {
        x: q.x + q.z * p.x,
        y: q.y + q.z * p.y,
        z: q.z * p.z,
    }
}

/// Isometry fixing `J` that sends `target` onto the upward vertical axis,
/// as a horizontal spin followed by a planar rotation.
fn aim(target: &H3Point) -> (f64, Mat2) {
    let psi = -atan2(target.y, target.x);
    let flat = spin(target, psi);
    let rot = rotate_about_i(-direction_at_i(&flat.plane()));
    (psi, rot)
}

/// Turtle walk in the upper half-space: step `steps[j]`, angle `angles[j]` at
/// each interior vertex and the azimuth `azimuths[j]` of the turn about the
/// incoming geodesic. Azimuths `0` and `pi` keep the walk in one plane.
fn walk3(steps: &[f64], angles: &[f64], azimuths: &[f64]) -> Vec<H3Point> {
    let mut pts = Vec::with_capacity(steps.len() + 1);
    pts.push(H3Point::J);
    pts.push(H3Point::from_plane(&point_from_i(0.0, steps[0])));
    for j in 0..angles.len() {
        let q = pts[j + 1];
        // local frame at q, previous point rotated straight down
        let back = to_frame(&q, &pts[j]);
        let (psi, rot) = aim(&back);
        let down = rotate_about_i(PI) * rot;
        let local = H3Point::from_plane(&point_from_i(PI - angles[j], steps[j + 1]));
        let turned = spin(&local, azimuths[j]);
        let undone = spin(&apply(&down.inverse(), &turned), -psi);
        let next = from_frame(&q, &undone);
        pts.push(next);
        let (psi, rot) = aim(&next);
        for p in pts.iter_mut().skip(1) {
            *p = apply(&rot, &spin(p, psi));
        }
        let last = pts.len() - 1;
        pts[last] = H3Point {
            x: 0.0,
            y: 0.0,
            z: pts[last].z,
        };
    }
    pts
}

fn sample_h3(gp: &GoodPair, n: usize, seed: u64, planar: bool) -> Chain<H3> {
    let label = if planar {
        "h3-planar-chain"
    } else {
        "h3-good-chain"
    };
    let mut rng = SeedStream::new(seed).derive(label).rng();
    let (steps, gromovs) = sample_steps_and_gromovs(gp, n.max(1), &mut rng);
    let total: f64 = steps.iter().sum();
    assert!(
        total <= MAX_CHAIN_LENGTH,
        "sampled chain of length {total} exceeds {MAX_CHAIN_LENGTH}"
    );
    let angles = crate::chains::sample::angles_for(&steps, &gromovs);
    let azimuths: Vec<f64> = (0..angles.len())
        .map(|_| {
            if planar {
                if rng.gen_bool(0.5) {
                    0.0
                } else {
                    PI
                }
            } else {
                rng.gen_range(-PI..PI)
            }
        })
        .collect();
    Chain::new(H3, walk3(&steps, &angles, &azimuths))
        .expect("sampled chain has distinct consecutive points")
}

/// A random `(a, b)`-good chain in H³ whose turns point in random directions
/// around the incoming geodesic.
///
/// # Panics
///
/// If the sampled steps add up to more than [`MAX_CHAIN_LENGTH`], which cannot
/// happen when `3 a n <= MAX_CHAIN_LENGTH`.
pub fn sample_good_chain_h3(gp: &GoodPair, n: usize, seed: u64) -> Chain<H3> {
    sample_h3(gp, n, seed, false)
}

/// Like [`sample_good_chain_h3`] with every turn inside one vertical plane.
pub fn sample_planar_chain_h3(gp: &GoodPair, n: usize, seed: u64) -> Chain<H3> {
    sample_h3(gp, n, seed, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyp2::{dist, mobius_apply};
    use libm::{exp, fabs};

    #[test]
    fn vertical_distance() {
        let p = H3Point::new(0.0, 0.0, exp(1.0)).unwrap();
        assert!(fabs(h3_dist(&H3Point::J, &p) - 1.0) < 1e-15);
        assert!(H3Point::new(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn planar_slice_agrees_with_plane() {
        let p = HPoint::new(0.3, 2.0).unwrap();
        let q = HPoint::new(-1.1, 0.4).unwrap();
        let d3 = h3_dist(&H3Point::from_plane(&p), &H3Point::from_plane(&q));
        assert!(fabs(d3 - dist(&p, &q)) < 1e-12);
    }

    #[test]
    fn extension_matches_planar_action_and_is_isometric() {
        let m = Mat2::new(1.5, 0.4, -0.7, 0.48).unwrap();
        let p = HPoint::new(0.2, 0.9).unwrap();
        let w = apply(&m, &H3Point::from_plane(&p));
        let v = mobius_apply(&m, &p);
        assert!(fabs(w.x - v.re()) < 1e-13 && fabs(w.y) < 1e-15 && fabs(w.z - v.im()) < 1e-13);
        let a = H3Point::new(0.3, -0.8, 0.5).unwrap();
        let b = H3Point::new(-2.0, 1.0, 3.0).unwrap();
        let d0 = h3_dist(&a, &b);
        assert!(fabs(h3_dist(&apply(&m, &a), &apply(&m, &b)) - d0) < 1e-12);
        assert!(fabs(h3_dist(&spin(&a, 0.7), &spin(&b, 0.7)) - d0) < 1e-13);
    }

    #[test]
    fn sampled_chains_are_good() {
        let gp = GoodPair::new(2.5, 0.4).unwrap();
        for seed in 0..30 {
            let c = sample_good_chain_h3(&gp, 10, seed);
            assert!(c.is_good_chain(&gp), "seed {seed}");
            let again = sample_good_chain_h3(&gp, 10, seed);
            assert_eq!(c.points(), again.points());
        }
    }

    #[test]
    fn planar_chains_stay_in_a_plane() {
        let gp = GoodPair::new(2.0, 0.3).unwrap();
        let c = sample_planar_chain_h3(&gp, 6, 5);
        for p in c.points() {
            assert!(fabs(p.y()) < 1e-12 * p.z().max(1.0));
        }
    }
}
