//! Seeded random streams and reference implementations used to cross-check
//! the main code paths.
//!
//! The references take a different route from the library: tension is summed
//! straight from its definition with compensated summation, and convexity is
//! decided by a Euclidean hull in the Klein disk.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{fabs, sqrt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hyp2::HPoint;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// A root seed refined by a path of labels and indices.
///
/// Equal roots and paths give equal streams, and sibling paths give unrelated ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedStream {
    state: u64,
}

impl SeedStream {
    pub fn new(root: u64) -> Self {
        SeedStream {
            state: splitmix64(root),
        }
    }

    pub fn derive(&self, label: &str) -> Self {
        SeedStream {
            state: splitmix64(self.state ^ fnv1a(label.as_bytes())),
        }
    }

    pub fn index(&self, i: u64) -> Self {
        SeedStream {
            state: splitmix64(self.state ^ splitmix64(i ^ 0x5851_F42D_4C95_7F2D)),
        }
    }

    /// A 64-bit seed summarising the path, suitable for seeded samplers.
    pub fn seed(&self) -> u64 {
        self.state
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.state)
    }
}

/// Kahan-compensated sum.
#[derive(Debug, Default, Clone, Copy)]
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Tension evaluated term by term from its definition.
pub fn oracle_tension<P>(points: &[P], dist: impl Fn(&P, &P) -> f64) -> f64 {
    let n = points.len().saturating_sub(1);
    if n < 2 {
        return 0.0;
    }
    let mut acc = Kahan::default();
    for j in 1..n {
        acc.add(dist(&points[j - 1], &points[j + 1]));
    }
    for j in 2..n {
        acc.add(-dist(&points[j - 1], &points[j]));
    }
    acc.add(-dist(&points[0], &points[n]));
    acc.sum
}

/// Klein-disk coordinates of a point of the upper half-plane.
pub fn klein(p: &HPoint) -> (f64, f64) {
    // Cayley map to the disk, then w -> 2w / (1 + |w|^2)
    let (x, y) = (p.re(), p.im());
    let den = x * x + (y + 1.0) * (y + 1.0);
    let wr = (x * x + y * y - 1.0) / den;
    let wi = -2.0 * x / den;
    let s = 1.0 + wr * wr + wi * wi;
    (2.0 * wr / s, 2.0 * wi / s)
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn modulo(x: f64, m: f64) -> f64 {
    let r = x % m;
    if r < 0.0 {
        r + m
    } else {
        r
    }
}

/// Convexity decided by the Euclidean convex hull of the Klein images.
///
/// The polygon is convex when every vertex is on the hull boundary and walking
/// the vertices in chain order goes once around the hull. Geodesics are chords
/// in the Klein disk, so this is the hyperbolic notion as well.
pub fn oracle_convex_hull_klein(points: &[HPoint]) -> bool {
    const EPS: f64 = 1e-12;
    let mut k: Vec<(f64, f64)> = Vec::new();
    for p in points.iter().map(klein) {
        if k.last()
            .is_none_or(|q: &(f64, f64)| fabs(q.0 - p.0) + fabs(q.1 - p.1) > EPS)
        {
            k.push(p);
        }
    }
    while k.len() > 1 && {
        let (f, l) = (k[0], k[k.len() - 1]);
        fabs(f.0 - l.0) + fabs(f.1 - l.1) <= EPS
    } {
        k.pop();
    }
    if k.len() < 4 {
        return true;
    }

    // Andrew's monotone chain
    let mut sorted = k.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Vec<(f64, f64)> = if pass == 0 {
            sorted.clone()
        } else {
            sorted.iter().rev().copied().collect()
        };
        for p in iter {
            while hull.len() >= start + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= EPS
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.len() < 3 {
        return true;
    }

    // position of a point along the hull boundary, or None when off the boundary
    let edge_len = |i: usize| {
        let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
        sqrt((b.0 - a.0) * (b.0 - a.0) + (b.1 - a.1) * (b.1 - a.1))
    };
    let perimeter: f64 = (0..hull.len()).map(edge_len).sum();
    let position = |p: (f64, f64)| -> Option<f64> {
        let mut before = 0.0;
        for i in 0..hull.len() {
            let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
            let len = edge_len(i);
            let area = cross(a, b, p);
            let along = ((p.0 - a.0) * (b.0 - a.0) + (p.1 - a.1) * (b.1 - a.1)) / len;
            if fabs(area) / len <= 1e-9 && along >= -1e-9 && along <= len + 1e-9 {
                return Some(before + along.clamp(0.0, len));
            }
            before += len;
        }
        None
    };
    let mut pos = Vec::with_capacity(k.len());
    for &p in &k {
        match position(p) {
            Some(t) => pos.push(t),
            None => return false,
        }
    }
    let m = pos.len();
    let (mut fwd, mut bwd) = (0.0, 0.0);
    for i in 0..m {
        let d = pos[(i + 1) % m] - pos[i];
        fwd += modulo(d, perimeter);
        bwd += modulo(-d, perimeter);
    }
    let tol = 1e-7 * (1.0 + perimeter);
    fabs(fwd - perimeter) <= tol || fabs(bwd - perimeter) <= tol
}

/// Uniform random point at hyperbolic distance at most `r` from `i`.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, r: f64) -> HPoint {
    let theta = rng.gen_range(-PI..PI);
    let s = rng.gen_range(0.0..=r);
    crate::hyp2::point_at(&HPoint::I, theta, s)
}
