use alloc::vec::Vec;
use core::f64::consts::PI;

use super::Chain;
use crate::hyp2::{angle_from_sides, dist, layout, orientation, HPoint, Turn, H2};
use crate::{Error, Result};

/// Relative tolerance used when comparing a requested angle with the current one.
const ANGLE_SLACK: f64 = 1e-9;

/// Interior angles `angle_{x_j}(x_{j-1}, x_{j+1})` for `1 <= j <= n-1`.
pub fn interior_angles(c: &Chain<H2>) -> Result<Vec<f64>> {
    let s = c.steps();
    c.skips()
        .iter()
        .enumerate()
        .map(|(j, &k)| {
            angle_from_sides(s[j], s[j + 1], k).map_err(|_| Error::DegenerateTriple(j + 1))
        })
        .collect()
}

/// Side to which a convex chain turns, `None` for a chain on a single geodesic.
pub fn turn_side(points: &[HPoint]) -> Option<Turn> {
    points.windows(3).find_map(|w| {
        let o = orientation(&w[0], &w[1], &w[2]);
        if o > 0.0 {
            Some(Turn::Left)
        } else if o < 0.0 {
            Some(Turn::Right)
        } else {
            None
        }
    })
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Whether the closed polygon `x_0 x_1 ... x_n x_0` bounds the convex hull of its vertices.
///
/// Every vertex must lie weakly on one common side of every edge's geodesic, and
/// all turns must agree. Collinear configurations count as convex.
pub fn is_convex(points: &[HPoint]) -> bool {
    let mut v: Vec<HPoint> = Vec::with_capacity(points.len());
    for p in points {
        if v.last().is_none_or(|q| dist(q, p) > 0.0) {
            v.push(*p);
        }
    }
    while v.len() > 1 && dist(&v[0], &v[v.len() - 1]) == 0.0 {
        v.pop();
    }
    let m = v.len();
    if m < 4 {
        return true;
    }
    let mut side = 0i8;
    let mut agree = |o: f64| -> bool {
        let s = sign(o);
        if s == 0 {
            return true;
        }
        if side == 0 {
            side = s;
        }
        side == s
    };
    for j in 0..m {
        let (p, q, r) = (&v[(j + m - 1) % m], &v[j], &v[(j + 1) % m]);
        if !agree(orientation(p, q, r)) {
            return false;
        }
    }
    for i in 0..m {
        let (p, q) = (&v[i], &v[(i + 1) % m]);
        for (k, r) in v.iter().enumerate() {
            if k == i || k == (i + 1) % m {
                continue;
            }
            if !agree(orientation(p, q, r)) {
                return false;
            }
        }
    }
    true
}

/// The convex chain with the same steps and angles as `c` except for angle `gamma` at `x_k`.
///
/// Requires `c` convex and `gamma` between the current angle at `x_k` and `pi`.
pub fn open_angle(c: &Chain<H2>, k: usize, gamma: f64) -> Result<Chain<H2>> {
    let n = c.n();
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument("vertex index must be interior"));
    }
    if !is_convex(c.points()) {
        return Err(Error::NotConvexInput);
    }
    let mut angles = interior_angles(c)?;
    let current = angles[k - 1];
    if !(gamma >= current - ANGLE_SLACK && gamma <= PI + ANGLE_SLACK) {
        return Err(Error::AngleOutOfRange {
            angle: gamma,
            min: current,
            max: PI,
        });
    }
    angles[k - 1] = gamma.clamp(0.0, PI);
    let side = turn_side(c.points()).unwrap_or(Turn::Left);
    let turns = alloc::vec![side; angles.len()];
    Chain::h2(layout(c.steps(), &angles, &turns)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{canonical_chain, GoodPair};
    use libm::fabs;

    fn pt(x: f64, y: f64) -> HPoint {
        HPoint::new(x, y).unwrap()
    }

    #[test]
    fn canonical_and_geodesic_chains_are_convex() {
        let gp = GoodPair::new(3.0, 0.5).unwrap();
        assert!(is_convex(canonical_chain(&gp, 8).points()));
        let line: Vec<_> = (0..5).map(|k| pt(0.0, (k + 1) as f64)).collect();
        assert!(is_convex(&line));
    }

    #[test]
    fn reflex_vertex_is_not_convex() {
        let pts = [pt(0.0, 1.0), pt(1.0, 1.0), pt(0.5, 2.0), pt(1.5, 2.5)];
        assert!(!is_convex(&pts));
    }

    #[test]
    fn winding_polyline_is_not_convex() {
        // a regular polygon traversed one and a half times turns consistently but winds
        let pts: Vec<_> = (0..10)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / 6.0;
                crate::hyp2::point_at(&HPoint::I, t, 1.0)
            })
            .collect();
        assert!(!is_convex(&pts));
        assert!(is_convex(&pts[..6]));
    }

    #[test]
    fn open_angle_to_current_is_congruent() {
        let gp = GoodPair::new(2.0, 0.3).unwrap();
        let c = canonical_chain(&gp, 5);
        let angles = interior_angles(&c).unwrap();
        let d = open_angle(&c, 2, angles[1]).unwrap();
        for i in 0..=5 {
            for j in 0..=5 {
                assert!(fabs(c.distance(i, j) - d.distance(i, j)) < 1e-9);
            }
        }
        let straight = open_angle(&c, 2, PI).unwrap();
        assert!(fabs(straight.gromovs()[1]) < 1e-9);
        assert!(matches!(
            open_angle(&c, 2, angles[1] - 0.1),
            Err(Error::AngleOutOfRange { .. })
        ));
    }
}
