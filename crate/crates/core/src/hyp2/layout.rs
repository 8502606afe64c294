use alloc::vec::Vec;
use core::f64::consts::PI;

use super::mobius::{direction, direction_at_i, mobius_apply, point_at, rotate_about_i};
use super::{HPoint, MAX_CHAIN_LENGTH};
use crate::{Error, Result};

/// Side to which a polyline turns at a vertex, seen while walking forward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Turn {
    Left,
    Right,
}

impl Turn {
    pub fn flipped(self) -> Turn {
        match self {
            Turn::Left => Turn::Right,
            Turn::Right => Turn::Left,
        }
    }
}

/// Turtle construction of a polyline from its step lengths and interior angles.
///
/// `steps[j]` is the length of the segment `x_j x_{j+1}`, `angles[j]` the angle
/// `x_j x_{j+1} x_{j+2}` and `turns[j]` the side to which the walk turns there.
///
/// The result starts at `x_0 = i` and ends on the upward imaginary axis. After
/// every placement the whole polyline is rotated about `i` to keep the newest
/// point on that axis, which keeps coordinates well conditioned for long chains.
pub fn layout(steps: &[f64], angles: &[f64], turns: &[Turn]) -> Result<Vec<HPoint>> {
    if steps.is_empty() {
        return Err(Error::ChainTooShort(steps.len() + 1));
    }
    if angles.len() + 1 != steps.len() || turns.len() != angles.len() {
        return Err(Error::InvalidArgument(
            "need one angle and one turn per interior vertex",
        ));
    }
    for (j, &s) in steps.iter().enumerate() {
        if !s.is_finite() {
            return Err(Error::NonFinite);
        }
        if s <= 0.0 {
            return Err(Error::RepeatedPoint(j + 1));
        }
    }
    let total: f64 = steps.iter().sum();
    if total > MAX_CHAIN_LENGTH {
        return Err(Error::TooLong(total));
    }
    for &g in angles {
        if !(0.0..=PI).contains(&g) {
            return Err(Error::AngleOutOfRange {
                angle: g,
                min: 0.0,
                max: PI,
            });
        }
    }

    let offsets: Vec<f64> = angles
        .iter()
        .zip(turns)
        .map(|(&g, t)| match t {
            Turn::Left => -g,
            Turn::Right => g,
        })
        .collect();
    Ok(walk(steps, &offsets))
}

/// Turtle walk: `offsets[j]` is the heading at `x_{j+1}` measured from the
/// direction back to `x_j` (counter-clockwise positive).
///
/// Inputs are not validated; see [`layout`].
pub(crate) fn walk(steps: &[f64], offsets: &[f64]) -> Vec<HPoint> {
    let mut pts = Vec::with_capacity(steps.len() + 1);
    pts.push(HPoint::I);
    pts.push(point_at(&HPoint::I, 0.0, steps[0]));
    for (j, &off) in offsets.iter().enumerate() {
        let q = pts[j + 1];
        let back = direction(&q, &pts[j]);
        let next = point_at(&q, back + off, steps[j + 1]);
        pts.push(next);
        let rot = rotate_about_i(-direction_at_i(&next));
        for p in pts.iter_mut().skip(1) {
            *p = mobius_apply(&rot, p);
        }
        let last = pts.len() - 1;
        pts[last] = HPoint::new_unchecked(0.0, pts[last].im());
    }
    pts
}
