use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{asinh, exp, expm1, log, sin, sinh, sqrt};

use super::{Chain, GoodPair, GOOD_TOLERANCE};
use crate::hyp2::{point_at, HPoint, H2};
use crate::{Error, Result};

/// Points `t_j e^{i alpha}` for the given logarithms `log t_j`.
fn on_ray(log_t: &[f64], alpha: f64) -> Result<Chain<H2>> {
    let pts = log_t
        .iter()
        .map(|&l| HPoint::polar(exp(l), alpha))
        .collect::<Result<Vec<_>>>()?;
    Chain::h2(pts)
}

/// The `(a, b)`-canonical chain `x_j = lambda^j e^{i phi}`, `0 <= j <= n`.
pub fn canonical_chain(gp: &GoodPair, n: usize) -> Chain<H2> {
    let l = gp.log_lambda();
    let logs: Vec<f64> = (0..=n).map(|j| j as f64 * l).collect();
    on_ray(&logs, gp.phi()).expect("canonical chain points are valid")
}

/// Chain on the ray of angle `alpha` with consecutive ratios `lambdas`, starting at `e^{i alpha}`.
pub fn constant_curvature_chain(lambdas: &[f64], alpha: f64) -> Result<Chain<H2>> {
    if !(alpha > 0.0 && alpha < PI) {
        return Err(Error::AngleOutOfRange {
            angle: alpha,
            min: 0.0,
            max: PI,
        });
    }
    let mut logs = Vec::with_capacity(lambdas.len() + 1);
    logs.push(0.0);
    let mut acc = 0.0;
    for &l in lambdas {
        if !(l > 1.0) || !l.is_finite() {
            return Err(Error::InvalidArgument("ratios must exceed 1"));
        }
        acc += log(l);
        logs.push(acc);
    }
    on_ray(&logs, alpha)
}

/// The `phi`-distorted chain with the given step lengths: points on the ray of
/// angle `phi` (a curve of geodesic curvature `cos phi`) at the prescribed distances.
pub fn distorted_chain(steps: &[f64], gp: &GoodPair) -> Result<Chain<H2>> {
    let a = gp.a();
    let s = sin(gp.phi());
    let mut logs = Vec::with_capacity(steps.len() + 1);
    logs.push(0.0);
    let mut acc = 0.0;
    for (index, &step) in steps.iter().enumerate() {
        if !(step >= a - GOOD_TOLERANCE) {
            return Err(Error::StepTooShort {
                index: index + 1,
                step,
                min: a,
            });
        }
        acc += 2.0 * asinh(s * sinh(step / 2.0));
        logs.push(acc);
    }
    on_ray(&logs, gp.phi())
}

/// `log g_alpha(x, y) - log max(x, y)` for `log(y/x) = delta >= 0`, where
/// `g_alpha(x, y) = |y - x| + sqrt((y - x)^2 + 4 x y sin^2 alpha)`.
fn log_g(delta: f64, sin2: f64) -> f64 {
    let one_minus_r = -expm1(-delta);
    let r = exp(-delta);
    log(one_minus_r + sqrt(one_minus_r * one_minus_r + 4.0 * r * sin2))
}

/// Same as [`log_g`] in the limit `alpha -> 0`, without the constant `log 2`.
fn log_g0(delta: f64) -> f64 {
    log(-expm1(-delta))
}

fn combine(lambdas: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    let n = lambdas.len();
    if n < 2 {
        return 0.0;
    }
    let lg: Vec<f64> = lambdas.iter().map(|&l| log(l)).collect();
    let mut top = 0.0;
    for j in 0..n - 1 {
        top += f(lg[j] + lg[j + 1]);
    }
    let mut bottom = f(lg.iter().sum());
    for &l in &lg[1..n - 1] {
        bottom += f(l);
    }
    2.0 * (top - bottom)
}

/// Tension of the chain `t_j e^{i alpha}` with `t_0 = 1`, `t_j = lambda_1 ... lambda_j`:
///
/// `2 log( prod g(t_j, t_{j+2}) / (g(t_0, t_n) prod_{j=1}^{n-2} g(t_j, t_{j+1})) )`.
///
/// Every factor is homogeneous of degree one, so the powers of `t` cancel and the
/// product is evaluated through the logarithmic gaps `log(t_k / t_i)` alone.
pub fn tension_closed_form(lambdas: &[f64], alpha: f64) -> f64 {
    let s = sin(alpha);
    combine(lambdas, |d| log_g(d, s * s))
}

/// Limit of [`tension_closed_form`] as `alpha -> 0`:
///
/// `2 log( prod (lambda_j lambda_{j+1} - 1) / ((lambda_1 ... lambda_n - 1) prod_{j=2}^{n-1} (lambda_j - 1)) )`.
pub fn tension_degenerate(lambdas: &[f64]) -> f64 {
    combine(lambdas, log_g0)
}

/// Closed chain through `n` equally spaced vertices of the circle of radius `r` about `i`.
///
/// The chain has `n + 1` points with `x_n = x_0`.
pub fn regular_polygon_chain(n: usize, r: f64) -> Result<Chain<H2>> {
    if n < 3 {
        return Err(Error::InvalidArgument("polygon needs at least 3 vertices"));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidArgument("radius must be positive"));
    }
    let mut pts: Vec<HPoint> = (0..n)
        .map(|j| point_at(&HPoint::I, 2.0 * PI * j as f64 / n as f64, r))
        .collect();
    pts.push(pts[0]);
    Chain::h2(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyp2::dist;
    use libm::fabs;

    #[test]
    fn canonical_steps_and_gromovs() {
        let gp = GoodPair::new(3.0, 0.5).unwrap();
        let c = canonical_chain(&gp, 6);
        assert!(c.steps().iter().all(|s| fabs(s - 3.0) < 1e-9));
        assert!(c.gromovs().iter().all(|g| fabs(g - 0.5) < 1e-9));
    }

    #[test]
    fn zero_gromov_canonical_chain_is_vertical() {
        let gp = GoodPair::new(1.5, 0.0).unwrap();
        let c = canonical_chain(&gp, 3);
        for (j, p) in c.points().iter().enumerate() {
            assert!(fabs(p.re()) < 1e-7 * p.im());
            assert!(fabs(log(p.im()) - 1.5 * j as f64) < 1e-12);
        }
    }

    #[test]
    fn distorted_steps_round_trip() {
        let gp = GoodPair::new(2.0, 0.4).unwrap();
        let steps = [2.0, 4.0, 2.0];
        let c = distorted_chain(&steps, &gp).unwrap();
        for (j, s) in steps.iter().enumerate() {
            assert!(fabs(c.steps()[j] - s) < 1e-9);
            let p = c.points();
            let lj = log(p[j + 1].im() / p[j].im());
            assert!(fabs(sinh(lj / 2.0) - sin(gp.phi()) * sinh(s / 2.0)) < 1e-12);
        }
        assert!(matches!(
            distorted_chain(&[1.0], &gp),
            Err(Error::StepTooShort { .. })
        ));
    }

    #[test]
    fn sine_squared_radicand_matches_distances() {
        let alpha = PI / 4.0;
        let c = constant_curvature_chain(&[2.0, 2.0, 2.0], alpha).unwrap();
        assert!(fabs(tension_closed_form(&[2.0, 2.0, 2.0], alpha) - c.tension()) < 1e-13);
        // with sin(alpha) in place of sin^2(alpha) the value differs markedly
        let wrong = combine(&[2.0, 2.0, 2.0], |d| log_g(d, sin(alpha)));
        assert!(fabs(wrong - c.tension()) > 1e-2);
    }

    #[test]
    fn degenerate_value() {
        let t = tension_degenerate(&[2.0, 2.0, 2.0]);
        assert!(fabs(t - 2.0 * log(9.0 / 7.0)) < 1e-14);
        assert_eq!(tension_degenerate(&[3.0, 5.0]), 0.0);
        assert!(fabs(tension_closed_form(&[2.0, 2.0, 2.0], 1e-6) - t) < 1e-6);
    }

    #[test]
    fn polygon_example() {
        let c = regular_polygon_chain(7, 2.0).unwrap();
        let expect = 6.0 * c.distance(0, 2) - 5.0 * c.distance(0, 1);
        assert!(fabs(c.tension() - expect) < 1e-9);
        assert!(c.tension() >= c.distance(0, 2));
        let s0 = c.steps()[0];
        assert!(c.steps().iter().all(|s| fabs(s - s0) < 1e-10));
        assert!(dist(&c.points()[0], &c.points()[7]) == 0.0);
    }
}
