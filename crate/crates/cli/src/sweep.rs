//! Verification sweeps. Every sample yields one row per checked inequality; a
//! row is a violation when its margin is negative (or could not be computed).

use std::f64::consts::{FRAC_PI_2, PI};
use std::io::{self, Write};

use avalanche_core::catspaces::{
    reflection_pair, sample_good_chain_h3, sample_good_chain_tree, third_point,
};
use avalanche_core::chains::{
    ap_bound, constant_curvature_chain, interior_angles, is_convex, open_angle, sample_good_chain,
    Chain, GoodPair,
};
use avalanche_core::cocycle::{sample_good_mat_chain, MatChain};
use avalanche_core::hyp2::{angle_from_sides, HPoint, H2};
use avalanche_core::oracle::SeedStream;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{checked_pair, Backend, Format, Suite, SweepConfig};
use crate::formats::{AnyChain, InputFile};
use crate::CliError;

/// Absolute slack per step added to every bound.
pub const SLACK: f64 = 1e-9;
/// The constant `c` of the matrix estimate `|residual| <= 8c(n - 2)e^{2b - a}`.
pub const MATRIX_C: f64 = 2.0;
/// Points on each monotonicity grid.
pub const GRID: usize = 100;

/// One checked inequality on one sample.
///
/// `tau` is the tension of the sample (for monotonicity checks, at the end of the
/// grid), `bound` the value it is compared against and `margin` the slack left,
/// negative on a violation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub check: &'static str,
    pub seed: u64,
    pub a: f64,
    pub b: f64,
    pub n: usize,
    pub lambda: f64,
    pub phi: f64,
    pub tau: f64,
    pub bound: f64,
    pub margin: f64,
    pub ok: bool,
}

impl Row {
    fn new(
        check: &'static str,
        seed: u64,
        gp: &GoodPair,
        n: usize,
        tau: f64,
        bound: f64,
        margin: f64,
    ) -> Self {
        Row {
            check,
            seed,
            a: gp.a(),
            b: gp.b(),
            n,
            lambda: gp.lambda(),
            phi: gp.phi(),
            tau,
            bound,
            margin,
            ok: margin >= 0.0,
        }
    }

    /// A check whose inputs could not be evaluated.
    fn failed(check: &'static str, seed: u64, gp: &GoodPair, n: usize) -> Self {
        Row::new(check, seed, gp, n, f64::NAN, f64::NAN, f64::NAN)
    }
}

/// All rows of a sweep, ordered by cell and then by sample.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub rows: Vec<Row>,
    /// Samples with no admissible parameter window (reflection sums only).
    pub skipped: usize,
}

impl Report {
    pub fn violations(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| !r.ok)
    }

    pub fn is_clean(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn write<W: Write>(&self, format: Format, w: &mut W) -> io::Result<()> {
        match format {
            Format::Jsonl => {
                for r in &self.rows {
                    serde_json::to_writer(&mut *w, r)?;
                    w.write_all(b"\n")?;
                }
            }
            Format::Csv => {
                writeln!(w, "check,seed,a,b,n,lambda,phi,tau,bound,margin,ok")?;
                for r in &self.rows {
                    writeln!(
                        w,
                        "{},{},{:?},{:?},{},{:?},{:?},{:?},{:?},{:?},{}",
                        r.check,
                        r.seed,
                        r.a,
                        r.b,
                        r.n,
                        r.lambda,
                        r.phi,
                        r.tau,
                        r.bound,
                        r.margin,
                        r.ok
                    )?;
                }
            }
        }
        Ok(())
    }

    pub fn to_bytes(&self, format: Format) -> Vec<u8> {
        let mut out = Vec::new();
        self.write(format, &mut out)
            .expect("writing to memory cannot fail");
        out
    }
}

/// Seed of sample `sample` in cell `cell`, derived from the root seed and the suite.
pub fn sample_seed(root: u64, suite: Suite, cell: usize, sample: usize) -> u64 {
    SeedStream::new(root)
        .derive(suite.name())
        .index(cell as u64)
        .index(sample as u64)
        .seed()
}

/// Runs the configured sweep. Cells are the pairs crossed with the step counts.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Report, CliError> {
    let pairs = cfg.validate()?;
    let cells: Vec<(GoodPair, usize)> = pairs
        .iter()
        .flat_map(|gp| cfg.ns.iter().map(move |&n| (*gp, n)))
        .collect();
    let tasks: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..cfg.samples).map(move |s| (c, s)))
        .collect();
    let outcomes: Vec<(Vec<Row>, usize)> = tasks
        .par_iter()
        .map(|&(c, s)| {
            let (gp, n) = &cells[c];
            let seed = sample_seed(cfg.seed, cfg.suite, c, s);
            sample_rows(cfg.suite, cfg.backend, gp, *n, seed, s % 2 == 0)
        })
        .collect();
    let mut report = Report::default();
    for (rows, skipped) in outcomes {
        report.rows.extend(rows);
        report.skipped += skipped;
    }
    Ok(report)
}

/// Rows for one sample, and the number of skipped checks.
pub fn sample_rows(
    suite: Suite,
    backend: Backend,
    gp: &GoodPair,
    n: usize,
    seed: u64,
    convex: bool,
) -> (Vec<Row>, usize) {
    match suite {
        Suite::Ap => (
            vec![ap_row(
                &sample_chain(backend, gp, n, seed, convex),
                gp,
                seed,
            )],
            0,
        ),
        Suite::Cat => (
            cat_rows(&sample_chain(backend, gp, n, seed, convex), gp, seed),
            0,
        ),
        Suite::Matrix => (
            matrix_rows(&sample_good_mat_chain(gp, n, seed, convex), gp, seed),
            0,
        ),
        Suite::Lemmas => {
            let mut rows = vec![phi_monotone_row(gp, n, seed), open_angle_row(gp, n, seed)];
            let reflection = reflection_sum_row(gp, seed);
            let skipped = usize::from(reflection.is_none());
            rows.extend(reflection);
            (rows, skipped)
        }
    }
}

/// A sampled good chain; `convex` only affects the H² backend.
pub fn sample_chain(
    backend: Backend,
    gp: &GoodPair,
    n: usize,
    seed: u64,
    convex: bool,
) -> AnyChain {
    match backend {
        Backend::H2 => AnyChain::H2(sample_good_chain(gp, n, seed, convex)),
        Backend::H3 => AnyChain::H3(sample_good_chain_h3(gp, n, seed)),
        Backend::Tree => AnyChain::Tree(sample_good_chain_tree(gp, n, seed)),
    }
}

/// `|tau| <= (n - 2) 2 / (lambda - 1)`.
pub fn ap_row(c: &AnyChain, gp: &GoodPair, seed: u64) -> Row {
    let n = c.n();
    let tau = c.tension();
    let bound = ap_bound(n, gp) + SLACK * n as f64;
    Row::new("ap", seed, gp, n, tau, bound, bound - tau.abs())
}

/// `|tau| <= tau(comparison chain)`, and for `n = 3` the endpoint inequality
/// `d(x_0, x_3) >= d(y_0, y_3)` against the comparison chain `y`.
pub fn cat_rows(c: &AnyChain, gp: &GoodPair, seed: u64) -> Vec<Row> {
    let n = c.n();
    let Ok(r) = c.cat_report() else {
        return vec![Row::failed("cat", seed, gp, n)];
    };
    let bound = r.tau_image + SLACK * n as f64;
    let mut rows = vec![Row::new(
        "cat",
        seed,
        gp,
        n,
        r.tau_source,
        bound,
        bound - r.tau_source.abs(),
    )];
    if n == 3 {
        let floor = r.endpoint_image - SLACK;
        rows.push(Row::new(
            "endpoint",
            seed,
            gp,
            n,
            r.endpoint_source,
            floor,
            r.endpoint_source - floor,
        ));
    }
    rows
}

/// `|residual| <= 8c(n - 2)e^{2b - a}` and `residual = -tau/2` for the orbit tension `tau`.
pub fn matrix_rows(mc: &MatChain, gp: &GoodPair, seed: u64) -> Vec<Row> {
    let n = mc.n();
    let residual = mc.ap_residual();
    let tau = mc.orbit_chain().map(|c| c.tension()).unwrap_or(f64::NAN);
    let bound = 8.0 * MATRIX_C * n.saturating_sub(2) as f64 * (2.0 * gp.b() - gp.a()).exp();
    vec![
        Row::new("matrix-ap", seed, gp, n, tau, bound, bound - residual.abs()),
        Row::new(
            "matrix-tension",
            seed,
            gp,
            n,
            tau,
            SLACK,
            SLACK - (residual + tau / 2.0).abs(),
        ),
    ]
}

/// Minimum over consecutive grid values of `f(prev, next)`; `values` must be non-empty.
fn worst_step(values: &[f64], f: impl Fn(f64, f64) -> f64) -> f64 {
    values
        .windows(2)
        .map(|w| f(w[0], w[1]))
        .fold(f64::INFINITY, f64::min)
}

/// The tension of the constant-curvature chain with the ratios of a sampled
/// chain, as the angle runs over `(0, pi/2]`, must not increase.
pub fn phi_monotone_row(gp: &GoodPair, n: usize, seed: u64) -> Row {
    let eval = || -> avalanche_core::Result<Row> {
        let base = sample_good_chain(gp, n, seed, true);
        let s = gp.phi().sin();
        let lambdas: Vec<f64> = base
            .steps()
            .iter()
            .map(|&d| (2.0 * (s * (d / 2.0).sinh()).asinh()).exp())
            .collect();
        let taus = (1..=GRID)
            .map(|k| {
                Ok(
                    constant_curvature_chain(&lambdas, FRAC_PI_2 * k as f64 / GRID as f64)?
                        .tension(),
                )
            })
            .collect::<avalanche_core::Result<Vec<f64>>>()?;
        let margin = worst_step(&taus, |p, q| p - q + SLACK);
        Ok(Row::new(
            "phi-monotone",
            seed,
            gp,
            n,
            taus[GRID - 1],
            taus[0],
            margin,
        ))
    };
    eval().unwrap_or_else(|_| Row::failed("phi-monotone", seed, gp, n))
}

/// Opening the angle at one vertex of a convex chain up to `pi` must not increase
/// the tension nor decrease `d(x_p, x_s) - d(x_q, x_r)` for `p <= q <= r <= s`.
pub fn open_angle_row(gp: &GoodPair, n: usize, seed: u64) -> Row {
    let eval = || -> avalanche_core::Result<Row> {
        let base = sample_good_chain(gp, n, seed, true);
        let picks = SeedStream::new(seed).derive("open-angle");
        let k = 1 + (picks.index(0).seed() % (n as u64 - 1)) as usize;
        let mut quad: Vec<usize> = (1..=4)
            .map(|i| (picks.index(i).seed() % (n as u64 + 1)) as usize)
            .collect();
        quad.sort_unstable();
        let alpha = interior_angles(&base)?[k - 1];
        let mut taus = Vec::with_capacity(GRID);
        let mut ts = Vec::with_capacity(GRID);
        for step in 0..GRID {
            let g = alpha + (PI - alpha) * step as f64 / (GRID - 1) as f64;
            let x = open_angle(&base, k, g)?;
            taus.push(x.tension());
            ts.push(x.distance(quad[0], quad[3]) - x.distance(quad[1], quad[2]));
        }
        let margin =
            worst_step(&taus, |p, q| p - q + SLACK).min(worst_step(&ts, |p, q| q - p + SLACK));
        Ok(Row::new(
            "open-angle",
            seed,
            gp,
            n,
            taus[GRID - 1],
            taus[0],
            margin,
        ))
    };
    eval().unwrap_or_else(|_| Row::failed("open-angle", seed, gp, n))
}

fn good_and_convex(c: &Chain<H2>) -> bool {
    let (a, b) = c.extremes();
    GoodPair::new(a, b).is_ok() && is_convex(c.points())
}

/// Largest scanned `u` in `(0, beta)` such that `x0, x1, x2, x3(g)` is good and
/// convex for every scanned `g <= u`. The scan is logarithmic because the window
/// shrinks exponentially with the side lengths.
fn reflection_window(x: &[HPoint; 3], beta: f64, e: f64) -> f64 {
    const SCAN: i32 = 4000;
    let mut last = 0.0;
    for k in 0..=SCAN {
        let g = beta * 10f64.powf(-14.0 * (1.0 - f64::from(k) / f64::from(SCAN)));
        let ok = Chain::h2(vec![
            x[0],
            x[1],
            x[2],
            third_point(&x[1], &x[2], &x[0], g, e),
        ])
        .map(|c| good_and_convex(&c))
        .unwrap_or(false);
        if !ok {
            return last;
        }
        last = g;
    }
    beta
}

/// For a convex good 3-step chain whose last point turns by `gamma` at `x_1`,
/// the tension plus the tension with `x_3` reflected across `x_1 x_2` must not
/// decrease in `gamma`. `None` when no admissible window exists.
pub fn reflection_sum_row(gp: &GoodPair, seed: u64) -> Option<Row> {
    let base = sample_good_chain(gp, 2, seed, true);
    let p = base.points();
    let x = [p[0], p[1], p[2]];
    let e = base.steps()[1] + gp.a();
    let Ok(beta) = angle_from_sides(base.steps()[0], base.steps()[1], base.skips()[0]) else {
        return Some(Row::failed("reflection-sum", seed, gp, 3));
    };
    let u = reflection_window(&x, beta, e);
    if u <= 0.0 {
        return None;
    }
    let sums = (1..=GRID)
        .map(|k| {
            let g = u * k as f64 / (GRID + 1) as f64;
            let c = Chain::h2(vec![
                x[0],
                x[1],
                x[2],
                third_point(&x[1], &x[2], &x[0], g, e),
            ])?;
            reflection_pair(&c).map(|(t, s)| t + s)
        })
        .collect::<avalanche_core::Result<Vec<f64>>>();
    Some(match sums {
        Ok(s) => Row::new(
            "reflection-sum",
            seed,
            gp,
            3,
            s[GRID - 1],
            s[0],
            worst_step(&s, |p, q| q - p + SLACK),
        ),
        Err(_) => Row::failed("reflection-sum", seed, gp, 3),
    })
}

/// Checks a chain or matrix chain read from a file.
///
/// Chains run the `ap` or `cat` checks, matrix chains the matrix checks. The pair
/// comes from `pair` if given, otherwise from the file, and the input must be good
/// for it.
pub fn verify_input(
    input: InputFile,
    suite: Suite,
    pair: Option<(f64, f64)>,
    seed: u64,
) -> Result<Report, CliError> {
    let file_pair = match &input {
        InputFile::Chain(c) => c.pair(),
        InputFile::Matrix(m) => m.pair,
    };
    let (a, b) = pair
        .or(file_pair.map(|p| (p.a, p.b)))
        .ok_or_else(|| CliError::config("no pair given on the command line or in the file"))?;
    let rows = match input {
        InputFile::Chain(file) => {
            let gp = checked_pair(suite, a, b)?;
            let chain = file.into_chain()?;
            if !chain.is_good_chain(&gp) {
                return Err(CliError::config(format!("chain is not ({a}, {b})-good")));
            }
            match suite {
                Suite::Ap => vec![ap_row(&chain, &gp, seed)],
                Suite::Cat => cat_rows(&chain, &gp, seed),
                Suite::Matrix | Suite::Lemmas => {
                    return Err(CliError::config(format!(
                        "suite {} does not apply to a chain file",
                        suite.name()
                    )))
                }
            }
        }
        InputFile::Matrix(file) => {
            let gp = checked_pair(Suite::Matrix, a, b)?;
            let mc = file.into_chain()?;
            if !mc.orbit_chain()?.is_good_chain(&gp) {
                return Err(CliError::config(format!("orbit is not ({a}, {b})-good")));
            }
            matrix_rows(&mc, &gp, seed)
        }
    };
    Ok(Report { rows, skipped: 0 })
}
