//! Worked examples as CSV.

use std::fmt::Write;

use avalanche_core::chains::{
    canonical_chain, regular_polygon_chain, tension_degenerate, GoodPair,
};
use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    /// Tension of regular polygons about `i` against the circumradius.
    Polygon,
    /// The canonical chain with translation number 1.5 and curvature angle 13.404 degrees.
    Canonical,
    /// Degenerate tension formula against the avalanche bound.
    Degenerate,
}

pub const POLYGON_SIDES: std::ops::RangeInclusive<usize> = 4..=12;
pub const POLYGON_RADII: [f64; 5] = [0.5, 1.0, 2.0, 4.0, 8.0];

pub fn table_csv(table: Table) -> String {
    match table {
        Table::Polygon => polygon(),
        Table::Canonical => canonical(),
        Table::Degenerate => degenerate(),
    }
}

fn polygon() -> String {
    let mut s = String::from("n,r,tau,tau_over_n\n");
    for n in POLYGON_SIDES {
        for r in POLYGON_RADII {
            let tau = regular_polygon_chain(n, r)
                .expect("valid polygon")
                .tension();
            writeln!(s, "{n},{r:?},{tau:?},{:?}", tau / n as f64).unwrap();
        }
    }
    s
}

fn canonical() -> String {
    const STEPS: usize = 8;
    let gp =
        GoodPair::from_translation(1.5, 13.404f64.to_radians()).expect("valid translation data");
    let c = canonical_chain(&gp, STEPS);
    let mut s = String::from("j,re,im,step,gromov\n");
    for (j, p) in c.points().iter().enumerate() {
        let step = if j == 0 {
            String::new()
        } else {
            format!("{:?}", c.steps()[j - 1])
        };
        let gromov = if j == 0 || j == STEPS {
            String::new()
        } else {
            format!("{:?}", c.gromovs()[j - 1])
        };
        writeln!(s, "{j},{:?},{:?},{step},{gromov}", p.re(), p.im()).unwrap();
    }
    s
}

fn degenerate() -> String {
    let mut s = String::from("pattern,n,lambda_min,lambda_max,degenerate,bound\n");
    for n in [3usize, 5, 10, 20] {
        for l in [1.1, 1.5, 2.0, 3.0, 5.0, 10.0] {
            row(&mut s, "constant", &vec![l; n]);
        }
        let ramp: Vec<f64> = (0..n).map(|j| 1.2 + 0.5 * j as f64).collect();
        row(&mut s, "ramp", &ramp);
        let alternating: Vec<f64> = (0..n).map(|j| if j % 2 == 0 { 1.3 } else { 6.0 }).collect();
        row(&mut s, "alternating", &alternating);
    }
    s
}

fn row(s: &mut String, pattern: &str, lambdas: &[f64]) {
    let n = lambdas.len();
    let bound: f64 = lambdas[1..n - 1].iter().map(|l| 2.0 / (l - 1.0)).sum();
    let (lo, hi) = lambdas
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &l| {
            (lo.min(l), hi.max(l))
        });
    writeln!(
        s,
        "{pattern},{n},{lo:?},{hi:?},{:?},{bound:?}",
        tension_degenerate(lambdas)
    )
    .unwrap();
}
