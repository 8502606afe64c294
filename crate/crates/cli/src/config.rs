use std::path::PathBuf;

use avalanche_core::chains::GoodPair;
use avalanche_core::hyp2::MAX_CHAIN_LENGTH;
use clap::ValueEnum;

use crate::CliError;

/// Property suite run by `verify`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Avalanche bound on sampled good chains.
    Ap,
    /// Tension against the comparison chain, plus the endpoint inequality for 3-step chains.
    Cat,
    /// Matrix form of the avalanche bound and its link to orbit tension.
    Matrix,
    /// Monotonicity in the curvature angle, under opening an angle, and of reflection sums.
    Lemmas,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Ap => "ap",
            Suite::Cat => "cat",
            Suite::Matrix => "matrix",
            Suite::Lemmas => "lemmas",
        }
    }

    /// Smallest number of steps the suite accepts.
    pub fn min_n(self) -> usize {
        match self {
            Suite::Ap | Suite::Cat | Suite::Matrix => 2,
            Suite::Lemmas => 3,
        }
    }
}

/// Metric space in which chains are sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Backend {
    #[default]
    H2,
    H3,
    Tree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Jsonl,
    Csv,
}

/// A verification sweep: every `(pair, n)` cell gets `samples` independent chains.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub suite: Suite,
    pub pairs: Vec<(f64, f64)>,
    pub ns: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub backend: Backend,
    pub out: Option<PathBuf>,
    pub format: Format,
}

/// `a` in `{0.5, 1, 2, 3, 4}` with `b` at `{0, 0.3, 0.6, 0.9}` of the largest admissible value.
pub fn default_pairs() -> Vec<(f64, f64)> {
    grid(&[0.5, 1.0, 2.0, 3.0, 4.0], GoodPair::max_b)
}

/// Pairs with `a - 2b > log 8`, where the matrix form of the bound holds with `c = 2`.
pub fn matrix_pairs() -> Vec<(f64, f64)> {
    grid(&[3.0, 4.0, 5.0, 6.0, 7.0], |a| {
        GoodPair::max_b(a).min((a - 8f64.ln()) / 2.0)
    })
}

fn grid(avals: &[f64], cap: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &a in avals {
        for f in [0.0, 0.3, 0.6, 0.9] {
            out.push((a, f * cap(a)));
        }
    }
    out
}

impl SweepConfig {
    /// The default grid, step counts and sample size for a suite.
    pub fn defaults(suite: Suite) -> Self {
        let (pairs, ns, samples) = match suite {
            Suite::Ap => (default_pairs(), vec![3, 5, 10, 25, 50], 200),
            Suite::Cat => (default_pairs(), vec![2, 3, 5, 10], 50),
            Suite::Matrix => (matrix_pairs(), vec![3, 5, 10, 25], 50),
            Suite::Lemmas => (default_pairs(), vec![3, 6], 5),
        };
        SweepConfig {
            suite,
            pairs,
            ns,
            samples,
            seed: 0,
            backend: Backend::H2,
            out: None,
            format: Format::Jsonl,
        }
    }

    /// Checks the grid and returns the validated pairs in order.
    pub fn validate(&self) -> Result<Vec<GoodPair>, CliError> {
        if self.pairs.is_empty() {
            return Err(CliError::config("pair grid is empty"));
        }
        if self.ns.is_empty() {
            return Err(CliError::config("step-count list is empty"));
        }
        if self.samples == 0 {
            return Err(CliError::config("samples must be at least 1"));
        }
        if let Some(&n) = self.ns.iter().find(|&&n| n < self.suite.min_n()) {
            return Err(CliError::config(format!(
                "suite {} needs n >= {}, got {n}",
                self.suite.name(),
                self.suite.min_n()
            )));
        }
        if self.suite == Suite::Matrix && self.backend != Backend::H2 {
            return Err(CliError::config(
                "the matrix suite only runs on the h2 backend",
            ));
        }
        let pairs = self
            .pairs
            .iter()
            .map(|&(a, b)| checked_pair(self.suite, a, b))
            .collect::<Result<Vec<_>, _>>()?;
        if self.backend != Backend::Tree || self.suite == Suite::Matrix {
            let n = self.ns.iter().copied().max().unwrap_or(0);
            for gp in &pairs {
                check_length(gp.a(), n)?;
            }
        }
        Ok(pairs)
    }
}

/// Sampled steps lie in `[a, 3a]`; longer chains than [`MAX_CHAIN_LENGTH`] do not
/// fit in floating-point coordinates.
pub(crate) fn check_length(a: f64, n: usize) -> Result<(), CliError> {
    if 3.0 * a * n as f64 > MAX_CHAIN_LENGTH {
        return Err(CliError::config(format!(
            "{n} steps of length up to 3a = {} may exceed the representable chain length {MAX_CHAIN_LENGTH}",
            3.0 * a
        )));
    }
    Ok(())
}

pub(crate) fn checked_pair(suite: Suite, a: f64, b: f64) -> Result<GoodPair, CliError> {
    let gp = GoodPair::new(a, b).map_err(|reason| CliError::NotGood { a, b, reason })?;
    if suite == Suite::Matrix && !(a - 2.0 * b > 8f64.ln()) {
        return Err(CliError::config(format!(
            "matrix suite needs a - 2b > log 8, got ({a}, {b})"
        )));
    }
    Ok(gp)
}
