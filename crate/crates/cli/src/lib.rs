//! Batch driver for `avalanche-core`: verification sweeps, chain generation and
//! example tables. The `avk` binary is a thin wrapper over [`cmd_verify`],
//! [`cmd_generate`] and [`tables::table_csv`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
mod error;
pub mod formats;
pub mod sweep;
pub mod tables;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use avalanche_core::cocycle::sample_good_mat_chain;

pub use config::{Backend, Format, Suite, SweepConfig};
pub use error::CliError;
use formats::{InputFile, MatrixFile};
pub use sweep::{run_sweep, Report, Row};

/// Runs a sweep, or checks the file at `from_file`, and writes the rows to
/// `cfg.out` (standard output when unset).
///
/// With a file, the first pair of `cfg.pairs` (if any) overrides the file's pair,
/// so callers should leave `cfg.pairs` empty to use the file's own pair.
pub fn cmd_verify(cfg: &SweepConfig, from_file: Option<&Path>) -> Result<Report, CliError> {
    let report = match from_file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            sweep::verify_input(
                InputFile::parse(&text)?,
                cfg.suite,
                cfg.pairs.first().copied(),
                cfg.seed,
            )?
        }
        None => run_sweep(cfg)?,
    };
    match &cfg.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::io(path, e))?;
            let mut w = BufWriter::new(file);
            report
                .write(cfg.format, &mut w)
                .and_then(|()| w.flush())
                .map_err(|e| CliError::io(path, e))?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            report
                .write(cfg.format, &mut out)
                .map_err(|e| CliError::io("<stdout>", e))?;
        }
    }
    Ok(report)
}

/// One sampled good chain (or, with `matrix`, a matrix chain with a good orbit)
/// as a single line of JSON.
pub fn cmd_generate(
    pair: (f64, f64),
    n: usize,
    seed: u64,
    backend: Backend,
    matrix: bool,
) -> Result<String, CliError> {
    let (a, b) = pair;
    let suite = if matrix { Suite::Matrix } else { Suite::Ap };
    let gp = config::checked_pair(suite, a, b)?;
    if n < 2 {
        return Err(CliError::config(format!(
            "chains need n >= 2 steps, got {n}"
        )));
    }
    if backend != Backend::Tree || matrix {
        config::check_length(a, n)?;
    }
    let mut text = if matrix {
        if backend != Backend::H2 {
            return Err(CliError::config("matrix chains act on the h2 backend"));
        }
        serde_json::to_string(&MatrixFile::from_chain(
            &sample_good_mat_chain(&gp, n, seed, false),
            Some(&gp),
        ))?
    } else {
        serde_json::to_string(
            &sweep::sample_chain(backend, &gp, n, seed, false).to_file(Some(&gp)),
        )?
    };
    text.push('\n');
    Ok(text)
}
