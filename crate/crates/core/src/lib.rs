//! Chain calculus on the hyperbolic plane and on CAT(-1) spaces.
//!
//! A *chain* is an ordered list of points `x_0, ..., x_n` in a metric space.
//! Its *tension*
//!
//! ```text
//! tau = sum_{j=1}^{n-1} d(x_{j-1}, x_{j+1}) - sum_{j=2}^{n-1} d(x_{j-1}, x_j) - d(x_0, x_n)
//! ```
//!
//! measures how far the chain is from lying on a geodesic. For chains whose
//! steps are long and whose Gromov products are small (an `(a, b)`-good chain)
//! the tension obeys the avalanche bound `|tau| <= (n - 2) * 2 / (lambda - 1)`,
//! which under the SL(2, R) action on the upper half-plane is the familiar
//! estimate for norms of matrix products.
//!
//! Modules:
//!
//! - [`hyp2`]: points, distances, trigonometry and isometries of the upper half-plane.
//! - [`chains`]: chains over any [`chains::MetricSpace`], good pairs, convexity,
//!   canonical and distorted chains, closed-form tension, the avalanche bound.
//! - [`cocycle`]: SL(2, R) matrix chains, operator norms and the matrix form of the bound.
//! - [`catspaces`]: metric trees, upper half-space H³ and comparison chains.
//! - [`oracle`]: seeded streams and reference implementations used by the test suites.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod catspaces;
pub mod chains;
pub mod cocycle;
mod error;
pub mod hyp2;
pub mod oracle;

pub use error::{Error, NotGood};

/// Shorthand for results returned by this crate.
pub type Result<T> = core::result::Result<T, Error>;
