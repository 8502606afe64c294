//! CAT(-1) backends and comparison chains.
//!
//! Metric trees and the upper half-space model of H³ both satisfy the CAT(-1)
//! comparison inequality. A chain in either space has a convex comparison chain
//! in the hyperbolic plane with the same steps and Gromov products, and its tension
//! is bounded in absolute value by the tension of that comparison chain.

mod comparison;
mod h3;
mod tree;

pub use comparison::{
    comparison_chain, reflection_pair, third_point, verify_cat_comparison, CatReport,
    ComparisonChain,
};
pub use h3::{h3_dist, sample_good_chain_h3, sample_planar_chain_h3, H3Point, H3};
pub use tree::{sample_good_chain_tree, tree_dist, MetricTree};
