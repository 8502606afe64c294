use alloc::vec::Vec;

use crate::chains::{Chain, MetricSpace};
use crate::hyp2::{
    angle_from_sides, direction, layout, orientation, point_at, reflect_across, HPoint, Turn, H2,
};
use crate::{Error, Result};

/// A chain together with its convex comparison chain in the hyperbolic plane.
#[derive(Debug, Clone)]
pub struct ComparisonChain<M: MetricSpace> {
    pub source: Chain<M>,
    pub image: Chain<H2>,
}

/// The convex chain in the hyperbolic plane whose consecutive triangles are
/// congruent to those of `c`, with every turn to the left.
pub fn comparison_chain<M: MetricSpace + Clone>(c: &Chain<M>) -> Result<ComparisonChain<M>> {
    let steps = c.steps();
    let angles = c
        .skips()
        .iter()
        .enumerate()
        .map(|(j, &k)| {
            angle_from_sides(steps[j], steps[j + 1], k).map_err(|_| Error::DegenerateTriple(j + 1))
        })
        .collect::<Result<Vec<f64>>>()?;
    let turns = alloc::vec![Turn::Left; angles.len()];
    let image = Chain::h2(layout(steps, &angles, &turns)?)?;
    Ok(ComparisonChain {
        source: c.clone(),
        image,
    })
}

/// Tensions and endpoint distances of a chain and its comparison chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatReport {
    pub tau_source: f64,
    pub tau_image: f64,
    pub endpoint_source: f64,
    pub endpoint_image: f64,
    /// `|tau_source| <= tau_image + 1e-9 n`.
    pub ok: bool,
}

/// Compares the tension of a chain with that of its comparison chain.
pub fn verify_cat_comparison<M: MetricSpace + Clone>(c: &Chain<M>) -> Result<CatReport> {
    let cc = comparison_chain(c)?;
    let tau_source = c.tension();
    let tau_image = cc.image.tension();
    Ok(CatReport {
        tau_source,
        tau_image,
        endpoint_source: c.endpoint_distance(),
        endpoint_image: cc.image.endpoint_distance(),
        ok: tau_source.abs() <= tau_image + 1e-9 * c.n() as f64,
    })
}

/// The point at distance `e` from `x1` with `angle_{x1}(x2, x3) = gamma`, on the
/// side of the geodesic `x1 x2` that contains `side`.
pub fn third_point(x1: &HPoint, x2: &HPoint, side: &HPoint, gamma: f64, e: f64) -> HPoint {
    let base = direction(x1, x2);
    let left = point_at(x1, base + gamma, e);
    let wanted = orientation(x2, x1, side);
    if wanted == 0.0 || (orientation(x2, x1, &left) > 0.0) == (wanted > 0.0) {
        left
    } else {
        point_at(x1, base - gamma, e)
    }
}

/// For a four-point chain `x0, x1, x2, x3`, the tensions of it and of
/// `x0, x1, x2, y3` where `y3` is `x3` reflected in the geodesic `x1 x2`.
pub fn reflection_pair(c: &Chain<H2>) -> Result<(f64, f64)> {
    if c.n() != 3 {
        return Err(Error::InvalidArgument(
            "reflection pair needs a four-point chain",
        ));
    }
    let p = c.points();
    let y3 = reflect_across(&p[3], &p[1], &p[2])?;
    let mirrored = Chain::h2(alloc::vec![p[0], p[1], p[2], y3])?;
    Ok((c.tension(), mirrored.tension()))
}
