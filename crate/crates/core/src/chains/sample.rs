use alloc::vec::Vec;

use rand::Rng;

use super::{Chain, GoodPair};
#[cfg(doc)]
use crate::hyp2::MAX_CHAIN_LENGTH;
use crate::hyp2::{angle_from_sides, layout, Turn, H2};
use crate::oracle::SeedStream;

/// Probability of drawing a bound exactly instead of a uniform value.
const EDGE_PROBABILITY: f64 = 0.25;

/// Random step lengths in `[a, 3a]` and Gromov products in `[0, b]` for a chain
/// with `n` steps. A quarter of the draws sit exactly on the bound `a` or `b`,
/// where the good-chain conditions are tight.
pub fn sample_steps_and_gromovs<R: Rng + ?Sized>(
    gp: &GoodPair,
    n: usize,
    rng: &mut R,
) -> (Vec<f64>, Vec<f64>) {
    let (a, b) = (gp.a(), gp.b());
    let steps = (0..n)
        .map(|_| {
            if rng.gen_bool(EDGE_PROBABILITY) {
                a
            } else {
                rng.gen_range(a..=3.0 * a)
            }
        })
        .collect();
    let gromovs = (0..n.saturating_sub(1))
        .map(|_| {
            if b == 0.0 || rng.gen_bool(EDGE_PROBABILITY) {
                b
            } else {
                rng.gen_range(0.0..=b)
            }
        })
        .collect();
    (steps, gromovs)
}

/// Vertex angles realising the Gromov products: the triangle with sides
/// `s_j`, `s_{j+1}` and `s_j + s_{j+1} - 2 g_j`.
pub(crate) fn angles_for(steps: &[f64], gromovs: &[f64]) -> Vec<f64> {
    gromovs
        .iter()
        .enumerate()
        .map(|(j, &g)| {
            let (s, t) = (steps[j], steps[j + 1]);
            angle_from_sides(s, t, s + t - 2.0 * g).expect("g <= b < a keeps the triangle valid")
        })
        .collect()
}

/// A random `(a, b)`-good chain with `n >= 2` steps in the hyperbolic plane.
///
/// With `convex` every turn goes to one randomly chosen side, otherwise each side
/// is drawn independently. The output is a function of `seed` alone.
///
/// # Panics
///
/// If the sampled steps add up to more than [`MAX_CHAIN_LENGTH`]. Steps are at
/// most `3a`, so this cannot happen when `3 a n <= MAX_CHAIN_LENGTH`.
pub fn sample_good_chain(gp: &GoodPair, n: usize, seed: u64, convex: bool) -> Chain<H2> {
    let mut rng = SeedStream::new(seed).derive("h2-good-chain").rng();
    let (steps, gromovs) = sample_steps_and_gromovs(gp, n.max(1), &mut rng);
    let angles = angles_for(&steps, &gromovs);
    let first = if rng.gen_bool(0.5) {
        Turn::Left
    } else {
        Turn::Right
    };
    let turns: Vec<Turn> = (0..angles.len())
        .map(|_| {
            if convex || rng.gen_bool(0.5) {
                first
            } else {
                first.flipped()
            }
        })
        .collect();
    Chain::h2(
        layout(&steps, &angles, &turns).expect("sampled chain fits in the representable range"),
    )
    .expect("sampled chain has distinct consecutive points")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::is_convex;

    #[test]
    fn samples_are_good_and_reproducible() {
        let gp = GoodPair::new(2.0, 0.3).unwrap();
        for seed in 0..50 {
            let c = sample_good_chain(&gp, 8, seed, seed % 2 == 0);
            assert!(c.is_good_chain(&gp), "seed {seed}");
            if seed % 2 == 0 {
                assert!(is_convex(c.points()), "seed {seed}");
            }
            let again = sample_good_chain(&gp, 8, seed, seed % 2 == 0);
            assert_eq!(c.points(), again.points());
        }
    }
}
