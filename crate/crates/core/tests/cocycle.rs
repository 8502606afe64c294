use std::f64::consts::{LN_2, PI};

use avalanche_core::chains::{ap_bound, sample_good_chain, GoodPair};
use avalanche_core::cocycle::{
    ap_residual, dictionary, empirical_stable_length, op_norm, random_mat2, stable_length,
    stable_length_lb, MatChain,
};
use avalanche_core::hyp2::{dist, mobius_apply, HPoint, Mat2};
use avalanche_core::oracle::{oracle_tension, SeedStream};
use avalanche_core::Error;
use proptest::prelude::*;
use rand::Rng;

fn mat() -> impl Strategy<Value = Mat2> {
    (-PI..PI, -PI..PI, 0.0..10.0f64).prop_map(|(t1, t2, s)| {
        Mat2::rotation(t1) * Mat2::diag((s / 2.0).exp()).unwrap() * Mat2::rotation(t2)
    })
}

/// Largest singular value from the eigenvalues of `M^T M`, used as an oracle.
fn norm_by_eigen(m: &Mat2) -> f64 {
    let [a, b, c, d] = m.entries();
    let (p, q, r) = (a * a + c * c, a * b + c * d, b * b + d * d);
    let tr = p + r;
    let disc = ((p - r) * (p - r) + 4.0 * q * q).sqrt();
    ((tr + disc) / 2.0).sqrt()
}

fn good_matrix_chain(gp: &GoodPair, n: usize, seed: u64) -> (MatChain, f64) {
    let c = sample_good_chain(gp, n, seed, seed.is_multiple_of(2));
    let mut rng = SeedStream::new(seed).derive("twists").rng();
    let twists: Vec<f64> = (0..=n).map(|_| rng.gen_range(-PI..PI)).collect();
    (
        MatChain::from_orbit(c.points(), &twists).unwrap(),
        c.tension(),
    )
}

#[test]
fn norm_examples() {
    assert!((op_norm(&Mat2::IDENTITY) - 1.0).abs() < 1e-15);
    assert!((op_norm(&Mat2::diag(3.7).unwrap()) - 3.7).abs() < 1e-14);
    assert!((op_norm(&Mat2::diag(1.0 / 3.7).unwrap()) - 3.7).abs() < 1e-14);
}

#[test]
fn norm_distance_bridge_on_many_samples() {
    let mut rng = SeedStream::new(3).derive("bridge").rng();
    for _ in 0..10_000 {
        let m = random_mat2(&mut rng, 0.0..=12.0);
        let geo = dist(&mobius_apply(&m, &HPoint::I), &HPoint::I);
        assert!((2.0 * op_norm(&m).ln() - geo).abs() < 1e-10);
        assert!((op_norm(&m) - norm_by_eigen(&m)).abs() < 1e-10 * op_norm(&m));
        assert!(op_norm(&m) >= 1.0 - 1e-15);
    }
}

#[test]
fn residual_examples() {
    let d = Mat2::diag(2.5).unwrap();
    let mc = MatChain::new(vec![d; 6]).unwrap();
    assert!(ap_residual(&mc).abs() < 1e-12);
    let mut rng = SeedStream::new(8).derive("pairs").rng();
    for _ in 0..100 {
        let mc = MatChain::new(vec![
            random_mat2(&mut rng, 0.0..=5.0),
            random_mat2(&mut rng, 0.0..=5.0),
        ])
        .unwrap();
        assert!(ap_residual(&mc).abs() < 1e-12);
    }
    assert_eq!(MatChain::new(vec![d]).unwrap_err(), Error::ChainTooShort(2));
}

#[test]
fn orbit_invariants() {
    let mut rng = SeedStream::new(4).derive("orbit").rng();
    for _ in 0..200 {
        let n = rng.gen_range(2..8);
        let mats: Vec<Mat2> = (0..n).map(|_| random_mat2(&mut rng, 0.2..=3.0)).collect();
        let mc = MatChain::new(mats.clone()).unwrap();
        let orbit = mc.orbit();
        assert_eq!(orbit.len(), n + 1);
        assert_eq!(orbit[0], HPoint::I);
        for j in 1..=n {
            let expected = 2.0 * op_norm(&mats[n - j]).ln();
            assert!((dist(&orbit[j], &orbit[j - 1]) - expected).abs() < 1e-9);
        }
        let chain = mc.orbit_chain().unwrap();
        for i in 0..=n {
            for j in 0..=n {
                assert!(
                    (chain.distance(i, j) - dist(&orbit[i], &orbit[j])).abs()
                        < 1e-8 * (1.0 + chain.distance(i, j))
                );
            }
        }
        let tau = oracle_tension(&orbit, dist);
        assert!(
            (ap_residual(&mc) + tau / 2.0).abs() < 1e-9,
            "{} {}",
            ap_residual(&mc),
            tau
        );
    }
}

#[test]
fn residual_is_half_tension_on_random_chains() {
    let mut rng = SeedStream::new(6).derive("residual").rng();
    for _ in 0..1000 {
        let n = rng.gen_range(2..30);
        let mats: Vec<Mat2> = (0..n).map(|_| random_mat2(&mut rng, 0.0..=8.0)).collect();
        let mc = MatChain::new(mats).unwrap();
        let Ok(chain) = mc.orbit_chain() else {
            continue;
        };
        let tau = chain.tension();
        assert!(
            (ap_residual(&mc) + tau / 2.0).abs() < 1e-9,
            "{} {}",
            ap_residual(&mc),
            tau
        );
    }
}

#[test]
fn from_orbit_reproduces_the_chain() {
    let gp = GoodPair::new(3.0, 0.6).unwrap();
    for seed in 0..50 {
        let c = sample_good_chain(&gp, 10, seed, false);
        let mut rng = SeedStream::new(seed).derive("twists").rng();
        let twists: Vec<f64> = (0..=10).map(|_| rng.gen_range(-PI..PI)).collect();
        let mc = MatChain::from_orbit(c.points(), &twists).unwrap();
        let o = mc.orbit_chain().unwrap();
        for i in 0..=10 {
            for j in 0..=10 {
                assert!(
                    (o.distance(i, j) - c.distance(i, j)).abs() < 1e-8 * (1.0 + c.distance(i, j))
                );
            }
        }
        for j in 1..=10 {
            assert!((2.0 * op_norm(&mc.mats()[10 - j]).ln() - c.steps()[j - 1]).abs() < 1e-9);
        }
    }
    assert!(MatChain::from_orbit(&[HPoint::new(1.0, 1.0).unwrap(); 3], &[]).is_err());
}

#[test]
fn matrix_avalanche_bound() {
    let gp = GoodPair::new(6.0, 1.0).unwrap();
    assert!(gp.a() - 2.0 * gp.b() > 8f64.ln());
    for seed in 0..300 {
        let n = 3 + (seed as usize % 20);
        let (mc, tau) = good_matrix_chain(&gp, n, seed);
        let r = ap_residual(&mc);
        assert!((r + tau / 2.0).abs() < 1e-9);
        assert!(r.abs() <= ap_bound(n, &gp) / 2.0 + 1e-9 * n as f64);
        let c = 2.0;
        assert!(r.abs() <= 8.0 * c * (n - 2) as f64 * (2.0 * gp.b() - gp.a()).exp());
    }
}

#[test]
fn dk_hypotheses_examples() {
    let kappa: f64 = 0.3;
    let d = Mat2::diag(kappa.powi(-2)).unwrap();
    assert!(MatChain::new(vec![d; 5]).unwrap().dk_hypotheses(kappa, 0.5));
    assert!(!MatChain::new(vec![d, Mat2::IDENTITY, d])
        .unwrap()
        .dk_hypotheses(kappa, 0.5));
    let gp = GoodPair::new(4.0, 0.8).unwrap();
    for seed in 0..100 {
        let (mc, _) = good_matrix_chain(&gp, 8, seed);
        assert!(mc.dk_hypotheses((-gp.a() / 4.0).exp(), (-gp.b()).exp()));
        // kappa = e^{-a} asks for ||A_j|| >= e^{2a}, beyond what steps >= a give
        assert!(!mc.dk_hypotheses((-gp.a()).exp(), (-gp.b()).exp()));
    }
}

#[test]
fn dictionary_examples() {
    let k = dictionary(10.0, 1.0, 2.0).unwrap();
    assert!((k.kappa - (-10f64).exp()).abs() < 1e-20);
    assert!((k.epsilon - (-1f64).exp()).abs() < 1e-15);
    assert_eq!((k.c0, k.c1), (0.125, 8.0));
    let c: f64 = 3.0;
    let edge = 2.0 * LN_2 + (c / (c - 1.0)).ln();
    assert!(dictionary(edge + 1e-9, 0.0, c).is_ok());
    assert!(matches!(
        dictionary(edge - 1e-9, 0.0, c),
        Err(Error::PreconditionFailed(_))
    ));
    assert!(dictionary(10.0, 1.0, 1.0).is_err());
    for i in 0..20 {
        for j in 0..20 {
            let (a, b, c) = (0.5 + i as f64, 0.25 * j as f64, 1.1 + 0.3 * j as f64);
            if let Ok(k) = dictionary(a, b, c) {
                assert!(k.kappa <= k.c0 * k.epsilon * k.epsilon);
            }
        }
    }
}

#[test]
fn stable_length_examples() {
    let lambda: f64 = 5.0;
    let f = Mat2::diag(lambda.sqrt()).unwrap();
    assert!((stable_length_lb(&f) - (lambda.ln() - 2.0 * LN_2)).abs() < 1e-12);
    assert!((empirical_stable_length(&f, 64) - lambda.ln()).abs() < 1e-12);
    assert!(stable_length_lb(&Mat2::rotation(1.0)) < 0.0);
    let mut rng = SeedStream::new(12).derive("stable").rng();
    for _ in 0..1000 {
        let f = random_mat2(&mut rng, 0.0..=20.0);
        let emp = empirical_stable_length(&f, 64);
        assert!(stable_length_lb(&f) <= emp + 1e-6);
        if stable_length(&f) > 0.5 {
            // d(f^N i, i) = N l + O(1)
            assert!((emp - stable_length(&f)).abs() < 2.0 * (2.0 * op_norm(&f).ln() + 1.0) / 64.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn submultiplicative(a in mat(), b in mat()) {
        let (na, nb, nab) = (op_norm(&a), op_norm(&b), op_norm(&(a * b)));
        prop_assert!(nab <= na * nb * (1.0 + 1e-12));
        prop_assert!(nab >= na / nb * (1.0 - 1e-12));
    }

    #[test]
    fn geometric_norm(a in mat()) {
        let geo = dist(&mobius_apply(&a, &HPoint::I), &HPoint::I);
        prop_assert!((2.0 * op_norm(&a).ln() - geo).abs() < 1e-10);
    }
}
