use avalanche_core::chains::{regular_polygon_chain, sample_good_chain, Chain, GoodPair};
use avalanche_core::hyp2::{dist, HPoint};
use avalanche_core::oracle::{
    klein, oracle_convex_hull_klein, oracle_tension, random_point, SeedStream,
};
use rand::Rng;

#[test]
fn seed_streams_are_pure_functions_of_root_and_path() {
    let draws = |root: u64| -> Vec<u64> {
        let mut rng = SeedStream::new(root).derive("suite").index(17).rng();
        (0..8).map(|_| rng.gen()).collect()
    };
    assert_eq!(draws(42), draws(42));
    assert_ne!(draws(42), draws(43));
    assert_ne!(
        SeedStream::new(1).derive("a").seed(),
        SeedStream::new(1).derive("b").seed()
    );
    assert_ne!(
        SeedStream::new(1).index(0).seed(),
        SeedStream::new(1).index(1).seed()
    );
    assert_eq!(
        SeedStream::new(9).derive("x").derive("y").seed(),
        SeedStream::new(9).derive("x").derive("y").seed()
    );
}

#[test]
fn geodesic_tension_is_zero() {
    let pts: Vec<HPoint> = (0..9)
        .map(|k| HPoint::new(0.0, (0.9 * k as f64).exp()).unwrap())
        .collect();
    assert!(oracle_tension(&pts, dist).abs() < 1e-12);
    assert_eq!(oracle_tension(&pts[..2], dist), 0.0);
}

#[test]
fn agrees_with_library_tension() {
    let root = SeedStream::new(77).derive("tension");
    for i in 0..1000u64 {
        let mut rng = root.index(i).rng();
        let n = rng.gen_range(2..15);
        let pts: Vec<HPoint> = (0..=n).map(|_| random_point(&mut rng, 6.0)).collect();
        let Ok(c) = Chain::h2(pts.clone()) else {
            continue;
        };
        let o = oracle_tension(&pts, dist);
        assert!(
            (c.tension() - o).abs() < 1e-12 * (1.0 + o.abs().max(c.endpoint_distance())),
            "{} {}",
            c.tension(),
            o
        );
    }
    let gp = GoodPair::new(2.5, 0.6).unwrap();
    for seed in 0..200 {
        let c = sample_good_chain(&gp, 10, seed, seed % 3 == 0);
        assert!(
            (c.tension() - oracle_tension(c.points(), dist)).abs()
                < 1e-12 * (1.0 + c.endpoint_distance())
        );
    }
}

#[test]
fn polygon_example() {
    for n in 4..=12 {
        for r in [0.5, 1.0, 2.0, 4.0, 8.0] {
            let c = regular_polygon_chain(n, r).unwrap();
            let p = c.points();
            let expected =
                (n - 1) as f64 * dist(&p[0], &p[2]) - (n - 2) as f64 * dist(&p[0], &p[1]);
            assert!((oracle_tension(p, dist) - expected).abs() < 1e-9);
        }
    }
}

#[test]
fn klein_hull_examples() {
    let mut rng = SeedStream::new(3).derive("triangles").rng();
    for _ in 0..1000 {
        let t: Vec<HPoint> = (0..3).map(|_| random_point(&mut rng, 4.0)).collect();
        assert!(oracle_convex_hull_klein(&t));
    }
    let reflex =
        [(0.0, 1.0), (1.0, 1.0), (0.5, 2.0), (1.5, 2.5)].map(|(x, y)| HPoint::new(x, y).unwrap());
    assert!(!oracle_convex_hull_klein(&reflex));
    // the same four points are convex in one cyclic order and not in another
    let sq = [
        HPoint::polar(1.0, 0.5).unwrap(),
        HPoint::polar(1.0, 2.6).unwrap(),
        HPoint::new(0.0, 3.0).unwrap(),
        HPoint::new(0.0, 0.3).unwrap(),
    ];
    assert!(oracle_convex_hull_klein(&[sq[0], sq[2], sq[1], sq[3]]));
    assert!(!oracle_convex_hull_klein(&[sq[0], sq[1], sq[2], sq[3]]));
}

#[test]
fn klein_map_sends_i_to_the_centre_and_preserves_geodesics() {
    assert_eq!(klein(&HPoint::I), (0.0, 0.0));
    // the imaginary axis is a diameter
    for t in [0.1, 0.5, 2.0, 10.0] {
        let (x, y) = klein(&HPoint::new(0.0, t).unwrap());
        assert!(y.abs() < 1e-15 && x.abs() < 1.0);
    }
    // points on the unit semicircle map onto one chord through the centre
    let pts: Vec<(f64, f64)> = [0.3, 0.9, 1.7, 2.5]
        .iter()
        .map(|&a: &f64| klein(&HPoint::polar(1.0, a).unwrap()))
        .collect();
    for p in &pts {
        assert!(p.0.abs() < 1e-15);
    }
}
