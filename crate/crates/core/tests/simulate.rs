mod common;

use beamalign::angular::TAU;
use beamalign::partition::{expected_width, Regime};
use beamalign::simulate::{
    analytic_performance, compare_schemes, run_monte_carlo, run_monte_carlo_sharded, Scenario, Scheme, User,
};
use common::{random_pdf, random_weights, rng};
use rand::Rng;

fn random_scenario(r: &mut rand_chacha::ChaCha8Rng, b: usize, regime: Regime) -> Scenario {
    let n = r.gen_range(1..=3);
    let w = random_weights(r, n);
    let users = w
        .into_iter()
        .map(|weight| User {
            pdf: random_pdf(r, 5),
            weight,
        })
        .collect();
    Scenario::new(users, b, regime).unwrap()
}

#[test]
fn per_user_sum_equals_mixture_width() {
    let mut r = rng(30);
    for _ in 0..100 {
        let b = r.gen_range(1..=5);
        let s = random_scenario(&mut r, b, Regime::Contiguous);
        let scheme = Scheme::ALL[r.gen_range(0..Scheme::ALL.len())];
        let cb = scheme.codebook(&s, 720).unwrap();
        let rep = analytic_performance(&s, &cb, scheme.name()).unwrap();
        let direct = expected_width(&cb.induced_partition(), s.mixture());
        assert!((rep.analytic - direct).abs() <= 1e-9);
    }
}

#[test]
fn simulation_tracks_analytic_width() {
    let mut r = rng(31);
    for _ in 0..5 {
        let b = r.gen_range(1..=5);
        let s = random_scenario(&mut r, b, Regime::Contiguous);
        let cb = Scheme::OptimalContiguous.codebook(&s, 3600).unwrap();
        let rep = run_monte_carlo(&s, &cb, 100_000, r.gen(), "opt").unwrap();
        let e = rep.empirical.unwrap();
        let se = e.std_error.unwrap();
        assert!(
            (e.mean - rep.analytic).abs() <= 4.0 * se + 1e-9,
            "{} vs {} (se {se})",
            e.mean,
            rep.analytic
        );
    }
}

#[test]
fn schemes_are_ordered() {
    let mut r = rng(32);
    let step = TAU / 3600.0;
    for _ in 0..30 {
        let b = r.gen_range(1..=6);
        let s = random_scenario(&mut r, b, Regime::Contiguous);
        let reps = compare_schemes(&s, 3600).unwrap();
        let u = |k: Scheme| reps.iter().find(|x| x.scheme == k.name()).unwrap().analytic;
        let unc = u(Scheme::OptimalUnconstrained);
        let con = u(Scheme::OptimalContiguous);
        assert!(unc <= con + step, "b={b}: {unc} > {con}");
        assert!(con <= u(Scheme::UniformContiguous) + 1e-9);
        if b >= 2 {
            assert!(con <= u(Scheme::ExhaustiveSearch) + 1e-9);
        }
    }
}

#[test]
fn reports_do_not_depend_on_sharding() {
    let mut r = rng(33);
    let s = random_scenario(&mut r, 3, Regime::Contiguous);
    let cb = Scheme::UniformContiguous.codebook(&s, 360).unwrap();
    let base = run_monte_carlo_sharded(&s, &cb, 50_000, 5, "u", 1).unwrap();
    for shards in [2, 3, 8, 13] {
        let other = run_monte_carlo_sharded(&s, &cb, 50_000, 5, "u", shards).unwrap();
        assert_eq!(format!("{base:?}"), format!("{other:?}"));
    }
    let again = run_monte_carlo(&s, &cb, 50_000, 5, "u").unwrap();
    assert_eq!(format!("{base:?}"), format!("{again:?}"));
}
