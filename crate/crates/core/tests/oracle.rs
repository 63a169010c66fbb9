//! The scan-and-refine oracle against a plain dense scan with ternary
//! polishing, written without any of the library's search code.

use std::f64::consts::TAU;

use powersum::oracle::{global_optimize_with, OracleOptions, SearchDomain};
use powersum::verify::random_base;
use powersum::{global_optimize, power_sum, BasePoints, Error, Extremum, GammaConfig, PowerParam, ProbeAngle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn brute(gamma: GammaConfig, base: &BasePoints, lam: PowerParam, kind: Extremum) -> f64 {
    let grid = 20_000;
    let f = |x: f64| power_sum(gamma, base, lam, ProbeAngle::new(x));
    let better = |a: f64, b: f64| match kind {
        Extremum::Min => a < b,
        Extremum::Max => a > b,
    };
    let mut best = (0.0, f(0.0));
    for i in 1..grid {
        let x = TAU * i as f64 / grid as f64;
        let v = f(x);
        if better(v, best.1) {
            best = (x, v);
        }
    }
    let h = TAU / grid as f64;
    let (mut lo, mut hi) = (best.0 - h, best.0 + h);
    for _ in 0..100 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if better(f(m1), f(m2)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let polished = f(0.5 * (lo + hi));
    if better(polished, best.1) {
        best.1 = polished;
    }
    // cusps (0 < λ < 1) are only resolved exactly at the base points
    for &t in base.angles() {
        let v = f(t);
        if v.is_finite() && better(v, best.1) {
            best.1 = v;
        }
    }
    best.1
}

#[test]
fn oracle_matches_dense_scan_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    while checked < 1000 {
        let n = rng.random_range(2..=7);
        let base = random_base(n, &mut rng);
        let gamma = GammaConfig::new(if rng.random_bool(0.3) { 1.0 } else { rng.random_range(0.5..2.0) }).unwrap();
        let lam = PowerParam::new(rng.random_range(-3.0..7.0)).unwrap();
        let kind = if rng.random_bool(0.5) { Extremum::Min } else { Extremum::Max };
        let result = global_optimize(gamma, &base, lam, kind, 1e-6);
        if gamma.is_unit() && lam.value() < 0.0 && kind == Extremum::Max {
            assert_eq!(result.unwrap_err(), Error::Unbounded);
            continue;
        }
        let r = result.unwrap();
        let reference = brute(gamma, &base, lam, kind);
        let slack = 1e-9 * reference.abs();
        match kind {
            Extremum::Min => assert!(r.value <= reference + slack, "{r:?} vs {reference} on {base:?}"),
            Extremum::Max => assert!(r.value >= reference - slack, "{r:?} vs {reference} on {base:?}"),
        }
        assert!(
            (r.value - reference).abs() <= 1e-6 * reference.abs().max(1.0),
            "{r:?} vs {reference}"
        );
        let at = power_sum(gamma, &base, lam, r.argopt);
        assert_eq!(at, r.value);
        checked += 1;
    }
}

#[test]
fn symmetric_domain_agrees_with_full_circle() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let full = OracleOptions {
        domain: SearchDomain::FullCircle,
        ..OracleOptions::default()
    };
    for _ in 0..200 {
        let n = rng.random_range(2..=8);
        let base = BasePoints::regular(n, rng.random_range(0.0..TAU)).unwrap();
        let gamma = GammaConfig::new(rng.random_range(0.6..1.6)).unwrap();
        let lam = PowerParam::new(rng.random_range(-2.0..2.0 * n as f64 + 3.0)).unwrap();
        for kind in [Extremum::Min, Extremum::Max] {
            let auto = global_optimize(gamma, &base, lam, kind, 1e-10).unwrap();
            let wide = global_optimize_with(gamma, &base, lam, kind, 1e-10, &full).unwrap();
            assert!(
                (auto.value - wide.value).abs() <= 1e-12 * auto.value.abs(),
                "n={n} λ={} {kind:?}: {} vs {}",
                lam.value(),
                auto.value,
                wide.value
            );
        }
    }
}

#[test]
fn regular_extremum_matches_closed_form_witness() {
    // the arc midpoint of a regular polygon; value computed directly
    let tri = BasePoints::equilateral();
    let lam = PowerParam::new(1.0).unwrap();
    let r = global_optimize(GammaConfig::unit(), &tri, lam, Extremum::Max, 1e-12).unwrap();
    let direct: f64 = tri
        .angles()
        .iter()
        .map(|t| {
            let (x, y) = (60f64.to_radians().cos() - t.cos(), 60f64.to_radians().sin() - t.sin());
            x.hypot(y)
        })
        .sum();
    assert!((r.value - direct).abs() < 1e-12);
}
