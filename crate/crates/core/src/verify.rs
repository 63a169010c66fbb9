//! Named check drivers. Each returns one [`VerificationOutcome`] per checked
//! case, or an aggregate when the case count is large.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::conjecture::{minmax_search, regularity_distance, SearchSense};
use crate::error::{Error, Result};
use crate::extremal::{inverse_square_bound_check, predict_extrema, triangle_bound, LocationClass};
use crate::identities::{
    constancy_check, count_sign_change_roots, derivative_zero_multiplicity_scan, even_power_constant, ExpSum,
};
use crate::oracle::{global_optimize, unbounded_probe};
use crate::sum::{chord_distance, d_power_sum_dx, two_chord_admissible_range, two_chord_sum, power_sum};
use crate::types::{BasePoints, Extremum, GammaConfig, PowerParam, ProbeAngle};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationOutcome {
    pub check: String,
    #[serde(serialize_with = "crate::types::serialize_float")]
    pub predicted: f64,
    #[serde(serialize_with = "crate::types::serialize_float")]
    pub observed: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equality: Option<bool>,
    pub detail: String,
}

impl VerificationOutcome {
    pub fn new(check: impl Into<String>, predicted: f64, observed: f64, tolerance: f64, passed: bool) -> Self {
        Self {
            check: check.into(),
            predicted,
            observed,
            tolerance,
            passed,
            equality: None,
            detail: String::new(),
        }
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.detail = detail;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub passed: bool,
    pub total: usize,
    pub failed: usize,
    pub checks: Vec<VerificationOutcome>,
}

impl SuiteSummary {
    pub fn new(checks: Vec<VerificationOutcome>) -> Self {
        let failed = checks.iter().filter(|c| !c.passed).count();
        Self {
            passed: failed == 0,
            total: checks.len(),
            failed,
            checks,
        }
    }
}

fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn lam(v: f64) -> Result<PowerParam> {
    PowerParam::new(v)
}

/// Uniformly random configuration of `n` distinct angles.
pub fn random_base<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BasePoints {
    loop {
        if let Ok(b) = BasePoints::new((0..n).map(|_| rng.random_range(0.0..TAU))) {
            return b;
        }
    }
}

/// Even-power constancy over regular `n`-gons for `k ∈ ks` (all of
/// `1..n` when `None`), one outcome per `(n, k, a)`.
pub fn check_even_power(
    ns: &[usize],
    ks: Option<&[usize]>,
    radii: &[f64],
    samples: usize,
    seed: u64,
) -> Result<Vec<VerificationOutcome>> {
    let mut cases = Vec::new();
    for &n in ns {
        let ks: Vec<usize> = match ks {
            Some(ks) => ks.to_vec(),
            None => (1..n).collect(),
        };
        for k in ks {
            for &a in radii {
                cases.push((n, k, GammaConfig::new(a)?));
            }
        }
    }
    cases
        .par_iter()
        .enumerate()
        .map(|(i, &(n, k, gamma))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let report = constancy_check(n, gamma, k, samples, &mut rng)?;
            let constant = even_power_constant(n, gamma, k)?;
            let dev = report.relative_deviation();
            let mean_err = rel_err(report.mean_value, constant);
            let passed = dev <= 1e-9 && mean_err <= 1e-10;
            Ok(VerificationOutcome::new("even-power", constant, report.mean_value, 1e-9, passed)
                .with_detail(format!("n={n} k={k} a={} rel_dev={dev:e} mean_rel_err={mean_err:e}", gamma.radius())))
        })
        .collect()
}

/// Non-constancy at `k = n`: relative deviation over random probes must
/// exceed `1e-3`.
pub fn check_even_power_sharpness(ns: &[usize], radii: &[f64], samples: usize, seed: u64) -> Result<Vec<VerificationOutcome>> {
    let mut out = Vec::new();
    for &n in ns {
        for &a in radii {
            let gamma = GammaConfig::new(a)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32) ^ a.to_bits());
            let report = constancy_check(n, gamma, n, samples, &mut rng)?;
            let dev = report.relative_deviation();
            out.push(
                VerificationOutcome::new("even-power-sharpness", 1e-3, dev, 1e-3, dev > 1e-3)
                    .with_detail(format!("n={n} k={n} a={a} rel_dev={dev:e}")),
            );
        }
    }
    Ok(out)
}

/// Default exponent set for a regular `n`-gon, skipping even integers.
pub fn regime_lambdas(n: usize) -> Vec<f64> {
    let t = 2.0 * n as f64;
    [-2.0, -0.5, 0.7, 1.0, 2.5, 3.0, t - 1.5, t - 0.5, t + 1.0, t + 3.0]
        .into_iter()
        .filter(|l: &f64| !(l.fract() == 0.0 && (l * 0.5).fract() == 0.0))
        .collect()
}

/// Oracle extrema against the regime prediction, one outcome per
/// `(n, a, λ, min|max)`.
pub fn check_regimes(ns: &[usize], radii: &[f64], lambdas: Option<&[f64]>, angular_tol: f64) -> Result<Vec<VerificationOutcome>> {
    let mut cases = Vec::new();
    for &n in ns {
        let ls = match lambdas {
            Some(ls) => ls.to_vec(),
            None => regime_lambdas(n),
        };
        for &a in radii {
            for &l in &ls {
                cases.push((n, a, l));
            }
        }
    }
    let nested: Vec<Vec<VerificationOutcome>> = cases
        .par_iter()
        .map(|&(n, a, l)| regime_case(n, GammaConfig::new(a)?, lam(l)?, angular_tol))
        .collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

fn regime_case(n: usize, gamma: GammaConfig, lam: PowerParam, tol: f64) -> Result<Vec<VerificationOutcome>> {
    let base = BasePoints::regular(n, 0.0)?;
    let (pmin, pmax) = predict_extrema(gamma, &base, lam)?;
    let mut out = Vec::new();
    for report in [pmin, pmax] {
        let tag = format!(
            "n={n} a={} λ={} {:?} {:?}",
            gamma.radius(),
            lam.value(),
            report.kind,
            report.location_class
        );
        let outcome = match report.location_class {
            LocationClass::UnboundedAtVertexRay => {
                let ok = unbounded_probe(gamma, &base, lam, 1e9);
                VerificationOutcome::new("regimes", f64::INFINITY, if ok { f64::INFINITY } else { 0.0 }, 1e9, ok)
            }
            LocationClass::Constant => {
                let r = global_optimize(gamma, &base, lam, report.kind, tol)?;
                let err = rel_err(r.value, report.value);
                VerificationOutcome::new("regimes", report.value, r.value, 1e-9, r.constant || err <= 1e-9)
            }
            _ => {
                let r = global_optimize(gamma, &base, lam, report.kind, tol)?;
                let dist = report.distance_to_witness(r.argopt);
                let err = rel_err(r.value, report.value);
                VerificationOutcome::new("regimes", report.value, r.value, 1e-9, dist <= 1e-6 && err <= 1e-9)
                    .with_detail(format!("{tag} angular_err={dist:e} rel_err={err:e}"))
            }
        };
        out.push(if outcome.detail.is_empty() { outcome.with_detail(tag) } else { outcome });
    }
    Ok(out)
}

/// Oracle extremum at the equilateral triangle against the sharp value.
pub fn check_triangle_sharp(lambdas: &[f64]) -> Result<Vec<VerificationOutcome>> {
    let tri = BasePoints::equilateral();
    lambdas
        .iter()
        .map(|&l| {
            let p = lam(l)?;
            let bound = triangle_bound(p);
            let kind = if l < 0.0 { Extremum::Min } else { Extremum::Max };
            let r = global_optimize(GammaConfig::unit(), &tri, p, kind, 1e-10)?;
            let err = rel_err(r.value, bound.bound);
            Ok(VerificationOutcome::new("triangle-sharp", bound.bound, r.value, 1e-9, err <= 1e-9)
                .with_detail(format!("λ={l} {kind:?} rel_err={err:e}")))
        })
        .collect()
}

/// Exponent samples for the random-triangle check. `λ = 0` is left out: the
/// sum is identically 3 there, so the strict margin cannot hold.
pub const TRIANGLE_LAMBDAS: [f64; 13] = [-3.0, -1.0, -0.5, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 5.0, 7.0];

/// Bound direction on uniformly random triangles, aggregated per `λ`. The
/// observed value is the worst signed margin.
pub fn check_triangle_random(trials: usize, lambdas: &[f64], seed: u64) -> Result<Vec<VerificationOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases: Vec<BasePoints> = (0..trials).map(|_| random_base(3, &mut rng)).collect();
    lambdas
        .iter()
        .map(|&l| {
            let p = lam(l)?;
            let bound = triangle_bound(p);
            let kind = if l < 0.0 { Extremum::Min } else { Extremum::Max };
            let margins: Vec<(f64, f64)> = bases
                .par_iter()
                .map(|b| {
                    let r = global_optimize(GammaConfig::unit(), b, p, kind, 1e-10)?;
                    let margin = if l < 0.0 { bound.bound - r.value } else { r.value - bound.bound };
                    Ok((margin, regularity_distance(b)))
                })
                .collect::<Result<_>>()?;
            let worst = margins.iter().map(|m| m.0).fold(f64::INFINITY, f64::min);
            let weak = margins.iter().filter(|(m, _)| *m < -1e-9).count();
            let not_strict = margins.iter().filter(|(m, d)| *d >= 1e-2 && *m <= 0.0).count();
            Ok(VerificationOutcome::new("triangle-bound", 0.0, worst, 1e-9, weak == 0 && not_strict == 0)
                .with_detail(format!("λ={l} trials={trials} violations={weak} non_strict={not_strict}")))
        })
        .collect()
}

/// `min Σ |MM_i|^{-2} ≤ n²/4` on random configurations, plus equality on
/// the regular polygon for each size.
pub fn check_inverse_square(ns: &[usize], trials: usize, seed: u64) -> Result<Vec<VerificationOutcome>> {
    if ns.is_empty() {
        return Err(Error::InvalidArgument("no point counts given".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases: Vec<BasePoints> = (0..trials)
        .map(|_| {
            let n = ns[rng.random_range(0..ns.len())];
            random_base(n, &mut rng)
        })
        .collect();
    let outcomes: Vec<VerificationOutcome> = bases.par_iter().map(inverse_square_bound_check).collect::<Result<_>>()?;
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let worst = outcomes
        .iter()
        .map(|o| o.observed - o.predicted)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut out = vec![VerificationOutcome::new("inverse-square", 0.0, worst, 1e-9, failed == 0)
        .with_detail(format!("trials={trials} failures={failed} (observed = worst min − n²/4)"))];
    for &n in ns {
        let mut o = inverse_square_bound_check(&BasePoints::regular(n, 0.0)?)?;
        o.check = "inverse-square-regular".into();
        o.passed = o.passed && o.equality == Some(true);
        out.push(o);
    }
    Ok(out)
}

/// Sign-change count of random exponential sums on `[−20, 20]` never
/// exceeds `n − 1`.
pub fn check_exp_sum_roots(trials: usize, max_terms: usize, seed: u64) -> Result<Vec<VerificationOutcome>> {
    if max_terms < 1 {
        return Err(Error::InvalidArgument("need at least one term".into()));
    }
    let counts: Vec<(usize, usize)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let n = rng.random_range(1..=max_terms);
            let es = ExpSum::random(n, &mut rng);
            Ok((n, count_sign_change_roots(&es, -20.0, 20.0, 4000)?))
        })
        .collect::<Result<_>>()?;
    let excess = counts.iter().map(|&(n, c)| c as f64 - (n as f64 - 1.0)).fold(f64::NEG_INFINITY, f64::max);
    let violations = counts.iter().filter(|&&(n, c)| c + 1 > n).count();
    Ok(vec![VerificationOutcome::new("exp-sum-roots", 0.0, excess, 0.0, violations == 0)
        .with_detail(format!("trials={trials} max_terms={max_terms} violations={violations} (observed = worst count − (n−1))"))])
}

/// `2(sin x + sin(c − x)) ≥ 2` over a `grid × grid` sweep of admissible
/// `(c, x)`, minimum attained at the equilateral parameters `c = π/3`,
/// `x = π/6`.
pub fn check_two_chord(grid: usize) -> Result<Vec<VerificationOutcome>> {
    if grid < 2 {
        return Err(Error::InvalidArgument("grid must be at least 2".into()));
    }
    let c_hi = FRAC_PI_2 - 1e-9;
    let mut min = (f64::INFINITY, 0.0, 0.0);
    for i in 0..grid {
        let c = FRAC_PI_3 + (c_hi - FRAC_PI_3) * i as f64 / (grid - 1) as f64;
        let (lo, hi) = two_chord_admissible_range(c)?;
        for j in 0..grid {
            let x = lo + (hi - lo) * j as f64 / (grid - 1) as f64;
            let v = two_chord_sum(c, x)?;
            if v < min.0 {
                min = (v, c, x);
            }
        }
    }
    let at_equilateral = (min.1 - FRAC_PI_3).abs() < 1e-12 && (min.2 - FRAC_PI_6).abs() < 1e-12;
    let passed = min.0 >= 2.0 - 1e-12 && (min.0 - 2.0).abs() <= 1e-12 && at_equilateral;
    Ok(vec![VerificationOutcome::new("two-chord", 2.0, min.0, 1e-12, passed)
        .with_detail(format!("grid={grid}x{grid} argmin c={:.17} x={:.17}", min.1, min.2))])
}

/// Analytic derivative against a central difference with `h = 1e-6`.
///
/// The comparison is relative to the larger of the two derivatives, with a
/// floor of `1e-8·F` so that nearly stationary probes are not judged on
/// rounding noise alone.
pub fn check_derivative(trials: usize, seed: u64) -> Result<Vec<VerificationOutcome>> {
    let h = 1e-6;
    let errs: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            loop {
                let n = rng.random_range(2..=8);
                let base = random_base(n, &mut rng);
                let gamma = GammaConfig::new(rng.random_range(0.3..3.0))?;
                let p = lam(rng.random_range(-3.0..6.0))?;
                let x = ProbeAngle::new(rng.random_range(0.0..TAU));
                let nearest = base
                    .angles()
                    .iter()
                    .map(|&t| chord_distance(gamma, x, t))
                    .fold(f64::INFINITY, f64::min);
                if nearest < 0.05 {
                    continue;
                }
                let an = d_power_sum_dx(gamma, &base, p, x)?;
                let fp = power_sum(gamma, &base, p, ProbeAngle::new(x.value() + h));
                let fm = power_sum(gamma, &base, p, ProbeAngle::new(x.value() - h));
                let fd = (fp - fm) / (2.0 * h);
                let f = power_sum(gamma, &base, p, x);
                let scale = an.abs().max(fd.abs()).max(1e-8 * f.abs());
                return Ok(if scale == 0.0 { 0.0 } else { (an - fd).abs() / scale });
            }
        })
        .collect::<Result<_>>()?;
    let worst = errs.iter().copied().fold(0.0, f64::max);
    Ok(vec![VerificationOutcome::new("derivative", 0.0, worst, 1e-5, worst <= 1e-5)
        .with_detail(format!("trials={trials} worst_rel_err={worst:e}"))])
}

/// λ-zeros of `∂F/∂x` on `[−2, 2n]` are exactly `{0, 2, …, 2n−2}`.
pub fn check_derivative_loci(ns: &[usize], radii: &[f64], xs: Option<&[f64]>) -> Result<Vec<VerificationOutcome>> {
    let mut out = Vec::new();
    for &n in ns {
        let xs: Vec<f64> = match xs {
            Some(xs) => xs.to_vec(),
            None => vec![0.2, PI / n as f64 * 0.5, PI / n as f64 * 0.9],
        };
        for &a in radii {
            for &x in &xs {
                let scan = derivative_zero_multiplicity_scan(n, GammaConfig::new(a)?, x)?;
                let found: Vec<String> = scan.zeros.iter().map(|z| format!("{:.9}", z.lambda)).collect();
                out.push(
                    VerificationOutcome::new(
                        "derivative-loci",
                        scan.expected.len() as f64,
                        scan.zeros.len() as f64,
                        1e-8,
                        scan.matches && scan.max_locus_error <= 1e-8,
                    )
                    .with_detail(format!(
                        "n={n} a={a} x={x} zeros=[{}] max_locus_err={:e}",
                        found.join(", "),
                        scan.max_locus_error
                    )),
                );
            }
        }
    }
    Ok(out)
}

/// Multistart min-max search over triangles reaches the sharp value near
/// the equilateral configuration in at least one restart.
pub fn check_minmax(lambdas: &[f64], restarts: usize, seed: u64) -> Result<Vec<VerificationOutcome>> {
    lambdas
        .iter()
        .map(|&l| {
            let res = minmax_search(lam(l)?, SearchSense::for_lambda(l), restarts, seed)?;
            let hits = res
                .restarts
                .iter()
                .filter(|r| r.gap <= 1e-4 && r.regularity_distance <= 1e-2)
                .count();
            Ok(VerificationOutcome::new("minmax", res.target, res.objective, 1e-4, hits > 0)
                .with_detail(format!("λ={l} restarts={restarts} converged={hits} gap={:e}", res.gap)))
        })
        .collect()
}
