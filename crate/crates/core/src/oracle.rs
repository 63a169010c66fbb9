//! Brute-force global optimization of a powered-distance sum over Γ.
//!
//! A uniform scan locates the best sample; golden-section search on the two
//! neighbouring cells then refines it. Nothing here touches the analytic
//! derivative, so the oracle can serve as an independent check on it.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sum::power_sum_raw;
use crate::types::{normalize_angle, BasePoints, Extremum, GammaConfig, PowerParam, ProbeAngle};

/// Scan values above this are taken as a pole.
pub const POLE_THRESHOLD: f64 = 1e12;

pub const DEFAULT_SAMPLES_PER_ARC: usize = 4096;

const MIN_TOL: f64 = 1e-12;
const MAX_TOL: f64 = 1e-2;
const SCAN_CHUNK: usize = 2048;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchDomain {
    /// One fundamental arc `[θ₀, θ₀ + 2π/n]` for regular bases, the full
    /// circle otherwise.
    Auto,
    FullCircle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    /// Scan intervals per fundamental arc. Non-regular bases scan
    /// `samples_per_arc * n` points over the full circle.
    pub samples_per_arc: usize,
    pub domain: SearchDomain,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            samples_per_arc: DEFAULT_SAMPLES_PER_ARC,
            domain: SearchDomain::Auto,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub argopt: ProbeAngle,
    #[serde(serialize_with = "crate::types::serialize_float")]
    pub value: f64,
    pub kind: Extremum,
    /// Width of the final golden-section bracket around `argopt`.
    pub certified_window: f64,
    pub samples: usize,
    /// True when every scan sample agreed to rounding and the first sample
    /// was reported without refinement.
    pub constant: bool,
}

/// Scan-and-refine optimization with default options.
pub fn global_optimize(
    gamma: GammaConfig,
    base: &BasePoints,
    lam: PowerParam,
    kind: Extremum,
    angular_tol: f64,
) -> Result<OracleResult> {
    global_optimize_with(gamma, base, lam, kind, angular_tol, &OracleOptions::default())
}

pub fn global_optimize_with(
    gamma: GammaConfig,
    base: &BasePoints,
    lam: PowerParam,
    kind: Extremum,
    angular_tol: f64,
    opts: &OracleOptions,
) -> Result<OracleResult> {
    global_optimize_traced(gamma, base, lam, kind, angular_tol, opts).map(|(r, _)| r)
}

/// Like [`global_optimize_with`], also returning the best value after each
/// refinement step.
pub fn global_optimize_traced(
    gamma: GammaConfig,
    base: &BasePoints,
    lam: PowerParam,
    kind: Extremum,
    angular_tol: f64,
    opts: &OracleOptions,
) -> Result<(OracleResult, Vec<f64>)> {
    if !(MIN_TOL..=MAX_TOL).contains(&angular_tol) {
        return Err(Error::InvalidTolerance(angular_tol));
    }
    if opts.samples_per_arc < 2 {
        return Err(Error::InvalidArgument("samples_per_arc must be at least 2".into()));
    }
    let lambda = lam.value();
    if kind == Extremum::Max && lambda < 0.0 && gamma.is_unit() {
        return Err(Error::Unbounded);
    }
    let radius = gamma.radius();
    let angles = base.angles();
    let n = angles.len();
    let f = |x: f64| power_sum_raw(radius, angles, lambda, x);

    let (start, step, count) = if base.is_regular() && opts.domain == SearchDomain::Auto {
        // closed arc: both vertex rays and (for even counts) the midpoint are samples
        let m = opts.samples_per_arc;
        (angles[0], TAU / (n * m) as f64, m + 1)
    } else {
        let m = opts.samples_per_arc * n;
        (0.0, TAU / m as f64, m)
    };

    let scan = scan_grid(&f, start, step, count, kind);
    if kind == Extremum::Max && scan.best_value > POLE_THRESHOLD {
        return Err(Error::Unbounded);
    }

    let spread = scan.max - scan.min;
    if scan.max.is_finite() && spread <= 1e-13 * scan.max.abs().max(scan.min.abs()) {
        let value = f(start);
        return Ok((
            OracleResult {
                argopt: ProbeAngle::new(start),
                value,
                kind,
                certified_window: 0.0,
                samples: count,
                constant: true,
            },
            vec![value],
        ));
    }

    let centre = start + step * scan.best_index as f64;
    let (mut x, mut value, window, mut trace) =
        golden_refine(&f, kind, centre - step, centre + step, centre, scan.best_value, angular_tol);
    // cusps (0 < λ < 1) and the narrow peaks near a pole (λ < 0, a ≈ 1) sit
    // on or next to the base angles, where bracketing converges slowly; try
    // the angles directly
    for &theta in angles {
        let v = f(theta);
        if v.is_finite() && kind.improves(v, value) {
            x = theta;
            value = v;
            trace.push(v);
        }
    }
    if kind == Extremum::Max && value > POLE_THRESHOLD {
        return Err(Error::Unbounded);
    }
    let argopt = ProbeAngle::new(x);
    Ok((
        OracleResult {
            argopt,
            // recomputed at the normalized angle
            value: f(argopt.value()),
            kind,
            certified_window: window,
            samples: count,
            constant: false,
        },
        trace,
    ))
}

/// Optimizes over the closed arc `[lo, hi]` only (no wrap-around), using
/// `samples` scan intervals.
#[allow(clippy::too_many_arguments)]
pub fn optimize_on_arc(
    gamma: GammaConfig,
    base: &BasePoints,
    lam: PowerParam,
    kind: Extremum,
    lo: f64,
    hi: f64,
    samples: usize,
    angular_tol: f64,
) -> Result<OracleResult> {
    if !(MIN_TOL..=MAX_TOL).contains(&angular_tol) {
        return Err(Error::InvalidTolerance(angular_tol));
    }
    if hi <= lo || hi.is_nan() || lo.is_nan() || samples < 2 {
        return Err(Error::InvalidArgument(format!("empty arc [{lo}, {hi}]")));
    }
    let radius = gamma.radius();
    let angles = base.angles();
    let lambda = lam.value();
    let f = |x: f64| power_sum_raw(radius, angles, lambda, x);
    let step = (hi - lo) / samples as f64;
    let scan = scan_grid(&f, lo, step, samples + 1, kind);
    let centre = lo + step * scan.best_index as f64;
    let a = (centre - step).max(lo);
    let b = (centre + step).min(hi);
    let (x, _, window, _) = golden_refine(&f, kind, a, b, centre, scan.best_value, angular_tol);
    let argopt = ProbeAngle::new(x);
    Ok(OracleResult {
        argopt,
        value: f(argopt.value()),
        kind,
        certified_window: window,
        samples: samples + 1,
        constant: false,
    })
}

/// True iff the sum exceeds `cap` at a probe within 1e-9 of some base angle.
pub fn unbounded_probe(gamma: GammaConfig, base: &BasePoints, lam: PowerParam, cap: f64) -> bool {
    const OFFSETS: [f64; 5] = [0.0, 1e-9, -1e-9, 1e-12, -1e-12];
    let radius = gamma.radius();
    base.angles().iter().any(|&theta| {
        OFFSETS.iter().any(|&e| {
            let x = normalize_angle(theta + e);
            power_sum_raw(radius, base.angles(), lam.value(), x) > cap
        })
    })
}

struct Scan {
    best_index: usize,
    best_value: f64,
    min: f64,
    max: f64,
}

fn scan_grid<F>(f: &F, start: f64, step: f64, count: usize, kind: Extremum) -> Scan
where
    F: Fn(f64) -> f64 + Sync,
{
    let chunks: Vec<Scan> = (0..count.div_ceil(SCAN_CHUNK))
        .into_par_iter()
        .map(|c| {
            let lo = c * SCAN_CHUNK;
            let hi = (lo + SCAN_CHUNK).min(count);
            let mut s = Scan {
                best_index: lo,
                best_value: f(start + step * lo as f64),
                min: f64::INFINITY,
                max: f64::NEG_INFINITY,
            };
            for i in lo..hi {
                let v = f(start + step * i as f64);
                s.min = s.min.min(v);
                s.max = s.max.max(v);
                if kind.improves(v, s.best_value) {
                    s.best_index = i;
                    s.best_value = v;
                }
            }
            s
        })
        .collect();
    // chunks arrive in index order, so ties resolve to the lowest index
    chunks
        .into_iter()
        .reduce(|acc, s| Scan {
            best_index: if kind.improves(s.best_value, acc.best_value) {
                s.best_index
            } else {
                acc.best_index
            },
            best_value: if kind.improves(s.best_value, acc.best_value) {
                s.best_value
            } else {
                acc.best_value
            },
            min: acc.min.min(s.min),
            max: acc.max.max(s.max),
        })
        .expect("at least one scan chunk")
}

/// Golden-section search on `[lo, hi]`, seeded with a known point. Returns
/// the best point seen (never worse than the seed), its value, the final
/// bracket width and the best value after each step.
fn golden_refine<F>(
    f: &F,
    kind: Extremum,
    mut lo: f64,
    mut hi: f64,
    seed_x: f64,
    seed_value: f64,
    tol: f64,
) -> (f64, f64, f64, Vec<f64>)
where
    F: Fn(f64) -> f64,
{
    let mut best = (seed_x, seed_value);
    let mut trace = vec![seed_value];
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    for (x, v) in [(c, fc), (d, fd)] {
        if kind.improves(v, best.1) {
            best = (x, v);
        }
    }
    trace.push(best.1);
    while hi - lo > tol {
        if kind.improves(fc, fd) || fc == fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
            if kind.improves(fc, best.1) {
                best = (c, fc);
            }
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
            if kind.improves(fd, best.1) {
                best = (d, fd);
            }
        }
        trace.push(best.1);
    }
    (best.0, best.1, hi - lo, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn lam(v: f64) -> PowerParam {
        PowerParam::new(v).unwrap()
    }

    #[test]
    fn equilateral_examples() {
        let tri = BasePoints::equilateral();
        let g = GammaConfig::unit();
        let r = global_optimize(g, &tri, lam(1.0), Extremum::Max, 1e-10).unwrap();
        assert_relative_eq!(r.value, 4.0, max_relative = 1e-12);
        let mid = tri.arc_midpoints();
        assert!(mid.iter().any(|m| crate::types::circular_distance(m.value(), r.argopt.value()) < 1e-6));

        let r = global_optimize(g, &tri, lam(3.0), Extremum::Max, 1e-10).unwrap();
        assert_relative_eq!(r.value, 2.0 * 3f64.sqrt().powi(3), max_relative = 1e-12);
        assert!(tri
            .angles()
            .iter()
            .any(|&v| crate::types::circular_distance(v, r.argopt.value()) < 1e-6));

        for kind in [Extremum::Min, Extremum::Max] {
            let base = BasePoints::new([0.1, 1.0, 2.5, 4.0]).unwrap();
            let r = global_optimize(GammaConfig::new(0.7).unwrap(), &base, lam(0.0), kind, 1e-8).unwrap();
            assert_eq!(r.value, 4.0);
            assert!(r.constant);
        }
    }

    #[test]
    fn rejects_bad_tolerance_and_pole() {
        let tri = BasePoints::equilateral();
        let g = GammaConfig::unit();
        assert!(matches!(
            global_optimize(g, &tri, lam(1.0), Extremum::Max, 1e-13),
            Err(Error::InvalidTolerance(_))
        ));
        assert!(global_optimize(g, &tri, lam(1.0), Extremum::Max, 0.1).is_err());
        assert_eq!(global_optimize(g, &tri, lam(-1.0), Extremum::Max, 1e-9), Err(Error::Unbounded));
        // minimum is still well defined between the poles
        let r = global_optimize(g, &tri, lam(-1.0), Extremum::Min, 1e-9).unwrap();
        assert_relative_eq!(r.value, 2.5, max_relative = 1e-12);
    }

    #[test]
    fn unbounded_probe_examples() {
        let tri = BasePoints::equilateral();
        assert!(unbounded_probe(GammaConfig::unit(), &tri, lam(-1.0), 1e6));
        assert!(!unbounded_probe(GammaConfig::new(1.5).unwrap(), &tri, lam(-1.0), 1e6));
        let pent = BasePoints::regular(5, 0.0).unwrap();
        assert!(unbounded_probe(GammaConfig::unit(), &pent, lam(-2.0), 1e9));
    }

    #[test]
    fn trace_is_monotone_and_window_certified() {
        let base = BasePoints::new([0.3, 1.9, 4.4]).unwrap();
        let g = GammaConfig::new(1.2).unwrap();
        for kind in [Extremum::Min, Extremum::Max] {
            let (r, trace) =
                global_optimize_traced(g, &base, lam(2.7), kind, 1e-10, &OracleOptions::default()).unwrap();
            assert!(r.certified_window <= 1e-10);
            for w in trace.windows(2) {
                assert!(!kind.improves(w[0], w[1]), "trace regressed: {:?}", w);
            }
        }
    }

    #[test]
    fn arc_restricted_minimum() {
        let tri = BasePoints::equilateral();
        let r = optimize_on_arc(
            GammaConfig::unit(),
            &tri,
            lam(-1.0),
            Extremum::Min,
            1e-6,
            2.0 * PI / 3.0 - 1e-6,
            4096,
            1e-10,
        )
        .unwrap();
        assert_relative_eq!(r.value, 2.5, max_relative = 1e-12);
        assert!((r.argopt.value() - PI / 3.0).abs() < 1e-6);
    }
}
