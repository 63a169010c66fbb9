//! Numerical exploration over configurations: the min-max form of the
//! three-point bound, and trials of the claim that even-power constancy
//! characterizes the regular polygon.
//!
//! Candidates always stay on the unit circle.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::triangle_bound;
use crate::identities::{laurent_coefficients, laurent_constant_term};
use crate::oracle::global_optimize;
use crate::sum::power_sum_raw;
use crate::types::{normalize_angle, BasePoints, Extremum, GammaConfig, PowerParam};

const INNER_TOL: f64 = 1e-10;
const SEARCH_DIRECTIONS: usize = 16;
const MIN_STEP: f64 = 1e-7;
const MAX_EVALUATIONS: usize = 6000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchSense {
    /// Minimize over configurations the maximum over probes.
    MinMax,
    /// Maximize over configurations the minimum over probes.
    MaxMin,
}

impl SearchSense {
    /// The natural sense for `λ`: max-min below zero, min-max otherwise.
    pub fn for_lambda(lambda: f64) -> Self {
        if lambda < 0.0 {
            SearchSense::MaxMin
        } else {
            SearchSense::MinMax
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestartOutcome {
    pub start: [f64; 2],
    pub config: Vec<f64>,
    #[serde(serialize_with = "crate::types::serialize_float")]
    pub objective: f64,
    #[serde(serialize_with = "crate::types::serialize_float")]
    pub gap: f64,
    pub regularity_distance: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigSearchResult {
    pub best_config: BasePoints,
    #[serde(serialize_with = "crate::types::serialize_float")]
    pub objective: f64,
    #[serde(serialize_with = "crate::types::serialize_float")]
    pub target: f64,
    #[serde(serialize_with = "crate::types::serialize_float")]
    pub gap: f64,
    pub iterations: usize,
    pub restarts: Vec<RestartOutcome>,
}

/// Inner objective for three points on the unit circle: the maximum over
/// probes for [`SearchSense::MinMax`], the minimum for [`SearchSense::MaxMin`].
/// Degenerate configurations score as the worst possible value.
pub fn triangle_objective(lam: PowerParam, sense: SearchSense, angles: [f64; 3]) -> f64 {
    let (kind, worst) = match sense {
        SearchSense::MinMax => (Extremum::Max, f64::INFINITY),
        SearchSense::MaxMin => (Extremum::Min, f64::NEG_INFINITY),
    };
    let Ok(base) = BasePoints::new(angles) else {
        return worst;
    };
    match global_optimize(GammaConfig::unit(), &base, lam, kind, INNER_TOL) {
        Ok(r) => r.value,
        Err(_) => worst,
    }
}

/// Multistart search over triangles with one vertex pinned at angle 0.
pub fn minmax_search(lam: PowerParam, sense: SearchSense, restarts: usize, seed: u64) -> Result<ConfigSearchResult> {
    if restarts < 8 {
        return Err(Error::InvalidArgument(format!("need at least 8 restarts, got {restarts}")));
    }
    let lambda = lam.value();
    match sense {
        SearchSense::MaxMin if lambda == 0.0 => {
            return Err(Error::InvalidArgument("max-min form needs λ ≠ 0".into()))
        }
        SearchSense::MinMax if lambda < 0.0 => return Err(Error::Unbounded),
        _ => {}
    }
    let target = triangle_bound(lam).bound;
    let sign = match sense {
        SearchSense::MinMax => 1.0,
        SearchSense::MaxMin => -1.0,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts: Vec<[f64; 2]> = (0..restarts)
        .map(|_| {
            let mut s = [rng.random_range(0.0..TAU), rng.random_range(0.0..TAU)];
            s.sort_by(f64::total_cmp);
            s
        })
        .collect();

    let outcomes: Vec<RestartOutcome> = starts
        .par_iter()
        .map(|&start| {
            let f = |p: &[f64]| sign * triangle_objective(lam, sense, [0.0, p[0], p[1]]);
            let (best, value, evaluations) = compass_minimize(&f, start.to_vec(), 0.25, MIN_STEP, MAX_EVALUATIONS);
            let objective = sign * value;
            let mut config = vec![0.0, normalize_angle(best[0]), normalize_angle(best[1])];
            config.sort_by(f64::total_cmp);
            RestartOutcome {
                start,
                regularity_distance: regularity_distance_of(&config),
                config,
                objective,
                gap: (objective - target).abs(),
                evaluations,
            }
        })
        .collect();

    let best = outcomes
        .iter()
        .min_by(|a, b| (sign * a.objective).total_cmp(&(sign * b.objective)))
        .expect("at least one restart");
    Ok(ConfigSearchResult {
        best_config: BasePoints::new(best.config.iter().copied())?,
        objective: best.objective,
        target,
        gap: best.gap,
        iterations: outcomes.iter().map(|o| o.evaluations).sum(),
        restarts: outcomes,
    })
}

/// Pattern search over `SEARCH_DIRECTIONS` evenly spread directions in the
/// plane, halving the step whenever no direction improves.
fn compass_minimize<F>(f: &F, mut x: Vec<f64>, mut step: f64, min_step: f64, max_evals: usize) -> (Vec<f64>, f64, usize)
where
    F: Fn(&[f64]) -> f64,
{
    let dirs: Vec<[f64; 2]> = (0..SEARCH_DIRECTIONS)
        .map(|i| {
            let t = TAU * i as f64 / SEARCH_DIRECTIONS as f64;
            [t.cos(), t.sin()]
        })
        .collect();
    let mut fx = f(&x);
    let mut evals = 1;
    let mut first = 0;
    while step >= min_step && evals < max_evals {
        let mut moved = false;
        for i in 0..dirs.len() {
            let d = dirs[(first + i) % dirs.len()];
            let trial = vec![x[0] + step * d[0], x[1] + step * d[1]];
            let ft = f(&trial);
            evals += 1;
            if ft < fx {
                x = trial;
                fx = ft;
                // retry the successful direction first
                first = (first + i) % dirs.len();
                moved = true;
                break;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    (x, fx, evals)
}

/// Smallest, over rotations, of the largest angular displacement between
/// the points and the vertices of a regular polygon (cyclic order matched).
pub fn regularity_distance(points: &BasePoints) -> f64 {
    regularity_distance_of(points.angles())
}

fn regularity_distance_of(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n <= 1 {
        return 0.0;
    }
    let mut residuals: Vec<f64> = sorted
        .iter()
        .enumerate()
        .map(|(i, &t)| normalize_angle(t - TAU * i as f64 / n as f64))
        .collect();
    residuals.sort_by(f64::total_cmp);
    // the residuals must be covered by one arc centred on the rotation; its
    // shortest length is the circle minus the widest empty gap
    let widest = (0..n)
        .map(|i| {
            if i + 1 < n {
                residuals[i + 1] - residuals[i]
            } else {
                residuals[0] + TAU - residuals[i]
            }
        })
        .fold(0.0, f64::max);
    0.5 * (TAU - widest)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterizationTrial {
    pub n: usize,
    pub k_set: Vec<usize>,
    /// Final angles, normalized and sorted.
    pub candidate: Vec<f64>,
    pub initial_regularity_distance: f64,
    /// Largest relative deviation from constancy over `k_set`.
    #[serde(serialize_with = "crate::types::serialize_float")]
    pub deviation: f64,
    pub regularity_distance: f64,
    pub iterations: usize,
}

/// Relative deviation `max |Σ − mean| / mean` of `Σ_i |X A_i|^{2k}` over a
/// probe grid on Γ fine enough to resolve every harmonic present.
pub fn constancy_deviation(gamma: GammaConfig, angles: &[f64], k: usize) -> f64 {
    let probes = 16 * (k + 1);
    let lambda = 2.0 * k as f64;
    let values: Vec<f64> = (0..probes)
        .map(|i| power_sum_raw(gamma.radius(), angles, lambda, TAU * i as f64 / probes as f64))
        .collect();
    let mean = values.iter().sum::<f64>() / probes as f64;
    values.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max) / mean
}

/// Harmonics `j` whose coefficient survives in some `|x − ξ|^{2k}`, `k ∈ k_set`.
/// Constancy for every k in the set holds iff all `Σ_i e^{i j θ_i}` vanish.
fn active_harmonics(radius: f64, k_set: &[usize]) -> Vec<usize> {
    let top = k_set.iter().copied().max().unwrap_or(0);
    (1..=top)
        .filter(|&j| {
            k_set.iter().any(|&k| {
                k >= j && {
                    let c = laurent_coefficients(radius, k);
                    c[k + j].abs() > 1e-12 * laurent_constant_term(radius, k)
                }
            })
        })
        .collect()
}

/// `(1/n²) Σ_j |Σ_i e^{i j θ_i}|²` and its gradient.
fn harmonic_energy(angles: &[f64], harmonics: &[usize], grad: &mut [f64]) -> f64 {
    let n = angles.len() as f64;
    grad.iter_mut().for_each(|g| *g = 0.0);
    let mut energy = 0.0;
    for &j in harmonics {
        let jf = j as f64;
        let (re, im) = angles.iter().fold((0.0, 0.0), |(re, im), &t| {
            let (s, c) = (jf * t).sin_cos();
            (re + c, im + s)
        });
        energy += re * re + im * im;
        for (g, &t) in grad.iter_mut().zip(angles) {
            let (s, c) = (jf * t).sin_cos();
            *g += 2.0 * jf * (im * c - re * s);
        }
    }
    grad.iter_mut().for_each(|g| *g /= n * n);
    energy / (n * n)
}

fn descend(angles: &mut [f64], harmonics: &[usize]) -> usize {
    let mut grad = vec![0.0; angles.len()];
    let mut trial_grad = vec![0.0; angles.len()];
    let mut energy = harmonic_energy(angles, harmonics, &mut grad);
    let mut t = 1.0;
    let mut iterations = 0;
    while iterations < 20_000 && energy > 1e-30 {
        let g2: f64 = grad.iter().map(|g| g * g).sum();
        if g2 < 1e-32 {
            break;
        }
        t *= 2.0;
        let mut accepted = false;
        let trial: Vec<f64> = loop {
            let candidate: Vec<f64> = angles.iter().zip(&grad).map(|(a, g)| a - t * g).collect();
            let e = harmonic_energy(&candidate, harmonics, &mut trial_grad);
            if e <= energy - 1e-4 * t * g2 {
                energy = e;
                accepted = true;
                break candidate;
            }
            t *= 0.5;
            if t < 1e-20 {
                break candidate;
            }
        };
        if !accepted {
            break;
        }
        angles.copy_from_slice(&trial);
        std::mem::swap(&mut grad, &mut trial_grad);
        iterations += 1;
    }
    iterations
}

/// Random perturbed-polygon candidates, each descended toward constancy for
/// every `k` in `k_set`.
pub fn characterization_trial(
    n: usize,
    gamma: GammaConfig,
    k_set: &[usize],
    perturbation_budget: f64,
    trials: usize,
    seed: u64,
) -> Result<Vec<CharacterizationTrial>> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need n >= 3, got {n}")));
    }
    if k_set.is_empty() || k_set.contains(&0) {
        return Err(Error::InvalidArgument("k set must be nonempty with every k >= 1".into()));
    }
    if perturbation_budget.is_nan() || perturbation_budget <= 0.0 {
        return Err(Error::InvalidArgument("perturbation budget must be positive".into()));
    }
    let harmonics = active_harmonics(gamma.radius(), k_set);
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial as u64));
            let start = loop {
                let rot = rng.random_range(0.0..TAU);
                let mut angles: Vec<f64> = (0..n)
                    .map(|i| {
                        let jitter = rng.random_range(-perturbation_budget..=perturbation_budget);
                        normalize_angle(rot + TAU * i as f64 / n as f64 + jitter)
                    })
                    .collect();
                angles.sort_by(f64::total_cmp);
                if let Ok(b) = BasePoints::new(angles.iter().copied()) {
                    if regularity_distance(&b) >= 0.05 {
                        break b;
                    }
                }
            };
            let mut angles = start.angles().to_vec();
            let iterations = descend(&mut angles, &harmonics);
            let mut candidate: Vec<f64> = angles.into_iter().map(normalize_angle).collect();
            candidate.sort_by(f64::total_cmp);
            let deviation = k_set
                .iter()
                .map(|&k| constancy_deviation(gamma, &candidate, k))
                .fold(0.0, f64::max);
            Ok(CharacterizationTrial {
                n,
                k_set: k_set.to_vec(),
                initial_regularity_distance: regularity_distance(&start),
                regularity_distance: regularity_distance_of(&candidate),
                candidate,
                deviation,
                iterations,
            })
        })
        .collect()
}
