//! Even-power constancy over a regular polygon and root counting for
//! exponential sums `λ ↦ Σ a_i b_i^λ`.

use std::f64::consts::TAU;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sum::{chord_distance, d_power_sum_dx, power_sum};
use crate::types::{BasePoints, GammaConfig, PowerParam, ProbeAngle};

/// Grid values all below this are treated as an identically zero sum.
pub const ZERO_THRESHOLD: f64 = 1e-14;

/// Width to which derivative zeros in λ are bisected.
pub const LOCUS_BRACKET: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpSum {
    coeffs: Vec<f64>,
    bases: Vec<f64>,
}

fn pow0(b: f64, lambda: f64) -> f64 {
    if b == 0.0 {
        if lambda < 0.0 {
            f64::INFINITY
        } else if lambda == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        b.powf(lambda)
    }
}

impl ExpSum {
    pub fn new(coeffs: Vec<f64>, bases: Vec<f64>) -> Result<Self> {
        if coeffs.len() != bases.len() || coeffs.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "need equally many coefficients and bases, got {} and {}",
                coeffs.len(),
                bases.len()
            )));
        }
        if coeffs.iter().any(|a| !a.is_finite()) || bases.iter().any(|b| !b.is_finite() || *b < 0.0) {
            return Err(Error::InvalidArgument(
                "coefficients must be finite and bases finite and nonnegative".into(),
            ));
        }
        Ok(Self { coeffs, bases })
    }

    /// Random instance: coefficients uniform on [−1, 1], bases log-uniform on
    /// [e⁻³, e³] with no two bases within a ratio of 1e-6.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut logs: Vec<f64> = Vec::with_capacity(n);
        while logs.len() < n {
            let l = rng.random_range(-3.0..=3.0);
            if logs.iter().all(|&o: &f64| (o - l).abs() > 1e-6) {
                logs.push(l);
            }
        }
        let coeffs = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
        Self {
            coeffs,
            bases: logs.into_iter().map(f64::exp).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, lambda: f64) -> f64 {
        self.coeffs
            .iter()
            .zip(&self.bases)
            .map(|(&a, &b)| a * pow0(b, lambda))
            .sum()
    }

    /// A value with the sign of [`ExpSum::eval`], computed with the largest
    /// term scaled to magnitude one so that it neither overflows nor loses
    /// the sign to rounding of huge terms.
    pub fn signed_scaled(&self, lambda: f64) -> f64 {
        let zero_sum: f64 = self
            .coeffs
            .iter()
            .zip(&self.bases)
            .filter(|(_, &b)| b == 0.0)
            .map(|(&a, _)| a)
            .sum();
        if lambda < 0.0 && zero_sum != 0.0 {
            return zero_sum;
        }
        let exponent = |b: f64| lambda * b.ln();
        let top = self
            .coeffs
            .iter()
            .zip(&self.bases)
            .filter(|(&a, &b)| a != 0.0 && b > 0.0)
            .map(|(_, &b)| exponent(b))
            .fold(f64::NEG_INFINITY, f64::max);
        if top == f64::NEG_INFINITY {
            return if lambda == 0.0 { zero_sum } else { 0.0 };
        }
        let positive: f64 = self
            .coeffs
            .iter()
            .zip(&self.bases)
            .filter(|(_, &b)| b > 0.0)
            .map(|(&a, &b)| a * (exponent(b) - top).exp())
            .sum();
        if lambda == 0.0 {
            positive + zero_sum
        } else {
            positive
        }
    }
}

/// Number of sign changes of `λ ↦ Σ a_i b_i^λ` over a uniform grid of
/// `grid` intervals on `[lo, hi]`. Zeros on the grid are skipped.
pub fn count_sign_change_roots(es: &ExpSum, lo: f64, hi: f64, grid: usize) -> Result<usize> {
    if lo >= hi || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidArgument(format!("empty interval [{lo}, {hi}]")));
    }
    if grid < 1000 {
        return Err(Error::InvalidArgument(format!("grid must be at least 1000, got {grid}")));
    }
    let step = (hi - lo) / grid as f64;
    let lambdas = (0..=grid).map(|i| lo + step * i as f64);
    if lambdas.clone().all(|l| es.eval(l).abs() < ZERO_THRESHOLD) {
        return Err(Error::IdenticallyZero);
    }
    let mut last = 0.0f64;
    let mut changes = 0;
    for l in lambdas {
        let v = es.signed_scaled(l);
        if v == 0.0 {
            continue;
        }
        let s = v.signum();
        if last != 0.0 && s != last {
            changes += 1;
        }
        last = s;
    }
    Ok(changes)
}

/// Laurent coefficients of `((a² + 1) − a z − a/z)^k`, indexed `j + k` for
/// `j ∈ [−k, k]`. On `|x| = a` this is `|x − ξ|^{2k}` expanded in `(x/ξ)^j`.
pub fn laurent_coefficients(radius: f64, k: usize) -> Vec<f64> {
    let factor = [-radius, radius * radius + 1.0, -radius];
    let mut coeffs = vec![1.0];
    for _ in 0..k {
        let mut next = vec![0.0; coeffs.len() + 2];
        for (i, &c) in coeffs.iter().enumerate() {
            for (j, &f) in factor.iter().enumerate() {
                next[i + j] += c * f;
            }
        }
        coeffs = next;
    }
    coeffs
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Constant Laurent term `c₀ = Σ_p k!/(p!² (k−2p)!) a^{2p} (a²+1)^{k−2p}`;
/// the mean of `|x − ξ|^{2k}` over `|x| = a`.
pub fn laurent_constant_term(radius: f64, k: usize) -> f64 {
    let a2 = radius * radius;
    (0..=k / 2)
        .map(|p| {
            let multinomial = binomial(k, 2 * p) * binomial(2 * p, p);
            multinomial * a2.powi(p as i32) * (a2 + 1.0).powi((k - 2 * p) as i32)
        })
        .sum()
}

/// The value `n·c₀` that `Σ_i |X P_i|^{2k}` takes everywhere on Γ when
/// `1 ≤ k ≤ n − 1`.
pub fn even_power_constant(n: usize, gamma: GammaConfig, k: usize) -> Result<f64> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::KOutOfRange {
            k,
            max: n.saturating_sub(1),
        });
    }
    Ok(n as f64 * laurent_constant_term(gamma.radius(), k))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstancyReport {
    pub n: usize,
    pub k: usize,
    pub a: f64,
    pub samples: usize,
    pub mean_value: f64,
    pub max_abs_deviation: f64,
    /// `n·c₀`, the average over Γ; the constant itself when `k ≤ n − 1`.
    pub predicted_constant: f64,
}

impl ConstancyReport {
    pub fn relative_deviation(&self) -> f64 {
        self.max_abs_deviation / self.mean_value.abs()
    }

    pub fn relative_mean_error(&self) -> f64 {
        (self.mean_value - self.predicted_constant).abs() / self.predicted_constant.abs()
    }
}

/// Evaluates `Σ_i |X P_i|^{2k}` over a regular `n`-gon at `samples` uniformly
/// random probes on Γ.
pub fn constancy_check<R: Rng + ?Sized>(
    n: usize,
    gamma: GammaConfig,
    k: usize,
    samples: usize,
    rng: &mut R,
) -> Result<ConstancyReport> {
    if samples < 2 {
        return Err(Error::InvalidArgument("constancy check needs at least 2 samples".into()));
    }
    if k == 0 {
        return Err(Error::KOutOfRange { k, max: n.saturating_sub(1) });
    }
    let base = BasePoints::regular(n, 0.0)?;
    let lam = PowerParam::new(2.0 * k as f64)?;
    let values: Vec<f64> = (0..samples)
        .map(|_| power_sum(gamma, &base, lam, ProbeAngle::new(rng.random_range(0.0..TAU))))
        .collect();
    let mean_value = values.iter().sum::<f64>() / samples as f64;
    let max_abs_deviation = values
        .iter()
        .map(|v| (v - mean_value).abs())
        .fold(0.0, f64::max);
    Ok(ConstancyReport {
        n,
        k,
        a: gamma.radius(),
        samples,
        mean_value,
        max_abs_deviation,
        predicted_constant: n as f64 * laurent_constant_term(gamma.radius(), k),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaZero {
    pub lambda: f64,
    pub sign_change: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivativeScan {
    pub n: usize,
    pub a: f64,
    pub x: f64,
    pub zeros: Vec<LambdaZero>,
    /// `{0, 2, …, 2n−2}`.
    pub expected: Vec<f64>,
    /// Largest distance from an expected locus to the nearest zero found.
    pub max_locus_error: f64,
    /// Zeros found are exactly the expected loci, all with a sign change.
    pub matches: bool,
}

/// Zeros in λ of `∂F/∂x` at a fixed probe inside the fundamental arc of a
/// regular `n`-gon, scanned over `[−2, 2n]`.
pub fn derivative_zero_multiplicity_scan(n: usize, gamma: GammaConfig, x: f64) -> Result<DerivativeScan> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    let arc = TAU / n as f64;
    if !(x > 0.0 && x < arc) {
        return Err(Error::Domain {
            what: "x",
            value: x,
            domain: "(0, 2π/n)",
        });
    }
    let base = BasePoints::regular(n, 0.0)?;
    let probe = ProbeAngle::new(x);
    let g = |l: f64| -> Result<f64> { d_power_sum_dx(gamma, &base, PowerParam::new(l)?, probe) };
    // absolute size of the terms of g, the scale of its rounding error
    let term_scale = |l: f64| -> f64 {
        base.angles()
            .iter()
            .map(|&t| l.abs() * gamma.radius() * chord_distance(gamma, probe, t).powf(l - 1.0))
            .sum()
    };

    let (lo, hi) = (-2.0, 2.0 * n as f64);
    let steps = 2000 * n;
    let step = (hi - lo) / steps as f64;
    let grid: Vec<f64> = (0..=steps).map(|i| lo + step * i as f64).collect();
    let values = grid.iter().map(|&l| g(l)).collect::<Result<Vec<f64>>>()?;

    let mut zeros = Vec::new();
    let mut last: Option<usize> = None;
    for (j, &v) in values.iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        if let Some(i) = last {
            if values[i].signum() != v.signum() {
                zeros.push(LambdaZero {
                    lambda: bisect(&g, grid[i], grid[j], values[i])?,
                    sign_change: true,
                });
            }
        }
        last = Some(j);
    }
    for j in 1..values.len() - 1 {
        let (p, c, q) = (values[j - 1], values[j], values[j + 1]);
        let same_sign = p.signum() == c.signum() && c.signum() == q.signum() && c != 0.0;
        if same_sign && c.abs() < p.abs() && c.abs() < q.abs() && c.abs() <= 1e-10 * term_scale(grid[j]) {
            zeros.push(LambdaZero {
                lambda: grid[j],
                sign_change: false,
            });
        }
    }
    zeros.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));

    let expected: Vec<f64> = (0..n).map(|i| 2.0 * i as f64).collect();
    let max_locus_error = expected
        .iter()
        .map(|&e| {
            zeros
                .iter()
                .map(|z| (z.lambda - e).abs())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    let matches = zeros.len() == n
        && zeros.iter().all(|z| z.sign_change)
        && zeros
            .iter()
            .zip(&expected)
            .all(|(z, &e)| (z.lambda - e).abs() <= 1e-8);
    Ok(DerivativeScan {
        n,
        a: gamma.radius(),
        x,
        zeros,
        expected,
        max_locus_error,
        matches,
    })
}

fn bisect<G>(g: &G, mut lo: f64, mut hi: f64, g_lo: f64) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    let sign_lo = g_lo.signum();
    while hi - lo > LOCUS_BRACKET {
        let mid = 0.5 * (lo + hi);
        let v = g(mid)?;
        if v == 0.0 {
            return Ok(mid);
        }
        if v.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
