//! Where the powered sum over a regular base attains its extrema, and the
//! sharp three-point bounds.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{global_optimize, optimize_on_arc};
use crate::sum::power_sum;
use crate::types::{circular_distance, BasePoints, Extremum, GammaConfig, PowerParam, ProbeAngle};
use crate::verify::VerificationOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", rename_all = "kebab-case")]
pub enum RegimeKind {
    NegativeLambda,
    /// λ ∈ {0, 2, …, 2n−2}: the sum does not depend on the probe.
    EvenIntegerConstant,
    /// 2m < λ < 2m+2 with m ≤ n−2.
    BandBetweenEvens { m: u32 },
    /// λ > 2n−2 and not an even integer below 2n.
    AtLeast2n,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Regime {
    pub n: usize,
    pub kind: RegimeKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocationClass {
    VertexRay,
    ArcMidpoint,
    Constant,
    UnboundedAtVertexRay,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremumReport {
    pub kind: Extremum,
    pub location_class: LocationClass,
    pub witness_angles: Vec<ProbeAngle>,
    #[serde(serialize_with = "crate::types::serialize_float")]
    pub value: f64,
}

impl ExtremumReport {
    /// Circular distance from `x` to the nearest witness; infinite when the
    /// report has none.
    pub fn distance_to_witness(&self, x: ProbeAngle) -> f64 {
        self.witness_angles
            .iter()
            .map(|w| circular_distance(w.value(), x.value()))
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSense {
    /// Some probe has `f(M, λ) ≥ bound`.
    ExistsMGeq,
    /// Some probe has `f(M, λ) ≤ bound`.
    ExistsMLeq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SharpConfig {
    Equilateral,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleBound {
    pub lambda: f64,
    #[serde(serialize_with = "crate::types::serialize_float")]
    pub bound: f64,
    pub sense: BoundSense,
    pub sharp_config: SharpConfig,
}

fn is_even_integer(x: f64) -> bool {
    x.fract() == 0.0 && (x * 0.5).fract() == 0.0
}

pub fn classify_regime(n: usize, lam: PowerParam) -> Result<Regime> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("regime needs n >= 2, got {n}")));
    }
    let lambda = lam.value();
    let top = 2.0 * (n as f64 - 1.0);
    let kind = if lambda < 0.0 {
        RegimeKind::NegativeLambda
    } else if lambda <= top && is_even_integer(lambda) {
        RegimeKind::EvenIntegerConstant
    } else if lambda > top {
        RegimeKind::AtLeast2n
    } else {
        RegimeKind::BandBetweenEvens {
            m: (lambda * 0.5).floor() as u32,
        }
    };
    Ok(Regime { n, kind })
}

/// Predicted minimum and maximum of the sum over a regular base, with the
/// values filled in by evaluating at the witnesses.
pub fn predict_extrema(
    gamma: GammaConfig,
    base: &BasePoints,
    lam: PowerParam,
) -> Result<(ExtremumReport, ExtremumReport)> {
    if !base.is_regular() {
        return Err(Error::NotRegular);
    }
    let n = base.len();
    let regime = classify_regime(n, lam)?;
    let vertex = base.vertex_rays();
    let midpoint = base.arc_midpoints();

    let report = |kind: Extremum, class: LocationClass| -> ExtremumReport {
        let witness_angles = match class {
            LocationClass::VertexRay | LocationClass::UnboundedAtVertexRay => vertex.clone(),
            LocationClass::ArcMidpoint => midpoint.clone(),
            LocationClass::Constant => Vec::new(),
        };
        let value = match class {
            LocationClass::UnboundedAtVertexRay => f64::INFINITY,
            LocationClass::Constant => power_sum(gamma, base, lam, midpoint[0]),
            _ => power_sum(gamma, base, lam, witness_angles[0]),
        };
        ExtremumReport {
            kind,
            location_class: class,
            witness_angles,
            value,
        }
    };

    use LocationClass::*;
    let (min_class, max_class) = match regime.kind {
        RegimeKind::NegativeLambda if gamma.is_unit() => (ArcMidpoint, UnboundedAtVertexRay),
        RegimeKind::NegativeLambda => (ArcMidpoint, VertexRay),
        RegimeKind::EvenIntegerConstant => (Constant, Constant),
        RegimeKind::BandBetweenEvens { m } if m % 2 == 0 => (VertexRay, ArcMidpoint),
        RegimeKind::BandBetweenEvens { .. } => (ArcMidpoint, VertexRay),
        RegimeKind::AtLeast2n if n % 2 == 0 => (ArcMidpoint, VertexRay),
        RegimeKind::AtLeast2n => (VertexRay, ArcMidpoint),
    };
    Ok((report(Extremum::Min, min_class), report(Extremum::Max, max_class)))
}

/// The sharp bound for three base points on the unit circle: `2 + 2^λ`,
/// except `2·√3^λ` on `(2, 4)`.
pub fn triangle_bound(lam: PowerParam) -> TriangleBound {
    let lambda = lam.value();
    let (bound, sense) = if lambda < 0.0 {
        (2.0 + 2f64.powf(lambda), BoundSense::ExistsMLeq)
    } else if lambda > 2.0 && lambda < 4.0 {
        (2.0 * 3f64.powf(0.5 * lambda), BoundSense::ExistsMGeq)
    } else {
        (2.0 + 2f64.powf(lambda), BoundSense::ExistsMGeq)
    };
    TriangleBound {
        lambda,
        bound,
        sense,
        sharp_config: SharpConfig::Equilateral,
    }
}

/// Checks that some probe on the unit circle has `Σ |MM_i|^{-2} ≤ n²/4`,
/// flagging equality for regular bases.
pub fn inverse_square_bound_check(base: &BasePoints) -> Result<VerificationOutcome> {
    let n = base.len() as f64;
    let bound = n * n / 4.0;
    let lam = PowerParam::new(-2.0)?;
    let min = global_optimize(GammaConfig::unit(), base, lam, Extremum::Min, 1e-10)?;
    let passed = min.value <= bound + 1e-9;
    let equality = (min.value - bound).abs() <= 1e-9 * bound;
    let mut outcome = VerificationOutcome::new("inverse-square-bound", bound, min.value, 1e-9, passed);
    outcome.equality = Some(equality);
    outcome.detail = format!(
        "n={} regular={} argmin={:.6}",
        base.len(),
        base.is_regular(),
        min.argopt.value()
    );
    Ok(outcome)
}

/// Local minima of the sum on each open arc between consecutive base points.
pub fn arc_local_minima(gamma: GammaConfig, base: &BasePoints, lam: PowerParam) -> Result<Vec<f64>> {
    let angles = base.angles();
    let gaps = base.gaps();
    angles
        .iter()
        .zip(&gaps)
        .map(|(&start, &gap)| {
            // stay off the endpoints, where the sum has a pole for λ < 0 on the unit circle
            let margin = (1e-6 * gap).min(1e-6);
            optimize_on_arc(
                gamma,
                base,
                lam,
                Extremum::Min,
                start + margin,
                start + gap - margin,
                4096,
                1e-10,
            )
            .map(|r| r.value)
        })
        .collect()
}

/// `2 + 2^λ`, the sum at an arc midpoint of the regular triangle.
pub fn equilateral_midpoint_value(lam: PowerParam) -> f64 {
    2.0 + 2f64.powf(lam.value())
}

/// Sum at a vertex of the regular triangle, `2·√3^λ` for `λ > 0`.
pub fn equilateral_vertex_value(lam: PowerParam) -> f64 {
    let tri = BasePoints::equilateral();
    power_sum(GammaConfig::unit(), &tri, lam, ProbeAngle::new(0.0))
}
