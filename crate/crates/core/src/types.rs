//! Domain types shared by every module: the probe circle, base points,
//! probe angles and the exponent.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};

/// Consecutive gaps of a regular configuration agree with `2π/n` to this.
pub const REGULARITY_TOL: f64 = 1e-12;

/// Base points closer than this (circularly) are treated as coincident.
pub const MIN_SEPARATION: f64 = 1e-12;

/// Reduces an angle to `[0, 2π)`.
pub fn normalize_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Length of the shorter arc between two angles, in `[0, π]`.
pub fn circular_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Serializes a float as a number when finite and as the string `"inf"`,
/// `"-inf"` or `"nan"` otherwise. Use with `#[serde(serialize_with)]`.
pub fn serialize_float<S: serde::Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_str(&crate::types::float_token(*v))
    }
}

/// Text form used for non-finite values in every output encoding.
pub fn float_token(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v:.16e}")
    }
}

/// The probe circle Γ, concentric with the unit circle carrying the base
/// points. `radius == 1` is the circumscribed circle itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaConfig {
    radius: f64,
}

impl GammaConfig {
    pub fn new(radius: f64) -> Result<Self> {
        if radius.is_finite() && radius > 0.0 {
            Ok(Self { radius })
        } else {
            Err(Error::InvalidRadius(radius))
        }
    }

    pub fn unit() -> Self {
        Self { radius: 1.0 }
    }

    pub fn radius(self) -> f64 {
        self.radius
    }

    pub fn is_unit(self) -> bool {
        self.radius == 1.0
    }
}

/// Position of the probe on Γ, stored in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct ProbeAngle(f64);

impl ProbeAngle {
    pub fn new(x: f64) -> Self {
        debug_assert!(x.is_finite(), "probe angle must be finite");
        Self(normalize_angle(x))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<f64> for ProbeAngle {
    fn from(x: f64) -> Self {
        Self::new(x)
    }
}

/// The exponent λ. Any finite real is admitted.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct PowerParam(f64);

impl PowerParam {
    pub fn new(lambda: f64) -> Result<Self> {
        if lambda.is_finite() {
            Ok(Self(lambda))
        } else {
            Err(Error::InvalidLambda(lambda))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Which side of an optimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremum {
    Min,
    Max,
}

impl Extremum {
    /// True when `candidate` is strictly better than `incumbent`.
    pub fn improves(self, candidate: f64, incumbent: f64) -> bool {
        match self {
            Extremum::Min => candidate < incumbent,
            Extremum::Max => candidate > incumbent,
        }
    }
}

/// Angular positions of the base points on the unit circle, normalized and
/// sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasePoints {
    angles: Vec<f64>,
    regular: bool,
}

impl BasePoints {
    /// Builds a configuration from arbitrary angles. Fails on an empty list,
    /// non-finite input or (circularly) coincident points.
    pub fn new<I: IntoIterator<Item = f64>>(angles: I) -> Result<Self> {
        let mut angles: Vec<f64> = angles.into_iter().collect();
        if angles.is_empty() {
            return Err(Error::InvalidBasePoints("no base points".into()));
        }
        if let Some(bad) = angles.iter().find(|a| !a.is_finite()) {
            return Err(Error::InvalidBasePoints(format!("non-finite angle {bad}")));
        }
        for a in &mut angles {
            *a = normalize_angle(*a);
        }
        angles.sort_by(f64::total_cmp);
        let n = angles.len();
        if n > 1 {
            for i in 0..n {
                let next = angles[(i + 1) % n];
                if circular_distance(angles[i], next) < MIN_SEPARATION {
                    return Err(Error::InvalidBasePoints(format!(
                        "points at {} and {} coincide",
                        angles[i], next
                    )));
                }
            }
        }
        let regular = gaps_of(&angles)
            .all(|g| (g - TAU / n as f64).abs() <= REGULARITY_TOL);
        Ok(Self { angles, regular })
    }

    /// Vertices of a regular `n`-gon rotated by `rotation`.
    pub fn regular(n: usize, rotation: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidBasePoints("no base points".into()));
        }
        let step = TAU / n as f64;
        Self::new((0..n).map(|i| rotation + step * i as f64))
    }

    /// The regular triangle with a vertex at angle 0.
    pub fn equilateral() -> Self {
        Self::regular(3, 0.0).expect("three distinct points")
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }

    /// Counter-clockwise gap from each point to the next one.
    pub fn gaps(&self) -> Vec<f64> {
        gaps_of(&self.angles).collect()
    }

    /// Angles of the rays `OP_i`; on Γ these are the points `B_i`.
    pub fn vertex_rays(&self) -> Vec<ProbeAngle> {
        self.angles.iter().copied().map(ProbeAngle::new).collect()
    }

    /// Angles bisecting each arc between consecutive rays.
    pub fn arc_midpoints(&self) -> Vec<ProbeAngle> {
        self.angles
            .iter()
            .zip(gaps_of(&self.angles))
            .map(|(&a, g)| ProbeAngle::new(a + 0.5 * g))
            .collect()
    }
}

fn gaps_of(angles: &[f64]) -> impl Iterator<Item = f64> + '_ {
    let n = angles.len();
    (0..n).map(move |i| {
        if i + 1 < n {
            angles[i + 1] - angles[i]
        } else {
            angles[0] + TAU - angles[i]
        }
    })
}
