//! Sums of powered distances from a probe on a circle to points on a
//! concentric unit circle.
//!
//! ```
//! use powersum::{power_sum, BasePoints, GammaConfig, PowerParam, ProbeAngle};
//!
//! let tri = BasePoints::equilateral();
//! let lam = PowerParam::new(2.0).unwrap();
//! let v = power_sum(GammaConfig::unit(), &tri, lam, ProbeAngle::new(0.3));
//! assert!((v - 6.0).abs() < 1e-12);
//! ```

pub mod cli;
pub mod conjecture;
pub mod error;
pub mod extremal;
pub mod identities;
pub mod oracle;
pub mod sum;
pub mod types;
pub mod verify;

pub use error::{Error, Result};
pub use extremal::{
    classify_regime, predict_extrema, triangle_bound, BoundSense, ExtremumReport, LocationClass, Regime, RegimeKind,
    TriangleBound,
};
pub use oracle::{global_optimize, unbounded_probe, OracleResult};
pub use sum::{chord_distance, d_power_sum_dx, isosceles_f, power_sum};
pub use types::{BasePoints, Extremum, GammaConfig, PowerParam, ProbeAngle};
