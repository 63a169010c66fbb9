//! Powered-distance sums from a probe on Γ to base points on the unit circle,
//! the closed isosceles forms used for three base points, and the analytic
//! derivative in the probe angle.
//!
//! Conventions for a vanishing distance `d = 0`: `0^λ = +∞` for `λ < 0`,
//! `0^0 = 1` and `0^λ = 0` for `λ > 0`. With these every sum is total, and
//! `λ = 0` always yields exactly `n`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::types::{BasePoints, GammaConfig, PowerParam, ProbeAngle};

/// Squared chord between `(a cos x, a sin x)` and `(cos θ, sin θ)`, written
/// through the half-angle so that it stays accurate near coincidence.
#[inline]
pub(crate) fn chord_squared(radius: f64, delta: f64) -> f64 {
    let s = (0.5 * delta).sin();
    let r = radius - 1.0;
    r * r + 4.0 * radius * s * s
}

#[inline]
pub(crate) fn powered(d_squared: f64, lambda: f64) -> f64 {
    if d_squared == 0.0 {
        return if lambda < 0.0 {
            f64::INFINITY
        } else if lambda == 0.0 {
            1.0
        } else {
            0.0
        };
    }
    d_squared.powf(0.5 * lambda)
}

/// `sqrt(a² + 1 − 2a cos(x − θ))`.
pub fn chord_distance(gamma: GammaConfig, x: ProbeAngle, theta: f64) -> f64 {
    chord_squared(gamma.radius(), x.value() - theta).sqrt()
}

/// `Σ_i |X P_i|^λ` for the probe `X` at angle `x` on Γ.
pub fn power_sum(gamma: GammaConfig, base: &BasePoints, lam: PowerParam, x: ProbeAngle) -> f64 {
    power_sum_raw(gamma.radius(), base.angles(), lam.value(), x.value())
}

#[inline]
pub(crate) fn power_sum_raw(radius: f64, angles: &[f64], lambda: f64, x: f64) -> f64 {
    angles
        .iter()
        .map(|&t| powered(chord_squared(radius, x - t), lambda))
        .sum()
}

/// Derivative of [`power_sum`] with respect to the probe angle,
/// `Σ λ |P_iX|^{λ-1} d|P_iX|/dx` with `d|P_iX|/dx = a sin(x − θ_i) / |P_iX|`.
///
/// A vanishing chord (only possible on the unit circle) is removable for
/// `λ > 1` and contributes 0; otherwise it is reported as [`Error::Singular`].
pub fn d_power_sum_dx(
    gamma: GammaConfig,
    base: &BasePoints,
    lam: PowerParam,
    x: ProbeAngle,
) -> Result<f64> {
    let lambda = lam.value();
    if lambda == 0.0 {
        return Ok(0.0);
    }
    let a = gamma.radius();
    let mut total = 0.0;
    for &theta in base.angles() {
        let delta = x.value() - theta;
        let d2 = chord_squared(a, delta);
        if d2 == 0.0 {
            if lambda > 1.0 {
                continue;
            }
            return Err(Error::Singular { angle: theta });
        }
        total += lambda * a * delta.sin() * d2.powf(0.5 * lambda - 1.0);
    }
    Ok(total)
}

/// Closed form of the three-point sum in the isosceles configuration:
/// `2^λ (2 sin^λ(x/2) + sin^λ(3x/2))` for `x ∈ (0, 2π/3]`.
///
/// `x` is the apex angle of the triangle, and the probe sits at the midpoint
/// of the arc opposite the apex. See [`isosceles_configuration`].
pub fn isosceles_f(x: f64, lam: PowerParam) -> Result<f64> {
    if !(x > 0.0 && x <= 2.0 * PI / 3.0) {
        return Err(Error::Domain {
            what: "apex angle",
            value: x,
            domain: "(0, 2π/3]",
        });
    }
    let lambda = lam.value();
    let half = (0.5 * x).sin();
    let three_half = (1.5 * x).sin().max(0.0);
    let pow = |s: f64| powered(s * s, lambda);
    Ok(2f64.powf(lambda) * (2.0 * pow(half) + pow(three_half)))
}

/// The explicit configuration behind [`isosceles_f`]: the probe at angle 0,
/// `A` and `B` at `∓x`, and `C` at `−3x`, so that `MA = MB = 2 sin(x/2)` and
/// `MC = 2 sin(3x/2)`.
pub fn isosceles_configuration(x: f64) -> Result<(BasePoints, ProbeAngle)> {
    if !(x > 0.0 && x <= 2.0 * PI / 3.0) {
        return Err(Error::Domain {
            what: "apex angle",
            value: x,
            domain: "(0, 2π/3]",
        });
    }
    let base = BasePoints::new([-x, x, -3.0 * x])?;
    Ok((base, ProbeAngle::new(0.0)))
}

/// `MA + MB = 2 (sin x + sin(c − x))` for the antipode `M` of the largest-angle
/// vertex, with `0 ≤ x ≤ c < π/2`.
pub fn two_chord_sum(c: f64, x: f64) -> Result<f64> {
    if !(0.0..FRAC_PI_2).contains(&c) {
        return Err(Error::Domain {
            what: "c",
            value: c,
            domain: "[0, π/2)",
        });
    }
    if !(0.0..=c).contains(&x) {
        return Err(Error::Domain {
            what: "x",
            value: x,
            domain: "[0, c]",
        });
    }
    Ok(2.0 * (x.sin() + (c - x).sin()))
}

/// Range of `x` compatible with `c` being the largest angle of an acute
/// triangle: both remaining angles `π/2 − x` and `π/2 − (c − x)` must not
/// exceed `c`. Non-empty exactly for `c ∈ [π/3, π/2)`.
pub fn two_chord_admissible_range(c: f64) -> Result<(f64, f64)> {
    // 1e-15 absorbs rounding of π/3 itself
    if !(PI / 3.0 - 1e-15..FRAC_PI_2).contains(&c) {
        return Err(Error::Domain {
            what: "c",
            value: c,
            domain: "[π/3, π/2)",
        });
    }
    let lo = FRAC_PI_2 - c;
    let hi = (2.0 * c - FRAC_PI_2).max(lo);
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    fn lam(v: f64) -> PowerParam {
        PowerParam::new(v).unwrap()
    }

    fn gamma(a: f64) -> GammaConfig {
        GammaConfig::new(a).unwrap()
    }

    #[test]
    fn chord_examples() {
        assert_eq!(chord_distance(gamma(1.0), 0.0.into(), 0.0), 0.0);
        assert_relative_eq!(chord_distance(gamma(1.0), PI.into(), 0.0), 2.0, epsilon = 1e-15);
        assert_relative_eq!(
            chord_distance(gamma(2.0), FRAC_PI_2.into(), 0.0),
            5f64.sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn power_sum_examples() {
        let tri = BasePoints::equilateral();
        for x in [0.0, 0.3, 1.7, 4.0] {
            assert_relative_eq!(
                power_sum(gamma(1.0), &tri, lam(2.0), x.into()),
                6.0,
                max_relative = 1e-14
            );
        }
        let mid = ProbeAngle::new(PI / 3.0);
        assert_relative_eq!(power_sum(gamma(1.0), &tri, lam(1.0), mid), 4.0, max_relative = 1e-14);

        let sq = BasePoints::regular(4, 0.0).unwrap();
        for x in [0.1, 0.9, 2.2, 5.5] {
            assert_relative_eq!(
                power_sum(gamma(1.0), &sq, lam(4.0), x.into()),
                24.0,
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn coincident_point_conventions() {
        let tri = BasePoints::equilateral();
        let at = ProbeAngle::new(0.0);
        assert_eq!(power_sum(gamma(1.0), &tri, lam(-1.0), at), f64::INFINITY);
        assert_eq!(power_sum(gamma(1.0), &tri, lam(0.0), at), 3.0);
        let direct = 2.0 * 3f64.sqrt();
        assert_relative_eq!(power_sum(gamma(1.0), &tri, lam(1.0), at), direct, max_relative = 1e-14);
    }

    #[test]
    fn pole_grows_monotonically() {
        let base = BasePoints::regular(5, 0.2).unwrap();
        let mut prev = 0.0;
        for e in 1..=12 {
            let x = ProbeAngle::new(0.2 + 10f64.powi(-e));
            let v = power_sum(gamma(1.0), &base, lam(-0.5), x);
            assert!(v > prev, "not increasing at step {e}: {v} <= {prev}");
            prev = v;
        }
    }

    #[test]
    fn isosceles_examples() {
        for l in [-3.0, -0.5, 0.0, 0.7, 1.0, 2.0, 3.5, 6.0] {
            let v = isosceles_f(PI / 3.0, lam(l)).unwrap();
            assert_relative_eq!(v, 2.0 + 2f64.powf(l), max_relative = 1e-14);
            let w = isosceles_f(FRAC_PI_2, lam(l)).unwrap();
            assert_relative_eq!(w, 3.0 * 2f64.sqrt().powf(l), max_relative = 1e-14);
        }
        assert_relative_eq!(isosceles_f(PI / 3.0, lam(2.0)).unwrap(), 6.0, max_relative = 1e-15);
        assert!(isosceles_f(0.0, lam(1.0)).is_err());
        assert!(isosceles_f(2.1, lam(1.0)).is_err());
        assert!(isosceles_f(2.0 * PI / 3.0, lam(1.0)).is_ok());
    }

    #[test]
    fn derivative_examples() {
        let tri = BasePoints::equilateral();
        for x in [0.0, 0.4, 2.0] {
            let d = d_power_sum_dx(gamma(1.0), &tri, lam(2.0), x.into()).unwrap();
            assert!(d.abs() < 1e-13, "{d}");
        }
        for n in 2..=7 {
            let base = BasePoints::regular(n, 0.0).unwrap();
            for a in [0.5, 1.0, 1.7] {
                for l in [-2.0, 0.5, 3.3, 9.0] {
                    let x = ProbeAngle::new(PI / n as f64);
                    let d = d_power_sum_dx(gamma(a), &base, lam(l), x).unwrap();
                    let scale = power_sum(gamma(a), &base, lam(l), x).abs();
                    assert!(d.abs() <= 1e-12 * scale.max(1.0), "n={n} a={a} l={l}: {d}");
                }
                let d = d_power_sum_dx(gamma(a), &base, lam(0.0), 0.37.into()).unwrap();
                assert_eq!(d, 0.0);
            }
        }
    }

    #[test]
    fn derivative_singularity() {
        let tri = BasePoints::equilateral();
        let at = ProbeAngle::new(0.0);
        assert!(matches!(
            d_power_sum_dx(gamma(1.0), &tri, lam(0.5), at),
            Err(Error::Singular { .. })
        ));
        assert!(d_power_sum_dx(gamma(1.0), &tri, lam(-1.0), at).is_err());
        assert!(d_power_sum_dx(gamma(1.0), &tri, lam(1.5), at).is_ok());
        assert!(d_power_sum_dx(gamma(1.2), &tri, lam(-1.0), at).is_ok());
    }

    #[test]
    fn two_chord_examples() {
        assert_relative_eq!(two_chord_sum(PI / 3.0, PI / 6.0).unwrap(), 2.0, max_relative = 1e-15);
        assert_relative_eq!(two_chord_sum(PI / 3.0, 0.0).unwrap(), 3f64.sqrt(), max_relative = 1e-15);
        assert!(two_chord_sum(FRAC_PI_2, 0.1).is_err());
        assert!(two_chord_sum(1.0, 1.1).is_err());
        assert!(two_chord_sum(1.0, -0.1).is_err());

        let (lo, hi) = two_chord_admissible_range(PI / 3.0).unwrap();
        assert_relative_eq!(lo, PI / 6.0, max_relative = 1e-14);
        assert_relative_eq!(hi, PI / 6.0, max_relative = 1e-14);
        assert!(two_chord_admissible_range(1.0).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn chord_symmetric_under_reflection(a in 0.05f64..4.0, x in -10.0f64..10.0, t in -10.0f64..10.0) {
            let g = gamma(a);
            let forward = chord_distance(g, x.into(), t);
            let reflected = chord_distance(g, (2.0 * t - x).into(), t);
            prop_assert!((forward - reflected).abs() <= 1e-12 * forward.max(1.0));
        }

        #[test]
        fn lambda_zero_counts_points(n in 1usize..12, a in 0.1f64..3.0, rot in 0.0f64..TAU, x in 0.0f64..TAU) {
            let base = BasePoints::regular(n, rot).unwrap();
            prop_assert_eq!(power_sum(gamma(a), &base, lam(0.0), x.into()), n as f64);
        }

        #[test]
        fn isosceles_matches_explicit_sum(x in 1e-3f64..(2.0 * PI / 3.0 - 1e-3), l in -4.0f64..8.0) {
            let closed = isosceles_f(x, lam(l)).unwrap();
            let (base, probe) = isosceles_configuration(x).unwrap();
            let direct = power_sum(GammaConfig::unit(), &base, lam(l), probe);
            prop_assert!((closed - direct).abs() <= 1e-12 * direct.abs(), "{} vs {}", closed, direct);
        }
    }
}
