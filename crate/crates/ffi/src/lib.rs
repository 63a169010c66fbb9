//! C ABI over `powersum`.
//!
//! Every fallible function returns a [`PsStatus`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can
//! be read with [`ps_last_error_message`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use powersum::extremal::{ExtremumReport, LocationClass, RegimeKind};
use powersum::identities::even_power_constant;
use powersum::sum::isosceles_f;
use powersum::{BasePoints, BoundSense, Error, Extremum, GammaConfig, PowerParam, ProbeAngle};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotRegular = 3,
    Singular = 4,
    Unbounded = 5,
    KOutOfRange = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsExtremum {
    Min = 0,
    Max = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsLocationClass {
    VertexRay = 0,
    ArcMidpoint = 1,
    Constant = 2,
    UnboundedAtVertexRay = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsRegimeKind {
    NegativeLambda = 0,
    EvenIntegerConstant = 1,
    BandBetweenEvens = 2,
    AtLeast2n = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsBoundSense {
    /// Some probe has f >= bound.
    ExistsMGeq = 0,
    /// Some probe has f <= bound.
    ExistsMLeq = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsOracleResult {
    pub argopt: f64,
    pub value: f64,
    pub certified_window: f64,
    pub samples: usize,
    /// Nonzero when the sum did not vary over the scan.
    pub constant: u8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsExtremumReport {
    pub location_class: PsLocationClass,
    /// `inf` for an unbounded maximum.
    pub value: f64,
    /// First witness angle; NaN when there is none.
    pub witness: f64,
    pub witness_count: usize,
}

/// Opaque handle: probe-circle radius plus base points.
pub struct PsConfig {
    gamma: GammaConfig,
    base: BasePoints,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PsStatus {
    match e {
        Error::NotRegular => PsStatus::NotRegular,
        Error::Singular { .. } => PsStatus::Singular,
        Error::Unbounded => PsStatus::Unbounded,
        Error::KOutOfRange { .. } => PsStatus::KOutOfRange,
        _ => PsStatus::InvalidArgument,
    }
}

/// Runs `body`, converting errors and panics into a status.
fn guard<F>(body: F) -> PsStatus
where
    F: FnOnce() -> Result<(), (PsStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            PsStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PsStatus::Panic
        }
    }
}

fn lib<T>(r: powersum::Result<T>) -> Result<T, (PsStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (PsStatus, String) {
    (PsStatus::NullPointer, format!("{what} is null"))
}

unsafe fn cfg_ref<'a>(cfg: *const PsConfig) -> Result<&'a PsConfig, (PsStatus, String)> {
    cfg.as_ref().ok_or_else(|| null("config"))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), (PsStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ps_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Regular `n`-gon with a vertex at angle 0, probed on the circle of radius
/// `radius`. The handle must be released with [`ps_config_free`].
///
/// # Safety
/// `out` must be null or valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn ps_config_new_regular(n: usize, radius: f64, out: *mut *mut PsConfig) -> PsStatus {
    guard(|| {
        let gamma = lib(GammaConfig::new(radius))?;
        let base = lib(BasePoints::regular(n, 0.0))?;
        write(out, Box::into_raw(Box::new(PsConfig { gamma, base })))
    })
}

/// Arbitrary distinct base angles.
///
/// # Safety
/// `angles` must point to `len` readable doubles; `out` must be null or
/// valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn ps_config_new_angles(
    angles: *const f64,
    len: usize,
    radius: f64,
    out: *mut *mut PsConfig,
) -> PsStatus {
    guard(|| {
        if angles.is_null() {
            return Err(null("angles"));
        }
        let slice = std::slice::from_raw_parts(angles, len);
        let gamma = lib(GammaConfig::new(radius))?;
        let base = lib(BasePoints::new(slice.iter().copied()))?;
        write(out, Box::into_raw(Box::new(PsConfig { gamma, base })))
    })
}

/// # Safety
/// `cfg` must be null or a handle from a `ps_config_new_*` call that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn ps_config_free(cfg: *mut PsConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Number of base points, or 0 for a null handle.
///
/// # Safety
/// `cfg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ps_config_len(cfg: *const PsConfig) -> usize {
    cfg.as_ref().map_or(0, |c| c.base.len())
}

/// Nonzero when the base points form a regular polygon.
///
/// # Safety
/// `cfg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ps_config_is_regular(cfg: *const PsConfig) -> u8 {
    cfg.as_ref().map_or(0, |c| c.base.is_regular() as u8)
}

/// `Σ |X P_i|^λ` at probe angle `x`; poles give `inf`.
///
/// # Safety
/// `cfg` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ps_power_sum(cfg: *const PsConfig, lambda: f64, x: f64, out: *mut f64) -> PsStatus {
    guard(|| {
        let c = cfg_ref(cfg)?;
        let lam = lib(PowerParam::new(lambda))?;
        if !x.is_finite() {
            return Err((PsStatus::InvalidArgument, format!("probe angle {x} is not finite")));
        }
        write(out, powersum::power_sum(c.gamma, &c.base, lam, ProbeAngle::new(x)))
    })
}

/// Derivative of the sum in the probe angle.
///
/// # Safety
/// `cfg` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ps_d_power_sum_dx(cfg: *const PsConfig, lambda: f64, x: f64, out: *mut f64) -> PsStatus {
    guard(|| {
        let c = cfg_ref(cfg)?;
        let lam = lib(PowerParam::new(lambda))?;
        if !x.is_finite() {
            return Err((PsStatus::InvalidArgument, format!("probe angle {x} is not finite")));
        }
        write(out, lib(powersum::d_power_sum_dx(c.gamma, &c.base, lam, ProbeAngle::new(x)))?)
    })
}

/// Distance from the probe at angle `x` on the circle of radius `radius` to
/// the unit-circle point at angle `theta`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ps_chord_distance(radius: f64, x: f64, theta: f64, out: *mut f64) -> PsStatus {
    guard(|| {
        let gamma = lib(GammaConfig::new(radius))?;
        if !x.is_finite() || !theta.is_finite() {
            return Err((PsStatus::InvalidArgument, "angles must be finite".into()));
        }
        write(out, powersum::chord_distance(gamma, ProbeAngle::new(x), theta))
    })
}

/// Closed form for the isosceles family, `x ∈ (0, 2π/3]`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ps_isosceles_f(x: f64, lambda: f64, out: *mut f64) -> PsStatus {
    guard(|| {
        let lam = lib(PowerParam::new(lambda))?;
        write(out, lib(isosceles_f(x, lam))?)
    })
}

/// The constant value of `Σ |X P_i|^{2k}` over a regular `n`-gon,
/// `1 ≤ k ≤ n − 1`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ps_even_power_constant(n: usize, radius: f64, k: usize, out: *mut f64) -> PsStatus {
    guard(|| {
        let gamma = lib(GammaConfig::new(radius))?;
        write(out, lib(even_power_constant(n, gamma, k))?)
    })
}

/// Brute-force global extremum over the probe circle.
///
/// # Safety
/// `cfg` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ps_oracle_optimize(
    cfg: *const PsConfig,
    lambda: f64,
    kind: PsExtremum,
    angular_tol: f64,
    out: *mut PsOracleResult,
) -> PsStatus {
    guard(|| {
        let c = cfg_ref(cfg)?;
        let lam = lib(PowerParam::new(lambda))?;
        let kind = match kind {
            PsExtremum::Min => Extremum::Min,
            PsExtremum::Max => Extremum::Max,
        };
        let r = lib(powersum::global_optimize(c.gamma, &c.base, lam, kind, angular_tol))?;
        write(
            out,
            PsOracleResult {
                argopt: r.argopt.value(),
                value: r.value,
                certified_window: r.certified_window,
                samples: r.samples,
                constant: r.constant as u8,
            },
        )
    })
}

fn report(r: &ExtremumReport) -> PsExtremumReport {
    PsExtremumReport {
        location_class: match r.location_class {
            LocationClass::VertexRay => PsLocationClass::VertexRay,
            LocationClass::ArcMidpoint => PsLocationClass::ArcMidpoint,
            LocationClass::Constant => PsLocationClass::Constant,
            LocationClass::UnboundedAtVertexRay => PsLocationClass::UnboundedAtVertexRay,
        },
        value: r.value,
        witness: r.witness_angles.first().map_or(f64::NAN, |w| w.value()),
        witness_count: r.witness_angles.len(),
    }
}

/// Predicted minimum and maximum for a regular configuration.
///
/// # Safety
/// `cfg` must be a live handle; both outputs valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ps_predict_extrema(
    cfg: *const PsConfig,
    lambda: f64,
    out_min: *mut PsExtremumReport,
    out_max: *mut PsExtremumReport,
) -> PsStatus {
    guard(|| {
        let c = cfg_ref(cfg)?;
        if out_min.is_null() || out_max.is_null() {
            return Err(null("output pointer"));
        }
        let lam = lib(PowerParam::new(lambda))?;
        let (lo, hi) = lib(powersum::predict_extrema(c.gamma, &c.base, lam))?;
        write(out_min, report(&lo))?;
        write(out_max, report(&hi))
    })
}

/// Sharp bound for three points on the unit circle.
///
/// # Safety
/// Both outputs must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ps_triangle_bound(lambda: f64, out_bound: *mut f64, out_sense: *mut PsBoundSense) -> PsStatus {
    guard(|| {
        if out_bound.is_null() || out_sense.is_null() {
            return Err(null("output pointer"));
        }
        let b = powersum::triangle_bound(lib(PowerParam::new(lambda))?);
        write(out_bound, b.bound)?;
        write(
            out_sense,
            match b.sense {
                BoundSense::ExistsMGeq => PsBoundSense::ExistsMGeq,
                BoundSense::ExistsMLeq => PsBoundSense::ExistsMLeq,
            },
        )
    })
}

/// Regime of `λ` for `n` points. `out_m` receives the band index for
/// `BandBetweenEvens` and 0 otherwise.
///
/// # Safety
/// Both outputs must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ps_classify_regime(
    n: usize,
    lambda: f64,
    out_kind: *mut PsRegimeKind,
    out_m: *mut u32,
) -> PsStatus {
    guard(|| {
        if out_kind.is_null() || out_m.is_null() {
            return Err(null("output pointer"));
        }
        let r = lib(powersum::classify_regime(n, lib(PowerParam::new(lambda))?))?;
        let (kind, m) = match r.kind {
            RegimeKind::NegativeLambda => (PsRegimeKind::NegativeLambda, 0),
            RegimeKind::EvenIntegerConstant => (PsRegimeKind::EvenIntegerConstant, 0),
            RegimeKind::BandBetweenEvens { m } => (PsRegimeKind::BandBetweenEvens, m),
            RegimeKind::AtLeast2n => (PsRegimeKind::AtLeast2n, 0),
        };
        write(out_kind, kind)?;
        write(out_m, m)
    })
}
