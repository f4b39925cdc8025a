//! C ABI over `kahler_lab`.
//!
//! Objects are opaque handles created by `kl_*_new`/`kl_*_from_*` and
//! released with the matching `kl_*_free`. Every fallible call returns a
//! [`KlStatus`]; on failure a description is kept per thread and can be read
//! with [`kl_last_error`]. Panics never cross the boundary.

use kahler_lab::comparison::{compare, CompareOptions, TheoremId};
use kahler_lab::profile::{builtin, Grid, RadialProfile, Verdict};
use kahler_lab::surface::{threshold_hsc, threshold_ricci, BlowupSurfaceMetric, ChartPoint, FdOptions, ThresholdOptions};
use kahler_lab::tensor::{
    extremize_over_sphere, Functional, Mode, SphereOptions, TangentDirection, TensorJson, UnitaryFrameCurvature, C64,
};
use kahler_lab::Error;
use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    SymmetryViolation = 4,
    Numerical = 5,
    UnknownName = 6,
    Parse = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KlFunctional {
    HolomorphicSectional = 0,
    Ricci = 1,
    OrthogonalRicci = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KlMode {
    Min = 0,
    Max = 1,
}

/// Curvature components of a profile at one parameter.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct KlAbc {
    pub param: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Outcome of one comparison check.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct KlComparison {
    pub lambda: f64,
    pub max_violation: f64,
    pub max_abs_difference: f64,
    /// 1 when the check passes.
    pub passed: i32,
}

/// Blow-up surface curvature at one chart point.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct KlSurfacePoint {
    /// Unitary components `R₁₁₁₁, R₁₁₂₂, R₂₂₂₂` from the closed form.
    pub r1111: f64,
    pub r1122: f64,
    pub r2222: f64,
    pub ricci_min: f64,
    pub h_min: f64,
    /// Largest difference between the closed-form and finite-difference tensors.
    pub engine_difference: f64,
}

/// Opaque algebraic curvature tensor.
pub struct KlTensor(UnitaryFrameCurvature);

/// Opaque U(m)-invariant metric.
pub struct KlProfile(RadialProfile);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> KlStatus {
    match e {
        Error::OutOfRange { .. } | Error::UnsupportedDimension(_) => KlStatus::OutOfRange,
        Error::SymmetryViolation { .. } | Error::NotSkew { .. } | Error::NotOrthonormal { .. } => {
            KlStatus::SymmetryViolation
        }
        Error::ConjugatePoint { .. } | Error::Calibration(_) | Error::Bracket(_) | Error::SingularMetric(_) => {
            KlStatus::Numerical
        }
        Error::UnknownName(_) => KlStatus::UnknownName,
        Error::Parse(_) | Error::Io(_) => KlStatus::Parse,
        Error::DimensionMismatch { .. } | Error::InvalidProfile(_) | Error::InvalidParameter(_) => {
            KlStatus::InvalidArgument
        }
    }
}

enum Failure {
    Null(&'static str),
    Invalid(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Run `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> KlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KlStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            KlStatus::NullPointer
        }
        Ok(Err(Failure::Invalid(msg))) => {
            set_error(msg);
            KlStatus::InvalidArgument
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            KlStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn input<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn string<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure::Invalid(format!("{what} is not UTF-8: {e}")))
}

fn optional(x: f64) -> Option<f64> {
    (!x.is_nan()).then_some(x)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn kl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copy the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length without the NUL, or
/// 0 when there is no error.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn kl_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Space-form tensor with constant holomorphic sectional curvature `2λ`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kl_tensor_space_form(m: usize, lambda: f64, out: *mut *mut KlTensor) -> KlStatus {
    guard(|| {
        let o = self::out(out, "out")?;
        let t = UnitaryFrameCurvature::space_form(m, lambda)?;
        *o = Box::into_raw(Box::new(KlTensor(t)));
        Ok(())
    })
}

/// Tensor from its JSON exchange form `{"m": …, "coeffs": [...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kl_tensor_from_json(json: *const c_char, out: *mut *mut KlTensor) -> KlStatus {
    guard(|| {
        let o = self::out(out, "out")?;
        let text = string(json, "json")?;
        let parsed: TensorJson = serde_json::from_str(text).map_err(|e| Failure::Lib(e.into()))?;
        *o = Box::into_raw(Box::new(KlTensor(parsed.to_tensor()?)));
        Ok(())
    })
}

/// # Safety
/// `t` must be null or a handle from this library not freed before.
#[no_mangle]
pub unsafe extern "C" fn kl_tensor_free(t: *mut KlTensor) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kl_tensor_dim(t: *const KlTensor, out: *mut usize) -> KlStatus {
    guard(|| {
        *self::out(out, "out")? = input(t, "tensor")?.0.dim();
        Ok(())
    })
}

/// `H(Z)` for the direction with components `re[i] + i·im[i]`, normalised first.
///
/// # Safety
/// `re` and `im` must be valid for `m` reads, `out` for one write.
#[no_mangle]
pub unsafe extern "C" fn kl_tensor_holomorphic_sectional(
    t: *const KlTensor,
    re: *const f64,
    im: *const f64,
    m: usize,
    out: *mut f64,
) -> KlStatus {
    guard(|| {
        let t = input(t, "tensor")?;
        let o = self::out(out, "out")?;
        if re.is_null() || im.is_null() {
            return Err(Failure::Null("direction"));
        }
        let re = std::slice::from_raw_parts(re, m);
        let im = std::slice::from_raw_parts(im, m);
        let z: Vec<C64> = re.iter().zip(im).map(|(&a, &b)| C64::new(a, b)).collect();
        *o = t.0.holomorphic_sectional(&TangentDirection::new(z)?)?;
        Ok(())
    })
}

/// Residual of the sphere-average identity for `Ric⊥`.
///
/// # Safety
/// `t` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kl_tensor_berger_residual(t: *const KlTensor, out: *mut f64) -> KlStatus {
    guard(|| {
        *self::out(out, "out")? = input(t, "tensor")?.0.check_berger().residual;
        Ok(())
    })
}

/// Extremum of `H`, `Ric` or `Ric⊥` over the unit sphere.
///
/// # Safety
/// `t` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kl_tensor_extremize(
    t: *const KlTensor,
    functional: KlFunctional,
    mode: KlMode,
    seed: u64,
    out: *mut f64,
) -> KlStatus {
    guard(|| {
        let t = input(t, "tensor")?;
        let o = self::out(out, "out")?;
        let f = match functional {
            KlFunctional::HolomorphicSectional => Functional::HolomorphicSectional,
            KlFunctional::Ricci => Functional::Ricci,
            KlFunctional::OrthogonalRicci => Functional::OrthogonalRicci,
        };
        let md = match mode {
            KlMode::Min => Mode::Min,
            KlMode::Max => Mode::Max,
        };
        *o = extremize_over_sphere(&t.0, f, md, &SphereOptions::default().with_seed(seed)).value;
        Ok(())
    })
}

/// Builtin profile on the default grid. `a`, `lambda` and `scale` are
/// optional: pass NaN to use the profile's default.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kl_profile_builtin(
    name: *const c_char,
    m: usize,
    a: f64,
    lambda: f64,
    scale: f64,
    out: *mut *mut KlProfile,
) -> KlStatus {
    guard(|| {
        let o = self::out(out, "out")?;
        let name = string(name, "name")?;
        let mut params = BTreeMap::new();
        for (k, v) in [("a", a), ("lambda", lambda), ("scale", scale)] {
            if let Some(v) = optional(v) {
                params.insert(k.to_string(), v);
            }
        }
        let p = builtin(name, &params, m, None::<Grid>)?;
        *o = Box::into_raw(Box::new(KlProfile(p)));
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle from this library not freed before.
#[no_mangle]
pub unsafe extern "C" fn kl_profile_free(p: *mut KlProfile) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// `A, B, C` at parameter `param`.
///
/// # Safety
/// `p` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kl_profile_abc(p: *const KlProfile, param: f64, out: *mut KlAbc) -> KlStatus {
    guard(|| {
        let v = input(p, "profile")?.0.abc_at(param)?;
        *self::out(out, "out")? = KlAbc { param: v.param, a: v.a, b: v.b, c: v.c };
        Ok(())
    })
}

/// Comparison check `theorem` (`"1.2i"`, `"1.2ii"`, `"1.3"`, `"1.5"`,
/// `"index"`, `"volume"`, `"diameter"`); `lambda` NaN certifies it from the profile.
///
/// # Safety
/// `p` must be a live handle, `theorem` NUL-terminated and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kl_compare(
    p: *const KlProfile,
    theorem: *const c_char,
    lambda: f64,
    out: *mut KlComparison,
) -> KlStatus {
    guard(|| {
        let p = input(p, "profile")?;
        let o = self::out(out, "out")?;
        let id = TheoremId::parse(string(theorem, "theorem")?)?;
        let opts = CompareOptions { lambda: optional(lambda), ..Default::default() };
        let r = compare(&p.0, id, &opts)?;
        *o = KlComparison {
            lambda: r.lambda,
            max_violation: r.max_violation,
            max_abs_difference: r.max_abs_difference,
            passed: (r.verdict == Verdict::Pass) as i32,
        };
        Ok(())
    })
}

/// λ-thresholds of positive Ricci and holomorphic sectional curvature of the
/// blow-up surface with default sweep options.
///
/// # Safety
/// `ricci` and `hsc` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kl_surface_thresholds(ricci: *mut f64, hsc: *mut f64) -> KlStatus {
    guard(|| {
        let r = self::out(ricci, "ricci")?;
        let h = self::out(hsc, "hsc")?;
        let o = ThresholdOptions::default();
        *r = threshold_ricci(&o)?.lambda_star;
        *h = threshold_hsc(&o)?.lambda_star;
        Ok(())
    })
}

/// Curvature of the blow-up surface at the affine point `(a, 0)`; a negative
/// `a` selects the chart at infinity.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kl_surface_probe(lambda: f64, a: f64, out: *mut KlSurfacePoint) -> KlStatus {
    guard(|| {
        let o = self::out(out, "out")?;
        let m = BlowupSurfaceMetric::new(lambda)?;
        let p = if a < 0.0 { ChartPoint::infinity() } else { ChartPoint::affine(a) };
        let cf = m.curvature_closed_form(p)?;
        let num = m.curvature_numeric(p, &FdOptions::default())?;
        let engine_difference =
            cf.tensor().table().iter().zip(num.unitary.table()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        let (r1111, r1122, r2222) = cf.unitary_components();
        *o = KlSurfacePoint {
            r1111,
            r1122,
            r2222,
            ricci_min: cf.ricci_min().0,
            h_min: cf.h_min().0,
            engine_difference,
        };
        Ok(())
    })
}
