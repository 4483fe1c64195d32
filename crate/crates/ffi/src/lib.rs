//! C ABI for `boxproj`.
//!
//! Direction sets and box splines are opaque handles created by `*_new` and
//! released by `*_free`. Fallible calls return a [`BoxprojStatus`]; the message
//! of the most recent failure on the calling thread is available through
//! [`boxproj_last_error_message`]. Outputs are written through caller-owned
//! pointers only on success.

use std::cell::RefCell;
use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use boxproj::asymptotics::{dyadic_ladder, lhs_sweep, rhs_constant, rhs_constant_p2, OuterRule, SweepOptions};
use boxproj::bernoulli::{bernoulli_periodic, l_beta_expansion, l_beta_series};
use boxproj::box_spline::{fourier_transform, BoxSpline, DerivativeRoute};
use boxproj::functions::Separable;
use boxproj::lattice::{DirectionSet, LatticeVector, MultiIndex};
use boxproj::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoxprojStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotSpanning = 3,
    NotUnimodular = 4,
    TooLarge = 5,
    Unsupported = 6,
    Numerical = 7,
    Panic = 8,
}

/// Opaque direction set.
pub struct BoxprojDirectionSet {
    inner: DirectionSet,
}

/// Opaque box-spline evaluator.
pub struct BoxprojBoxSpline {
    inner: BoxSpline,
}

/// Summary of a convergence sweep.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BoxprojConvergence {
    pub fitted_rate: f64,
    pub extrapolated: f64,
    pub rhs: f64,
    pub relative_error: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> BoxprojStatus {
    match err {
        Error::NotSpanning(_) => BoxprojStatus::NotSpanning,
        Error::NotUnimodular { .. } => BoxprojStatus::NotUnimodular,
        Error::TooManyDirections { .. } | Error::TooLarge { .. } => BoxprojStatus::TooLarge,
        Error::UnsupportedDimension { .. } => BoxprojStatus::Unsupported,
        Error::NotPositiveDefinite { .. } => BoxprojStatus::Numerical,
        _ => BoxprojStatus::InvalidArgument,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> BoxprojStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => BoxprojStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            BoxprojStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            BoxprojStatus::Panic
        }
    }
}

unsafe fn as_ref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn as_mut<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn as_slice<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

/// Copies the last error message into `buf` (NUL-terminated, truncated to
/// `len`) and returns the full message length in bytes.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn boxproj_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Builds a direction set from `n` row vectors of dimension `d`, stored row-major.
///
/// # Safety
/// `coords` must hold `n * d` values; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn boxproj_direction_set_new(
    coords: *const i64,
    n: usize,
    d: usize,
    out: *mut *mut BoxprojDirectionSet,
) -> BoxprojStatus {
    guard(|| {
        let out = as_mut(out, "out")?;
        if d == 0 || n == 0 {
            return Err(Error::InvalidArgument("empty direction set".into()).into());
        }
        let flat = as_slice(coords, n * d, "coords")?;
        let vectors = flat.chunks(d).map(|r| LatticeVector::new(r.to_vec())).collect();
        let inner = DirectionSet::new(vectors)?;
        *out = Box::into_raw(Box::new(BoxprojDirectionSet { inner }));
        Ok(())
    })
}

/// Builds a preset direction set by name (e.g. `"courant"`, `"bspline(3)"`).
///
/// # Safety
/// `name` must point to `name_len` bytes of UTF-8; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn boxproj_direction_set_preset(
    name: *const c_char,
    name_len: usize,
    out: *mut *mut BoxprojDirectionSet,
) -> BoxprojStatus {
    guard(|| {
        let out = as_mut(out, "out")?;
        let bytes = as_slice(name as *const u8, name_len, "name")?;
        let name = std::str::from_utf8(bytes).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let inner = boxproj::harness::presets::preset(name)?;
        *out = Box::into_raw(Box::new(BoxprojDirectionSet { inner }));
        Ok(())
    })
}

/// Releases a direction set. Null is ignored.
///
/// # Safety
/// `set` must come from a `boxproj_direction_set_*` constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn boxproj_direction_set_free(set: *mut BoxprojDirectionSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Writes `d`, `n` and `ϱ_V`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn boxproj_direction_set_shape(
    set: *const BoxprojDirectionSet,
    dim: *mut usize,
    len: *mut usize,
    rho: *mut usize,
) -> BoxprojStatus {
    guard(|| {
        let s = &as_ref(set, "set")?.inner;
        let (dim, len, rho) = (as_mut(dim, "dim")?, as_mut(len, "len")?, as_mut(rho, "rho")?);
        *dim = s.dim();
        *len = s.len();
        *rho = s.rho();
        Ok(())
    })
}

/// Writes whether every `d`-subset has determinant `0` or `±1`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn boxproj_direction_set_is_unimodular(
    set: *const BoxprojDirectionSet,
    out: *mut bool,
) -> BoxprojStatus {
    guard(|| {
        *as_mut(out, "out")? = as_ref(set, "set")?.inner.is_unimodular();
        Ok(())
    })
}

/// Writes `#Λ`. Fails with `NotUnimodular` for non-unimodular sets.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn boxproj_lambda_count(set: *const BoxprojDirectionSet, out: *mut usize) -> BoxprojStatus {
    guard(|| {
        let s = &as_ref(set, "set")?.inner;
        *as_mut(out, "out")? = s.lambda_set()?.len();
        Ok(())
    })
}

/// Writes class `index` of `Λ`: its normal `α_U` (`d` entries), its member
/// indices (up to `n` entries) and the member count.
///
/// # Safety
/// `alpha` must hold `d` values and `members` `n` values.
#[no_mangle]
pub unsafe extern "C" fn boxproj_lambda_class(
    set: *const BoxprojDirectionSet,
    index: usize,
    alpha: *mut i64,
    members: *mut usize,
    member_count: *mut usize,
) -> BoxprojStatus {
    guard(|| {
        let s = &as_ref(set, "set")?.inner;
        let classes = s.lambda_set()?;
        let class = classes
            .get(index)
            .ok_or_else(|| Error::InvalidArgument(format!("class {index} of {}", classes.len())))?;
        if alpha.is_null() || members.is_null() {
            return Err(Failure::Null("alpha/members"));
        }
        let count = as_mut(member_count, "member_count")?;
        slice::from_raw_parts_mut(alpha, s.dim()).copy_from_slice(class.alpha.coords());
        slice::from_raw_parts_mut(members, class.members.len()).copy_from_slice(&class.members);
        *count = class.members.len();
        Ok(())
    })
}

/// `B̂_V(ξ)` with the convention `∫ B_V(x) e^{−2πi x·ξ} dx`.
///
/// # Safety
/// `xi` must hold `d` values; `re` and `im` must be valid.
#[no_mangle]
pub unsafe extern "C" fn boxproj_fourier_transform(
    set: *const BoxprojDirectionSet,
    xi: *const f64,
    re: *mut f64,
    im: *mut f64,
) -> BoxprojStatus {
    guard(|| {
        let s = &as_ref(set, "set")?.inner;
        let xi = as_slice(xi, s.dim(), "xi")?;
        let (re, im) = (as_mut(re, "re")?, as_mut(im, "im")?);
        let v = fourier_transform(s, xi);
        *re = v.re;
        *im = v.im;
        Ok(())
    })
}

/// Builds a box-spline evaluator for `set`.
///
/// # Safety
/// `set` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn boxproj_box_spline_new(
    set: *const BoxprojDirectionSet,
    out: *mut *mut BoxprojBoxSpline,
) -> BoxprojStatus {
    guard(|| {
        let s = as_ref(set, "set")?.inner.clone();
        *as_mut(out, "out")? = Box::into_raw(Box::new(BoxprojBoxSpline { inner: BoxSpline::new(s) }));
        Ok(())
    })
}

/// Releases a box-spline evaluator. Null is ignored.
///
/// # Safety
/// `spline` must come from [`boxproj_box_spline_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn boxproj_box_spline_free(spline: *mut BoxprojBoxSpline) {
    if !spline.is_null() {
        drop(Box::from_raw(spline));
    }
}

/// `B_V(x)`.
///
/// # Safety
/// `x` must hold `d` values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn boxproj_box_spline_evaluate(
    spline: *const BoxprojBoxSpline,
    x: *const f64,
    out: *mut f64,
) -> BoxprojStatus {
    guard(|| {
        let s = &as_ref(spline, "spline")?.inner;
        let x = as_slice(x, s.dim(), "x")?;
        *as_mut(out, "out")? = s.evaluate(x);
        Ok(())
    })
}

/// The periodic Bernoulli function `B^k(t)`, `k ≥ 1`; NaN for `k = 0`.
#[no_mangle]
pub extern "C" fn boxproj_bernoulli_periodic(k: u32, t: f64) -> f64 {
    if k == 0 || k > 20 {
        return f64::NAN;
    }
    bernoulli_periodic(k, t)
}

/// `L_β(x)` from its Bernoulli-spline expansion.
///
/// # Safety
/// `beta` and `x` must hold `d` values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn boxproj_l_beta(
    set: *const BoxprojDirectionSet,
    beta: *const u32,
    x: *const f64,
    out: *mut f64,
) -> BoxprojStatus {
    guard(|| {
        let s = &as_ref(set, "set")?.inner;
        let beta = MultiIndex::new(as_slice(beta, s.dim(), "beta")?.to_vec());
        let x = as_slice(x, s.dim(), "x")?;
        let out = as_mut(out, "out")?;
        *out = l_beta_expansion(s, &beta)?.evaluate(x);
        Ok(())
    })
}

/// `L_β(x)` from the lattice Fourier series truncated at `|α|_∞ ≤ radius` (real part).
///
/// # Safety
/// `beta` and `x` must hold `d` values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn boxproj_l_beta_series(
    set: *const BoxprojDirectionSet,
    beta: *const u32,
    x: *const f64,
    radius: usize,
    out: *mut f64,
) -> BoxprojStatus {
    guard(|| {
        let s = &as_ref(set, "set")?.inner;
        let beta = MultiIndex::new(as_slice(beta, s.dim(), "beta")?.to_vec());
        let x = as_slice(x, s.dim(), "x")?.to_vec();
        let out = as_mut(out, "out")?;
        *out = l_beta_series(s, &beta, &[x], radius, DerivativeRoute::Factored)?[0].re;
        Ok(())
    })
}

/// Right-side constant for `exp(−π|x|²/scale²)`; the closed form when `p = 2`.
///
/// # Safety
/// `set` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn boxproj_rhs_constant_gaussian(
    set: *const BoxprojDirectionSet,
    scale: f64,
    p: f64,
    out: *mut f64,
) -> BoxprojStatus {
    guard(|| {
        let s = &as_ref(set, "set")?.inner;
        let out = as_mut(out, "out")?;
        if !(scale > 0.0) {
            return Err(Error::InvalidArgument(format!("scale {scale} must be positive")).into());
        }
        let f = Separable::gaussian(s.dim(), scale);
        *out = if p == 2.0 {
            rhs_constant_p2(&f, s, OuterRule::default())?
        } else {
            rhs_constant(&f, s, p, OuterRule::default())?
        };
        Ok(())
    })
}

/// Convergence sweep for `exp(−π|x|²/scale²)` over `h = 2^{−first}, …, 2^{−last}`.
///
/// # Safety
/// `set` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn boxproj_converge_gaussian(
    set: *const BoxprojDirectionSet,
    scale: f64,
    p: f64,
    first: u32,
    last: u32,
    out: *mut BoxprojConvergence,
) -> BoxprojStatus {
    guard(|| {
        let s = &as_ref(set, "set")?.inner;
        let out = as_mut(out, "out")?;
        if !(scale > 0.0) || first > last || last > 12 {
            return Err(Error::InvalidArgument("bad scale or ladder".into()).into());
        }
        let f = Separable::gaussian(s.dim(), scale);
        let outer = OuterRule::default();
        let rhs = if p == 2.0 {
            rhs_constant_p2(&f, s, outer)?
        } else {
            rhs_constant(&f, s, p, outer)?
        };
        let r = lhs_sweep(&f, s, p, &dyadic_ladder(first, last), rhs, &SweepOptions::default())?;
        *out = BoxprojConvergence {
            fitted_rate: r.fitted_rate,
            extrapolated: r.extrapolated,
            rhs: r.rhs,
            relative_error: r.relative_error,
        };
        Ok(())
    })
}
