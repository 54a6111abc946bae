//! C ABI over `finosc`.
//!
//! Every entry point returns a [`FinoscStatus`]. On failure a message is kept in
//! thread-local storage and can be copied out with [`finosc_last_error`].
//! Operators and spectra are opaque heap handles released with their `_free`
//! functions. Grid functions cross the boundary as split real/imaginary arrays
//! of length `d`, ordered `n = -j, ..., j`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use finosc::eigen::eigendecompose_hermitian;
use finosc::gaussian::{gaussian, normalized_gaussian};
use finosc::kravchuk::kravchuk_function;
use finosc::oscillator::{evolve_spectral, hamiltonian};
use finosc::verify::{run_suite, Status};
use finosc::wigner::wigner;
use finosc::{Complex64, Error, Family, GaussianFamily, GridDim, GridFunction, LinearOperator, OscillatorKind, SpectralDecomposition};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinoscStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BufferTooSmall = 3,
    ComputeFailed = 4,
    Panic = 5,
}

/// Gaussian family selector.
#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinoscFamily {
    G1 = 1,
    G2 = 2,
    G3 = 3,
    G4 = 4,
    G5 = 5,
}

/// Hamiltonian selector for [`finosc_hamiltonian_new`].
#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinoscKind {
    Fourier = 0,
    Harper = 1,
    Kravchuk = 2,
    /// Frame-quantized oscillator; uses the family argument.
    Frame = 3,
    /// Gram–Schmidt oscillator; uses the family argument.
    GramSchmidt = 4,
    /// Uses the alpha argument.
    DeformedFourier = 5,
    /// Uses the alpha argument.
    DeformedHarper = 6,
}

/// Opaque Hermitian (or general) d × d operator.
pub struct FinoscOperator(LinearOperator);

/// Opaque eigendecomposition with ascending eigenvalues.
pub struct FinoscSpectrum(SpectralDecomposition);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

struct Failure(FinoscStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::EvenDimension(_)
            | Error::DimensionTooSmall(_)
            | Error::DimensionMismatch { .. }
            | Error::IndexOutOfRange { .. }
            | Error::InvalidKappa(_)
            | Error::InvalidParameter(_)
            | Error::UnsupportedFamily(_) => FinoscStatus::InvalidArgument,
            _ => FinoscStatus::ComputeFailed,
        };
        Failure(status, e.to_string())
    }
}

fn fail<T>(status: FinoscStatus, msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(status, msg.into()))
}

/// Runs `f`, records any error message and maps panics to [`FinoscStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> FinoscStatus {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| p.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        Err(Failure(FinoscStatus::Panic, msg))
    });
    match outcome {
        Ok(()) => {
            LAST_ERROR.with(|e| e.borrow_mut().clear());
            FinoscStatus::Ok
        }
        Err(Failure(status, msg)) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = msg);
            status
        }
    }
}

fn dim(d: usize) -> Result<GridDim, Failure> {
    Ok(GridDim::new(d)?)
}

fn family(code: u32) -> Result<Family, Failure> {
    match u8::try_from(code).ok().and_then(|c| Family::from_number(c).ok()) {
        Some(f) => Ok(f),
        None => fail(FinoscStatus::InvalidArgument, format!("unknown family code {code}")),
    }
}

fn gaussian_family(code: u32, kappa: f64) -> Result<GaussianFamily, Failure> {
    let f = family(code)?;
    Ok(GaussianFamily::new(f, f.has_kappa().then_some(kappa))?)
}

fn out_slice<'a, T>(p: *mut T, len: usize, need: usize) -> Result<&'a mut [T], Failure> {
    if p.is_null() {
        return fail(FinoscStatus::NullPointer, "output buffer is null");
    }
    if len < need {
        return fail(FinoscStatus::BufferTooSmall, format!("buffer holds {len} values, {need} needed"));
    }
    // SAFETY: caller guarantees `p` points to `len` writable values.
    Ok(unsafe { std::slice::from_raw_parts_mut(p, need) })
}

fn in_slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], Failure> {
    if p.is_null() {
        return fail(FinoscStatus::NullPointer, "input buffer is null");
    }
    // SAFETY: caller guarantees `p` points to `len` readable values.
    Ok(unsafe { std::slice::from_raw_parts(p, len) })
}

fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    // SAFETY: non-null handles come from the matching `_new` call.
    unsafe { p.as_ref() }.ok_or(Failure(FinoscStatus::NullPointer, "handle is null".into()))
}

fn read_state(dim: GridDim, re: *const f64, im: *const f64, len: usize) -> Result<GridFunction, Failure> {
    if len != dim.d() {
        return fail(FinoscStatus::InvalidArgument, format!("state length {len} differs from d = {}", dim.d()));
    }
    let re = in_slice(re, len)?;
    let im = in_slice(im, len)?;
    let v = re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect();
    Ok(GridFunction::from_values(dim, v)?)
}

fn write_state(psi: &GridFunction, re: *mut f64, im: *mut f64, len: usize) -> Result<(), Failure> {
    let d = psi.dim().d();
    let re = out_slice(re, len, d)?;
    let im = out_slice(im, len, d)?;
    for (k, n) in psi.dim().indices().enumerate() {
        let z = psi.at(n);
        re[k] = z.re;
        im[k] = z.im;
    }
    Ok(())
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length without the NUL.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn finosc_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn finosc_version() -> *const c_char {
    const V: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(s) => s,
        Err(_) => panic!("version string"),
    };
    V.as_ptr()
}

/// Writes the finite Gaussian of `family` (a [`FinoscFamily`] code) into
/// `out[0..d]`. `kappa` is ignored for g4 and g5. With `normalize` nonzero the
/// result has unit norm.
///
/// # Safety
/// `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn finosc_gaussian(d: usize, family: u32, kappa: f64, normalize: i32, out: *mut f64, len: usize) -> FinoscStatus {
    guard(|| {
        let dim = dim(d)?;
        let fam = gaussian_family(family, kappa)?;
        let g = if normalize != 0 { normalized_gaussian(dim, fam)? } else { gaussian(dim, fam)? };
        let out = out_slice(out, len, d)?;
        for (slot, v) in out.iter_mut().zip(g.real_parts()) {
            *slot = v;
        }
        Ok(())
    })
}

/// Normalized Kravchuk function value at `(m, n)`, both in `-j..=j`.
///
/// # Safety
/// `out` must point to one writable double.
#[no_mangle]
pub unsafe extern "C" fn finosc_kravchuk_function(d: usize, m: i64, n: i64, out: *mut f64) -> FinoscStatus {
    guard(|| {
        let v = kravchuk_function(dim(d)?, m, n)?;
        out_slice(out, 1, 1)?[0] = v;
        Ok(())
    })
}

/// Discrete Wigner function of the state `(re, im)` written row-major over
/// `n` then `m` into `out[0..d*d]`.
///
/// # Safety
/// `re`, `im` must point to `d` doubles, `out` to `out_len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn finosc_wigner(d: usize, re: *const f64, im: *const f64, out: *mut f64, out_len: usize) -> FinoscStatus {
    guard(|| {
        let dim = dim(d)?;
        let psi = read_state(dim, re, im, d)?;
        let w = wigner(&psi);
        out_slice(out, out_len, d * d)?.copy_from_slice(w.values());
        Ok(())
    })
}

/// Builds an oscillator Hamiltonian. `family` is read for the frame and
/// Gram–Schmidt kinds, `alpha` for the deformed kinds.
///
/// # Safety
/// `out` must point to a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn finosc_hamiltonian_new(d: usize, kind: u32, family: u32, alpha: f64, out: *mut *mut FinoscOperator) -> FinoscStatus {
    guard(|| {
        let slot = out_slice(out, 1, 1)?;
        slot[0] = ptr::null_mut();
        let dim = dim(d)?;
        let kind = match kind {
            0 => OscillatorKind::Fourier,
            1 => OscillatorKind::Harper,
            2 => OscillatorKind::Kravchuk,
            3 => OscillatorKind::FrameQuantized(self::family(family)?),
            4 => OscillatorKind::GramSchmidt(self::family(family)?),
            5 => OscillatorKind::DeformedFourier(alpha),
            6 => OscillatorKind::DeformedHarper(alpha),
            k => return fail(FinoscStatus::InvalidArgument, format!("unknown kind code {k}")),
        };
        let h = hamiltonian(dim, kind)?;
        slot[0] = Box::into_raw(Box::new(FinoscOperator(h)));
        Ok(())
    })
}

/// Grid size of an operator, or 0 for a null handle.
///
/// # Safety
/// `op` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn finosc_operator_dim(op: *const FinoscOperator) -> usize {
    op.as_ref().map_or(0, |o| o.0.dim().d())
}

/// Matrix element `<row|op|col>` with row and column in `-j..=j`.
///
/// # Safety
/// `op` must be a live handle; `re`, `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn finosc_operator_element(op: *const FinoscOperator, row: i64, col: i64, re: *mut f64, im: *mut f64) -> FinoscStatus {
    guard(|| {
        let op = &handle(op)?.0;
        op.dim().check_index(row)?;
        op.dim().check_index(col)?;
        let z = op.element(row, col);
        out_slice(re, 1, 1)?[0] = z.re;
        out_slice(im, 1, 1)?[0] = z.im;
        Ok(())
    })
}

/// Releases an operator. Null is accepted.
///
/// # Safety
/// `op` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn finosc_operator_free(op: *mut FinoscOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Eigendecomposition of a Hermitian operator.
///
/// # Safety
/// `op` must be a live handle; `out` a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn finosc_eigendecompose(op: *const FinoscOperator, out: *mut *mut FinoscSpectrum) -> FinoscStatus {
    guard(|| {
        let slot = out_slice(out, 1, 1)?;
        slot[0] = ptr::null_mut();
        let spec = eigendecompose_hermitian(&handle(op)?.0)?;
        slot[0] = Box::into_raw(Box::new(FinoscSpectrum(spec)));
        Ok(())
    })
}

/// Number of eigenvalues, or 0 for a null handle.
///
/// # Safety
/// `spec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn finosc_spectrum_len(spec: *const FinoscSpectrum) -> usize {
    spec.as_ref().map_or(0, |s| s.0.len())
}

/// Releases a spectrum. Null is accepted.
///
/// # Safety
/// `spec` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn finosc_spectrum_free(spec: *mut FinoscSpectrum) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Ascending eigenvalues into `out[0..d]`.
///
/// # Safety
/// `spec` must be a live handle; `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn finosc_spectrum_eigenvalues(spec: *const FinoscSpectrum, out: *mut f64, len: usize) -> FinoscStatus {
    guard(|| {
        let s = &handle(spec)?.0;
        out_slice(out, len, s.len())?.copy_from_slice(s.eigenvalues());
        Ok(())
    })
}

/// Eigenvector `k` (ascending order) into split real/imaginary buffers.
///
/// # Safety
/// `spec` must be a live handle; `re`, `im` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn finosc_spectrum_eigenvector(spec: *const FinoscSpectrum, k: usize, re: *mut f64, im: *mut f64, len: usize) -> FinoscStatus {
    guard(|| {
        let s = &handle(spec)?.0;
        let Some(v) = s.eigenvectors().get(k) else {
            return fail(FinoscStatus::InvalidArgument, format!("eigenvector index {k} out of range"));
        };
        write_state(v, re, im, len)
    })
}

/// Evolves `psi` to time `t` under the decomposed Hamiltonian, e^{-iHt} psi.
///
/// # Safety
/// `spec` must be a live handle; input buffers hold `len` doubles, output
/// buffers `len` writable doubles, with `len` equal to d.
#[no_mangle]
pub unsafe extern "C" fn finosc_evolve(
    spec: *const FinoscSpectrum,
    re: *const f64,
    im: *const f64,
    len: usize,
    t: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> FinoscStatus {
    guard(|| {
        let s = &handle(spec)?.0;
        let psi = read_state(s.dim(), re, im, len)?;
        write_state(&evolve_spectral(s, &psi, t)?, out_re, out_im, len)
    })
}

/// Runs the self-check suite at dimension `d`. Writes the number of checks
/// and failures; returns `ComputeFailed` when any check fails.
///
/// # Safety
/// `total` and `failed` must each be null or writable.
#[no_mangle]
pub unsafe extern "C" fn finosc_verify(d: usize, tol: f64, total: *mut usize, failed: *mut usize) -> FinoscStatus {
    guard(|| {
        if !(tol > 0.0) {
            return fail(FinoscStatus::InvalidArgument, format!("tolerance must be positive, got {tol}"));
        }
        let checks = run_suite(dim(d)?, tol);
        let bad: Vec<_> = checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name.as_str()).collect();
        if let Some(t) = total.as_mut() {
            *t = checks.len();
        }
        if let Some(f) = failed.as_mut() {
            *f = bad.len();
        }
        if bad.is_empty() {
            Ok(())
        } else {
            fail(FinoscStatus::ComputeFailed, format!("failed: {}", bad.join(", ")))
        }
    })
}
