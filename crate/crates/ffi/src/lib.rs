//! C interface. Polytopes are opaque handles; big numbers and reports come
//! back as heap strings that the caller releases with `dbk_string_free`.
//! Every fallible call returns a `DbkStatus`; on failure the message is
//! available from `dbk_last_error` until the next failing call on the
//! same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use diffbkk::applications::{isogeny_bound, MobiusMap};
use diffbkk::bounds::{c_const, e_const, EVariant, GammaVariant};
use diffbkk::mixedvol::{mixed_volume, mixed_volume_of, Algorithm, Body};
use diffbkk::polytope::{LatticePoint, LatticePolytope};
use diffbkk::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DbkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed input: bad JSON, dimension mismatch, unknown option.
    InvalidInput = 3,
    /// A mathematical hypothesis of the requested bound does not hold.
    Hypothesis = 4,
    /// A size guard was exceeded.
    Guard = 5,
    /// A Rust panic was caught at the boundary.
    Internal = 6,
}

/// Which multiple of the all-variables simplex enters Gamma.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DbkGammaVariant {
    Theorem12 = 0,
    Prop42 = 1,
    Refined = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DbkEVariant {
    Printed = 0,
    PerJ = 1,
}

/// Opaque lattice polytope.
pub struct DbkPolytope {
    inner: LatticePolytope,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DbkStatus {
    if e.is_hypothesis_violation() {
        DbkStatus::Hypothesis
    } else if matches!(e, Error::GuardExceeded { .. } | Error::Overflow) {
        DbkStatus::Guard
    } else {
        DbkStatus::InvalidInput
    }
}

fn guarded(f: impl FnOnce() -> Result<(), DbkStatus>) -> DbkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DbkStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal error".into());
            DbkStatus::Internal
        }
    }
}

fn lib<T>(r: diffbkk::Result<T>) -> Result<T, DbkStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn null() -> DbkStatus {
    set_error("null pointer argument".into());
    DbkStatus::NullPointer
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, DbkStatus> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string is not valid UTF-8".into());
        DbkStatus::InvalidUtf8
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), DbkStatus> {
    if out.is_null() {
        return Err(null());
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

unsafe fn polytope_list<'a>(polys: *const *const DbkPolytope, count: usize) -> Result<Vec<&'a LatticePolytope>, DbkStatus> {
    if polys.is_null() && count > 0 {
        return Err(null());
    }
    (0..count)
        .map(|i| {
            let p = *polys.add(i);
            if p.is_null() {
                Err(null())
            } else {
                Ok(&(*p).inner)
            }
        })
        .collect()
}

/// Message of the last failing call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dbk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dbk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the convex hull of `count` points of dimension `dim`, stored
/// row-major in `coords`.
///
/// # Safety
/// `coords` must point to `dim * count` integers; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbk_polytope_from_points(
    coords: *const i64,
    dim: usize,
    count: usize,
    out: *mut *mut DbkPolytope,
) -> DbkStatus {
    guarded(|| {
        if out.is_null() || (coords.is_null() && dim * count > 0) {
            return Err(null());
        }
        let flat = if dim * count == 0 { &[][..] } else { std::slice::from_raw_parts(coords, dim * count) };
        let points: Vec<LatticePoint> = if dim == 0 {
            (0..count).map(|_| LatticePoint(Vec::new())).collect()
        } else {
            flat.chunks(dim).map(|c| LatticePoint(c.to_vec())).collect()
        };
        let p = lib(LatticePolytope::hull(points))?;
        *out = Box::into_raw(Box::new(DbkPolytope { inner: p }));
        Ok(())
    })
}

/// Parses `{"dim": s, "points": [[...], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbk_polytope_from_json(json: *const c_char, out: *mut *mut DbkPolytope) -> DbkStatus {
    guarded(|| {
        let text = read_str(json)?;
        if out.is_null() {
            return Err(null());
        }
        let p = lib(LatticePolytope::from_json_str(text))?;
        *out = Box::into_raw(Box::new(DbkPolytope { inner: p }));
        Ok(())
    })
}

/// # Safety
/// `p` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn dbk_polytope_free(p: *mut DbkPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Ambient dimension, or 0 for NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dbk_polytope_dim(p: *const DbkPolytope) -> usize {
    p.as_ref().map_or(0, |p| p.inner.ambient_dim())
}

/// Number of vertices, or 0 for NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dbk_polytope_vertex_count(p: *const DbkPolytope) -> usize {
    p.as_ref().map_or(0, |p| p.inner.vertices().len())
}

/// Euclidean volume as a reduced fraction `"p/q"` or integer.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbk_polytope_volume(p: *const DbkPolytope, out: *mut *mut c_char) -> DbkStatus {
    guarded(|| {
        let p = p.as_ref().ok_or_else(null)?;
        write_string(out, p.inner.volume().to_string())
    })
}

/// The polytope as JSON, with its canonical vertex list.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbk_polytope_to_json(p: *const DbkPolytope, out: *mut *mut c_char) -> DbkStatus {
    guarded(|| {
        let p = p.as_ref().ok_or_else(null)?;
        write_string(out, p.inner.to_json().to_string())
    })
}

/// Minkowski sum of two polytopes.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbk_polytope_minkowski_sum(
    a: *const DbkPolytope,
    b: *const DbkPolytope,
    out: *mut *mut DbkPolytope,
) -> DbkStatus {
    guarded(|| {
        let (a, b) = (a.as_ref().ok_or_else(null)?, b.as_ref().ok_or_else(null)?);
        if out.is_null() {
            return Err(null());
        }
        let s = lib(a.inner.minkowski_sum(&b.inner))?;
        *out = Box::into_raw(Box::new(DbkPolytope { inner: s }));
        Ok(())
    })
}

/// Mixed volume `V(P_1, …, P_s)` of `count = s` polytopes in `Z^s`.
///
/// # Safety
/// `polys` must point to `count` live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbk_mixed_volume(
    polys: *const *const DbkPolytope,
    count: usize,
    out: *mut *mut c_char,
) -> DbkStatus {
    guarded(|| {
        let list: Vec<LatticePolytope> = polytope_list(polys, count)?.into_iter().cloned().collect();
        let v = lib(mixed_volume(&list))?;
        write_string(out, v.value.to_string())
    })
}

/// Root count `s! V(P_1, …, P_s)`, choosing the engine automatically.
///
/// # Safety
/// `polys` must point to `count` live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbk_bkk_count(polys: *const *const DbkPolytope, count: usize, out: *mut *mut c_char) -> DbkStatus {
    guarded(|| {
        let bodies: Vec<Body> = polytope_list(polys, count)?.into_iter().cloned().map(Body::from).collect();
        let (v, _) = lib(mixed_volume_of(&bodies, Algorithm::Auto))?;
        write_string(out, v.bkk().to_string())
    })
}

/// `C_{s,k}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbk_c_const(s: usize, k: usize, out: *mut *mut c_char) -> DbkStatus {
    guarded(|| write_string(out, lib(c_const(s, k))?.to_string()))
}

/// `E_{s,k}` in the requested reading.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbk_e_const(s: usize, k: usize, variant: DbkEVariant, out: *mut *mut c_char) -> DbkStatus {
    let v = match variant {
        DbkEVariant::Printed => EVariant::Printed,
        DbkEVariant::PerJ => EVariant::PerJ,
    };
    guarded(|| write_string(out, lib(e_const(s, k, v))?.to_string()))
}

/// Isogeny count bound for `α(z) = (az+b)/(cz+d)`; writes the full JSON report.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbk_isogeny_bound(
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    variant: DbkGammaVariant,
    exact_gamma: bool,
    out: *mut *mut c_char,
) -> DbkStatus {
    let v = match variant {
        DbkGammaVariant::Theorem12 => GammaVariant::Theorem12,
        DbkGammaVariant::Prop42 => GammaVariant::Prop42,
        DbkGammaVariant::Refined => GammaVariant::Refined,
    };
    guarded(|| {
        let alpha = lib(MobiusMap::from_ints(a, b, c, d))?;
        let report = lib(isogeny_bound(&alpha, v, exact_gamma))?;
        write_string(out, report.to_json().to_string())
    })
}
