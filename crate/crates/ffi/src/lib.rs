//! C ABI for the antichains library.
//!
//! Conventions:
//! - Antichains are opaque handles created by [`ac_antichain_parse`] and
//!   released by [`ac_antichain_free`].
//! - Counts are returned as NUL-terminated decimal strings (they overflow
//!   64-bit integers from dimension 8 on); release them with
//!   [`ac_string_free`].
//! - Every fallible function returns an [`AcStatus`]; on failure a
//!   human-readable message is available from [`ac_last_error`] until the
//!   next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use antichains::pcoeff::{dedekind_pcoeff, pcoeff_bruteforce, pcoeff_k2};
use antichains::sequences::dedekind_enumeration;
use antichains::{
    format_antichain, interval_size_pair, parse_antichain, Antichain, Error, SizeMemo, Universe,
};
use num_bigint::BigUint;

/// Result of a C ABI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AcStatus {
    /// Success.
    AcOk = 0,
    /// A required pointer argument was NULL.
    AcNullPointer = 1,
    /// Arguments violate a precondition (range, universe mismatch, ...).
    AcInvalidArgument = 2,
    /// The antichain text could not be parsed.
    AcParseError = 3,
    /// The operation is not supported at the requested size.
    AcUnsupported = 4,
}

/// An antichain over a fixed universe. Opaque; create with
/// `ac_antichain_parse`, release with `ac_antichain_free`.
pub struct AcAntichain {
    inner: Antichain,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn fail(status: AcStatus, msg: &str) -> AcStatus {
    let msg = CString::new(msg.replace('\0', "?")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
    status
}

fn fail_with(err: Error) -> AcStatus {
    let status = match err {
        Error::Parse { .. } => AcStatus::AcParseError,
        Error::UnsupportedSize(_) => AcStatus::AcUnsupported,
        _ => AcStatus::AcInvalidArgument,
    };
    fail(status, &err.to_string())
}

fn ok() -> AcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new("").unwrap());
    AcStatus::AcOk
}

fn out_string(value: String, out: *mut *mut c_char) -> AcStatus {
    let s = match CString::new(value) {
        Ok(s) => s,
        Err(_) => return fail(AcStatus::AcInvalidArgument, "interior NUL in result"),
    };
    unsafe { *out = s.into_raw() };
    ok()
}

/// Message describing the most recent failure on this thread. The pointer is
/// valid until the next library call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn ac_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses an antichain such as `{{1,2},{3}}` over a universe of `n` elements
/// (0 <= n <= 8). `{}` is the empty antichain, `{{}}` the antichain of the
/// empty set. On success stores a handle in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_antichain_parse(
    n: u32,
    text: *const c_char,
    out: *mut *mut AcAntichain,
) -> AcStatus {
    if text.is_null() || out.is_null() {
        return fail(AcStatus::AcNullPointer, "text and out must be non-NULL");
    }
    let text = match CStr::from_ptr(text).to_str() {
        Ok(t) => t,
        Err(_) => return fail(AcStatus::AcParseError, "text is not valid UTF-8"),
    };
    let u = match Universe::new(n) {
        Ok(u) => u,
        Err(e) => return fail_with(e),
    };
    match parse_antichain(u, text, false) {
        Ok(a) => {
            *out = Box::into_raw(Box::new(AcAntichain { inner: a }));
            ok()
        }
        Err(e) => fail_with(e),
    }
}

/// Releases a handle returned by this library. NULL is ignored.
///
/// # Safety
/// `a` must be NULL or a pointer previously returned by this library and not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn ac_antichain_free(a: *mut AcAntichain) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string previously returned by this library and not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn ac_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Formats an antichain in the same syntax `ac_antichain_parse` accepts.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_antichain_format(
    a: *const AcAntichain,
    out: *mut *mut c_char,
) -> AcStatus {
    if a.is_null() || out.is_null() {
        return fail(AcStatus::AcNullPointer, "a and out must be non-NULL");
    }
    out_string(format_antichain(&(*a).inner), out)
}

/// Stores the order-reversing dual of `a` in `*out`.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_antichain_dual(
    a: *const AcAntichain,
    out: *mut *mut AcAntichain,
) -> AcStatus {
    if a.is_null() || out.is_null() {
        return fail(AcStatus::AcNullPointer, "a and out must be non-NULL");
    }
    *out = Box::into_raw(Box::new(AcAntichain {
        inner: (*a).inner.dual(),
    }));
    ok()
}

/// Sets `*out` to 1 if `a` is dominated by `b`, else 0. Both antichains must
/// share a universe.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_antichain_leq(
    a: *const AcAntichain,
    b: *const AcAntichain,
    out: *mut i32,
) -> AcStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return fail(AcStatus::AcNullPointer, "a, b and out must be non-NULL");
    }
    match (*a).inner.leq(&(*b).inner) {
        Ok(v) => {
            *out = v as i32;
            ok()
        }
        Err(e) => fail_with(e),
    }
}

unsafe fn binary_op(
    a: *const AcAntichain,
    b: *const AcAntichain,
    out: *mut *mut AcAntichain,
    f: impl FnOnce(&Antichain, &Antichain) -> Result<Antichain, Error>,
) -> AcStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return fail(AcStatus::AcNullPointer, "a, b and out must be non-NULL");
    }
    match f(&(*a).inner, &(*b).inner) {
        Ok(v) => {
            *out = Box::into_raw(Box::new(AcAntichain { inner: v }));
            ok()
        }
        Err(e) => fail_with(e),
    }
}

/// Stores the lattice meet of `a` and `b` in `*out`.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_antichain_meet(
    a: *const AcAntichain,
    b: *const AcAntichain,
    out: *mut *mut AcAntichain,
) -> AcStatus {
    binary_op(a, b, out, |x, y| x.meet(y))
}

/// Stores the lattice join of `a` and `b` in `*out`.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_antichain_join(
    a: *const AcAntichain,
    b: *const AcAntichain,
    out: *mut *mut AcAntichain,
) -> AcStatus {
    binary_op(a, b, out, |x, y| x.join(y))
}

/// Stores the exact size of the interval `[bottom, top]` in `*out` as a
/// decimal string; `"0"` when `bottom` is not dominated by `top`.
///
/// # Safety
/// `bottom` and `top` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_interval_size(
    bottom: *const AcAntichain,
    top: *const AcAntichain,
    out: *mut *mut c_char,
) -> AcStatus {
    if bottom.is_null() || top.is_null() || out.is_null() {
        return fail(
            AcStatus::AcNullPointer,
            "bottom, top and out must be non-NULL",
        );
    }
    let memo = SizeMemo::new();
    match interval_size_pair(&(*bottom).inner, &(*top).inner, &memo) {
        Ok(v) => out_string(v.to_string(), out),
        Err(e) => fail_with(e),
    }
}

/// Stores the Dedekind number |A_n| in `*out` as a decimal string, for
/// 0 <= n <= 8 (enumeration up to n = 5, the symmetry-reduced pair
/// coefficient recursion above). `threads` 0 means one worker. Beware:
/// n = 8 runs for hours.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_dedekind(n: u32, threads: u32, out: *mut *mut c_char) -> AcStatus {
    if out.is_null() {
        return fail(AcStatus::AcNullPointer, "out must be non-NULL");
    }
    let value: Result<BigUint, Error> = if n <= 5 {
        dedekind_enumeration(n)
    } else if n <= 8 {
        dedekind_pcoeff(n - 2, 2, threads.max(1) as usize)
    } else {
        Err(Error::UniverseOutOfRange(n))
    };
    match value {
        Ok(v) => out_string(v.to_string(), out),
        Err(e) => fail_with(e),
    }
}

/// Stores the P-coefficient for `k` coordinates at the pair
/// `(rho1, rho2)` in `*out` as a decimal string. `k = 2` uses the closed
/// form; other small `k` fall back to the definitional search.
///
/// # Safety
/// `rho1` and `rho2` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_pcoeff(
    rho1: *const AcAntichain,
    rho2: *const AcAntichain,
    k: u32,
    out: *mut *mut c_char,
) -> AcStatus {
    if rho1.is_null() || rho2.is_null() || out.is_null() {
        return fail(
            AcStatus::AcNullPointer,
            "rho1, rho2 and out must be non-NULL",
        );
    }
    let value = if k == 2 {
        pcoeff_k2(&(*rho1).inner, &(*rho2).inner)
    } else {
        pcoeff_bruteforce(&(*rho1).inner, &(*rho2).inner, k)
    };
    match value {
        Ok(v) => out_string(v.to_string(), out),
        Err(e) => fail_with(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;
    use std::ffi::CString;

    unsafe fn parse(n: u32, text: &str) -> *mut AcAntichain {
        let c = CString::new(text).unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(ac_antichain_parse(n, c.as_ptr(), &mut out), AcStatus::AcOk);
        out
    }

    unsafe fn take_string(p: *mut c_char) -> String {
        let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
        ac_string_free(p);
        s
    }

    #[test]
    fn parse_format_roundtrip() {
        unsafe {
            let a = parse(4, "{{1,2},{3}}");
            let mut s = ptr::null_mut();
            assert_eq!(ac_antichain_format(a, &mut s), AcStatus::AcOk);
            assert_eq!(take_string(s), "{{1,2},{3}}");
            ac_antichain_free(a);
        }
    }

    #[test]
    fn parse_errors_set_message() {
        unsafe {
            let c = CString::new("{{9}}").unwrap();
            let mut out = ptr::null_mut();
            assert_eq!(
                ac_antichain_parse(3, c.as_ptr(), &mut out),
                AcStatus::AcParseError
            );
            let msg = CStr::from_ptr(ac_last_error()).to_str().unwrap();
            assert!(!msg.is_empty());
            assert_eq!(
                ac_antichain_parse(3, ptr::null(), &mut out),
                AcStatus::AcNullPointer
            );
            assert_eq!(
                ac_antichain_parse(9, c.as_ptr(), &mut out),
                AcStatus::AcInvalidArgument
            );
        }
    }

    #[test]
    fn lattice_ops_and_interval_size() {
        unsafe {
            let bottom = parse(3, "{}");
            let top = parse(3, "{{1,2,3}}");
            let mut le = -1;
            assert_eq!(ac_antichain_leq(bottom, top, &mut le), AcStatus::AcOk);
            assert_eq!(le, 1);
            let mut s = ptr::null_mut();
            assert_eq!(ac_interval_size(bottom, top, &mut s), AcStatus::AcOk);
            assert_eq!(take_string(s), "20");
            assert_eq!(ac_interval_size(top, bottom, &mut s), AcStatus::AcOk);
            assert_eq!(take_string(s), "0");

            let mut m = ptr::null_mut();
            assert_eq!(ac_antichain_meet(bottom, top, &mut m), AcStatus::AcOk);
            let mut ms = ptr::null_mut();
            assert_eq!(ac_antichain_format(m, &mut ms), AcStatus::AcOk);
            assert_eq!(take_string(ms), "{}");
            ac_antichain_free(m);

            let empty_set = parse(3, "{{}}");
            let mut d = ptr::null_mut();
            assert_eq!(ac_antichain_dual(empty_set, &mut d), AcStatus::AcOk);
            let mut ds = ptr::null_mut();
            assert_eq!(ac_antichain_format(d, &mut ds), AcStatus::AcOk);
            assert_eq!(take_string(ds), "{{1,2},{1,3},{2,3}}");
            ac_antichain_free(d);
            ac_antichain_free(empty_set);

            let other = parse(4, "{}");
            assert_eq!(
                ac_antichain_leq(bottom, other, &mut le),
                AcStatus::AcInvalidArgument
            );
            ac_antichain_free(other);
            ac_antichain_free(bottom);
            ac_antichain_free(top);
        }
    }

    #[test]
    fn dedekind_and_pcoeff() {
        unsafe {
            let mut s = ptr::null_mut();
            assert_eq!(ac_dedekind(6, 2, &mut s), AcStatus::AcOk);
            assert_eq!(take_string(s), "7828354");
            assert_eq!(ac_dedekind(9, 1, &mut s), AcStatus::AcInvalidArgument);

            let rho1 = parse(2, "{}");
            let rho2 = parse(2, "{{}}");
            assert_eq!(ac_pcoeff(rho1, rho2, 2, &mut s), AcStatus::AcOk);
            assert_eq!(take_string(s), "2");
            assert_eq!(ac_pcoeff(rho1, rho2, 3, &mut s), AcStatus::AcOk);
            assert_eq!(take_string(s), "16");
            ac_antichain_free(rho1);
            ac_antichain_free(rho2);
        }
    }
}
