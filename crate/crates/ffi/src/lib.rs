//! C ABI over `facdecomp`.
//!
//! Words and factor indexes are opaque handles created by `fd_*_new` and
//! released by the matching `fd_*_free`. Every fallible call returns an
//! [`FdStatus`]; the message of the last failure on the calling thread is
//! available through [`fd_last_error`].

use std::cell::RefCell;
use std::ffi::CStr;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use facdecomp::decompose::{marker_decomposition, thue_morse_st, verify_cover, DecomposeError};
use facdecomp::experiments::count_e;
use facdecomp::periodicity::minimal_period;
use facdecomp::{parse_word_spec, FactorError, FactorIndex, WordError, WordSource};
use libc::{c_char, size_t};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    BadSpec = 3,
    WindowTooSmall = 4,
    OutOfRange = 5,
    Precondition = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// A parsed word specification.
pub struct FdWord(WordSource);

/// Factor index of a word's window.
pub struct FdIndex(FactorIndex);

/// Coverage summary of a decomposition.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FdCover {
    pub covered: u64,
    pub total: u64,
    pub s_max: u64,
    pub t_max: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn fail(status: FdStatus, msg: impl Into<String>) -> FdStatus {
    set_error(msg);
    status
}

fn word_status(e: &WordError) -> FdStatus {
    match e {
        WordError::Parse { .. } => FdStatus::BadSpec,
        _ => FdStatus::Precondition,
    }
}

fn factor_status(e: &FactorError) -> FdStatus {
    match e {
        FactorError::WindowTooSmall { .. } => FdStatus::WindowTooSmall,
        FactorError::OutOfRange { .. } => FdStatus::OutOfRange,
        FactorError::Word(w) => word_status(w),
    }
}

fn decompose_status(e: &DecomposeError) -> FdStatus {
    match e {
        DecomposeError::Factor(f) => factor_status(f),
        _ => FdStatus::Precondition,
    }
}

/// Runs `f`, turning panics into [`FdStatus::Panic`].
fn guard(f: impl FnOnce() -> FdStatus) -> FdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(FdStatus::Panic, "internal panic"),
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, FdStatus> {
    if p.is_null() {
        return Err(fail(FdStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(FdStatus::InvalidUtf8, "string argument is not UTF-8"))
}

/// Copies `s` plus a NUL into `buf`. `written` (if non-null) receives the
/// length without the NUL, also when the buffer is too small.
unsafe fn write_str(s: &str, buf: *mut c_char, buf_len: size_t, written: *mut size_t) -> FdStatus {
    if !written.is_null() {
        *written = s.len();
    }
    if buf.is_null() || buf_len < s.len() + 1 {
        return fail(
            FdStatus::BufferTooSmall,
            format!("need {} bytes", s.len() + 1),
        );
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf as *mut u8, s.len());
    *buf.add(s.len()) = 0;
    FdStatus::Ok
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to fit) and returns its full length.
///
/// # Safety
/// `buf` must be null or point to `buf_len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn fd_last_error(buf: *mut c_char, buf_len: size_t) -> size_t {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        if !buf.is_null() && buf_len > 0 {
            let n = e.len().min(buf_len - 1);
            ptr::copy_nonoverlapping(e.as_ptr(), buf as *mut u8, n);
            *buf.add(n) = 0;
        }
        e.len()
    })
}

/// Parses a word specification such as `tm`, `fib` or `sturm:1,(2)`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fd_word_new(spec: *const c_char, out: *mut *mut FdWord) -> FdStatus {
    guard(|| {
        if out.is_null() {
            return fail(FdStatus::NullPointer, "null output pointer");
        }
        let spec = match str_arg(spec) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match parse_word_spec(spec) {
            Ok(w) => {
                *out = Box::into_raw(Box::new(FdWord(w)));
                FdStatus::Ok
            }
            Err(e) => fail(word_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `word` must be null or a handle from [`fd_word_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_word_free(word: *mut FdWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// Writes the first `n` letters of the word as characters.
///
/// # Safety
/// `word` must be a live handle; `buf` must point to `buf_len` writable bytes;
/// `written` may be null.
#[no_mangle]
pub unsafe extern "C" fn fd_word_prefix(
    word: *const FdWord,
    n: size_t,
    buf: *mut c_char,
    buf_len: size_t,
    written: *mut size_t,
) -> FdStatus {
    guard(|| {
        let Some(word) = word.as_ref() else {
            return fail(FdStatus::NullPointer, "null word handle");
        };
        match word.0.prefix(n) {
            Ok(p) => write_str(&word.0.alphabet().render(&p), buf, buf_len, written),
            Err(e) => fail(word_status(&e), e.to_string()),
        }
    })
}

/// Indexes the first `window` letters for factor lengths up to `n_max`.
///
/// # Safety
/// `word` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fd_index_new(
    word: *const FdWord,
    window: size_t,
    n_max: size_t,
    out: *mut *mut FdIndex,
) -> FdStatus {
    guard(|| {
        let Some(word) = word.as_ref() else {
            return fail(FdStatus::NullPointer, "null word handle");
        };
        if out.is_null() {
            return fail(FdStatus::NullPointer, "null output pointer");
        }
        match FactorIndex::build(&word.0, window, n_max) {
            Ok(idx) => {
                *out = Box::into_raw(Box::new(FdIndex(idx)));
                FdStatus::Ok
            }
            Err(e) => fail(factor_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `index` must be null or a handle from [`fd_index_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_index_free(index: *mut FdIndex) {
    if !index.is_null() {
        drop(Box::from_raw(index));
    }
}

/// `p(n)`, the number of distinct factors of length `n`.
///
/// # Safety
/// `index` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fd_index_complexity(
    index: *const FdIndex,
    n: size_t,
    out: *mut u64,
) -> FdStatus {
    guard(|| {
        let (Some(index), false) = (index.as_ref(), out.is_null()) else {
            return fail(FdStatus::NullPointer, "null argument");
        };
        match index.0.complexity(n) {
            Ok(p) => {
                *out = p;
                FdStatus::Ok
            }
            Err(e) => fail(factor_status(&e), e.to_string()),
        }
    })
}

/// `g(n) = p(1) + ... + p(n)`.
///
/// # Safety
/// `index` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fd_index_accumulative(
    index: *const FdIndex,
    n: size_t,
    out: *mut u64,
) -> FdStatus {
    guard(|| {
        let (Some(index), false) = (index.as_ref(), out.is_null()) else {
            return fail(FdStatus::NullPointer, "null argument");
        };
        match index.0.accumulative(n) {
            Ok(g) => {
                *out = g;
                FdStatus::Ok
            }
            Err(e) => fail(factor_status(&e), e.to_string()),
        }
    })
}

/// The slopes `C = max ceil(p(n)/n)` and `K = max ceil(g(n)/n)`.
///
/// # Safety
/// `index` must be a live handle; `c` and `k` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn fd_index_slopes(
    index: *const FdIndex,
    c: *mut u64,
    k: *mut u64,
) -> FdStatus {
    guard(|| {
        let (Some(index), false) = (index.as_ref(), c.is_null() || k.is_null()) else {
            return fail(FdStatus::NullPointer, "null argument");
        };
        (*c, *k) = index.0.slope_constants();
        FdStatus::Ok
    })
}

/// Whether `factor` (written in the word's alphabet) occurs in the window.
///
/// # Safety
/// `index` must be a live handle; `factor` a NUL-terminated string; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fd_index_contains(
    index: *const FdIndex,
    factor: *const c_char,
    out: *mut bool,
) -> FdStatus {
    guard(|| {
        let (Some(index), false) = (index.as_ref(), out.is_null()) else {
            return fail(FdStatus::NullPointer, "null argument");
        };
        let s = match str_arg(factor) {
            Ok(s) => s,
            Err(s) => return s,
        };
        *out = match index.0.alphabet().parse(s) {
            Some(w) => index.0.contains(&w),
            None => false,
        };
        FdStatus::Ok
    })
}

fn cover_of(
    index: &FactorIndex,
    s: &facdecomp::decompose::LeveledLanguage,
    t: &facdecomp::decompose::LeveledLanguage,
) -> FdCover {
    let rep = verify_cover(index, s, t, index.n_max());
    FdCover {
        covered: rep.covered as u64,
        total: rep.total as u64,
        s_max: rep.s_max() as u64,
        t_max: rep.t_max() as u64,
    }
}

/// Builds the marker decomposition of the indexed word and reports its coverage.
///
/// # Safety
/// `index` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fd_marker_cover(index: *const FdIndex, out: *mut FdCover) -> FdStatus {
    guard(|| {
        let (Some(index), false) = (index.as_ref(), out.is_null()) else {
            return fail(FdStatus::NullPointer, "null argument");
        };
        match marker_decomposition(&index.0) {
            Ok((_, dec)) => {
                *out = cover_of(&index.0, &dec.s, &dec.t);
                FdStatus::Ok
            }
            Err(e) => fail(decompose_status(&e), e.to_string()),
        }
    })
}

/// Coverage of the indexed word by the Thue–Morse suffix/prefix sets.
///
/// # Safety
/// `index` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fd_thue_morse_cover(index: *const FdIndex, out: *mut FdCover) -> FdStatus {
    guard(|| {
        let (Some(index), false) = (index.as_ref(), out.is_null()) else {
            return fail(FdStatus::NullPointer, "null argument");
        };
        let d = thue_morse_st(index.0.n_max());
        *out = cover_of(&index.0, &d.s1, &d.s2);
        FdStatus::Ok
    })
}

/// Minimal period of a word given as characters `'0'..'9'`/`'a'..'z'`; the
/// letters are only compared, so any single-byte characters work.
///
/// # Safety
/// `word` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fd_minimal_period(word: *const c_char, out: *mut size_t) -> FdStatus {
    guard(|| {
        if out.is_null() {
            return fail(FdStatus::NullPointer, "null output pointer");
        }
        let s = match str_arg(word) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match minimal_period(s.as_bytes()) {
            Ok((p, _)) => {
                *out = p;
                FdStatus::Ok
            }
            Err(e) => fail(FdStatus::Precondition, e.to_string()),
        }
    })
}

/// Number of pairs `(k, l)` with `k >= 3`, `l >= sqrt(n)` and `|w_kl| <= n`.
#[no_mangle]
pub extern "C" fn fd_count_e(n: u64) -> u64 {
    count_e(n)
}
