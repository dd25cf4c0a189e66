//! C ABI for braidcong.
//!
//! Words are opaque `BcWord` handles. Every fallible call returns a
//! `BcStatus`; on failure `bc_last_error` describes the most recent error on
//! the calling thread. Strings returned by the library are owned by the
//! caller and released with `bc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use braidcong::congruence::in_congruence;
use braidcong::dihedral::{derive_certificate, verify_certificate_json};
use braidcong::image::{enumerate_image, ImageGens};
use braidcong::rep::rho_v;
use braidcong::{parse_word, parse_word_infer, BraidWord, Error};

/// Status codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    IndexOutOfRange = 4,
    StrandMismatch = 5,
    InvalidModulus = 6,
    VirtualCrossing = 7,
    BudgetExceeded = 8,
    NotInKernel = 9,
    InvalidArgument = 10,
    Internal = 11,
}

/// Generator set for image enumeration.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcImageGens {
    VirtualBurau = 0,
    BurauMinus = 1,
}

/// Opaque braid word.
pub struct BcWord {
    inner: BraidWord,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(err: &Error) -> BcStatus {
    match err {
        Error::Syntax { .. } => BcStatus::Syntax,
        Error::IndexOutOfRange { .. } => BcStatus::IndexOutOfRange,
        Error::StrandMismatch { .. } | Error::WrongStrandCount { .. } | Error::TooFewStrands { .. } => {
            BcStatus::StrandMismatch
        }
        Error::InvalidModulus(_) | Error::ModulusMismatch { .. } | Error::EvenLevel(_) => BcStatus::InvalidModulus,
        Error::VirtualCrossing { .. } => BcStatus::VirtualCrossing,
        Error::BudgetExceeded { .. } => BcStatus::BudgetExceeded,
        Error::NotInKernel { .. } => BcStatus::NotInKernel,
        _ => BcStatus::InvalidArgument,
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), (BcStatus, String)>) -> BcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            BcStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BcStatus::Internal
        }
    }
}

fn lib_err(err: Error) -> (BcStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(what: &str) -> (BcStatus, String) {
    (BcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(text: *const c_char, what: &str) -> Result<&'a str, (BcStatus, String)> {
    if text.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(text).to_str().map_err(|e| (BcStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn read_word<'a>(word: *const BcWord) -> Result<&'a BraidWord, (BcStatus, String)> {
    word.as_ref().map(|w| &w.inner).ok_or_else(|| null("word"))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (BcStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn bc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `text` into a word on `strands` strands; `strands == 0` infers the
/// count from the largest index.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bc_word_parse(text: *const c_char, strands: usize, out: *mut *mut BcWord) -> BcStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let word = if strands == 0 { parse_word_infer(text) } else { parse_word(text, strands) }.map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(BcWord { inner: word })))
    })
}

/// # Safety
/// `word` must come from `bc_word_parse` and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bc_word_free(word: *mut BcWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// # Safety
/// `word` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn bc_word_strands(word: *const BcWord) -> usize {
    word.as_ref().map_or(0, |w| w.inner.strands())
}

/// # Safety
/// `word` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn bc_word_len(word: *const BcWord) -> usize {
    word.as_ref().map_or(0, |w| w.inner.len())
}

/// Canonical text of the word, or null if `word` is null.
///
/// # Safety
/// `word` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn bc_word_to_string(word: *const BcWord) -> *mut c_char {
    match word.as_ref() {
        Some(w) => to_c_string(w.inner.to_string()),
        None => {
            set_error("word is null");
            ptr::null_mut()
        }
    }
}

/// Whether the word lies in the level-`m` congruence subgroup.
///
/// # Safety
/// `word` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bc_in_congruence(word: *const BcWord, m: u64, out: *mut bool) -> BcStatus {
    guard(|| {
        let verdict = in_congruence(read_word(word)?, m).map_err(lib_err)?;
        write_out(out, verdict.in_subgroup)
    })
}

/// Integer matrix of the word as JSON (`{"n":..,"mod":null,"rows":[[..]]}`).
///
/// # Safety
/// `word` must be a live handle and `out` a valid pointer. The string is
/// released with `bc_string_free`.
#[no_mangle]
pub unsafe extern "C" fn bc_rho_v_json(word: *const BcWord, out: *mut *mut c_char) -> BcStatus {
    guard(|| {
        let json = serde_json::to_string(&rho_v(read_word(word)?).to_json())
            .map_err(|e| (BcStatus::Internal, e.to_string()))?;
        write_out(out, to_c_string(json))
    })
}

/// Order of the image of the n-strand generators modulo `m`, enumerating at
/// most `budget` elements.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bc_image_order(n: usize, m: u64, gens: BcImageGens, budget: u64, out: *mut u64) -> BcStatus {
    guard(|| {
        let gens = match gens {
            BcImageGens::VirtualBurau => ImageGens::VirtualBurau,
            BcImageGens::BurauMinus => ImageGens::BurauMinus,
        };
        let image = enumerate_image(n, m, gens, budget, false).map_err(lib_err)?;
        write_out(out, image.order() as u64)
    })
}

/// Relator certificate for a two-strand word in the kernel of q_m, as JSON.
///
/// # Safety
/// `word` must be a live handle and `out` a valid pointer. The string is
/// released with `bc_string_free`.
#[no_mangle]
pub unsafe extern "C" fn bc_certify(word: *const BcWord, m: u64, out: *mut *mut c_char) -> BcStatus {
    guard(|| {
        let cert = derive_certificate(read_word(word)?, m).map_err(lib_err)?;
        let json = serde_json::to_string(&cert.to_json()).map_err(|e| (BcStatus::Internal, e.to_string()))?;
        write_out(out, to_c_string(json))
    })
}

/// Independently checks a certificate given as JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bc_check_cert(json: *const c_char, out: *mut bool) -> BcStatus {
    guard(|| {
        let valid = verify_certificate_json(read_str(json, "json")?).map_err(lib_err)?;
        write_out(out, valid)
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
