use std::ffi::{c_char, CStr, CString};
use std::ptr;

use braidcong_ffi::*;

fn parse(text: &str, strands: usize) -> (BcStatus, *mut BcWord) {
    let text = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { bc_word_parse(text.as_ptr(), strands, &mut out) };
    (status, out)
}

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { bc_string_free(s) };
    text
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(bc_last_error()) }.to_str().unwrap().to_owned()
}

#[test]
fn parse_roundtrip_and_free() {
    let (status, w) = parse("s1 s2^-1 t1", 0);
    assert_eq!(status, BcStatus::Ok);
    assert_eq!(last_error(), "");
    unsafe {
        assert_eq!(bc_word_strands(w), 3);
        assert_eq!(bc_word_len(w), 3);
        assert_eq!(take(bc_word_to_string(w)), "s1 s2^-1 t1");
        bc_word_free(w);
        bc_word_free(ptr::null_mut());
        assert_eq!(bc_word_strands(ptr::null()), 0);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let (status, w) = parse("s1 q2", 3);
    assert_eq!(status, BcStatus::Syntax);
    assert!(w.is_null());
    assert!(last_error().contains("syntax"));
    assert_eq!(parse("s3", 3).0, BcStatus::IndexOutOfRange);
    let status = unsafe { bc_word_parse(ptr::null(), 2, &mut ptr::null_mut()) };
    assert_eq!(status, BcStatus::NullPointer);
    let bad = [0xffu8, 0];
    let status = unsafe { bc_word_parse(bad.as_ptr().cast(), 2, &mut ptr::null_mut()) };
    assert_eq!(status, BcStatus::InvalidUtf8);
    let (_, w) = parse("s1", 2);
    unsafe {
        assert_eq!(bc_in_congruence(w, 0, &mut false), BcStatus::InvalidModulus);
        assert_eq!(bc_in_congruence(w, 2, ptr::null_mut()), BcStatus::NullPointer);
        bc_word_free(w);
    }
}

#[test]
fn congruence_membership() {
    let (_, w) = parse("s1 s1", 2);
    let (_, v) = parse("s1 t1 s1 t1", 2);
    let mut inside = false;
    unsafe {
        assert_eq!(bc_in_congruence(w, 2, &mut inside), BcStatus::Ok);
        assert!(inside);
        assert_eq!(bc_in_congruence(w, 3, &mut inside), BcStatus::Ok);
        assert!(!inside);
        assert_eq!(bc_in_congruence(v, 7, &mut inside), BcStatus::Ok);
        assert!(inside);
        bc_word_free(w);
        bc_word_free(v);
    }
}

#[test]
fn rho_v_matrix_json() {
    let (_, w) = parse("s1", 2);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { bc_rho_v_json(w, &mut out) }, BcStatus::Ok);
    let json: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(json, serde_json::json!({"n": 2, "mod": null, "rows": [["2", "-1"], ["1", "0"]]}));
    unsafe { bc_word_free(w) };
}

#[test]
fn image_orders_and_budget() {
    let mut order = 0;
    for m in 3..=8u64 {
        assert_eq!(unsafe { bc_image_order(2, m, BcImageGens::VirtualBurau, 1000, &mut order) }, BcStatus::Ok);
        assert_eq!(order, 2 * m);
    }
    assert_eq!(unsafe { bc_image_order(3, 3, BcImageGens::VirtualBurau, 10, &mut order) }, BcStatus::BudgetExceeded);
    assert!(last_error().contains("budget"));
}

#[test]
fn certificate_roundtrip() {
    let (_, w) = parse("t1 s1 t1 s1", 2);
    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { bc_certify(w, 3, &mut cert) }, BcStatus::Ok);
    let text = take(cert);
    assert_eq!(text, r#"{"word":"t1 s1 t1 s1","m":3,"steps":[{"conjugator":"s1^-1","relator":"stst","sign":1}]}"#);
    let mut valid = false;
    let c = CString::new(text.clone()).unwrap();
    assert_eq!(unsafe { bc_check_cert(c.as_ptr(), &mut valid) }, BcStatus::Ok);
    assert!(valid);
    let forged = CString::new(text.replace("\"sign\":1", "\"sign\":-1")).unwrap();
    assert_eq!(unsafe { bc_check_cert(forged.as_ptr(), &mut valid) }, BcStatus::Ok);
    assert!(!valid);
    let (_, t) = parse("t1", 2);
    assert_eq!(unsafe { bc_certify(t, 3, &mut cert) }, BcStatus::NotInKernel);
    unsafe {
        bc_word_free(w);
        bc_word_free(t);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(bc_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
