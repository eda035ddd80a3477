use std::ffi::{CStr, CString};
use std::ptr;

use blstate_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { bls_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(bls_last_error()) }.to_str().unwrap().to_owned()
}

fn algebra(spec: &str) -> *mut BlsAlgebra {
    let spec = CString::new(spec).unwrap();
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { bls_algebra_from_spec(spec.as_ptr(), &mut a) }, BlsStatus::Ok);
    a
}

#[test]
fn four_element_round_trip() {
    let a = algebra("four-element");
    let mut n = 0;
    unsafe {
        assert_eq!(bls_algebra_size(a, &mut n), BlsStatus::Ok);
        assert_eq!(n, 4);
        let mut mv = true;
        assert_eq!(bls_algebra_is_mv(a, &mut mv), BlsStatus::Ok);
        assert!(!mv);

        let mut p = 0;
        assert_eq!(bls_algebra_apply(a, BlsOperation::Prod, 1, 2, &mut p), BlsStatus::Ok);
        assert_eq!(p, 1);

        let name = CString::new("sigma").unwrap();
        let mut op = ptr::null_mut();
        assert_eq!(bls_operator_named(a, name.as_ptr(), &mut op), BlsStatus::Ok);
        let mut class = BlsClass::NotState;
        assert_eq!(bls_operator_class(op, &mut class), BlsStatus::Ok);
        assert_eq!(class, BlsClass::Endomorphism);
        let mut y = 0;
        assert_eq!(bls_operator_apply(op, 2, &mut y), BlsStatus::Ok);
        assert_eq!(y, 3);
        bls_operator_free(op);

        let mut doc = ptr::null_mut();
        assert_eq!(bls_algebra_to_document(a, &mut doc), BlsStatus::Ok);
        let text = CString::new(take_string(doc)).unwrap();
        let mut b = ptr::null_mut();
        assert_eq!(bls_algebra_from_document(text.as_ptr(), &mut b), BlsStatus::Ok);
        let mut m = 0;
        assert_eq!(bls_algebra_size(b, &mut m), BlsStatus::Ok);
        assert_eq!(m, 4);
        bls_algebra_free(b);

        let mut k = 0;
        assert_eq!(bls_extremal_state_count(a, &mut k), BlsStatus::Ok);
        assert_eq!(k, 1);
        let values: Vec<String> = (0..4)
            .map(|x| {
                let mut v = ptr::null_mut();
                assert_eq!(bls_extremal_state_value(a, 0, x, &mut v), BlsStatus::Ok);
                take_string(v)
            })
            .collect();
        assert_eq!(values, ["0", "1/2", "1", "1"]);
        bls_algebra_free(a);
    }
}

#[test]
fn rejected_map_reports_axiom() {
    let a = algebra("mv-chain(2)");
    unsafe {
        let map = [0usize, 2, 2];
        let mut op = ptr::null_mut();
        assert_eq!(bls_operator_new(a, map.as_ptr(), map.len(), &mut op), BlsStatus::Ok);
        let mut class = BlsClass::State;
        bls_operator_class(op, &mut class);
        assert_eq!(class, BlsClass::NotState);
        let mut v = ptr::null_mut();
        assert_eq!(bls_operator_violation(op, &mut v), BlsStatus::Ok);
        assert!(!take_string(v).is_empty());
        bls_operator_free(op);

        let mut count = 0;
        assert_eq!(bls_operator_count(a, BlsClass::State, &mut count), BlsStatus::Ok);
        assert_eq!(count, 1);
        bls_algebra_free(a);
    }
}

#[test]
fn error_codes() {
    let mut a = ptr::null_mut();
    let bad = CString::new("mv-chain(").unwrap();
    assert_eq!(unsafe { bls_algebra_from_spec(bad.as_ptr(), &mut a) }, BlsStatus::Parse);
    assert!(!last_error().is_empty());
    assert!(a.is_null());
    assert_eq!(unsafe { bls_algebra_from_spec(ptr::null(), &mut a) }, BlsStatus::NullPointer);

    let doc =
        CString::new(r#"{"format_version": 1, "labels": ["0", "1"], "tables": {"prod": [[0, 0], [0, 0]]}}"#).unwrap();
    assert_eq!(unsafe { bls_algebra_from_document(doc.as_ptr(), &mut a) }, BlsStatus::Validation);

    let b = algebra("mv-chain(1)");
    let mut out = 0;
    unsafe {
        assert_eq!(bls_algebra_apply(b, BlsOperation::Meet, 0, 5, &mut out), BlsStatus::OutOfRange);
        let short = [0usize];
        let mut op = ptr::null_mut();
        assert_eq!(bls_operator_new(b, short.as_ptr(), 1, &mut op), BlsStatus::OutOfRange);
        let label = CString::new("z").unwrap();
        assert_eq!(bls_algebra_index_of(b, label.as_ptr(), &mut out), BlsStatus::NotFound);
        assert_eq!(CStr::from_ptr(bls_status_name(BlsStatus::NotFound)).to_str().unwrap(), "not found");
        bls_algebra_free(b);
        bls_algebra_free(ptr::null_mut());
    }
}
