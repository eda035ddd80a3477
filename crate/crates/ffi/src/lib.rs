//! C ABI over `blstate`.
//!
//! Every function returns a [`BlsStatus`]; results come back through out
//! pointers. Handles are opaque and owned by the caller once returned, to be
//! released with the matching `*_free` function. Strings handed out are
//! NUL-terminated and released with [`bls_string_free`]. After a non-`Ok`
//! status, [`bls_last_error`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use blstate::builtin::{build_str, BuildError, Instance};
use blstate::document::{parse_algebra, serialize_algebra, AlgebraDocument, DocumentError};
use blstate::operators::{enumerate_operators, SearchClass};
use blstate::states::{extremal_states, format_rational, RationalState};
use blstate::{AlgebraError, OperatorClass, StateOperator};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed specifier or document text.
    Parse = 3,
    /// Tables or maps that violate an axiom.
    Validation = 4,
    NotFound = 5,
    OutOfRange = 6,
    Panic = 7,
}

/// Operator classes, strongest last. `NotState` marks a map that fails the
/// state-operator axioms.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlsClass {
    NotState = 0,
    State = 1,
    Strong = 2,
    Morphism = 3,
    Endomorphism = 4,
}

/// A verified algebra with its named operators and extremal states.
pub struct BlsAlgebra {
    instance: Instance,
    extremal: Option<Vec<RationalState>>,
}

/// A map checked against the operator axioms of one algebra.
pub struct BlsOperator {
    op: StateOperator,
    size: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: BlsStatus, msg: impl Into<String>) -> BlsStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> BlsStatus) -> BlsStatus {
    set_error("");
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(BlsStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, BlsStatus> {
    if s.is_null() {
        return Err(fail(BlsStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(BlsStatus::InvalidUtf8, "string is not UTF-8"))
}

fn class_of(op: &StateOperator) -> BlsClass {
    match op.class() {
        OperatorClass::None => BlsClass::NotState,
        OperatorClass::State => BlsClass::State,
        OperatorClass::Strong => BlsClass::Strong,
        OperatorClass::Morphism if op.preserves_impl() => BlsClass::Endomorphism,
        OperatorClass::Morphism => BlsClass::Morphism,
    }
}

fn search_class(c: BlsClass) -> Option<SearchClass> {
    match c {
        BlsClass::NotState => None,
        BlsClass::State => Some(SearchClass::State),
        BlsClass::Strong => Some(SearchClass::Strong),
        BlsClass::Morphism => Some(SearchClass::Morphism),
        BlsClass::Endomorphism => Some(SearchClass::Endomorphism),
    }
}

fn hand_out_string(s: String, out: *mut *mut c_char) -> BlsStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            BlsStatus::Ok
        }
        Err(_) => fail(BlsStatus::Panic, "string contains NUL"),
    }
}

fn document_status(e: &DocumentError) -> BlsStatus {
    match e {
        DocumentError::Validation(_) | DocumentError::Operator { .. } | DocumentError::State { .. } => {
            BlsStatus::Validation
        }
        DocumentError::Parse { .. } | DocumentError::Version(_) => BlsStatus::Parse,
    }
}

fn algebra_ref<'a>(a: *const BlsAlgebra) -> Result<&'a BlsAlgebra, BlsStatus> {
    unsafe { a.as_ref() }.ok_or_else(|| fail(BlsStatus::NullPointer, "null algebra"))
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(BlsStatus::NullPointer, concat!("null ", stringify!($p)));
        })+
    };
}

/// Builds a built-in algebra such as `mv-chain(3)` or `four-element`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bls_algebra_from_spec(spec: *const c_char, out: *mut *mut BlsAlgebra) -> BlsStatus {
    guard(|| {
        non_null!(out);
        let spec = tri!(read_str(spec));
        match build_str(spec) {
            Ok(instance) => {
                *out = Box::into_raw(Box::new(BlsAlgebra { instance, extremal: None }));
                BlsStatus::Ok
            }
            Err(e @ BuildError::Algebra(_)) => fail(BlsStatus::Validation, e.to_string()),
            Err(e) => fail(BlsStatus::Parse, e.to_string()),
        }
    })
}

/// Parses and verifies a JSON algebra document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bls_algebra_from_document(json: *const c_char, out: *mut *mut BlsAlgebra) -> BlsStatus {
    guard(|| {
        non_null!(out);
        let text = tri!(read_str(json));
        match parse_algebra(text).and_then(|d| d.load()) {
            Ok(doc) => {
                let instance = Instance {
                    id: "document".into(),
                    algebra: doc.algebra,
                    operators: doc.operators,
                    rejected: Vec::new(),
                };
                *out = Box::into_raw(Box::new(BlsAlgebra { instance, extremal: None }));
                BlsStatus::Ok
            }
            Err(e) => fail(document_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `a` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bls_algebra_free(a: *mut BlsAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bls_algebra_size(a: *const BlsAlgebra, out: *mut usize) -> BlsStatus {
    guard(|| {
        non_null!(out);
        *out = tri!(algebra_ref(a)).instance.algebra.size();
        BlsStatus::Ok
    })
}

/// Looks up an element index by label.
///
/// # Safety
/// `a` must be a live handle, `label` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn bls_algebra_index_of(
    a: *const BlsAlgebra,
    label: *const c_char,
    out: *mut usize,
) -> BlsStatus {
    guard(|| {
        non_null!(out);
        let a = tri!(algebra_ref(a));
        let label = tri!(read_str(label));
        match a.instance.algebra.index_of(label) {
            Some(x) => {
                *out = x;
                BlsStatus::Ok
            }
            None => fail(BlsStatus::NotFound, format!("no element labelled {label:?}")),
        }
    })
}

/// The label of element `x`, released with [`bls_string_free`].
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bls_algebra_label(a: *const BlsAlgebra, x: usize, out: *mut *mut c_char) -> BlsStatus {
    guard(|| {
        non_null!(out);
        let a = &tri!(algebra_ref(a)).instance.algebra;
        if x >= a.size() {
            return fail(BlsStatus::OutOfRange, format!("element {x} out of range"));
        }
        hand_out_string(a.label(x).to_owned(), out)
    })
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlsOperation {
    Meet = 0,
    Join = 1,
    Prod = 2,
    Impl = 3,
}

/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bls_algebra_apply(
    a: *const BlsAlgebra,
    op: BlsOperation,
    x: usize,
    y: usize,
    out: *mut usize,
) -> BlsStatus {
    guard(|| {
        non_null!(out);
        let a = &tri!(algebra_ref(a)).instance.algebra;
        if x >= a.size() || y >= a.size() {
            return fail(BlsStatus::OutOfRange, format!("element pair ({x}, {y}) out of range"));
        }
        *out = match op {
            BlsOperation::Meet => a.meet(x, y),
            BlsOperation::Join => a.join(x, y),
            BlsOperation::Prod => a.prod(x, y),
            BlsOperation::Impl => a.imp(x, y),
        };
        BlsStatus::Ok
    })
}

/// Whether `x = x--` holds for every element.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bls_algebra_is_mv(a: *const BlsAlgebra, out: *mut bool) -> BlsStatus {
    guard(|| {
        non_null!(out);
        *out = tri!(algebra_ref(a)).instance.algebra.is_mv();
        BlsStatus::Ok
    })
}

/// The canonical JSON document, released with [`bls_string_free`].
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bls_algebra_to_document(a: *const BlsAlgebra, out: *mut *mut c_char) -> BlsStatus {
    guard(|| {
        non_null!(out);
        let inst = &tri!(algebra_ref(a)).instance;
        let alg = &inst.algebra;
        let doc = inst
            .operators
            .iter()
            .fold(AlgebraDocument::from_algebra(alg), |d, (name, s)| d.with_operator(alg, name, s));
        hand_out_string(serialize_algebra(&doc), out)
    })
}

/// Number of operators of a class on the algebra.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bls_operator_count(a: *const BlsAlgebra, class: BlsClass, out: *mut usize) -> BlsStatus {
    guard(|| {
        non_null!(out);
        let a = tri!(algebra_ref(a));
        let Some(class) = search_class(class) else {
            return fail(BlsStatus::OutOfRange, "cannot enumerate maps that are not state-operators");
        };
        *out = enumerate_operators(&a.instance.algebra, class).len();
        BlsStatus::Ok
    })
}

/// Checks the map `x -> map[x]` against the operator axioms. The handle is
/// returned even when the map is not a state-operator; its class then reads
/// `NotState`.
///
/// # Safety
/// `map` must point to `len` elements; `a` live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn bls_operator_new(
    a: *const BlsAlgebra,
    map: *const usize,
    len: usize,
    out: *mut *mut BlsOperator,
) -> BlsStatus {
    guard(|| {
        non_null!(map, out);
        let alg = &tri!(algebra_ref(a)).instance.algebra;
        let values = std::slice::from_raw_parts(map, len).to_vec();
        match StateOperator::new(alg, values) {
            Ok(op) => {
                *out = Box::into_raw(Box::new(BlsOperator { op, size: alg.size() }));
                BlsStatus::Ok
            }
            Err(e @ AlgebraError::Malformed(_)) => fail(BlsStatus::OutOfRange, e.to_string()),
            Err(e) => fail(BlsStatus::Validation, e.to_string()),
        }
    })
}

/// An operator that came with the algebra, such as `sigma` on `four-element`.
///
/// # Safety
/// `a` live, `name` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn bls_operator_named(
    a: *const BlsAlgebra,
    name: *const c_char,
    out: *mut *mut BlsOperator,
) -> BlsStatus {
    guard(|| {
        non_null!(out);
        let a = tri!(algebra_ref(a));
        let name = tri!(read_str(name));
        match a.instance.operator(name) {
            Some(op) => {
                *out = Box::into_raw(Box::new(BlsOperator { op: op.clone(), size: a.instance.algebra.size() }));
                BlsStatus::Ok
            }
            None => fail(BlsStatus::NotFound, format!("no operator named {name:?}")),
        }
    })
}

/// # Safety
/// `op` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bls_operator_free(op: *mut BlsOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// # Safety
/// `op` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bls_operator_class(op: *const BlsOperator, out: *mut BlsClass) -> BlsStatus {
    guard(|| {
        non_null!(op, out);
        *out = class_of(&(*op).op);
        BlsStatus::Ok
    })
}

/// # Safety
/// `op` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bls_operator_apply(op: *const BlsOperator, x: usize, out: *mut usize) -> BlsStatus {
    guard(|| {
        non_null!(op, out);
        let op = &*op;
        if x >= op.size {
            return fail(BlsStatus::OutOfRange, format!("element {x} out of range"));
        }
        *out = op.op.apply(x);
        BlsStatus::Ok
    })
}

/// The first violated axiom of a rejected map, as `name (formula) at (x, ...)`
/// with element indices; an empty string for a state-operator.
///
/// # Safety
/// `op` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bls_operator_violation(op: *const BlsOperator, out: *mut *mut c_char) -> BlsStatus {
    guard(|| {
        non_null!(op, out);
        let text = match (*op).op.verdict().violations.first() {
            Some(v) => {
                let at: Vec<String> = v.witness.iter().map(usize::to_string).collect();
                format!("{} ({}) at ({})", v.axiom.name(), v.axiom.formula(), at.join(", "))
            }
            None => String::new(),
        };
        hand_out_string(text, out)
    })
}

fn extremal(a: &mut BlsAlgebra) -> &[RationalState] {
    let alg = &a.instance.algebra;
    a.extremal.get_or_insert_with(|| if alg.is_trivial() { Vec::new() } else { extremal_states(alg).extremal_states })
}

/// Number of extremal states. Computed on first use and cached in the handle.
///
/// # Safety
/// `a` must be a live handle not shared with another thread; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn bls_extremal_state_count(a: *mut BlsAlgebra, out: *mut usize) -> BlsStatus {
    guard(|| {
        non_null!(a, out);
        *out = extremal(&mut *a).len();
        BlsStatus::Ok
    })
}

/// Value of extremal state `k` at element `x`, as `p/q` or `p`.
///
/// # Safety
/// `a` must be a live handle not shared with another thread; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn bls_extremal_state_value(
    a: *mut BlsAlgebra,
    k: usize,
    x: usize,
    out: *mut *mut c_char,
) -> BlsStatus {
    guard(|| {
        non_null!(a, out);
        let states = extremal(&mut *a);
        match states.get(k) {
            Some(s) if x < s.len() => hand_out_string(format_rational(s.get(x)), out),
            _ => fail(BlsStatus::OutOfRange, format!("state {k} at element {x} out of range")),
        }
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bls_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last non-`Ok` status on this thread. The pointer stays
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn bls_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn bls_status_name(status: BlsStatus) -> *const c_char {
    let s: &'static CStr = match status {
        BlsStatus::Ok => c"ok",
        BlsStatus::NullPointer => c"null pointer",
        BlsStatus::InvalidUtf8 => c"invalid UTF-8",
        BlsStatus::Parse => c"parse error",
        BlsStatus::Validation => c"validation error",
        BlsStatus::NotFound => c"not found",
        BlsStatus::OutOfRange => c"out of range",
        BlsStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}
