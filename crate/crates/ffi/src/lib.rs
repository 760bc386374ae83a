//! C ABI over `chordstate`.
//!
//! Objects cross the boundary as opaque handles created by `*_parse` /
//! `cs_verify` and released by the matching `*_free`. Every fallible call
//! returns a [`CsStatus`]; on failure the message is available from
//! [`cs_last_error`] on the same thread. Strings returned to the caller are
//! owned by the caller and must be released with [`cs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use chordstate::state::{verify_state, GramSpec};
use chordstate::{ChordWord, DiagramExpr, Error, Evaluator, GramReport, Guards, Labelling};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Dimension = 4,
    Argument = 5,
    Resource = 6,
    Shape = 7,
    Consistency = 8,
    ZeroDimensional = 9,
    Panic = 10,
}

impl From<&Error> for CsStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse { .. } => CsStatus::Parse,
            Error::Dimension(_) => CsStatus::Dimension,
            Error::Argument(_) => CsStatus::Argument,
            Error::Resource(_) => CsStatus::Resource,
            Error::Shape(_) => CsStatus::Shape,
            Error::Consistency(_) => CsStatus::Consistency,
            Error::ZeroDimensional(_) => CsStatus::ZeroDimensional,
        }
    }
}

/// A parsed chord diagram.
pub struct CsDiagram {
    word: ChordWord,
}

/// A parsed labelling.
pub struct CsLabelling {
    labelling: Labelling,
}

/// A Gram positivity report.
pub struct CsReport {
    report: GramReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: CsStatus, message: &str) -> CsStatus {
    set_error(message);
    status
}

fn guarded(f: impl FnOnce() -> CsStatus) -> CsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(CsStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, CsStatus> {
    if text.is_null() {
        return Err(fail(CsStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| fail(CsStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn from_error(e: Error) -> CsStatus {
    fail(CsStatus::from(&e), &e.to_string())
}

/// Message of the last failed call on this thread. Valid until the next
/// failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn cs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn cs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `N: (i,j) (k,l) ...` into a new diagram handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_diagram_parse(text: *const c_char, out: *mut *mut CsDiagram) -> CsStatus {
    guarded(|| {
        if out.is_null() {
            return fail(CsStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match text.parse::<ChordWord>() {
            Ok(word) => {
                *out = Box::into_raw(Box::new(CsDiagram { word }));
                CsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `d` must be null or a handle from [`cs_diagram_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_diagram_free(d: *mut CsDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be a live diagram handle.
#[no_mangle]
pub unsafe extern "C" fn cs_diagram_strands(d: *const CsDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.word.strands())
}

/// # Safety
/// `d` must be a live diagram handle.
#[no_mangle]
pub unsafe extern "C" fn cs_diagram_chord_count(d: *const CsDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.word.len())
}

/// Canonical text form; free with [`cs_string_free`]. Null if `d` is null.
///
/// # Safety
/// `d` must be null or a live diagram handle.
#[no_mangle]
pub unsafe extern "C" fn cs_diagram_to_string(d: *const CsDiagram) -> *mut c_char {
    d.as_ref().map_or(ptr::null_mut(), |d| into_c_string(d.word.to_string()))
}

/// Parses a comma-separated labelling such as `sym:2,ext:2,std`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_labelling_parse(text: *const c_char, out: *mut *mut CsLabelling) -> CsStatus {
    guarded(|| {
        if out.is_null() {
            return fail(CsStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Labelling::parse(text) {
            Ok(labelling) => {
                *out = Box::into_raw(Box::new(CsLabelling { labelling }));
                CsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `l` must be null or a handle from [`cs_labelling_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_labelling_free(l: *mut CsLabelling) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

unsafe fn labelling_or_std(l: *const CsLabelling, strands: usize) -> Labelling {
    l.as_ref()
        .map_or_else(|| Labelling::standard(strands), |l| l.labelling.clone())
}

/// Weight of `d` at `n` as an exact rational string (`p` or `p/q`).
/// A null labelling means the defining representation on every strand.
///
/// # Safety
/// `d` must be a live diagram handle, `l` null or a live labelling handle,
/// `value_out` a valid pointer. The returned string must be freed with
/// [`cs_string_free`].
#[no_mangle]
pub unsafe extern "C" fn cs_weight(
    d: *const CsDiagram,
    l: *const CsLabelling,
    n: u32,
    value_out: *mut *mut c_char,
) -> CsStatus {
    guarded(|| {
        let Some(d) = d.as_ref() else {
            return fail(CsStatus::NullPointer, "null diagram");
        };
        if value_out.is_null() {
            return fail(CsStatus::NullPointer, "null output pointer");
        }
        let labelling = labelling_or_std(l, d.word.strands());
        let result = Evaluator::new(labelling)
            .and_then(|ev| ev.weight(&DiagramExpr::from_word(d.word.clone()), n));
        match result {
            Ok(v) => {
                *value_out = into_c_string(v.at(n).expect("specialised").to_string());
                CsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Weight of `d` as a polynomial in `n`: a JSON array of rational strings,
/// constant term first.
///
/// # Safety
/// As [`cs_weight`].
#[no_mangle]
pub unsafe extern "C" fn cs_weight_poly_json(
    d: *const CsDiagram,
    l: *const CsLabelling,
    json_out: *mut *mut c_char,
) -> CsStatus {
    guarded(|| {
        let Some(d) = d.as_ref() else {
            return fail(CsStatus::NullPointer, "null diagram");
        };
        if json_out.is_null() {
            return fail(CsStatus::NullPointer, "null output pointer");
        }
        let labelling = labelling_or_std(l, d.word.strands());
        let result = Evaluator::new(labelling)
            .and_then(|ev| ev.weight_poly(&DiagramExpr::from_word(d.word.clone())));
        match result {
            Ok(p) => {
                let coeffs: Vec<String> = p.coefficients().iter().map(ToString::to_string).collect();
                *json_out = into_c_string(serde_json::to_string(&coeffs).expect("strings serialise"));
                CsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Builds and checks the Gram matrix over all words with at most `depth`
/// chords, using the default resource limits.
///
/// # Safety
/// `l` must be null or a live labelling handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_verify(
    strands: usize,
    depth: usize,
    l: *const CsLabelling,
    n: u32,
    out: *mut *mut CsReport,
) -> CsStatus {
    guarded(|| {
        if out.is_null() {
            return fail(CsStatus::NullPointer, "null output pointer");
        }
        let labelling = labelling_or_std(l, strands);
        let result = GramSpec::new(strands, depth, labelling, n)
            .and_then(|spec| verify_state(&spec, &Guards::DEFAULT));
        match result {
            Ok(report) => {
                *out = Box::into_raw(Box::new(CsReport { report }));
                CsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `r` must be null or a handle from [`cs_verify`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_report_free(r: *mut CsReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn cs_report_psd(r: *const CsReport) -> bool {
    r.as_ref().is_some_and(|r| r.report.psd)
}

/// Symmetric, PSD, positive unit value, and a symmetric/exterior-power labelling.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn cs_report_certificate(r: *const CsReport) -> bool {
    r.as_ref().is_some_and(|r| r.report.certificate())
}

/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn cs_report_basis_len(r: *const CsReport) -> usize {
    r.as_ref().map_or(0, |r| r.report.basis.len())
}

/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn cs_report_rank(r: *const CsReport) -> usize {
    r.as_ref().map_or(0, |r| r.report.rank)
}

/// Full report as JSON; free with [`cs_string_free`].
///
/// # Safety
/// `r` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn cs_report_to_json(r: *const CsReport) -> *mut c_char {
    r.as_ref().map_or(ptr::null_mut(), |r| into_c_string(r.report.to_json().to_string()))
}
