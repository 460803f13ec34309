//! C ABI for fqgalois.
//!
//! Objects are opaque handles created by `fqg_*_new`/`fqg_*_parse` and
//! released by the matching `fqg_*_free`. Every fallible call returns an
//! [`FqgStatus`]; on failure, [`fqg_last_error`] describes the error for the
//! calling thread. Strings returned through `char **` out-parameters are
//! owned by the caller and must be released with [`fqg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use fqgalois::additive::{affine_relation, minimal_additive_multiple, AdditiveOptions};
use fqgalois::ffield::FieldSpec;
use fqgalois::identify::{identify, specialize_shape, Catalog, IdentifyOptions, SpecPoint};
use fqgalois::paperprops::{fano_verify, m11_verify, VerifyReport};
use fqgalois::polyring::{UniPoly, XTPoly};
use fqgalois::Error;

/// Result of an FFI call.
#[repr(C)]
#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FqgStatus {
    FQG_OK = 0,
    /// A required pointer argument was null.
    FQG_NULL_POINTER = 1,
    /// A string argument was not valid UTF-8.
    FQG_INVALID_UTF8 = 2,
    /// Field, polynomial or permutation text did not parse.
    FQG_PARSE_ERROR = 3,
    /// An argument was outside the supported domain.
    FQG_INVALID_ARGUMENT = 4,
    /// The computation could not be completed (budget, precision, catalog).
    FQG_COMPUTATION_ERROR = 5,
    /// A verification ran and at least one check failed.
    FQG_VERIFICATION_FAILED = 6,
    /// A Rust panic was caught at the boundary.
    FQG_PANIC = 7,
}

/// A finite field F_q.
pub struct FqgField(FieldSpec);

/// A polynomial in F_q[t][x].
pub struct FqgPoly(XTPoly);

/// A catalog of transitive permutation groups.
pub struct FqgCatalog(Catalog);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> FqgStatus {
    match e {
        Error::Parse { .. } | Error::Permutation(_) => FqgStatus::FQG_PARSE_ERROR,
        Error::NotPrime(_)
        | Error::UnsupportedCharacteristic(_)
        | Error::FieldTooLarge { .. }
        | Error::ModulusDegree { .. }
        | Error::ModulusNotMonic { .. }
        | Error::ReducibleModulus { .. }
        | Error::FieldMismatch { .. }
        | Error::InvalidArgument(_) => FqgStatus::FQG_INVALID_ARGUMENT,
        _ => FqgStatus::FQG_COMPUTATION_ERROR,
    }
}

/// Runs `f`, translating errors and panics into a status and the
/// thread's last-error message.
fn guard(f: impl FnOnce() -> Result<FqgStatus, (FqgStatus, String)>) -> FqgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            if s == FqgStatus::FQG_OK {
                set_error("");
            }
            s
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal panic: {msg}"));
            FqgStatus::FQG_PANIC
        }
    }
}

type FfiResult<T> = Result<T, (FqgStatus, String)>;

fn lib<T>(r: fqgalois::Result<T>) -> FfiResult<T> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err((FqgStatus::FQG_NULL_POINTER, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (FqgStatus::FQG_INVALID_UTF8, format!("{name} is not valid UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| (FqgStatus::FQG_NULL_POINTER, format!("{name} is null")))
}

unsafe fn out_arg<'a, T>(p: *mut T, name: &str) -> FfiResult<&'a mut T> {
    p.as_mut().ok_or_else(|| (FqgStatus::FQG_NULL_POINTER, format!("{name} is null")))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior NULs removed").into_raw()
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn fqg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn fqg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from an `fqg_*` out-parameter and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fqg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a field from `spec`: a prime `p`, `p^k`, or a tag such as
/// `GF(2^3;z^3+z+1)`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fqg_field_new(spec: *const c_char, out: *mut *mut FqgField) -> FqgStatus {
    guard(|| {
        let spec = str_arg(spec, "spec")?;
        let out = out_arg(out, "out")?;
        let field = lib(fqgalois::cli::parse_field(spec))?;
        *out = Box::into_raw(Box::new(FqgField(field)));
        Ok(FqgStatus::FQG_OK)
    })
}

/// # Safety
/// `field` must come from [`fqg_field_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fqg_field_free(field: *mut FqgField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// The field's canonical tag, e.g. `GF(2^3;z^3+z+1)`.
///
/// # Safety
/// Pointers must be valid; free the result with [`fqg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn fqg_field_tag(field: *const FqgField, out: *mut *mut c_char) -> FqgStatus {
    guard(|| {
        let f = ref_arg(field, "field")?;
        *out_arg(out, "out")? = c_string(f.0.tag());
        Ok(FqgStatus::FQG_OK)
    })
}

/// Parses a polynomial in x and t over `field`.
///
/// # Safety
/// Pointers must be valid; `text` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn fqg_poly_parse(
    field: *const FqgField,
    text: *const c_char,
    out: *mut *mut FqgPoly,
) -> FqgStatus {
    guard(|| {
        let f = ref_arg(field, "field")?;
        let text = str_arg(text, "text")?;
        let out = out_arg(out, "out")?;
        let p = lib(XTPoly::parse(&f.0, text))?;
        *out = Box::into_raw(Box::new(FqgPoly(p)));
        Ok(FqgStatus::FQG_OK)
    })
}

/// # Safety
/// `poly` must come from [`fqg_poly_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fqg_poly_free(poly: *mut FqgPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Canonical text of the polynomial.
///
/// # Safety
/// Pointers must be valid; free the result with [`fqg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn fqg_poly_to_string(poly: *const FqgPoly, out: *mut *mut c_char) -> FqgStatus {
    guard(|| {
        let p = ref_arg(poly, "poly")?;
        *out_arg(out, "out")? = c_string(p.0.to_string());
        Ok(FqgStatus::FQG_OK)
    })
}

/// Degree in x; the zero polynomial is an invalid argument.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fqg_poly_degree_x(poly: *const FqgPoly, out: *mut usize) -> FqgStatus {
    guard(|| {
        let p = ref_arg(poly, "poly")?;
        let out = out_arg(out, "out")?;
        match p.0.degree_x() {
            Some(d) => {
                *out = d;
                Ok(FqgStatus::FQG_OK)
            }
            None => Err((FqgStatus::FQG_INVALID_ARGUMENT, "zero polynomial has no degree".into())),
        }
    })
}

/// The catalog shipped with the library.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fqg_catalog_shipped(out: *mut *mut FqgCatalog) -> FqgStatus {
    guard(|| {
        *out_arg(out, "out")? = Box::into_raw(Box::new(FqgCatalog(Catalog::shipped())));
        Ok(FqgStatus::FQG_OK)
    })
}

/// Loads a catalog from a JSON file.
///
/// # Safety
/// `path` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fqg_catalog_load(path: *const c_char, out: *mut *mut FqgCatalog) -> FqgStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        let out = out_arg(out, "out")?;
        let c = lib(Catalog::load(std::path::Path::new(path)))?;
        *out = Box::into_raw(Box::new(FqgCatalog(c)));
        Ok(FqgStatus::FQG_OK)
    })
}

/// # Safety
/// `catalog` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fqg_catalog_free(catalog: *mut FqgCatalog) {
    if !catalog.is_null() {
        drop(Box::from_raw(catalog));
    }
}

/// Identifies the Galois group of the monic `poly`. `catalog` may be null
/// for the shipped catalog. Writes the evidence report as JSON.
///
/// # Safety
/// Pointers must be valid; free the result with [`fqg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn fqg_identify(
    poly: *const FqgPoly,
    catalog: *const FqgCatalog,
    sweep_degree: u32,
    json_out: *mut *mut c_char,
) -> FqgStatus {
    guard(|| {
        let p = ref_arg(poly, "poly")?;
        let out = out_arg(json_out, "json_out")?;
        let shipped;
        let cat = match catalog.as_ref() {
            Some(c) => &c.0,
            None => {
                shipped = Catalog::shipped();
                &shipped
            }
        };
        let opts = IdentifyOptions {
            sweep_degree: sweep_degree as usize,
            ..Default::default()
        };
        let report = lib(identify(&p.0, cat, &opts))?;
        *out = c_string(serde_json::to_string(&report).expect("report serializes"));
        Ok(FqgStatus::FQG_OK)
    })
}

/// Least additive multiple of `poly`, or the least affine relation when
/// `affine` is true, as JSON.
///
/// # Safety
/// Pointers must be valid; free the result with [`fqg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn fqg_additive(poly: *const FqgPoly, affine: bool, json_out: *mut *mut c_char) -> FqgStatus {
    guard(|| {
        let p = ref_arg(poly, "poly")?;
        let out = out_arg(json_out, "json_out")?;
        let opts = AdditiveOptions::default();
        let rel = lib(if affine {
            affine_relation(&p.0, &opts)
        } else {
            minimal_additive_multiple(&p.0, &opts)
        })?;
        *out = c_string(rel.to_json().to_string());
        Ok(FqgStatus::FQG_OK)
    })
}

/// Cycle shape of `poly` specialized at `point`: a field element such as
/// `1`, or a monic irreducible polynomial in t such as `t^3+t^2+1`.
/// Writes e.g. `[21,3]`, or an empty string when the specialization drops
/// degree or is not squarefree.
///
/// # Safety
/// Pointers must be valid; free the result with [`fqg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn fqg_specialize_shape(
    poly: *const FqgPoly,
    point: *const c_char,
    out: *mut *mut c_char,
) -> FqgStatus {
    guard(|| {
        let p = ref_arg(poly, "poly")?;
        let point = str_arg(point, "point")?;
        let out = out_arg(out, "out")?;
        let field = p.0.field();
        let spec = if point.contains('t') {
            SpecPoint::MinPoly(lib(UniPoly::parse(field, point, 't'))?)
        } else {
            SpecPoint::Element(lib(field.parse_elem(point))?)
        };
        let shape = lib(specialize_shape(&p.0, &spec))?;
        *out = c_string(shape.map(|s| s.to_string()).unwrap_or_default());
        Ok(FqgStatus::FQG_OK)
    })
}

unsafe fn verify(
    precision: u32,
    json_out: *mut *mut c_char,
    run: fn(usize) -> fqgalois::Result<VerifyReport>,
) -> FqgStatus {
    guard(|| {
        let out = out_arg(json_out, "json_out")?;
        let report = lib(run(precision as usize))?;
        *out = c_string(report.to_json().to_string());
        if report.ok() {
            Ok(FqgStatus::FQG_OK)
        } else {
            Err((FqgStatus::FQG_VERIFICATION_FAILED, format!("{} verification failed", report.kind)))
        }
    })
}

/// Runs the Fano/Serre checks modulo t^precision and writes the report.
/// The report is written even when the status is FQG_VERIFICATION_FAILED.
///
/// # Safety
/// `json_out` must be writable; free the result with [`fqg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn fqg_fano_verify(precision: u32, json_out: *mut *mut c_char) -> FqgStatus {
    verify(precision, json_out, fano_verify)
}

/// Runs the M11 checks modulo t^precision and writes the report.
///
/// # Safety
/// `json_out` must be writable; free the result with [`fqg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn fqg_m11_verify(precision: u32, json_out: *mut *mut c_char) -> FqgStatus {
    verify(precision, json_out, m11_verify)
}
