use std::ffi::{c_char, CStr, CString};
use std::ptr;

use fqgalois_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { fqg_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(fqg_last_error()) }.to_str().unwrap().to_owned()
}

fn field(spec: &str) -> *mut FqgField {
    let s = CString::new(spec).unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { fqg_field_new(s.as_ptr(), &mut f) }, FqgStatus::FQG_OK);
    f
}

fn poly(f: *const FqgField, text: &str) -> *mut FqgPoly {
    let s = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { fqg_poly_parse(f, s.as_ptr(), &mut p) }, FqgStatus::FQG_OK, "{}", last_error());
    p
}

#[test]
fn field_and_poly_handles() {
    let f = field("2^3");
    let mut tag = ptr::null_mut();
    assert_eq!(unsafe { fqg_field_tag(f, &mut tag) }, FqgStatus::FQG_OK);
    assert_eq!(take(tag), "GF(2^3;z^3+z+1)");

    let p = poly(f, "x^7 + t*x + 1");
    let mut d = 0usize;
    assert_eq!(unsafe { fqg_poly_degree_x(p, &mut d) }, FqgStatus::FQG_OK);
    assert_eq!(d, 7);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { fqg_poly_to_string(p, &mut s) }, FqgStatus::FQG_OK);
    let text = take(s);
    assert!(text.starts_with("x^7"), "{text}");
    unsafe {
        fqg_poly_free(p);
        fqg_field_free(f);
        fqg_poly_free(ptr::null_mut());
        fqg_field_free(ptr::null_mut());
        fqg_string_free(ptr::null_mut());
    }
}

#[test]
fn error_codes_and_messages() {
    let bad = CString::new("6").unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { fqg_field_new(bad.as_ptr(), &mut f) }, FqgStatus::FQG_INVALID_ARGUMENT);
    assert!(f.is_null());
    assert!(!last_error().is_empty());

    assert_eq!(unsafe { fqg_field_new(ptr::null(), &mut f) }, FqgStatus::FQG_NULL_POINTER);
    assert!(last_error().contains("spec"));

    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { fqg_field_new(invalid.as_ptr().cast(), &mut f) },
        FqgStatus::FQG_INVALID_UTF8
    );

    let k = field("3");
    let text = CString::new("x^2 + + t").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { fqg_poly_parse(k, text.as_ptr(), &mut p) }, FqgStatus::FQG_PARSE_ERROR);
    assert!(p.is_null());

    // A success clears the message.
    let ok = poly(k, "x^2+t");
    assert_eq!(last_error(), "");
    unsafe {
        fqg_poly_free(ok);
        fqg_field_free(k);
    }
}

#[test]
fn identify_and_specialize() {
    let f = field("2");
    let p = poly(f, "x^4+x+t");
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { fqg_identify(p, ptr::null(), 0, &mut json) }, FqgStatus::FQG_OK, "{}", last_error());
    let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    let text = v.to_string();
    assert!(text.contains("D4"), "{text}");

    let q = poly(f, "x^24+x+t");
    let pt = CString::new("t^3+t^2+1").unwrap();
    let mut shape = ptr::null_mut();
    assert_eq!(unsafe { fqg_specialize_shape(q, pt.as_ptr(), &mut shape) }, FqgStatus::FQG_OK, "{}", last_error());
    let s = take(shape);
    let k = fqgalois::ffield::FieldSpec::prime(2).unwrap();
    let direct = fqgalois::identify::specialize_shape(
        &fqgalois::polyring::XTPoly::parse(&k, "x^24+x+t").unwrap(),
        &fqgalois::identify::SpecPoint::MinPoly(fqgalois::polyring::UniPoly::parse(&k, "t^3+t^2+1", 't').unwrap()),
    )
    .unwrap()
    .unwrap();
    assert_eq!(s, direct.to_string());

    let mut cat = ptr::null_mut();
    assert_eq!(unsafe { fqg_catalog_shipped(&mut cat) }, FqgStatus::FQG_OK);
    let missing = CString::new("/nonexistent/catalog.json").unwrap();
    let mut other = ptr::null_mut();
    assert_ne!(unsafe { fqg_catalog_load(missing.as_ptr(), &mut other) }, FqgStatus::FQG_OK);
    assert!(other.is_null());
    unsafe {
        fqg_catalog_free(cat);
        fqg_poly_free(q);
        fqg_poly_free(p);
        fqg_field_free(f);
    }
}

#[test]
fn additive_relation_json() {
    let f = field("2");
    let p = poly(f, "x^7+t*x+1");
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { fqg_additive(p, true, &mut json) }, FqgStatus::FQG_OK, "{}", last_error());
    let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert!(v.is_object());
    unsafe {
        fqg_poly_free(p);
        fqg_field_free(f);
    }
}

#[test]
fn verification_status() {
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { fqg_fano_verify(128, &mut json) }, FqgStatus::FQG_OK);
    let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(v["kind"], "fano");

    // Too little precision: the report is still written.
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { fqg_fano_verify(32, &mut json) }, FqgStatus::FQG_VERIFICATION_FAILED);
    let text = take(json);
    assert!(text.contains("insufficient_precision"), "{text}");

    assert_eq!(unsafe { fqg_m11_verify(120, ptr::null_mut()) }, FqgStatus::FQG_NULL_POINTER);
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(fqg_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/fqgalois.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in ["fqg_field_new", "fqg_identify", "fqg_last_error", "FQG_PANIC", "typedef struct FqgPoly FqgPoly"] {
        assert!(text.contains(name), "header lacks {name}");
    }
    let src = std::env::temp_dir().join(format!("fqgalois_header_{}.c", std::process::id()));
    std::fs::write(&src, "#include \"fqgalois.h\"\nint main(void) { return fqg_version() == 0; }\n").unwrap();
    let status = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-std=c99", "-Wall", "-Werror", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .status();
    let _ = std::fs::remove_file(&src);
    match status {
        Ok(s) => assert!(s.success(), "header does not compile"),
        Err(_) => eprintln!("cc not available; skipping the C syntax check"),
    }
}
