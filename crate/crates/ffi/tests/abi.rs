use kahler_lab_ffi::*;
use std::ffi::{c_char, CStr};
use std::ptr;

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    let n = unsafe { kl_last_error(buf.as_mut_ptr(), buf.len()) };
    assert!(n > 0);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

#[test]
fn version_is_package_version() {
    let v = unsafe { CStr::from_ptr(kl_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn space_form_tensor_round_trip() {
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { kl_tensor_space_form(3, 1.0, &mut t) }, KlStatus::Ok);
    let mut m = 0;
    assert_eq!(unsafe { kl_tensor_dim(t, &mut m) }, KlStatus::Ok);
    assert_eq!(m, 3);

    let re = [1.0, 2.0, 0.0];
    let im = [0.0, -1.0, 0.5];
    let mut h = 0.0;
    assert_eq!(unsafe { kl_tensor_holomorphic_sectional(t, re.as_ptr(), im.as_ptr(), 3, &mut h) }, KlStatus::Ok);
    assert!((h - 2.0).abs() < 1e-12, "{h}");

    let mut r = 1.0;
    assert_eq!(unsafe { kl_tensor_berger_residual(t, &mut r) }, KlStatus::Ok);
    assert!(r < 1e-12);

    let mut lo = 0.0;
    assert_eq!(
        unsafe { kl_tensor_extremize(t, KlFunctional::OrthogonalRicci, KlMode::Min, 7, &mut lo) },
        KlStatus::Ok
    );
    assert!((lo - 2.0).abs() < 1e-9, "{lo}");
    unsafe { kl_tensor_free(t) };
}

#[test]
fn tensor_from_json_reports_symmetry_violation() {
    let mut t = ptr::null_mut();
    let good = c"{\"m\": 2, \"coeffs\": [{\"idx\": [1, 1, 1, 1], \"re\": 2.0, \"im\": 0.0}]}";
    assert_eq!(unsafe { kl_tensor_from_json(good.as_ptr(), &mut t) }, KlStatus::Ok);
    unsafe { kl_tensor_free(t) };
    let bad = c"{\"m\": 2, \"coeffs\": [{\"idx\": [1, 1, 1, 1], \"re\": 2.0, \"im\": 1.0}]}";
    let mut t = ptr::null_mut();
    let st = unsafe { kl_tensor_from_json(bad.as_ptr(), &mut t) };
    assert_eq!(st, KlStatus::SymmetryViolation);
    assert!(t.is_null());
    let garbage = c"not json";
    assert_eq!(unsafe { kl_tensor_from_json(garbage.as_ptr(), &mut t) }, KlStatus::Parse);
    assert!(!last_error().is_empty());
}

#[test]
fn null_pointers_are_rejected() {
    assert_eq!(unsafe { kl_tensor_space_form(2, 1.0, ptr::null_mut()) }, KlStatus::NullPointer);
    assert!(last_error().contains("null"));
    let mut m = 0;
    assert_eq!(unsafe { kl_tensor_dim(ptr::null(), &mut m) }, KlStatus::NullPointer);
    assert_eq!(unsafe { kl_profile_abc(ptr::null(), 0.5, ptr::null_mut()) }, KlStatus::NullPointer);
    unsafe {
        kl_tensor_free(ptr::null_mut());
        kl_profile_free(ptr::null_mut());
    }
}

#[test]
fn last_error_truncates_and_reports_length() {
    let mut t = ptr::null_mut();
    assert_ne!(unsafe { kl_tensor_space_form(0, 1.0, &mut t) }, KlStatus::Ok);
    let full = unsafe { kl_last_error(ptr::null_mut(), 0) };
    let mut buf = [1 as c_char; 4];
    assert_eq!(unsafe { kl_last_error(buf.as_mut_ptr(), buf.len()) }, full);
    assert_eq!(buf[3], 0);
}

#[test]
fn fubini_study_profile_and_comparison() {
    let mut p = ptr::null_mut();
    let st = unsafe { kl_profile_builtin(c"fubini-study".as_ptr(), 3, f64::NAN, f64::NAN, f64::NAN, &mut p) };
    assert_eq!(st, KlStatus::Ok);
    let mut abc = KlAbc::default();
    assert_eq!(unsafe { kl_profile_abc(p, 0.7, &mut abc) }, KlStatus::Ok);
    assert!((abc.a - 2.0).abs() < 1e-10 && (abc.b - 1.0).abs() < 1e-10 && (abc.c - 2.0).abs() < 1e-10, "{abc:?}");

    let mut r = KlComparison::default();
    assert_eq!(unsafe { kl_compare(p, c"1.2i".as_ptr(), f64::NAN, &mut r) }, KlStatus::Ok);
    assert_eq!(r.passed, 1);
    assert!(r.max_violation <= 1e-6);

    assert_eq!(unsafe { kl_compare(p, c"9.9".as_ptr(), f64::NAN, &mut r) }, KlStatus::UnknownName);
    unsafe { kl_profile_free(p) };
}

#[test]
fn unknown_profile_and_unused_parameter() {
    let mut p = ptr::null_mut();
    let st = unsafe { kl_profile_builtin(c"nope".as_ptr(), 3, f64::NAN, f64::NAN, f64::NAN, &mut p) };
    assert_eq!(st, KlStatus::UnknownName);
    assert!(last_error().contains("nope"));
    let st = unsafe { kl_profile_builtin(c"flat".as_ptr(), 3, 1.0, f64::NAN, f64::NAN, &mut p) };
    assert_eq!(st, KlStatus::InvalidArgument);
    assert!(p.is_null());
}

#[test]
fn surface_probe_engines_agree() {
    let mut s = KlSurfacePoint::default();
    assert_eq!(unsafe { kl_surface_probe(2.0, 1.0, &mut s) }, KlStatus::Ok);
    assert!(s.engine_difference < 1e-6, "{s:?}");
    assert_eq!(unsafe { kl_surface_probe(0.75, -1.0, &mut s) }, KlStatus::Ok);
    assert!(s.engine_difference < 1e-6, "{s:?}");
    assert_ne!(unsafe { kl_surface_probe(-1.0, 0.0, &mut s) }, KlStatus::Ok);
}

#[test]
fn header_is_generated_and_parses_as_c() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/kahler_lab.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in ["kl_last_error", "kl_tensor_free", "kl_profile_builtin", "kl_compare", "kl_surface_probe"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let src = std::env::temp_dir().join(format!("kl_header_{}.c", std::process::id()));
    std::fs::write(&src, "#include \"kahler_lab.h\"\nint main(void) { KlTensor *t = 0; return kl_tensor_space_form(2, 1.0, &t); }\n")
        .unwrap();
    let status = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status();
    let _ = std::fs::remove_file(&src);
    match status {
        Ok(s) => assert!(s.success(), "header does not compile"),
        Err(e) => eprintln!("skipping C syntax check: {e}"),
    }
}
