use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use zonoehr_ffi::*;

fn make(dim: usize, gens: &[i64]) -> *mut ZonoZonotope {
    let mut z = ptr::null_mut();
    let st = unsafe { zonoehr_zonotope_new(dim, gens.as_ptr(), gens.len() / dim, ptr::null(), ptr::null(), &mut z) };
    assert_eq!(st, ZonoStatus::Ok);
    z
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(zonoehr_last_error_message()) }.to_string_lossy().into_owned()
}

const EXCEPTIONAL: [i64; 9] = [1, 1, 0, -1, 1, 0, 1, 1, 2];

#[test]
fn exceptional_invariants() {
    let z = make(3, &EXCEPTIONAL);
    unsafe {
        assert_eq!(zonoehr_zonotope_dim(z), 3);
        assert_eq!(zonoehr_zonotope_num_generators(z), 3);
        let mut e = [0i64; 4];
        assert_eq!(zonoehr_ehrhart(z, e.as_mut_ptr(), 4), ZonoStatus::Ok);
        assert_eq!(e, [1, 3, 6, 4]);

        let (mut num, mut den) = ([0i64; 4], [0i64; 4]);
        let mut valid = false;
        assert_eq!(zonoehr_hstar(z, num.as_mut_ptr(), den.as_mut_ptr(), 4, &mut valid), ZonoStatus::Ok);
        assert_eq!(num, [1, 10, 13, 0]);
        assert_eq!(den, [1, 1, 1, 1]);
        assert!(valid);
        assert_eq!(zonoehr_cvector(z, num.as_mut_ptr(), den.as_mut_ptr(), 3, &mut valid), ZonoStatus::Ok);
        assert_eq!(num[..3], [0, 3, 0]);

        assert_eq!(zonoehr_ehrhart_oracle(z, 0, num.as_mut_ptr(), den.as_mut_ptr(), 4), ZonoStatus::Ok);
        assert_eq!(num, [1, 3, 6, 4]);

        let mut degree = 0usize;
        assert_eq!(zonoehr_degree(z, &mut degree), ZonoStatus::Ok);
        assert_eq!(degree, 2);

        let mut interior = 99u64;
        assert_eq!(zonoehr_interior_count(z, false, 0, &mut interior), ZonoStatus::Ok);
        assert_eq!(interior, 0);
        assert_eq!(zonoehr_interior_count(z, true, 0, &mut interior), ZonoStatus::Ok);
        assert_eq!(interior, 0);

        let (mut width, mut dir) = (0i64, [0i64; 3]);
        assert_eq!(zonoehr_lattice_width(z, 0, &mut width, dir.as_mut_ptr(), 3), ZonoStatus::Ok);
        assert_eq!(width, 2);

        let mut class = ZonoDegree2Class::NotDegree2;
        let (mut t, mut s) = ([0i64; 9], [0i64; 3]);
        assert_eq!(zonoehr_classify_3d_deg2(z, 0, &mut class, t.as_mut_ptr(), s.as_mut_ptr()), ZonoStatus::Ok);
        assert_eq!(class, ZonoDegree2Class::Exceptional);
        let det = t[0] * (t[4] * t[8] - t[5] * t[7]) - t[1] * (t[3] * t[8] - t[5] * t[6]) + t[2] * (t[3] * t[7] - t[4] * t[6]);
        assert_eq!(det.abs(), 1);

        let mut json = ptr::null_mut();
        assert_eq!(zonoehr_ehrhart_report_json(z, true, 0, &mut json), ZonoStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        zonoehr_string_free(json);
        assert_eq!(report["output"]["degree"], 2);
        assert_eq!(report["verification"]["passed"], true);
        zonoehr_zonotope_free(z);
    }
}

#[test]
fn cube_is_width1_product() {
    let z = make(3, &[1, 0, 0, 0, 1, 0, 0, 0, 1]);
    let mut class = ZonoDegree2Class::NotDegree2;
    let st = unsafe { zonoehr_classify_3d_deg2(z, 0, &mut class, ptr::null_mut(), ptr::null_mut()) };
    assert_eq!(st, ZonoStatus::Ok);
    assert_eq!(class, ZonoDegree2Class::Width1Product);
    unsafe { zonoehr_zonotope_free(z) };
}

#[test]
fn errors_report_status_and_message() {
    unsafe {
        let mut e = [0i64; 2];
        assert_eq!(zonoehr_ehrhart(ptr::null(), e.as_mut_ptr(), 2), ZonoStatus::NullPointer);
        assert!(last_error().contains("null"));

        let z = make(3, &EXCEPTIONAL);
        assert_eq!(zonoehr_ehrhart(z, e.as_mut_ptr(), 2), ZonoStatus::BufferTooSmall);
        let mut n = 0u64;
        assert_eq!(zonoehr_interior_count(z, true, 10, &mut n), ZonoStatus::BudgetExceeded);
        zonoehr_zonotope_free(z);

        let mut h = ptr::null_mut();
        let json = CString::new(r#"{"dim":2,"generators":[[1,0],[0,1]],"translate":["1/2","0"]}"#).unwrap();
        assert_eq!(zonoehr_zonotope_from_json(json.as_ptr(), &mut h), ZonoStatus::Ok);
        assert_eq!(zonoehr_ehrhart(h, e.as_mut_ptr(), 3), ZonoStatus::NonLatticeTranslate);
        zonoehr_zonotope_free(h);

        let bad = CString::new("{\"dim\": 2").unwrap();
        assert_eq!(zonoehr_zonotope_from_json(bad.as_ptr(), &mut h), ZonoStatus::InvalidArgument);
        assert!(!last_error().is_empty());

        let flat = make(3, &[1, 0, 0, 0, 1, 0]);
        assert_eq!(zonoehr_interior_count(flat, false, 0, &mut n), ZonoStatus::Degenerate);
        zonoehr_zonotope_free(flat);

        zonoehr_zonotope_free(ptr::null_mut());
        zonoehr_string_free(ptr::null_mut());
        assert_eq!(zonoehr_eulerian(12, 1, e.as_mut_ptr(), 2), ZonoStatus::BufferTooSmall);
    }
}

#[test]
fn checkers_and_eulerian() {
    unsafe {
        let scheme = CString::new("hstar3d-deg2").unwrap();
        let (num, den) = ([7i64, 4], [1i64, 1]);
        let mut accepted = true;
        assert_eq!(zonoehr_check(scheme.as_ptr(), num.as_ptr(), den.as_ptr(), 2, false, &mut accepted), ZonoStatus::Ok);
        assert!(!accepted);

        let scheme = CString::new("zono2d").unwrap();
        let num = [2i64, 3];
        let mut out = ptr::null_mut();
        assert_eq!(zonoehr_check_json(scheme.as_ptr(), num.as_ptr(), den.as_ptr(), 2, false, &mut out), ZonoStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(out).to_str().unwrap()).unwrap();
        zonoehr_string_free(out);
        assert_eq!(v["accepted"], true);
        assert_eq!(v["witness"]["generators"], serde_json::json!([[1, 0], [0, 2], [1, 2]]));

        let bogus = CString::new("bogus").unwrap();
        assert_eq!(
            zonoehr_check(bogus.as_ptr(), num.as_ptr(), den.as_ptr(), 2, false, &mut accepted),
            ZonoStatus::InvalidArgument
        );

        let mut a = [0i64; 4];
        assert_eq!(zonoehr_eulerian(4, 4, a.as_mut_ptr(), 4), ZonoStatus::Ok);
        assert_eq!(a, [0, 1, 4, 1]);
        assert_eq!(zonoehr_eulerian(10, 1, a.as_mut_ptr(), 4), ZonoStatus::BufferTooSmall);
    }
}

#[test]
fn header_declares_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/zonoehr.h")).unwrap();
    for name in [
        "zonoehr_zonotope_new",
        "zonoehr_zonotope_from_json",
        "zonoehr_zonotope_free",
        "zonoehr_ehrhart",
        "zonoehr_hstar",
        "zonoehr_classify_3d_deg2",
        "zonoehr_check",
        "zonoehr_last_error_message",
        "ZONO_STATUS_BUDGET_EXCEEDED",
        "typedef struct ZonoZonotope ZonoZonotope",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

#[test]
fn c_program_links_static_library() {
    let Ok(cc) = Command::new("cc").arg("--version").output() else {
        eprintln!("cc not found, skipping");
        return;
    };
    assert!(cc.status.success());
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // tests/ binaries live in target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libzonoehr_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built, skipping", lib.display());
        return;
    }
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("capi_example");
    let status = Command::new("cc")
        .arg(manifest.join("tests/example.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "1 3 6 4\nhstar 1 10 13 0\nclass 1");
}
