use std::ffi::{c_char, CStr, CString};
use std::ptr;

use diffbkk_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { dbk_string_free(s) };
    out
}

fn polytope(coords: &[i64], dim: usize) -> *mut DbkPolytope {
    let mut p = ptr::null_mut();
    let st = unsafe { dbk_polytope_from_points(coords.as_ptr(), dim, coords.len() / dim, &mut p) };
    assert_eq!(st, DbkStatus::Ok);
    p
}

fn last_error() -> String {
    let e = dbk_last_error();
    assert!(!e.is_null());
    unsafe { CStr::from_ptr(e) }.to_str().unwrap().to_owned()
}

#[test]
fn polytope_round_trip_and_volume() {
    let p = polytope(&[0, 0, 2, 0, 0, 2, 1, 1], 2);
    unsafe {
        assert_eq!(dbk_polytope_dim(p), 2);
        assert_eq!(dbk_polytope_vertex_count(p), 3);
        let mut s = ptr::null_mut();
        assert_eq!(dbk_polytope_volume(p, &mut s), DbkStatus::Ok);
        assert_eq!(take(s), "2");
        assert_eq!(dbk_polytope_to_json(p, &mut s), DbkStatus::Ok);
        let json = CString::new(take(s)).unwrap();
        let mut q = ptr::null_mut();
        assert_eq!(dbk_polytope_from_json(json.as_ptr(), &mut q), DbkStatus::Ok);
        assert_eq!(dbk_polytope_vertex_count(q), 3);
        dbk_polytope_free(q);
        dbk_polytope_free(p);
    }
}

#[test]
fn mixed_volume_of_segments_is_determinant() {
    // segments to (2,1) and (1,3): |det| = 5
    let a = polytope(&[0, 0, 2, 1], 2);
    let b = polytope(&[0, 0, 1, 3], 2);
    let list = [a as *const DbkPolytope, b as *const DbkPolytope];
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(dbk_mixed_volume(list.as_ptr(), 2, &mut s), DbkStatus::Ok);
        assert_eq!(take(s), "5/2");
        assert_eq!(dbk_bkk_count(list.as_ptr(), 2, &mut s), DbkStatus::Ok);
        assert_eq!(take(s), "5");
        let mut sum = ptr::null_mut();
        assert_eq!(dbk_polytope_minkowski_sum(a, b, &mut sum), DbkStatus::Ok);
        assert_eq!(dbk_polytope_volume(sum, &mut s), DbkStatus::Ok);
        assert_eq!(take(s), "5");
        dbk_polytope_free(sum);
        dbk_polytope_free(a);
        dbk_polytope_free(b);
    }
}

#[test]
fn constants_and_isogeny() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(dbk_c_const(8, 6, &mut s), DbkStatus::Ok);
        assert_eq!(take(s), "2580480");
        assert_eq!(dbk_e_const(2, 1, DbkEVariant::Printed, &mut s), DbkStatus::Ok);
        assert_eq!(take(s), "30");
        assert_eq!(dbk_e_const(2, 1, DbkEVariant::PerJ, &mut s), DbkStatus::Ok);
        assert_eq!(take(s), "26");
        assert_eq!(dbk_isogeny_bound(1, 2, 3, 4, DbkGammaVariant::Refined, false, &mut s), DbkStatus::Ok);
        let report = take(s);
        assert!(report.contains("\"bound\":\"7787520\""), "{report}");
    }
}

#[test]
fn errors_carry_status_and_message() {
    unsafe {
        let mut p = ptr::null_mut();
        let bad = CString::new("{\"dim\": 2, \"points\": [[1,2,3]]}").unwrap();
        assert_eq!(dbk_polytope_from_json(bad.as_ptr(), &mut p), DbkStatus::InvalidInput);
        assert!(p.is_null());
        assert!(last_error().contains("dimension"), "{}", last_error());

        assert_eq!(dbk_polytope_from_json(ptr::null(), &mut p), DbkStatus::NullPointer);

        let mut s = ptr::null_mut();
        // ad - bc = 0
        assert_eq!(dbk_isogeny_bound(1, 2, 2, 4, DbkGammaVariant::Refined, false, &mut s), DbkStatus::Hypothesis);
        assert!(s.is_null());

        let invalid = [0xffu8, 0];
        assert_eq!(dbk_polytope_from_json(invalid.as_ptr() as *const c_char, &mut p), DbkStatus::InvalidUtf8);

        let a = polytope(&[0, 0, 1, 0], 2);
        let list = [a as *const DbkPolytope];
        assert_eq!(dbk_mixed_volume(list.as_ptr(), 1, &mut s), DbkStatus::InvalidInput);
        dbk_polytope_free(a);

        dbk_polytope_free(ptr::null_mut());
        dbk_string_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let header = format!("{dir}/include/diffbkk.h");
    let text = std::fs::read_to_string(&header).expect("header generated by the build script");
    for sym in ["dbk_polytope_from_points", "dbk_mixed_volume", "dbk_isogeny_bound", "dbk_last_error", "DBK_STATUS_HYPOTHESIS"] {
        assert!(text.contains(sym), "header lacks {sym}");
    }
    let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", &header])
        .status()
    else {
        eprintln!("no C compiler; syntax check skipped");
        return;
    };
    assert!(status.success(), "header does not compile as C");
}
