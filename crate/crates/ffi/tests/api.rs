use std::ffi::{CStr, CString};
use std::ptr;

use ideal_coxeter_ffi::*;

const CATALAN: f64 = 0.915_965_594_177_219;

struct Handle(*mut IcPolyhedron);

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { ic_polyhedron_free(self.0) }
    }
}

fn named(name: &str) -> Handle {
    let c = CString::new(name).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { ic_polyhedron_catalog(c.as_ptr(), &mut p) }, IcStatus::Ok);
    Handle(p)
}

fn last_error() -> Option<String> {
    let p = ic_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

#[test]
fn catalog_handles_validate() {
    for name in ["P1", "P2", "P3", "P4", "P5", "OCT"] {
        let h = named(name);
        let mut ok = false;
        assert_eq!(unsafe { ic_validate(h.0, &mut ok) }, IcStatus::Ok);
        assert!(ok, "{name}");
        assert!(last_error().is_none());
    }
    assert_eq!(unsafe { ic_polyhedron_face_count(named("OCT").0) }, 8);
}

#[test]
fn unknown_name_and_parse_errors() {
    let mut p = ptr::null_mut();
    let bad = CString::new("P9").unwrap();
    assert_eq!(unsafe { ic_polyhedron_catalog(bad.as_ptr(), &mut p) }, IcStatus::Parse);
    assert!(p.is_null());
    assert!(last_error().unwrap().contains("P9"));

    let garbage = CString::new("faces two\n").unwrap();
    assert_eq!(
        unsafe { ic_polyhedron_parse(garbage.as_ptr(), &mut p) },
        IcStatus::Parse
    );
    assert_eq!(
        unsafe { ic_polyhedron_parse(ptr::null(), &mut p) },
        IcStatus::NullPointer
    );
    let mut ok = false;
    assert_eq!(unsafe { ic_validate(ptr::null(), &mut ok) }, IcStatus::NullPointer);
}

#[test]
fn icp_roundtrip() {
    let h = named("P2");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ic_polyhedron_to_icp(h.0, &mut s) }, IcStatus::Ok);
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { ic_polyhedron_parse(s, &mut q) }, IcStatus::Ok);
    let q = Handle(q);
    unsafe { ic_string_free(s) };
    let mut iso = false;
    assert_eq!(unsafe { ic_isomorphic(h.0, q.0, &mut iso) }, IcStatus::Ok);
    assert!(iso);
}

#[test]
fn invalid_model_reports_failed_checks() {
    // P1 with one label changed parses but no longer validates.
    let h = named("P1");
    let mut s = ptr::null_mut();
    unsafe { ic_polyhedron_to_icp(h.0, &mut s) };
    let text = unsafe { CStr::from_ptr(s) }
        .to_str()
        .unwrap()
        .replacen("edge 0 1 3", "edge 0 1 4", 1);
    unsafe { ic_string_free(s) };
    let c = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { ic_polyhedron_parse(c.as_ptr(), &mut p) }, IcStatus::Ok);
    let bad = Handle(p);
    let mut ok = true;
    assert_eq!(unsafe { ic_validate(bad.0, &mut ok) }, IcStatus::Ok);
    assert!(!ok);
    assert!(!last_error().unwrap().is_empty());
    let mut rate = IcGrowthRate::default();
    assert_eq!(unsafe { ic_growth_rate(bad.0, 1e-10, &mut rate) }, IcStatus::Invalid);
}

#[test]
fn g_coefficients_buffer_protocol() {
    let h = named("P3");
    let mut len = 0;
    let st = unsafe { ic_g_coefficients(h.0, ptr::null_mut(), 0, &mut len) };
    assert_eq!(st, IcStatus::BufferTooSmall);
    assert_eq!(len, 8);
    let mut buf = [0i64; 8];
    assert_eq!(
        unsafe { ic_g_coefficients(h.0, buf.as_mut_ptr(), 8, &mut len) },
        IcStatus::Ok
    );
    assert_eq!(buf, [-2, 2, 4, 0, 8, 4, 2, 6]);
}

#[test]
fn growth_rates() {
    let mut r = IcGrowthRate::default();
    assert_eq!(unsafe { ic_growth_rate(named("OCT").0, 1e-10, &mut r) }, IcStatus::Ok);
    assert!(r.exact && r.tau_lo == 5.0 && r.tau_hi == 5.0);

    assert_eq!(unsafe { ic_growth_rate(named("P1").0, 1e-12, &mut r) }, IcStatus::Ok);
    assert!(r.simple && r.perron && !r.exact);
    assert!(r.tau_lo < r.tau_hi && r.tau_hi - r.tau_lo < 1e-9);
    assert!((r.tau_lo - 2.03073).abs() < 1e-5);

    for tol in [0.0, -1.0, f64::NAN, f64::INFINITY] {
        assert_eq!(
            unsafe { ic_growth_rate(named("P1").0, tol, &mut r) },
            IcStatus::BadTolerance
        );
    }
}

#[test]
fn series_matches_oracle() {
    for name in ["P1", "P2", "P3", "OCT"] {
        let h = named(name);
        let (mut a, mut b) = ([0u64; 7], [0u64; 7]);
        let (mut la, mut lb) = (0, 0);
        assert_eq!(
            unsafe { ic_growth_series(h.0, 6, a.as_mut_ptr(), 7, &mut la) },
            IcStatus::Ok
        );
        assert_eq!(
            unsafe { ic_oracle_growth(h.0, 6, b.as_mut_ptr(), 7, &mut lb) },
            IcStatus::Ok
        );
        assert_eq!((la, lb), (7, 7));
        assert_eq!(a, b, "{name}");
    }
    let mut a = [0u64; 4];
    let mut len = 0;
    unsafe { ic_oracle_growth(named("P3").0, 3, a.as_mut_ptr(), 4, &mut len) };
    assert_eq!(a, [1, 4, 12, 30]);
}

#[test]
fn volumes() {
    let mut v = IcVolume::default();
    let name = CString::new("P2").unwrap();
    assert_eq!(unsafe { ic_volume(name.as_ptr(), 1e-12, &mut v) }, IcStatus::Ok);
    assert!((v.value - CATALAN).abs() <= 1e-12 + v.error_bound);
    let oct = CString::new("OCT").unwrap();
    assert_eq!(unsafe { ic_volume(oct.as_ptr(), 1e-12, &mut v) }, IcStatus::Parse);
    assert_eq!(
        unsafe { ic_volume(name.as_ptr(), -1.0, &mut v) },
        IcStatus::BadTolerance
    );
}

#[test]
fn glue_p1_to_itself_gives_p4() {
    let p1 = named("P1");
    let map = [2usize, 2, 1, 3, 3, 1];
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { ic_glue(p1.0, 0, p1.0, 0, map.as_ptr(), 3, &mut out) },
        IcStatus::Ok
    );
    let g = Handle(out);
    let mut iso = false;
    unsafe { ic_isomorphic(g.0, named("P4").0, &mut iso) };
    assert!(iso);

    let same = [1usize, 1, 2, 2, 3, 3];
    assert_eq!(
        unsafe { ic_glue(p1.0, 0, p1.0, 0, same.as_ptr(), 3, &mut out) },
        IcStatus::Invalid
    );
    assert!(out.is_null());
    assert!(last_error().is_some());
}

#[test]
fn errors_are_thread_local() {
    let bad = CString::new("nope").unwrap();
    let mut p = ptr::null_mut();
    unsafe { ic_polyhedron_catalog(bad.as_ptr(), &mut p) };
    assert!(last_error().is_some());
    std::thread::spawn(|| assert!(last_error().is_none())).join().unwrap();
}
