use std::ffi::{CStr, CString};
use std::ptr;

use posviro::fixtures::{s63_decoration, s63_system};
use posviro::io::to_json;
use posviro_ffi::*;

fn last_error() -> String {
    let p = posviro_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn cstring(s: &str) -> CString {
    CString::new(s).unwrap()
}

#[test]
fn snd_complex_is_decorated_by_the_fixture() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(posviro_cyclic_complex(6, 3, true, &mut k), PosviroStatus::Ok);
        let mut n = 0;
        assert_eq!(posviro_complex_facet_count(k, &mut n), PosviroStatus::Ok);
        assert_eq!(n, 5);

        let json = cstring(&to_json(&s63_decoration()).unwrap());
        let mut c = ptr::null_mut();
        assert_eq!(posviro_matrix_from_json(json.as_ptr(), &mut c), PosviroStatus::Ok);
        let mut ok = false;
        assert_eq!(posviro_is_decorated(k, c, &mut ok), PosviroStatus::Ok);
        assert!(ok);
        assert!(posviro_last_error().is_null());

        let mut found = ptr::null_mut();
        assert_eq!(posviro_decorate(k, 20, 0, &mut found), PosviroStatus::Ok);
        let mut ok = false;
        assert_eq!(posviro_is_decorated(k, found, &mut ok), PosviroStatus::Ok);
        assert!(ok);

        posviro_matrix_free(found);
        posviro_matrix_free(c);
        posviro_complex_free(k);
    }
}

#[test]
fn odd_cycle_blocks_decoration() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(posviro_cyclic_complex(6, 3, false, &mut k), PosviroStatus::Ok);
        let mut c = ptr::null_mut();
        assert_eq!(posviro_decorate(k, 5, 0, &mut c), PosviroStatus::CheckFailed);
        assert!(c.is_null());
        assert!(last_error().contains("bipartite"));
        posviro_complex_free(k);
    }
}

#[test]
fn complex_json_round_trip() {
    unsafe {
        let src = cstring(r#"{"dimension":1,"n_vertices":3,"facets":[[1,2],[2,3]]}"#);
        let mut k = ptr::null_mut();
        assert_eq!(posviro_complex_from_json(src.as_ptr(), &mut k), PosviroStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(posviro_complex_to_json(k, &mut out), PosviroStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(out).to_str().unwrap()).unwrap();
        assert_eq!(v["facets"], serde_json::json!([[1, 2], [2, 3]]));
        posviro_string_free(out);
        posviro_complex_free(k);
    }
}

#[test]
fn root_count_through_handles() {
    unsafe {
        let e = s63_system().unwrap();
        let sys = cstring(&to_json(&e.system).unwrap());
        let cx = cstring(&to_json(&e.complex).unwrap());
        let (mut s, mut k) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(posviro_system_from_json(sys.as_ptr(), &mut s), PosviroStatus::Ok);
        assert_eq!(posviro_complex_from_json(cx.as_ptr(), &mut k), PosviroStatus::Ok);
        let mut n = 0;
        assert_eq!(posviro_count_positive_roots(s, k, 1, 100, 192, &mut n), PosviroStatus::Ok);
        assert_eq!(n, 5);
        assert_eq!(posviro_count_positive_roots(s, k, 1, 0, 192, &mut n), PosviroStatus::InvalidArgument);
        assert_eq!(posviro_count_positive_roots(s, k, -1, 2, 192, &mut n), PosviroStatus::InvalidArgument);
        posviro_system_free(s);
        posviro_complex_free(k);
    }
}

#[test]
fn errors_and_strings() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(posviro_count_snd(43, 21, &mut out), PosviroStatus::Ok);
        assert_eq!(CStr::from_ptr(out).to_str().unwrap(), "26572086");
        posviro_string_free(out);

        let mut k = ptr::null_mut();
        assert_eq!(posviro_complex_from_json(ptr::null(), &mut k), PosviroStatus::NullPointer);
        let bad = cstring(r#"{"dimension":2,"n_vertices":3,"facets":[[1,2]]}"#);
        assert_eq!(posviro_complex_from_json(bad.as_ptr(), &mut k), PosviroStatus::InvalidArgument);
        assert!(k.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(posviro_complex_facet_count(ptr::null(), &mut 0), PosviroStatus::NullPointer);
        assert_eq!(posviro_cyclic_complex(2, 3, false, &mut k), PosviroStatus::InvalidArgument);

        posviro_complex_free(ptr::null_mut());
        posviro_string_free(ptr::null_mut());
        let v = CStr::from_ptr(posviro_version()).to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}
