use std::ffi::c_char;
use std::ptr;

use boxproj_ffi::*;

fn preset(name: &str) -> *mut BoxprojDirectionSet {
    let mut out = ptr::null_mut();
    let st = unsafe { boxproj_direction_set_preset(name.as_ptr() as *const c_char, name.len(), &mut out) };
    assert_eq!(st, BoxprojStatus::Ok);
    assert!(!out.is_null());
    out
}

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 256];
    let n = unsafe { boxproj_last_error_message(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf[..n.min(255)].iter().map(|&c| c as u8).collect();
    String::from_utf8_lossy(&bytes).into_owned()
}

#[test]
fn courant_shape_and_lambda() {
    let coords = [1i64, 0, 0, 1, 1, 1];
    let mut set = ptr::null_mut();
    unsafe {
        assert_eq!(boxproj_direction_set_new(coords.as_ptr(), 3, 2, &mut set), BoxprojStatus::Ok);
        let (mut d, mut n, mut rho) = (0, 0, 0);
        assert_eq!(boxproj_direction_set_shape(set, &mut d, &mut n, &mut rho), BoxprojStatus::Ok);
        assert_eq!((d, n, rho), (2, 3, 1));
        let mut uni = false;
        boxproj_direction_set_is_unimodular(set, &mut uni);
        assert!(uni);
        let mut count = 0;
        assert_eq!(boxproj_lambda_count(set, &mut count), BoxprojStatus::Ok);
        assert_eq!(count, 3);
        let mut alpha = [0i64; 2];
        let mut members = [0usize; 3];
        let mut m = 0;
        for i in 0..count {
            assert_eq!(
                boxproj_lambda_class(set, i, alpha.as_mut_ptr(), members.as_mut_ptr(), &mut m),
                BoxprojStatus::Ok
            );
            assert_eq!(m, 2);
            assert!(alpha[0] > 0 || (alpha[0] == 0 && alpha[1] > 0));
        }
        assert_eq!(
            boxproj_lambda_class(set, 3, alpha.as_mut_ptr(), members.as_mut_ptr(), &mut m),
            BoxprojStatus::InvalidArgument
        );
        boxproj_direction_set_free(set);
    }
}

#[test]
fn invalid_sets_report_status_and_message() {
    let mut set = ptr::null_mut();
    unsafe {
        let parallel = [1i64, 0, 2, 0];
        assert_eq!(boxproj_direction_set_new(parallel.as_ptr(), 2, 2, &mut set), BoxprojStatus::NotSpanning);
        assert!(set.is_null());
        assert!(!last_error().is_empty());

        let zp = preset("zp");
        let mut count = 0;
        assert_eq!(boxproj_lambda_count(zp, &mut count), BoxprojStatus::NotUnimodular);
        boxproj_direction_set_free(zp);

        assert_eq!(boxproj_direction_set_new(ptr::null(), 2, 2, &mut set), BoxprojStatus::NullPointer);
        assert_eq!(boxproj_lambda_count(ptr::null(), &mut count), BoxprojStatus::NullPointer);
        boxproj_direction_set_free(ptr::null_mut());
    }
}

#[test]
fn error_message_truncates() {
    let mut set = ptr::null_mut();
    let parallel = [1i64, 0, 2, 0];
    unsafe {
        boxproj_direction_set_new(parallel.as_ptr(), 2, 2, &mut set);
        let full = boxproj_last_error_message(ptr::null_mut(), 0);
        let mut buf = [1 as c_char; 4];
        assert_eq!(boxproj_last_error_message(buf.as_mut_ptr(), 4), full);
        assert_eq!(buf[3], 0);
    }
}

#[test]
fn hat_function_values() {
    let set = preset("bspline(2)");
    unsafe {
        let mut spline = ptr::null_mut();
        assert_eq!(boxproj_box_spline_new(set, &mut spline), BoxprojStatus::Ok);
        for (x, want) in [(0.5, 0.5), (0.75, 0.75), (1.25, 0.75), (2.5, 0.0)] {
            let mut v = f64::NAN;
            assert_eq!(boxproj_box_spline_evaluate(spline, &x, &mut v), BoxprojStatus::Ok);
            assert!((v - want).abs() < 1e-12, "B({x}) = {v}");
        }
        let (mut re, mut im) = (0.0, 0.0);
        let xi = 0.0;
        boxproj_fourier_transform(set, &xi, &mut re, &mut im);
        assert!((re - 1.0).abs() < 1e-14 && im.abs() < 1e-14);
        boxproj_box_spline_free(spline);
        boxproj_direction_set_free(set);
    }
}

#[test]
fn bernoulli_values() {
    assert!((boxproj_bernoulli_periodic(2, 0.0) + 1.0 / 12.0).abs() < 1e-15);
    assert!((boxproj_bernoulli_periodic(2, 1.5) - 1.0 / 24.0).abs() < 1e-15);
    assert!(boxproj_bernoulli_periodic(0, 0.3).is_nan());
}

#[test]
fn l_beta_routes_agree() {
    let set = preset("courant");
    let beta = [1u32, 1];
    let x = [0.3, 0.7];
    unsafe {
        let (mut closed, mut series) = (0.0, 0.0);
        assert_eq!(boxproj_l_beta(set, beta.as_ptr(), x.as_ptr(), &mut closed), BoxprojStatus::Ok);
        assert_eq!(
            boxproj_l_beta_series(set, beta.as_ptr(), x.as_ptr(), 200, &mut series),
            BoxprojStatus::Ok
        );
        assert!((closed - series).abs() < 1e-3, "{closed} vs {series}");
        let too_high = [3u32, 0];
        assert_eq!(
            boxproj_l_beta(set, too_high.as_ptr(), x.as_ptr(), &mut closed),
            BoxprojStatus::InvalidArgument
        );
        boxproj_direction_set_free(set);
    }
}

#[test]
fn hat_constant_and_sweep() {
    let set = preset("bspline(2)");
    unsafe {
        let mut rhs = 0.0;
        assert_eq!(boxproj_rhs_constant_gaussian(set, 1.0, 2.0, &mut rhs), BoxprojStatus::Ok);
        let want = 3.0 * std::f64::consts::PI.powi(2) / 2f64.sqrt() / 720.0;
        assert!((rhs - want).abs() < 1e-10 * want, "{rhs} vs {want}");
        let mut report = BoxprojConvergence::default();
        assert_eq!(boxproj_converge_gaussian(set, 1.0, 2.0, 2, 6, &mut report), BoxprojStatus::Ok);
        assert!((report.fitted_rate - 2.0).abs() < 0.05);
        assert!(report.relative_error < 0.05);
        assert_eq!(
            boxproj_rhs_constant_gaussian(set, -1.0, 2.0, &mut rhs),
            BoxprojStatus::InvalidArgument
        );
        boxproj_direction_set_free(set);
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/boxproj.h")).unwrap();
    for name in [
        "boxproj_last_error_message",
        "boxproj_direction_set_new",
        "boxproj_direction_set_free",
        "boxproj_lambda_class",
        "boxproj_box_spline_evaluate",
        "boxproj_l_beta_series",
        "boxproj_converge_gaussian",
        "BOXPROJ_STATUS_NOT_UNIMODULAR",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
