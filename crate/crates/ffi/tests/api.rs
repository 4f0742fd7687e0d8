use std::ffi::{CStr, CString};
use std::ptr;

use hyperbolica_ffi::*;

fn h(e1: f64, e2: f64) -> HbHyperbolic {
    HbHyperbolic { e1, e2 }
}

fn last_code() -> String {
    unsafe { CStr::from_ptr(hb_last_error_code()) }
        .to_str()
        .unwrap()
        .to_owned()
}

fn natural(f1: &str, f2: &str) -> *mut HbNaturalFunction {
    let (f1, f2) = (CString::new(f1).unwrap(), CString::new(f2).unwrap());
    let mut out = ptr::null_mut();
    let status = unsafe { hb_natural_new(f1.as_ptr(), f2.as_ptr(), &mut out) };
    assert_eq!(status, HbStatus::Ok);
    out
}

#[test]
fn arithmetic_is_componentwise() {
    assert_eq!(hb_mul(h(2.0, 3.0), h(4.0, -1.0)), h(8.0, -3.0));
    assert_eq!(hb_add(h(1.0, 2.0), h(0.5, 0.5)), h(1.5, 2.5));
    assert_eq!(hb_metric(h(1.0, 5.0), h(3.0, 2.0)), h(2.0, 3.0));
    // t + s j with e1 = (1 + j)/2, e2 = (1 - j)/2
    assert_eq!(hb_from_canonical(3.0, 1.0), h(4.0, 2.0));
}

#[test]
fn comparison() {
    assert_eq!(hb_compare(h(0.0, 0.0), h(1.0, 1.0)), HbOrder::StrictlyLess);
    assert_eq!(hb_compare(h(0.0, 0.0), h(0.0, 1.0)), HbOrder::Less);
    assert_eq!(hb_compare(h(1.0, 0.0), h(0.0, 1.0)), HbOrder::Incomparable);
    assert_eq!(hb_compare(h(2.0, 2.0), h(2.0, 2.0)), HbOrder::Equal);
}

#[test]
fn zero_divisor_has_no_inverse() {
    let mut out = h(9.0, 9.0);
    assert_eq!(unsafe { hb_inverse(h(2.0, 4.0), &mut out) }, HbStatus::Ok);
    assert_eq!(out, h(0.5, 0.25));
    assert_eq!(
        unsafe { hb_inverse(h(0.0, 4.0), &mut out) },
        HbStatus::ZeroDivisor
    );
    assert_eq!(last_code(), "ZeroDivisor");
    assert_eq!(
        unsafe { hb_inverse(h(1.0, 1.0), ptr::null_mut()) },
        HbStatus::NullPointer
    );
}

#[test]
fn syntax_errors_are_reported() {
    let f1 = CString::new("x^").unwrap();
    let f2 = CString::new("y").unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { hb_natural_new(f1.as_ptr(), f2.as_ptr(), &mut out) };
    assert_eq!(status, HbStatus::SyntaxError);
    assert!(out.is_null());
    assert_eq!(last_code(), "SyntaxError");
    let msg = unsafe { CStr::from_ptr(hb_last_error_message()) };
    assert!(!msg.to_bytes().is_empty());
}

#[test]
fn partition_lifecycle() {
    let pts = [h(0.0, 0.0), h(0.5, 0.25), h(1.0, 1.0)];
    let mut p = ptr::null_mut();
    let status =
        unsafe { hb_partition_validate(h(0.0, 0.0), h(1.0, 1.0), pts.as_ptr(), pts.len(), &mut p) };
    assert_eq!(status, HbStatus::Ok);
    unsafe {
        assert_eq!(hb_partition_len(p), 3);
        assert_eq!(hb_partition_diameter(p), h(0.5, 0.75));
        let mut buf = [h(0.0, 0.0); 2];
        assert_eq!(hb_partition_points(p, buf.as_mut_ptr(), buf.len()), 3);
        assert_eq!(buf, [pts[0], pts[1]]);
        hb_partition_free(p);
    }

    let bad = [h(0.0, 0.0), h(0.5, 0.0), h(0.25, 1.0), h(1.0, 1.0)];
    let status =
        unsafe { hb_partition_validate(h(0.0, 0.0), h(1.0, 1.0), bad.as_ptr(), bad.len(), &mut p) };
    assert_eq!(status, HbStatus::ValidationFailed);
}

#[test]
fn merge_and_variation_sum() {
    let p = [0.0, 0.5, 1.0];
    let q = [0.0, 1.0];
    let mut part = ptr::null_mut();
    let status = unsafe {
        hb_partition_merge(
            p.as_ptr(),
            p.len(),
            q.as_ptr(),
            q.len(),
            HB_MERGE_DIAGONAL,
            &mut part,
        )
    };
    assert_eq!(status, HbStatus::Ok);
    let f = natural("x^2", "-y");
    let mut v = h(0.0, 0.0);
    assert_eq!(unsafe { hb_variation_sum(f, part, &mut v) }, HbStatus::Ok);
    assert_eq!(v, h(1.0, 1.0));

    let status =
        unsafe { hb_partition_merge(p.as_ptr(), p.len(), q.as_ptr(), q.len(), 7, &mut part) };
    assert_eq!(status, HbStatus::InvalidArgument);
    unsafe {
        hb_partition_free(part);
        hb_natural_free(f);
    }
}

#[test]
fn total_variation_of_a_square() {
    let f = natural("x^2", "y^2");
    let mut out = HbVariation {
        value: h(0.0, 0.0),
        partitions_used: 0,
        converged: false,
        lower_bound_only: true,
    };
    let status = unsafe { hb_total_variation(f, h(-1.0, 0.0), h(1.0, 2.0), 1e-9, 20, &mut out) };
    assert_eq!(status, HbStatus::Ok);
    assert!(out.converged && !out.lower_bound_only);
    assert!((out.value.e1 - 2.0).abs() < 1e-9);
    assert!((out.value.e2 - 4.0).abs() < 1e-9);
    unsafe { hb_natural_free(f) };
}

#[test]
fn integral_against_identity() {
    let f = natural("x", "2*y");
    let id = hb_natural_identity();
    let mut out = HbIntegral {
        value: h(0.0, 0.0),
        error_estimate: h(0.0, 0.0),
        tag_gap: h(0.0, 0.0),
        refinements: 0,
        converged: false,
    };
    let status = unsafe {
        hb_rs_integral(
            f,
            id,
            h(0.0, 0.0),
            h(1.0, 1.0),
            1e-8,
            HB_TAGS_MIDPOINT,
            HB_MODE_SIGNED,
            22,
            &mut out,
        )
    };
    assert_eq!(status, HbStatus::Ok);
    assert!((out.value.e1 - 0.5).abs() < 1e-8);
    assert!((out.value.e2 - 1.0).abs() < 1e-8);
    unsafe {
        hb_natural_free(f);
        hb_natural_free(id);
    }
}

#[test]
fn shared_jump_does_not_converge() {
    let f = natural("H(x - 0.5)", "y");
    let g = natural("H(x - 0.5)", "y");
    let mut out = HbIntegral {
        value: h(0.0, 0.0),
        error_estimate: h(0.0, 0.0),
        tag_gap: h(0.0, 0.0),
        refinements: 0,
        converged: true,
    };
    let status = unsafe {
        hb_rs_integral(
            f,
            g,
            h(0.0, 0.0),
            h(1.0, 1.0),
            1e-6,
            HB_TAGS_MIDPOINT,
            HB_MODE_SIGNED,
            8,
            &mut out,
        )
    };
    assert_eq!(status, HbStatus::NotConverged);
    assert!(!out.converged);
    assert!(out.tag_gap.e1 >= 0.5);
    unsafe {
        hb_natural_free(f);
        hb_natural_free(g);
    }
}

#[test]
fn null_handles_are_rejected() {
    let mut v = h(0.0, 0.0);
    assert_eq!(
        unsafe { hb_variation_sum(ptr::null(), ptr::null(), &mut v) },
        HbStatus::NullPointer
    );
    assert_eq!(unsafe { hb_partition_len(ptr::null()) }, 0);
    unsafe {
        hb_natural_free(ptr::null_mut());
        hb_partition_free(ptr::null_mut());
    }
}
