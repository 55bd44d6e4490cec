use std::ffi::CStr;
use std::ptr;

use sl_orbits_ffi::*;

#[test]
fn scalar_functions() {
    let mut out = 0u64;
    unsafe {
        assert_eq!(slo_jordan_totient(2, 6, &mut out), SloStatus::Ok);
        assert_eq!(out, 24);
        assert_eq!(slo_group_order(3, 2, &mut out), SloStatus::Ok);
        assert_eq!(out, 168);
        assert_eq!(slo_stabilizer_order(2, 6, &mut out), SloStatus::Ok);
        assert_eq!(out, 6);
        assert_eq!(slo_stabilizer_order(1, 6, &mut out), SloStatus::Domain);
        assert_eq!(slo_group_order(2, 1, &mut out), SloStatus::Domain);
        assert_eq!(slo_group_order(6, 1000, &mut out), SloStatus::Overflow);
        assert_eq!(
            slo_jordan_totient(2, 6, ptr::null_mut()),
            SloStatus::NullPointer
        );
    }
}

#[test]
fn vector_and_matrix_functions() {
    let mut out = [0u64; 4];
    let mut scalar = 0u64;
    unsafe {
        assert_eq!(
            slo_orbit_label(6, [2, 4].as_ptr(), 2, &mut scalar),
            SloStatus::Ok
        );
        assert_eq!(scalar, 2);
        assert_eq!(
            slo_det_mod(4, 2, [2, 0, 0, 2].as_ptr(), &mut scalar),
            SloStatus::Ok
        );
        assert_eq!(scalar, 0);
        assert_eq!(
            slo_act(
                4,
                2,
                [1, 2].as_ptr(),
                [1, 1, 0, 1].as_ptr(),
                out.as_mut_ptr()
            ),
            SloStatus::Ok
        );
        assert_eq!(&out[..2], &[1, 3]);
        assert_eq!(
            slo_act(
                4,
                2,
                [1, 0].as_ptr(),
                [2, 0, 0, 2].as_ptr(),
                out.as_mut_ptr()
            ),
            SloStatus::NotInSl
        );
        assert_eq!(
            slo_sl_inverse(6, 2, [2, 1, 3, 2].as_ptr(), out.as_mut_ptr()),
            SloStatus::Ok
        );
        assert_eq!(out, [2, 5, 3, 2]);
        assert_eq!(
            slo_act(4, 2, ptr::null(), [1, 0, 0, 1].as_ptr(), out.as_mut_ptr()),
            SloStatus::NullPointer
        );
    }
}

#[test]
fn crt_functions() {
    let (mut x, mut y, mut joined) = ([0u64; 2], [0u64; 2], [0u64; 2]);
    unsafe {
        assert_eq!(
            slo_crt_split(2, 3, 2, [5, 4].as_ptr(), x.as_mut_ptr(), y.as_mut_ptr()),
            SloStatus::Ok
        );
        assert_eq!((x, y), ([1, 0], [2, 1]));
        assert_eq!(
            slo_crt_join(2, 3, 2, x.as_ptr(), y.as_ptr(), joined.as_mut_ptr()),
            SloStatus::Ok
        );
        assert_eq!(joined, [5, 4]);
        assert_eq!(
            slo_crt_split(4, 6, 2, [1, 1].as_ptr(), x.as_mut_ptr(), y.as_mut_ptr()),
            SloStatus::Domain
        );
    }
}

#[test]
fn census_handle() {
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(slo_census_new(2, 6, &mut c), SloStatus::Ok);
        assert_eq!(slo_census_len(c), 4);
        assert_eq!(slo_census_total(c), 36);
        let mut rows = Vec::new();
        for i in 0..slo_census_len(c) {
            let (mut d, mut size) = (0, 0);
            assert_eq!(slo_census_get(c, i, &mut d, &mut size), SloStatus::Ok);
            rows.push((d, size));
        }
        assert_eq!(rows, vec![(1, 24), (2, 8), (3, 3), (6, 1)]);
        let (mut d, mut size) = (0, 0);
        assert_eq!(
            slo_census_get(c, 4, &mut d, &mut size),
            SloStatus::OutOfRange
        );
        slo_census_free(c);
        slo_census_free(ptr::null_mut());
        assert_eq!(slo_census_len(ptr::null()), 0);
    }
}

#[test]
fn report_handle() {
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(slo_verify_new(2, 6, 0, &mut r), SloStatus::Ok);
        assert!(slo_report_passed(r));
        assert!(slo_report_len(r) > 0);
        let mut passed = false;
        assert_eq!(slo_report_check_passed(r, 0, &mut passed), SloStatus::Ok);
        assert!(passed);
        let json = slo_report_to_json(r);
        let text = CStr::from_ptr(json).to_str().unwrap();
        assert!(
            text.starts_with('{') && text.ends_with("\"passed\":true}"),
            "{text}"
        );
        slo_string_free(json);
        slo_report_free(r);

        let mut r = ptr::null_mut();
        assert_eq!(slo_verify_new(3, 8, 0, &mut r), SloStatus::BudgetExceeded);
        assert!(r.is_null());
    }
}

#[test]
fn status_messages_are_static_strings() {
    for s in [
        SloStatus::Ok,
        SloStatus::NotInSl,
        SloStatus::BudgetExceeded,
        SloStatus::Panic,
    ] {
        let msg = unsafe { CStr::from_ptr(slo_status_message(s)) };
        assert!(!msg.to_bytes().is_empty());
    }
}
