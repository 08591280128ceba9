use std::ffi::CStr;
use std::ptr;

use depdist_ffi::*;

fn params(model: DdModel) -> DdParams {
    DdParams {
        model,
        q: 0.0,
        q1: 0.0,
        q2: 0.0,
        gamma: 0.0,
        d_star: 0,
        d_max: 0,
    }
}

fn last_error() -> String {
    let p = dd_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn pmf_of_geometric() {
    let p = DdParams {
        q: 0.2,
        ..params(DdModel::Geometric)
    };
    let mut out = 0.0;
    assert_eq!(unsafe { dd_pmf(&p, 1, &mut out) }, DdStatus::Ok);
    assert_eq!(out, 0.2);
    assert_eq!(unsafe { dd_pmf(&p, 2, &mut out) }, DdStatus::Ok);
    assert!((out - 0.16).abs() < 1e-15);
}

#[test]
fn invalid_params_report_an_error() {
    let p = DdParams {
        q: 1.5,
        ..params(DdModel::Geometric)
    };
    let mut out = 0.0;
    assert_eq!(unsafe { dd_pmf(&p, 1, &mut out) }, DdStatus::InvalidParams);
    assert!(last_error().contains('q'));
    let p = params(DdModel::ExtendedNull);
    assert_eq!(unsafe { dd_pmf(&p, 1, &mut out) }, DdStatus::InvalidArgument);
    assert_eq!(unsafe { dd_pmf(ptr::null(), 1, &mut out) }, DdStatus::NullPointer);
}

#[test]
fn sample_handle_lifecycle() {
    let s = dd_sample_new();
    unsafe {
        assert_eq!(dd_sample_add(s, 1, 3), DdStatus::Ok);
        assert_eq!(dd_sample_add(s, 2, 2), DdStatus::Ok);
        assert_eq!(dd_sample_add(s, 0, 1), DdStatus::InvalidArgument);
        assert_eq!(dd_sample_total(s), 5);
        assert_eq!(dd_sample_frequency(s, 2), 2);
        dd_sample_free(s);
        dd_sample_free(ptr::null_mut());
        assert_eq!(dd_sample_total(ptr::null()), 0);
    }
}

#[test]
fn generate_fit_and_select() {
    let truth = DdParams {
        q1: 0.5,
        q2: 0.1,
        d_star: 4,
        ..params(DdModel::TwoRegimeGeometric)
    };
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(dd_sample_generate(&truth, 10_000, 1, &mut s), DdStatus::Ok);
        assert_eq!(dd_sample_total(s), 10_000);

        let mut fit = std::mem::zeroed::<DdFitResult>();
        assert_eq!(dd_fit(DdModel::TwoRegimeGeometric, s, &mut fit), DdStatus::Ok);
        assert_eq!(fit.params.d_star, 4);
        assert!((fit.params.q1 - 0.5).abs() < 0.03);
        assert_eq!(fit.k, 3);

        let mut ll = 0.0;
        assert_eq!(dd_log_likelihood(&fit.params, s, &mut ll), DdStatus::Ok);
        assert!((ll - fit.log_likelihood).abs() < 1e-9 * ll.abs());

        let mut best = std::mem::zeroed::<DdFitResult>();
        assert_eq!(dd_select(s, DdCriterion::Bic, &mut best), DdStatus::Ok);
        assert_eq!(best.params.model, DdModel::TwoRegimeGeometric);
        dd_sample_free(s);
    }
}

#[test]
fn two_regime_fit_needs_distinct_values() {
    let s = dd_sample_new();
    unsafe {
        dd_sample_add(s, 1, 10);
        dd_sample_add(s, 2, 5);
        let mut fit = std::mem::zeroed::<DdFitResult>();
        assert_eq!(dd_fit(DdModel::TwoRegimeGeometric, s, &mut fit), DdStatus::NotFitted);
        assert_eq!(dd_fit(DdModel::Geometric, s, &mut fit), DdStatus::Ok);
        assert!((fit.params.q - 15.0 / 20.0).abs() < 1e-9);
        dd_sample_free(s);
    }
}

#[test]
fn corpus_and_omega() {
    let text = "1\ta\t_\t_\t_\t_\t0\troot\t_\t_\n2\tb\t_\t_\t_\t_\t1\tdep\t_\t_\n3\tc\t_\t_\t_\t_\t1\tdep\t_\t_\n\n\
                1\ta\t_\t_\t_\t_\t2\tdep\t_\t_\n2\tb\t_\t_\t_\t_\t0\troot\t_\t_\n";
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(dd_corpus_parse(text.as_ptr(), text.len(), &mut c), DdStatus::Ok);
        assert_eq!(dd_corpus_len(c), 2);
        assert_eq!(dd_corpus_sentence_len(c, 0), 3);
        assert_eq!(dd_corpus_sentence_len(c, 9), 0);
        let mut w = 0.0;
        assert_eq!(dd_corpus_omega(c, 0, &mut w), DdStatus::Ok);
        assert_eq!(w, -0.5);
        assert_eq!(dd_corpus_omega(c, 1, &mut w), DdStatus::Undefined);
        assert_eq!(dd_corpus_omega(c, 5, &mut w), DdStatus::InvalidArgument);

        let mut s = ptr::null_mut();
        assert_eq!(dd_corpus_distances(c, &mut s), DdStatus::Ok);
        assert_eq!(dd_sample_total(s), 3);
        assert_eq!(dd_sample_frequency(s, 2), 1);
        dd_sample_free(s);
        dd_corpus_free(c);
    }
}

#[test]
fn omega_from_heads() {
    let chain = [0u32, 1, 2, 3];
    let mut w = 0.0;
    unsafe {
        assert_eq!(dd_omega_heads(chain.as_ptr(), chain.len(), &mut w), DdStatus::Ok);
        assert_eq!(w, 1.0);
        let cyclic = [2u32, 1];
        assert_eq!(dd_omega_heads(cyclic.as_ptr(), 2, &mut w), DdStatus::InvalidArgument);
    }
}
