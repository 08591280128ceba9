//! C ABI over the `depdist` core crate.
//!
//! Objects are opaque handles created by `dd_*_new`/`dd_*_parse`/
//! `dd_sample_generate` and released by the matching `dd_*_free`. Every
//! fallible function returns a [`DdStatus`]; on failure a message is kept
//! per thread and can be read with [`dd_last_error_message`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use depdist::estimation::{fit, select, Criterion, FitOptions, FitOutcome, FitResult};
use depdist::models::{log_likelihood, ModelId, ModelParams, Observations, Pmf};
use depdist::omega::omega;
use depdist::sampling::{generate, SamplerConfig};
use depdist::treebank::{parse_conllu, DepTree, DistanceSample};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    InvalidParams = 4,
    /// The model cannot be fitted to this sample.
    NotFitted = 5,
    /// The quantity is undefined, e.g. Ω of a two-word sentence.
    Undefined = 6,
    Panic = 7,
}

/// Model identifiers in the order 0.0, 0.1, 1 to 7.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DdModel {
    Null = 0,
    ExtendedNull = 1,
    Geometric = 2,
    TruncatedGeometric = 3,
    TwoRegimeGeometric = 4,
    TruncatedTwoRegimeGeometric = 5,
    TruncatedZeta = 6,
    ZetaGeometric = 7,
    TruncatedZetaGeometric = 8,
}

impl From<DdModel> for ModelId {
    fn from(m: DdModel) -> Self {
        ModelId::ALL[m as usize]
    }
}

impl From<ModelId> for DdModel {
    fn from(m: ModelId) -> Self {
        match m {
            ModelId::Null => DdModel::Null,
            ModelId::ExtendedNull => DdModel::ExtendedNull,
            ModelId::Geometric => DdModel::Geometric,
            ModelId::TruncatedGeometric => DdModel::TruncatedGeometric,
            ModelId::TwoRegimeGeometric => DdModel::TwoRegimeGeometric,
            ModelId::TruncatedTwoRegimeGeometric => DdModel::TruncatedTwoRegimeGeometric,
            ModelId::TruncatedZeta => DdModel::TruncatedZeta,
            ModelId::ZetaGeometric => DdModel::ZetaGeometric,
            ModelId::TruncatedZetaGeometric => DdModel::TruncatedZetaGeometric,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DdCriterion {
    Aic = 0,
    Bic = 1,
}

/// Flat model parameters. Fields a model does not use are ignored on
/// input and zero on output. The extended null model is not representable.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdParams {
    pub model: DdModel,
    pub q: f64,
    pub q1: f64,
    pub q2: f64,
    pub gamma: f64,
    pub d_star: u32,
    pub d_max: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdFitResult {
    pub params: DdParams,
    pub log_likelihood: f64,
    pub aic: f64,
    pub bic: f64,
    pub k: u32,
    pub converged: bool,
}

/// Frequency table of distances.
pub struct DdSample {
    counts: BTreeMap<u32, u64>,
}

/// Parsed CoNLL-U sentences.
pub struct DdCorpus {
    trees: Vec<DepTree>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

type FfiResult<T> = Result<T, (DdStatus, String)>;

fn guard(f: impl FnOnce() -> FfiResult<()>) -> DdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DdStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DdStatus::Panic
        }
    }
}

fn null() -> (DdStatus, String) {
    (DdStatus::NullPointer, "null pointer argument".into())
}

unsafe fn as_ref<'a, T>(p: *const T) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(null)
}

unsafe fn as_mut<'a, T>(p: *mut T) -> FfiResult<&'a mut T> {
    p.as_mut().ok_or_else(null)
}

fn to_params(p: &DdParams) -> FfiResult<ModelParams> {
    let params = match p.model {
        DdModel::Null => ModelParams::Null { d_max: p.d_max },
        DdModel::ExtendedNull => {
            return Err((
                DdStatus::InvalidArgument,
                "model 0.1 is not available through DdParams".into(),
            ))
        }
        DdModel::Geometric => ModelParams::Geometric { q: p.q },
        DdModel::TruncatedGeometric => ModelParams::TruncatedGeometric { q: p.q, d_max: p.d_max },
        DdModel::TwoRegimeGeometric => ModelParams::TwoRegimeGeometric {
            q1: p.q1,
            q2: p.q2,
            d_star: p.d_star,
        },
        DdModel::TruncatedTwoRegimeGeometric => ModelParams::TruncatedTwoRegimeGeometric {
            q1: p.q1,
            q2: p.q2,
            d_star: p.d_star,
            d_max: p.d_max,
        },
        DdModel::TruncatedZeta => ModelParams::TruncatedZeta {
            gamma: p.gamma,
            d_max: p.d_max,
        },
        DdModel::ZetaGeometric => ModelParams::ZetaGeometric {
            gamma: p.gamma,
            q: p.q,
            d_star: p.d_star,
        },
        DdModel::TruncatedZetaGeometric => ModelParams::TruncatedZetaGeometric {
            gamma: p.gamma,
            q: p.q,
            d_star: p.d_star,
            d_max: p.d_max,
        },
    };
    params
        .validate()
        .map_err(|e| (DdStatus::InvalidParams, e.to_string()))?;
    Ok(params)
}

fn from_params(p: &ModelParams) -> DdParams {
    let mut out = DdParams {
        model: p.model().into(),
        q: 0.0,
        q1: 0.0,
        q2: 0.0,
        gamma: 0.0,
        d_star: p.d_star().unwrap_or(0),
        d_max: p.d_max().unwrap_or(0),
    };
    for (name, v) in p.named_values() {
        match name {
            "q" => out.q = v,
            "q1" => out.q1 = v,
            "q2" => out.q2 = v,
            "gamma" => out.gamma = v,
            _ => {}
        }
    }
    out
}

fn from_fit(f: &FitResult) -> DdFitResult {
    DdFitResult {
        params: from_params(&f.params),
        log_likelihood: f.log_likelihood,
        aic: f.aic,
        bic: f.bic,
        k: f.k,
        converged: f.converged,
    }
}

fn to_sample(s: &DdSample) -> FfiResult<DistanceSample> {
    DistanceSample::from_counts(s.counts.iter().map(|(&d, &c)| (d, c)))
        .map_err(|e| (DdStatus::InvalidArgument, e.to_string()))
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub extern "C" fn dd_sample_new() -> *mut DdSample {
    Box::into_raw(Box::new(DdSample {
        counts: BTreeMap::new(),
    }))
}

#[no_mangle]
pub unsafe extern "C" fn dd_sample_free(sample: *mut DdSample) {
    if !sample.is_null() {
        drop(Box::from_raw(sample));
    }
}

/// Adds `count` observations of distance `d >= 1`.
#[no_mangle]
pub unsafe extern "C" fn dd_sample_add(sample: *mut DdSample, d: u32, count: u64) -> DdStatus {
    guard(|| {
        let s = as_mut(sample)?;
        if d == 0 {
            return Err((DdStatus::InvalidArgument, "distances start at 1".into()));
        }
        *s.counts.entry(d).or_insert(0) += count;
        Ok(())
    })
}

/// Total number of observations; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn dd_sample_total(sample: *const DdSample) -> u64 {
    sample.as_ref().map_or(0, |s| s.counts.values().sum())
}

#[no_mangle]
pub unsafe extern "C" fn dd_sample_frequency(sample: *const DdSample, d: u32) -> u64 {
    sample.as_ref().and_then(|s| s.counts.get(&d).copied()).unwrap_or(0)
}

/// Draws `n` values from a model with the seeded ChaCha20 generator.
#[no_mangle]
pub unsafe extern "C" fn dd_sample_generate(
    params: *const DdParams,
    n: u64,
    seed: u64,
    out: *mut *mut DdSample,
) -> DdStatus {
    guard(|| {
        let p = to_params(as_ref(params)?)?;
        let out = as_mut(out)?;
        let g = generate(&SamplerConfig::new(p, n, seed)).map_err(|e| (DdStatus::InvalidParams, e.to_string()))?;
        *out = Box::into_raw(Box::new(DdSample {
            counts: g.sample.iter().collect(),
        }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn dd_pmf(params: *const DdParams, d: u32, out: *mut f64) -> DdStatus {
    guard(|| {
        let p = to_params(as_ref(params)?)?;
        *as_mut(out)? = Pmf::new(&p).pmf(d);
        Ok(())
    })
}

/// Log-likelihood of `params` on `sample`; `-inf` when an observation
/// lies outside the support.
#[no_mangle]
pub unsafe extern "C" fn dd_log_likelihood(
    params: *const DdParams,
    sample: *const DdSample,
    out: *mut f64,
) -> DdStatus {
    guard(|| {
        let p = to_params(as_ref(params)?)?;
        let s = to_sample(as_ref(sample)?)?;
        let ll =
            log_likelihood(&p, &Observations::pooled(&s)).map_err(|e| (DdStatus::InvalidArgument, e.to_string()))?;
        *as_mut(out)? = ll.value;
        Ok(())
    })
}

/// Maximum likelihood fit of one model.
#[no_mangle]
pub unsafe extern "C" fn dd_fit(model: DdModel, sample: *const DdSample, out: *mut DdFitResult) -> DdStatus {
    guard(|| {
        let s = to_sample(as_ref(sample)?)?;
        let out = as_mut(out)?;
        match fit(model.into(), &Observations::pooled(&s), &FitOptions::default()) {
            FitOutcome::Fitted(f) => {
                *out = from_fit(&f);
                Ok(())
            }
            FitOutcome::Excluded { reason, .. } => Err((DdStatus::NotFitted, reason.to_string())),
        }
    })
}

/// Fits models 0.0 and 1 to 7 and writes the best one by `criterion`.
#[no_mangle]
pub unsafe extern "C" fn dd_select(sample: *const DdSample, criterion: DdCriterion, out: *mut DdFitResult) -> DdStatus {
    guard(|| {
        let s = to_sample(as_ref(sample)?)?;
        let out = as_mut(out)?;
        let c = match criterion {
            DdCriterion::Aic => Criterion::Aic,
            DdCriterion::Bic => Criterion::Bic,
        };
        let report = select(
            &Observations::pooled(&s),
            &ModelId::FIXED_LENGTH_SET,
            c,
            &FitOptions::default(),
        )
        .ok_or((DdStatus::NotFitted, "no model could be fitted".to_string()))?;
        *out = from_fit(report.best_fit());
        Ok(())
    })
}

/// Parses CoNLL-U text. Malformed sentences are skipped.
#[no_mangle]
pub unsafe extern "C" fn dd_corpus_parse(data: *const u8, len: usize, out: *mut *mut DdCorpus) -> DdStatus {
    guard(|| {
        if data.is_null() {
            return Err(null());
        }
        let out = as_mut(out)?;
        let bytes = std::slice::from_raw_parts(data, len);
        let parsed = parse_conllu(bytes).map_err(|e| (DdStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(DdCorpus { trees: parsed.trees }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn dd_corpus_free(corpus: *mut DdCorpus) {
    if !corpus.is_null() {
        drop(Box::from_raw(corpus));
    }
}

/// Number of sentences; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn dd_corpus_len(corpus: *const DdCorpus) -> usize {
    corpus.as_ref().map_or(0, |c| c.trees.len())
}

/// Number of words in sentence `i`; 0 when out of range.
#[no_mangle]
pub unsafe extern "C" fn dd_corpus_sentence_len(corpus: *const DdCorpus, i: usize) -> usize {
    corpus.as_ref().and_then(|c| c.trees.get(i)).map_or(0, DepTree::len)
}

/// Pooled distances of every sentence as a new sample.
#[no_mangle]
pub unsafe extern "C" fn dd_corpus_distances(corpus: *const DdCorpus, out: *mut *mut DdSample) -> DdStatus {
    guard(|| {
        let c = as_ref(corpus)?;
        let out = as_mut(out)?;
        let mut counts = BTreeMap::new();
        for d in c.trees.iter().flat_map(DepTree::distances) {
            *counts.entry(d).or_insert(0) += 1;
        }
        *out = Box::into_raw(Box::new(DdSample { counts }));
        Ok(())
    })
}

fn omega_of(t: &DepTree) -> FfiResult<f64> {
    omega(t)
        .omega
        .ok_or((DdStatus::Undefined, "omega is undefined for this sentence".to_string()))
}

#[no_mangle]
pub unsafe extern "C" fn dd_corpus_omega(corpus: *const DdCorpus, i: usize, out: *mut f64) -> DdStatus {
    guard(|| {
        let c = as_ref(corpus)?;
        let t = c
            .trees
            .get(i)
            .ok_or((DdStatus::InvalidArgument, format!("sentence {i} out of range")))?;
        *as_mut(out)? = omega_of(t)?;
        Ok(())
    })
}

/// Ω of a tree given 1-based heads with 0 for the root.
#[no_mangle]
pub unsafe extern "C" fn dd_omega_heads(heads: *const u32, n: usize, out: *mut f64) -> DdStatus {
    guard(|| {
        if heads.is_null() {
            return Err(null());
        }
        let h = std::slice::from_raw_parts(heads, n)
            .iter()
            .map(|&x| x as usize)
            .collect();
        let t = DepTree::new(h).map_err(|e| (DdStatus::InvalidArgument, e.to_string()))?;
        *as_mut(out)? = omega_of(&t)?;
        Ok(())
    })
}
