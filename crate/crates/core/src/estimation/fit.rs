use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::init;
use super::optimize::{brent_max, maximize_2d, OptimizerOptions};
use super::select::information_criteria;
use crate::models::{
    log_likelihood, log_likelihood_from_stats, ModelId, ModelParams, Observations, StatsTable, EPSILON,
};
use crate::treebank::{DistanceSample, LengthDistribution};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub optimizer: OptimizerOptions,
    /// Upper bound for the exponent of the zeta models.
    pub gamma_max: f64,
    /// Minimum number of distinct distances for two-regime models.
    pub min_distinct: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            optimizer: OptimizerOptions::default(),
            gamma_max: 100.0,
            min_distinct: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub model: ModelId,
    pub params: ModelParams,
    pub log_likelihood: f64,
    pub k: u32,
    pub aic: f64,
    pub bic: f64,
    pub converged: bool,
    /// Number of distances, the sample size in BIC.
    pub n: u64,
}

impl FitResult {
    fn new(params: ModelParams, log_likelihood: f64, converged: bool, n: u64) -> Self {
        let model = params.model();
        let k = model.k();
        let (aic, bic) = information_criteria(log_likelihood, k, n);
        FitResult {
            model,
            params,
            log_likelihood,
            k,
            aic,
            bic,
            converged,
            n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum Exclusion {
    #[error("needs at least {required} distinct distances, found {found}")]
    TooFewDistinct { found: usize, required: usize },
    #[error("needs per-length samples")]
    MissingLengthData,
    #[error("break point {d_star} outside the observed range")]
    BreakOutOfRange { d_star: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum FitOutcome {
    Fitted(FitResult),
    Excluded { model: ModelId, reason: Exclusion },
}

impl FitOutcome {
    pub fn model(&self) -> ModelId {
        match self {
            FitOutcome::Fitted(r) => r.model,
            FitOutcome::Excluded { model, .. } => *model,
        }
    }

    pub fn fitted(&self) -> Option<&FitResult> {
        match self {
            FitOutcome::Fitted(r) => Some(r),
            FitOutcome::Excluded { .. } => None,
        }
    }
}

const Q_BOUNDS: (f64, f64) = (EPSILON, 1.0 - EPSILON);

/// Maximum-likelihood fit of one model. Integer parameters are found by
/// exhaustive search, continuous ones by bounded maximization at every
/// grid point.
pub fn fit(model: ModelId, obs: &Observations, opts: &FitOptions) -> FitOutcome {
    let sample = obs.pooled;
    let n = sample.total();
    let table = StatsTable::new(sample);
    let max_d = sample.max();
    let o = &opts.optimizer;

    if model.is_two_regime() && sample.distinct() < opts.min_distinct.max(3) {
        return FitOutcome::Excluded {
            model,
            reason: Exclusion::TooFewDistinct {
                found: sample.distinct(),
                required: opts.min_distinct.max(3),
            },
        };
    }

    let result = match model {
        ModelId::Null => {
            // beyond 2 max(d) + 1 the likelihood only decreases
            let mut best: Option<(u32, f64)> = None;
            for d_max in max_d..=2 * max_d + 2 {
                let s = table.stats(None, Some(d_max));
                let ll = log_likelihood_from_stats(&ModelParams::Null { d_max }, &s).value;
                if best.is_none_or(|(_, b)| ll > b) {
                    best = Some((d_max, ll));
                }
            }
            let (d_max, ll) = best.expect("non-empty scan");
            FitResult::new(ModelParams::Null { d_max }, ll, true, n)
        }
        ModelId::ExtendedNull => {
            let Some(by_length) = obs.by_length else {
                return FitOutcome::Excluded {
                    model,
                    reason: Exclusion::MissingLengthData,
                };
            };
            // a sentence of n tokens has n - 1 dependencies
            let lengths = LengthDistribution::from_counts(
                by_length.iter().map(|(&len, s)| (len, s.total() / u64::from(len - 1))),
            );
            let Some(lengths) = lengths else {
                return FitOutcome::Excluded {
                    model,
                    reason: Exclusion::MissingLengthData,
                };
            };
            let params = ModelParams::ExtendedNull { lengths };
            let ll = log_likelihood(&params, obs).expect("per-length data present");
            FitResult::new(params, ll.value, true, n)
        }
        ModelId::Geometric => {
            // closed form: q = N / M
            let q = init::clamp_q(n as f64 / table.stats(None, None).m as f64);
            let params = ModelParams::Geometric { q };
            let ll = log_likelihood_from_stats(&params, &table.stats(None, None)).value;
            FitResult::new(params, ll, true, n)
        }
        ModelId::TruncatedGeometric => {
            let s = table.stats(None, Some(max_d));
            let r = brent_max(
                |q| log_likelihood_from_stats(&ModelParams::TruncatedGeometric { q, d_max: max_d }, &s).value,
                Q_BOUNDS.0,
                Q_BOUNDS.1,
                o,
            );
            FitResult::new(
                ModelParams::TruncatedGeometric { q: r.x, d_max: max_d },
                r.value,
                r.converged,
                n,
            )
        }
        ModelId::TruncatedZeta => {
            let s = table.stats(None, Some(max_d));
            let r = brent_max(
                |gamma| log_likelihood_from_stats(&ModelParams::TruncatedZeta { gamma, d_max: max_d }, &s).value,
                0.0,
                opts.gamma_max,
                o,
            );
            FitResult::new(
                ModelParams::TruncatedZeta {
                    gamma: r.x,
                    d_max: max_d,
                },
                r.value,
                r.converged,
                n,
            )
        }
        ModelId::TwoRegimeGeometric
        | ModelId::TruncatedTwoRegimeGeometric
        | ModelId::ZetaGeometric
        | ModelId::TruncatedZetaGeometric => {
            let lo = sample.nth_min(2).expect("three distinct distances");
            let hi = sample.nth_max(2).expect("three distinct distances");
            let grid: Vec<FitResult> = (lo..=hi)
                .into_par_iter()
                .map(|d_star| fit_at_break(model, sample, &table, d_star, opts))
                .collect();
            // first maximum wins, so ties go to the smaller break point
            grid.into_iter()
                .reduce(|a, b| if b.log_likelihood > a.log_likelihood { b } else { a })
                .expect("non-empty break grid")
        }
    };
    FitOutcome::Fitted(result)
}

/// Fits a two-regime model with the break point held at `d_star`.
pub fn fit_with_fixed_break(model: ModelId, sample: &DistanceSample, d_star: u32, opts: &FitOptions) -> FitOutcome {
    assert!(model.is_two_regime(), "{model} has no break point");
    if d_star == 0 || d_star > sample.max() {
        return FitOutcome::Excluded {
            model,
            reason: Exclusion::BreakOutOfRange { d_star },
        };
    }
    let table = StatsTable::new(sample);
    FitOutcome::Fitted(fit_at_break(model, sample, &table, d_star, opts))
}

fn fit_at_break(
    model: ModelId,
    sample: &DistanceSample,
    table: &StatsTable,
    d_star: u32,
    opts: &FitOptions,
) -> FitResult {
    let n = sample.total();
    let truncated = model.is_truncated();
    let d_max = truncated.then(|| sample.max());
    let s = table.stats(Some(d_star), d_max);
    let o = &opts.optimizer;

    let build = |x: [f64; 2]| -> ModelParams {
        match (model, d_max) {
            (ModelId::TwoRegimeGeometric, _) => ModelParams::TwoRegimeGeometric {
                q1: x[0],
                q2: x[1],
                d_star,
            },
            (ModelId::TruncatedTwoRegimeGeometric, Some(d_max)) => ModelParams::TruncatedTwoRegimeGeometric {
                q1: x[0],
                q2: x[1],
                d_star,
                d_max,
            },
            (ModelId::ZetaGeometric, _) => ModelParams::ZetaGeometric {
                gamma: x[0],
                q: x[1],
                d_star,
            },
            (ModelId::TruncatedZetaGeometric, Some(d_max)) => ModelParams::TruncatedZetaGeometric {
                gamma: x[0],
                q: x[1],
                d_star,
                d_max,
            },
            _ => unreachable!("not a two-regime model"),
        }
    };
    let (x0, bounds) = match model.family() {
        crate::models::Family::TwoRegimeGeometric => {
            let (q1, q2) = init::two_regime_init(sample, d_star);
            ([q1, q2], [Q_BOUNDS, Q_BOUNDS])
        }
        _ => {
            let (g, q) = init::zeta_geometric_init(sample, d_star);
            ([g.clamp(0.0, opts.gamma_max), q], [(0.0, opts.gamma_max), Q_BOUNDS])
        }
    };
    let r = maximize_2d(|x| log_likelihood_from_stats(&build(x), &s).value, x0, bounds, o);
    FitResult::new(build(r.x), r.value, r.converged, n)
}

/// Fits every model in `models`, in parallel, preserving order.
pub fn fit_all(models: &[ModelId], obs: &Observations, opts: &FitOptions) -> Vec<FitOutcome> {
    models.par_iter().map(|&m| fit(m, obs, opts)).collect()
}
