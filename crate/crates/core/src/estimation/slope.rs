use serde::Serialize;

use super::fit::{fit_with_fixed_break, FitOptions, FitOutcome, FitResult};
use crate::models::{ModelId, ModelParams};
use crate::treebank::DistanceSample;

/// Decay rates of the two regimes on a log scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlopeSummary {
    pub q1: f64,
    pub q2: f64,
    pub ratio: f64,
    pub slope1: f64,
    pub slope2: f64,
    pub d_star: u32,
    pub converged: bool,
}

/// Slope of `log p(d)` per unit distance under geometric decay.
pub fn slope(q: f64) -> f64 {
    (-q).ln_1p()
}

impl SlopeSummary {
    pub fn new(q1: f64, q2: f64, d_star: u32, converged: bool) -> Self {
        SlopeSummary {
            q1,
            q2,
            ratio: q1 / q2,
            slope1: slope(q1),
            slope2: slope(q2),
            d_star,
            converged,
        }
    }
}

/// Slopes of a two-regime fit. For the zeta-geometric models the first
/// regime is approximated by a two-regime geometric refit at the same
/// break point. `None` for single-regime models.
pub fn slope_analysis(fit: &FitResult, sample: &DistanceSample, opts: &FitOptions) -> Option<SlopeSummary> {
    match fit.params {
        ModelParams::TwoRegimeGeometric { q1, q2, d_star }
        | ModelParams::TruncatedTwoRegimeGeometric { q1, q2, d_star, .. } => {
            Some(SlopeSummary::new(q1, q2, d_star, fit.converged))
        }
        ModelParams::ZetaGeometric { q, d_star, .. } | ModelParams::TruncatedZetaGeometric { q, d_star, .. } => {
            let refit_model = if fit.model == ModelId::ZetaGeometric {
                ModelId::TwoRegimeGeometric
            } else {
                ModelId::TruncatedTwoRegimeGeometric
            };
            match fit_with_fixed_break(refit_model, sample, d_star, opts) {
                FitOutcome::Fitted(r) => {
                    let (ModelParams::TwoRegimeGeometric { q1, .. }
                    | ModelParams::TruncatedTwoRegimeGeometric { q1, .. }) = r.params
                    else {
                        unreachable!()
                    };
                    Some(SlopeSummary::new(q1, q, d_star, fit.converged && r.converged))
                }
                FitOutcome::Excluded { .. } => None,
            }
        }
        _ => None,
    }
}
