use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::fit::{fit_all, FitOptions, FitOutcome, FitResult};
use crate::models::{ModelId, Observations};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Criterion {
    Aic,
    Bic,
}

impl Criterion {
    pub fn of(self, fit: &FitResult) -> f64 {
        match self {
            Criterion::Aic => fit.aic,
            Criterion::Bic => fit.bic,
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::Aic => "AIC",
            Criterion::Bic => "BIC",
        })
    }
}

impl FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "aic" => Ok(Criterion::Aic),
            "bic" => Ok(Criterion::Bic),
            other => Err(format!("unknown criterion `{other}`")),
        }
    }
}

/// `(AIC, BIC)` for a log-likelihood with `k` parameters on `n`
/// observations.
pub fn information_criteria(log_likelihood: f64, k: u32, n: u64) -> (f64, f64) {
    let k = f64::from(k);
    (
        2.0 * k - 2.0 * log_likelihood,
        k * (n as f64).ln() - 2.0 * log_likelihood,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankEntry {
    pub model: ModelId,
    pub value: f64,
    /// Difference to the best model's criterion value.
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectionReport {
    pub criterion: Criterion,
    pub best: ModelId,
    /// Fitted models, best first. Ties go to fewer parameters, then to the
    /// lower model id.
    pub ranking: Vec<RankEntry>,
    /// Every attempted fit in input order, including exclusions.
    pub fits: Vec<FitOutcome>,
}

impl SelectionReport {
    pub fn fit(&self, model: ModelId) -> Option<&FitResult> {
        self.fits.iter().find_map(|f| f.fitted().filter(|r| r.model == model))
    }

    pub fn best_fit(&self) -> &FitResult {
        self.fit(self.best).expect("best model was fitted")
    }

    pub fn delta(&self, model: ModelId) -> Option<f64> {
        self.ranking.iter().find(|r| r.model == model).map(|r| r.delta)
    }
}

/// Ranks already-fitted models. `None` when nothing was fitted.
pub fn select_from_fits(fits: Vec<FitOutcome>, criterion: Criterion) -> Option<SelectionReport> {
    let mut ranked: Vec<(&FitResult, f64)> = fits
        .iter()
        .filter_map(FitOutcome::fitted)
        .map(|f| {
            let v = criterion.of(f);
            (f, if v.is_nan() { f64::INFINITY } else { v })
        })
        .collect();
    ranked.sort_by(|a, b| {
        a.1.total_cmp(&b.1)
            .then(a.0.k.cmp(&b.0.k))
            .then(a.0.model.cmp(&b.0.model))
    });
    let (first, best_value) = *ranked.first()?;
    let best = first.model;
    let ranking = ranked
        .iter()
        .map(|&(f, v)| RankEntry {
            model: f.model,
            value: v,
            delta: v - best_value,
        })
        .collect();
    Some(SelectionReport {
        criterion,
        best,
        ranking,
        fits,
    })
}

/// Fits `models` and ranks them by `criterion`.
pub fn select(
    obs: &Observations,
    models: &[ModelId],
    criterion: Criterion,
    opts: &FitOptions,
) -> Option<SelectionReport> {
    select_from_fits(fit_all(models, obs, opts), criterion)
}
