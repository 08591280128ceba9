//! Model selection over (language, collection, length class) work items.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::Value;

use super::table::{num, Table};
use crate::estimation::{select, slope_analysis, Criterion, FitOptions, FitOutcome, SelectionReport, SlopeSummary};
use crate::models::{Family, ModelId, ModelParams, Observations, Pmf};
use crate::treebank::{DistanceSample, LengthClass, SampleSet};

pub struct WorkItem {
    pub language: String,
    pub collection: String,
    pub class: LengthClass,
    pub sentences: u64,
    pub sample: DistanceSample,
    pub by_length: Option<BTreeMap<u32, DistanceSample>>,
    pub models: &'static [ModelId],
}

pub enum Outcome {
    Selected(Box<SelectionReport>),
    /// Fixed-length sample below the size requirements.
    ExcludedMinSize,
}

pub struct ItemResult {
    pub item: WorkItem,
    pub outcome: Outcome,
    pub slope: Option<SlopeSummary>,
}

#[derive(Debug, Clone, Copy)]
pub struct SelectionSettings {
    pub criterion: Criterion,
    pub min_distinct: usize,
    pub exclude_n_below: u32,
}

impl SelectionSettings {
    pub fn fit_options(&self) -> FitOptions {
        FitOptions {
            min_distinct: self.min_distinct,
            ..FitOptions::default()
        }
    }
}

pub fn items_from_set(language: &str, collection: &str, set: &SampleSet) -> Vec<WorkItem> {
    set.samples
        .iter()
        .map(|(class, sample)| WorkItem {
            language: language.to_string(),
            collection: collection.to_string(),
            class: *class,
            sentences: match class {
                LengthClass::Fixed(n) => set.sentence_counts.get(n).copied().unwrap_or(0),
                LengthClass::Mixed => set.sentence_counts.values().sum(),
            },
            sample: sample.clone(),
            by_length: matches!(class, LengthClass::Mixed).then(|| set.by_length.clone()),
            models: models_for(*class),
        })
        .collect()
}

pub fn models_for(class: LengthClass) -> &'static [ModelId] {
    match class {
        LengthClass::Fixed(_) => &ModelId::FIXED_LENGTH_SET,
        LengthClass::Mixed => &ModelId::MIXED_LENGTH_SET,
    }
}

pub fn analyze(items: Vec<WorkItem>, s: &SelectionSettings) -> Vec<ItemResult> {
    let opts = s.fit_options();
    items
        .into_par_iter()
        .map(|item| {
            let too_small = match item.class {
                LengthClass::Fixed(n) => n < s.exclude_n_below || item.sample.distinct() < s.min_distinct,
                LengthClass::Mixed => false,
            };
            if too_small {
                return ItemResult {
                    item,
                    outcome: Outcome::ExcludedMinSize,
                    slope: None,
                };
            }
            let obs = match &item.by_length {
                Some(b) => Observations::with_lengths(&item.sample, b),
                None => Observations::pooled(&item.sample),
            };
            let report = select(&obs, item.models, s.criterion, &opts).expect("single-regime models always fit");
            let slope = if report.best.is_two_regime() {
                slope_analysis(report.best_fit(), &item.sample, &opts)
            } else {
                None
            };
            ItemResult {
                item,
                outcome: Outcome::Selected(Box::new(report)),
                slope,
            }
        })
        .collect()
}

fn param(p: &ModelParams, name: &str) -> Value {
    p.named_values()
        .into_iter()
        .find(|(k, _)| *k == name)
        .map_or(Value::Null, |(_, v)| num(v))
}

const PARAM_COLUMNS: [&str; 6] = ["q", "q1", "q2", "gamma", "d_star", "d_max"];

pub fn fits_table(results: &[ItemResult]) -> Table {
    let mut cols = vec![
        "language",
        "collection",
        "class",
        "model",
        "status",
        "reason",
        "log_likelihood",
        "k",
        "n",
        "aic",
        "bic",
        "delta",
        "rank",
        "best",
        "converged",
    ];
    cols.extend(PARAM_COLUMNS);
    let mut t = Table::new("fits", &cols);
    for r in results {
        let it = &r.item;
        let key = || -> Vec<Value> {
            vec![
                it.language.clone().into(),
                it.collection.clone().into(),
                it.class.to_string().into(),
            ]
        };
        match &r.outcome {
            Outcome::ExcludedMinSize => {
                let mut row = key();
                row.extend([Value::Null, "excluded-min-size".into()]);
                row.extend(std::iter::repeat_n(Value::Null, cols.len() - 5));
                t.push(row);
            }
            Outcome::Selected(rep) => {
                for f in &rep.fits {
                    let mut row = key();
                    row.push(f.model().label().into());
                    match f {
                        FitOutcome::Excluded { reason, .. } => {
                            row.extend(["excluded".into(), reason.to_string().into()]);
                            row.extend(std::iter::repeat_n(Value::Null, cols.len() - 6));
                        }
                        FitOutcome::Fitted(fr) => {
                            let rank = rep.ranking.iter().position(|e| e.model == fr.model).map(|i| i + 1);
                            row.extend([
                                "fitted".into(),
                                Value::Null,
                                num(fr.log_likelihood),
                                fr.k.into(),
                                fr.n.into(),
                                num(fr.aic),
                                num(fr.bic),
                                rep.delta(fr.model).map_or(Value::Null, num),
                                rank.map_or(Value::Null, Value::from),
                                (fr.model == rep.best).into(),
                                fr.converged.into(),
                            ]);
                            row.extend(PARAM_COLUMNS.iter().map(|c| param(&fr.params, c)));
                        }
                    }
                    t.push(row);
                }
            }
        }
    }
    t
}

pub fn best_table(results: &[ItemResult], criterion: Criterion) -> Table {
    let mut t = Table::new(
        "best",
        &[
            "language",
            "collection",
            "class",
            "sentences",
            "distances",
            "status",
            "best",
            "family",
            "criterion",
            "runner_up",
            "runner_up_delta",
        ],
    );
    for r in results {
        let it = &r.item;
        let mut row: Vec<Value> = vec![
            it.language.clone().into(),
            it.collection.clone().into(),
            it.class.to_string().into(),
            it.sentences.into(),
            it.sample.total().into(),
        ];
        match &r.outcome {
            Outcome::ExcludedMinSize => {
                row.extend([
                    "excluded-min-size".into(),
                    Value::Null,
                    Value::Null,
                    criterion.to_string().into(),
                    Value::Null,
                    Value::Null,
                ]);
            }
            Outcome::Selected(rep) => {
                let second = rep.ranking.get(1);
                row.extend([
                    "selected".into(),
                    rep.best.label().into(),
                    rep.best.family().label().into(),
                    criterion.to_string().into(),
                    second.map_or(Value::Null, |e| e.model.label().into()),
                    second.map_or(Value::Null, |e| num(e.delta)),
                ]);
            }
        }
        t.push(row);
    }
    t
}

/// Best model per fixed length with explicit cells for unobserved and
/// excluded lengths.
pub fn fixed_matrix(results: &[ItemResult]) -> Table {
    let mut t = Table::new(
        "best_fixed",
        &["language", "collection", "n", "sentences", "status", "best", "family"],
    );
    let mut by_corpus: BTreeMap<(String, String), BTreeMap<u32, &ItemResult>> = BTreeMap::new();
    for r in results {
        if let LengthClass::Fixed(n) = r.item.class {
            by_corpus
                .entry((r.item.language.clone(), r.item.collection.clone()))
                .or_default()
                .insert(n, r);
        }
    }
    for ((lang, coll), cells) in by_corpus {
        let lo = *cells.keys().next().expect("non-empty");
        let hi = *cells.keys().next_back().expect("non-empty");
        for n in lo..=hi {
            let (sentences, status, best): (u64, &str, Option<ModelId>) = match cells.get(&n) {
                None => (0, "no-sentences", None),
                Some(r) => match &r.outcome {
                    Outcome::ExcludedMinSize => (r.item.sentences, "excluded-min-size", None),
                    Outcome::Selected(rep) => (r.item.sentences, "selected", Some(rep.best)),
                },
            };
            t.push(vec![
                lang.clone().into(),
                coll.clone().into(),
                n.into(),
                sentences.into(),
                status.into(),
                best.map_or(Value::Null, |m| m.label().into()),
                best.map_or(Value::Null, |m| m.family().label().into()),
            ]);
        }
    }
    t
}

pub fn slopes_table(results: &[ItemResult]) -> Table {
    let mut t = Table::new(
        "slopes",
        &[
            "language",
            "collection",
            "class",
            "model",
            "d_star",
            "q1",
            "q2",
            "ratio",
            "slope1",
            "slope2",
            "converged",
        ],
    );
    for r in results {
        let (Some(s), Outcome::Selected(rep)) = (&r.slope, &r.outcome) else {
            continue;
        };
        t.push(vec![
            r.item.language.clone().into(),
            r.item.collection.clone().into(),
            r.item.class.to_string().into(),
            rep.best.label().into(),
            s.d_star.into(),
            num(s.q1),
            num(s.q2),
            num(s.ratio),
            num(s.slope1),
            num(s.slope2),
            s.converged.into(),
        ]);
    }
    t
}

/// Empirical against fitted probabilities for each selected sample.
pub fn pmf_table(results: &[ItemResult]) -> Table {
    let mut t = Table::new(
        "pmf",
        &[
            "language",
            "collection",
            "class",
            "model",
            "d",
            "frequency",
            "empirical",
            "fitted",
        ],
    );
    for r in results {
        let Outcome::Selected(rep) = &r.outcome else {
            continue;
        };
        let pmf = Pmf::new(&rep.best_fit().params);
        let total = r.item.sample.total() as f64;
        for d in 1..=r.item.sample.max() {
            let f = r.item.sample.frequency(d);
            t.push(vec![
                r.item.language.clone().into(),
                r.item.collection.clone().into(),
                r.item.class.to_string().into(),
                rep.best.label().into(),
                d.into(),
                f.into(),
                num(f as f64 / total),
                num(pmf.pmf(d)),
            ]);
        }
    }
    t
}

/// Type-7 quantile of sorted data.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Break-point statistics of the best two-regime models, per collection,
/// family and length scope.
pub fn dstar_summary(results: &[ItemResult]) -> Table {
    let mut groups: BTreeMap<(String, Family, &'static str), Vec<f64>> = BTreeMap::new();
    for r in results {
        let Outcome::Selected(rep) = &r.outcome else {
            continue;
        };
        let Some(d) = rep.best_fit().params.d_star() else {
            continue;
        };
        let scope = match r.item.class {
            LengthClass::Fixed(_) => "fixed",
            LengthClass::Mixed => "mixed",
        };
        groups
            .entry((r.item.collection.clone(), rep.best.family(), scope))
            .or_default()
            .push(f64::from(d));
    }
    let mut t = Table::new(
        "dstar_summary",
        &[
            "collection",
            "family",
            "scope",
            "count",
            "min",
            "q1",
            "median",
            "mean",
            "q3",
            "max",
            "sd",
        ],
    );
    for ((coll, fam, scope), mut v) in groups {
        v.sort_by(f64::total_cmp);
        let k = v.len() as f64;
        let mean = v.iter().sum::<f64>() / k;
        let sd = if v.len() > 1 {
            (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt()
        } else {
            f64::NAN
        };
        t.push(vec![
            coll.into(),
            fam.label().into(),
            scope.into(),
            v.len().into(),
            num(v[0]),
            num(quantile(&v, 0.25)),
            num(quantile(&v, 0.5)),
            num(mean),
            num(quantile(&v, 0.75)),
            num(*v.last().expect("non-empty")),
            if v.len() > 1 { num(sd) } else { Value::Null },
        ]);
    }
    t
}

/// Best model per fixed length, keyed by corpus.
pub fn best_by_length(results: &[ItemResult]) -> BTreeMap<(String, String), BTreeMap<u32, ModelId>> {
    let mut out: BTreeMap<(String, String), BTreeMap<u32, ModelId>> = BTreeMap::new();
    for r in results {
        if let (LengthClass::Fixed(n), Outcome::Selected(rep)) = (r.item.class, &r.outcome) {
            out.entry((r.item.language.clone(), r.item.collection.clone()))
                .or_default()
                .insert(n, rep.best);
        }
    }
    out
}
