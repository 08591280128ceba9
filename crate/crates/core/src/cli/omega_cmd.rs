use std::collections::BTreeMap;

use serde_json::Value;

use super::analysis::{self, items_from_set, SelectionSettings};
use super::corpus;
use super::table::{num, Table};
use super::{ensure_dir, CliError, OmegaArgs};
use crate::omega::{average_omega, band, OmegaBand, OmegaProfile, NEAR_ZERO_BAND};
use crate::treebank::{build_samples, LengthClass, Provenance, SampleMode};

fn band_label(b: OmegaBand) -> &'static str {
    match b {
        OmegaBand::Negative => "negative",
        OmegaBand::NearZero => "near-zero",
        OmegaBand::Positive => "positive",
    }
}

pub fn run(a: &OmegaArgs) -> Result<(), CliError> {
    let (corpora, _) = corpus::load(a.corpus.manifest.as_deref(), &a.corpus.collection)?;
    let mut profile = OmegaProfile::default();
    let mut items = Vec::new();
    for c in &corpora {
        let e = &c.entry;
        profile.merge(average_omega(&c.parsed.trees, &e.language, &e.collection));
        let base = Provenance {
            language: e.language.clone(),
            collection: e.collection.clone(),
            class: LengthClass::Mixed,
        };
        let set = build_samples(&c.parsed.trees, SampleMode::Fixed, &base);
        items.extend(items_from_set(&e.language, &e.collection, &set));
    }
    let settings = SelectionSettings {
        criterion: a.criterion.into(),
        min_distinct: a.selection.min_distinct_d,
        exclude_n_below: a.selection.exclude_n_below,
    };
    let results = analysis::analyze(items, &settings);
    let best = analysis::best_by_length(&results);
    let empty = BTreeMap::new();

    let mut omega = Table::new(
        "omega",
        &[
            "language",
            "collection",
            "n",
            "mean_omega",
            "sentences",
            "skipped",
            "band",
        ],
    );
    let mut joined = Table::new(
        "omega_best",
        &[
            "language",
            "collection",
            "n",
            "mean_omega",
            "sentences",
            "best",
            "family",
            "near_zero",
        ],
    );
    for (key, g) in &profile.groups {
        let mean = g.mean();
        omega.push(vec![
            key.language.clone().into(),
            key.collection.clone().into(),
            key.n.into(),
            mean.map_or(Value::Null, num),
            g.count.into(),
            g.skipped.into(),
            mean.map_or(Value::Null, |m| band_label(band(m)).into()),
        ]);
        let per_len = best
            .get(&(key.language.clone(), key.collection.clone()))
            .unwrap_or(&empty);
        if let (Some(m), Some(model)) = (mean, per_len.get(&key.n)) {
            joined.push(vec![
                key.language.clone().into(),
                key.collection.clone().into(),
                key.n.into(),
                num(m),
                g.count.into(),
                model.label().into(),
                model.family().label().into(),
                (m.abs() <= NEAR_ZERO_BAND).into(),
            ]);
        }
    }
    ensure_dir(&a.output.out)?;
    omega.write(&a.output.out, a.output.format)?;
    joined.write(&a.output.out, a.output.format)?;

    println!(
        "{:<14} {:<10} {:>4} {:>8} {:>9} {:<6}",
        "language", "collection", "n", "<omega>", "sentences", "best"
    );
    for (key, g) in &profile.groups {
        let Some(m) = g.mean() else {
            continue;
        };
        let b = best
            .get(&(key.language.clone(), key.collection.clone()))
            .and_then(|p| p.get(&key.n))
            .map_or("-", |m| m.label());
        println!(
            "{:<14} {:<10} {:>4} {:>8.3} {:>9} {:<6}",
            key.language, key.collection, key.n, m, g.count, b
        );
    }
    Ok(())
}
