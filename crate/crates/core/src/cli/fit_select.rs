use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use serde_json::Value;

use super::analysis::{self, items_from_set, ItemResult, Outcome, SelectionSettings, WorkItem};
use super::corpus;
use super::table::Table;
use super::{ensure_dir, CliError, FitSelectArgs};
use crate::estimation::threshold_scan;
use crate::models::{Family, ModelId};
use crate::treebank::{build_samples, read_sample_csv, LengthClass, Provenance};

pub fn check_thresholds(t: &[u64]) -> Result<(), CliError> {
    if t.is_empty() || t[0] == 0 || t.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Usage(format!(
            "--threshold must be positive and strictly increasing, got {t:?}"
        )));
    }
    Ok(())
}

fn header_value<'a>(header: &'a [(String, String)], key: &str) -> Option<&'a str> {
    header.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

/// Reads a sample file. A `class` header of `mixed` or a length selects
/// the corresponding model set; files without one are fitted with the
/// fixed-length set and no size exclusion.
pub fn load_sample_file(path: &Path) -> Result<WorkItem, CliError> {
    let f = File::open(path).map_err(|e| CliError::Ingestion(format!("{}: {e}", path.display())))?;
    let (sample, header) =
        read_sample_csv(BufReader::new(f)).map_err(|e| CliError::Ingestion(format!("{}: {e}", path.display())))?;
    let stem = path
        .file_stem()
        .map_or_else(|| "sample".to_string(), |s| s.to_string_lossy().into_owned());
    let language = header_value(&header, "language").unwrap_or(&stem).to_string();
    let collection = header_value(&header, "collection").unwrap_or("file").to_string();
    let class = header_value(&header, "class").and_then(|c| match c {
        "mixed" => Some(LengthClass::Mixed),
        n => n.parse().ok().map(LengthClass::Fixed),
    });
    let sentences = header_value(&header, "sentences")
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let (class, models) = match class {
        Some(c) => (c, analysis::models_for(c)),
        None => (LengthClass::Mixed, &ModelId::FIXED_LENGTH_SET[..]),
    };
    Ok(WorkItem {
        language,
        collection,
        class,
        sentences,
        sample,
        by_length: None,
        models,
    })
}

const FAMILIES: [Family; 5] = [
    Family::Null,
    Family::Geometric,
    Family::TwoRegimeGeometric,
    Family::Zeta,
    Family::ZetaGeometric,
];

pub fn thresholds_table(results: &[ItemResult], thresholds: &[u64]) -> Table {
    let mut cols: Vec<String> = ["language", "collection", "threshold", "lengths_used", "winner"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    cols.extend(FAMILIES.iter().map(|f| format!("votes_{}", f.label())));
    let refs: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut t = Table::new("thresholds", &refs);

    let mut counts: BTreeMap<(String, String), BTreeMap<u32, u64>> = BTreeMap::new();
    for r in results {
        if let (LengthClass::Fixed(n), Outcome::Selected(_)) = (r.item.class, &r.outcome) {
            counts
                .entry((r.item.language.clone(), r.item.collection.clone()))
                .or_default()
                .insert(n, r.item.sentences);
        }
    }
    for (key, best) in analysis::best_by_length(results) {
        for res in threshold_scan(&best, &counts[&key], thresholds) {
            let mut row: Vec<Value> = vec![
                key.0.clone().into(),
                key.1.clone().into(),
                res.threshold.into(),
                res.lengths_used.into(),
                res.winner.map_or(Value::Null, |f| f.label().into()),
            ];
            row.extend(
                FAMILIES
                    .iter()
                    .map(|f| Value::from(res.votes.get(f).copied().unwrap_or(0))),
            );
            t.push(row);
        }
    }
    t
}

pub fn run(a: &FitSelectArgs) -> Result<(), CliError> {
    check_thresholds(&a.threshold)?;
    if a.corpus.manifest.is_none() && a.sample.is_empty() {
        return Err(CliError::Usage("give --manifest or at least one --sample".into()));
    }
    let mut items = Vec::new();
    if a.corpus.manifest.is_some() {
        let (corpora, _) = corpus::load(a.corpus.manifest.as_deref(), &a.corpus.collection)?;
        for c in &corpora {
            let e = &c.entry;
            let base = Provenance {
                language: e.language.clone(),
                collection: e.collection.clone(),
                class: LengthClass::Mixed,
            };
            let set = build_samples(&c.parsed.trees, a.mode.into(), &base);
            items.extend(items_from_set(&e.language, &e.collection, &set));
        }
    }
    for p in &a.sample {
        items.push(load_sample_file(p)?);
    }

    let settings = SelectionSettings {
        criterion: a.criterion.into(),
        min_distinct: a.selection.min_distinct_d,
        exclude_n_below: a.selection.exclude_n_below,
    };
    let results = analysis::analyze(items, &settings);

    ensure_dir(&a.output.out)?;
    let fmt = a.output.format;
    let out = &a.output.out;
    analysis::fits_table(&results).write(out, fmt)?;
    analysis::best_table(&results, settings.criterion).write(out, fmt)?;
    analysis::fixed_matrix(&results).write(out, fmt)?;
    thresholds_table(&results, &a.threshold).write(out, fmt)?;
    analysis::dstar_summary(&results).write(out, fmt)?;
    analysis::slopes_table(&results).write(out, fmt)?;
    analysis::pmf_table(&results).write(out, fmt)?;

    println!(
        "{:<14} {:<10} {:<6} {:>10} {:<6} {:<6}",
        "language", "collection", "class", "distances", "best", "family"
    );
    for r in &results {
        let (best, fam) = match &r.outcome {
            Outcome::Selected(rep) => (rep.best.label(), rep.best.family().label()),
            Outcome::ExcludedMinSize => ("-", "-"),
        };
        println!(
            "{:<14} {:<10} {:<6} {:>10} {:<6} {:<6}",
            r.item.language,
            r.item.collection,
            r.item.class.to_string(),
            r.item.sample.total(),
            best,
            fam
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds_must_increase() {
        assert!(check_thresholds(&[1, 5, 10]).is_ok());
        assert!(check_thresholds(&[0, 5]).is_err());
        assert!(check_thresholds(&[5, 5]).is_err());
        assert!(check_thresholds(&[]).is_err());
    }
}
