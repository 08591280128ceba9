use std::fs::File;
use std::io::BufWriter;

use serde_json::Value;

use super::corpus::{self, slug};
use super::table::{num, Table};
use super::{ensure_dir, CliError, ExtractArgs};
use crate::treebank::{build_samples, write_sample_csv, DepTree, LengthClass, Provenance};

pub struct CorpusSummary {
    pub sentences: u64,
    pub distances: u64,
    pub min_d: Option<u32>,
    pub mean_d: Option<f64>,
    pub max_d: Option<u32>,
    pub min_n: u32,
    pub mean_n: f64,
    pub max_n: u32,
}

pub fn summarize(trees: &[DepTree]) -> Option<CorpusSummary> {
    if trees.is_empty() {
        return None;
    }
    let mut distances = 0u64;
    let mut sum_d = 0u64;
    let (mut min_d, mut max_d) = (u32::MAX, 0u32);
    for t in trees {
        for d in t.distances() {
            distances += 1;
            sum_d += u64::from(d);
            min_d = min_d.min(d);
            max_d = max_d.max(d);
        }
    }
    let lens = trees.iter().map(|t| t.len() as u32);
    let has_d = distances > 0;
    Some(CorpusSummary {
        sentences: trees.len() as u64,
        distances,
        min_d: has_d.then_some(min_d),
        mean_d: has_d.then(|| sum_d as f64 / distances as f64),
        max_d: has_d.then_some(max_d),
        min_n: lens.clone().min().unwrap_or(0),
        mean_n: lens.clone().map(f64::from).sum::<f64>() / trees.len() as f64,
        max_n: lens.max().unwrap_or(0),
    })
}

pub fn run(a: &ExtractArgs) -> Result<(), CliError> {
    let (corpora, errors) = corpus::load(a.corpus.manifest.as_deref(), &a.corpus.collection)?;
    let sample_dir = a.output.out.join("samples");
    ensure_dir(&sample_dir)?;

    let mut summary = Table::new(
        "summary",
        &[
            "language",
            "collection",
            "sentences",
            "distances",
            "min_d",
            "mean_d",
            "max_d",
            "min_n",
            "mean_n",
            "max_n",
            "rejected",
        ],
    );
    let mut files = Table::new(
        "samples",
        &["language", "collection", "class", "sentences", "distances", "path"],
    );
    println!(
        "{:<14} {:<10} {:>9} {:>9} {:>6} {:>7} {:>6}",
        "language", "collection", "sentences", "distances", "min d", "mean d", "max d"
    );
    for c in &corpora {
        let e = &c.entry;
        let base = Provenance {
            language: e.language.clone(),
            collection: e.collection.clone(),
            class: LengthClass::Mixed,
        };
        let set = build_samples(&c.parsed.trees, a.mode.into(), &base);
        for (class, sample) in &set.samples {
            let name = format!("{}_{}_{}.csv", slug(&e.collection), slug(&e.language), class);
            let path = sample_dir.join(&name);
            let sentences = match class {
                LengthClass::Fixed(n) => set.sentence_counts.get(n).copied().unwrap_or(0),
                LengthClass::Mixed => set.sentence_counts.values().sum(),
            };
            let header = vec![
                ("language".to_string(), e.language.clone()),
                ("collection".to_string(), e.collection.clone()),
                ("class".to_string(), class.to_string()),
                ("sentences".to_string(), sentences.to_string()),
            ];
            let f = File::create(&path).map_err(|err| CliError::Output(format!("{}: {err}", path.display())))?;
            write_sample_csv(BufWriter::new(f), sample, &header).map_err(|err| CliError::Output(err.to_string()))?;
            files.push(vec![
                e.language.clone().into(),
                e.collection.clone().into(),
                class.to_string().into(),
                sentences.into(),
                sample.total().into(),
                format!("samples/{name}").into(),
            ]);
        }
        let Some(s) = summarize(&c.parsed.trees) else {
            continue;
        };
        summary.push(vec![
            e.language.clone().into(),
            e.collection.clone().into(),
            s.sentences.into(),
            s.distances.into(),
            s.min_d.map_or(Value::Null, Value::from),
            s.mean_d.map_or(Value::Null, num),
            s.max_d.map_or(Value::Null, Value::from),
            s.min_n.into(),
            num(s.mean_n),
            s.max_n.into(),
            (c.parsed.rejected.len() as u64).into(),
        ]);
        println!(
            "{:<14} {:<10} {:>9} {:>9} {:>6} {:>7.3} {:>6}",
            e.language,
            e.collection,
            s.sentences,
            s.distances,
            s.min_d.map_or("-".into(), |d| d.to_string()),
            s.mean_d.unwrap_or(f64::NAN),
            s.max_d.map_or("-".into(), |d| d.to_string()),
        );
    }
    summary.write(&a.output.out, a.output.format)?;
    files.write(&a.output.out, a.output.format)?;
    if !errors.is_empty() {
        let mut t = Table::new("errors", &["language", "collection", "path", "error"]);
        for e in &errors {
            t.push(vec![
                e.entry.language.clone().into(),
                e.entry.collection.clone().into(),
                e.entry.path.display().to_string().into(),
                e.message.clone().into(),
            ]);
        }
        t.write(&a.output.out, a.output.format)?;
    }
    Ok(())
}
