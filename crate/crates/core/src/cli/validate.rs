use std::fs::File;
use std::io::BufWriter;

use rayon::prelude::*;
use serde_json::Value;

use super::table::{num, Table};
use super::{ensure_dir, CliError, ValidateArgs};
use crate::estimation::{select, Criterion, FitOptions, SelectionReport};
use crate::models::{ModelId, ModelParams, Observations};
use crate::sampling::{generate_validation_suite, GeneratedSample};
use crate::treebank::write_sample_csv;

/// Absolute tolerance for a recovered parameter. `None` means exact match.
pub fn tolerance(name: &str) -> Option<f64> {
    match name {
        "q" | "q1" | "q2" => Some(0.03),
        "gamma" => Some(0.05),
        _ => None,
    }
}

pub struct ParamCheck {
    pub name: &'static str,
    pub real: f64,
    pub estimated: f64,
    pub pass: bool,
}

/// Compares the parameters of the generating model, refitted on its own
/// sample, to the true ones. The truncation point is expected to be the
/// largest observed distance.
pub fn check_params(truth: &ModelParams, fitted: &ModelParams, observed_max: u32) -> Vec<ParamCheck> {
    let est = fitted.named_values();
    truth
        .named_values()
        .into_iter()
        .filter_map(|(name, real)| {
            let estimated = est.iter().find(|(k, _)| *k == name)?.1;
            let pass = match (name, tolerance(name)) {
                (_, Some(tol)) => (estimated - real).abs() <= tol,
                ("d_max", None) => estimated == f64::from(observed_max),
                (_, None) => estimated == real,
            };
            Some(ParamCheck {
                name,
                real,
                estimated,
                pass,
            })
        })
        .collect()
}

pub struct Recovery {
    pub truth: ModelParams,
    pub generated: GeneratedSample,
    pub report: SelectionReport,
    pub params: Vec<ParamCheck>,
}

impl Recovery {
    pub fn recovered(&self) -> bool {
        self.report.best == self.truth.model()
    }

    pub fn pass(&self) -> bool {
        self.recovered() && self.params.iter().all(|p| p.pass)
    }
}

pub fn run_suite(seed: u64, criterion: Criterion) -> Vec<Recovery> {
    let opts = FitOptions::default();
    let suite: Vec<GeneratedSample> = generate_validation_suite(seed).into_values().collect();
    suite
        .into_par_iter()
        .map(|generated| {
            let truth = generated.config.params.clone();
            let obs = Observations::pooled(&generated.sample);
            let report = select(&obs, &ModelId::FIXED_LENGTH_SET, criterion, &opts).expect("suite samples fit");
            let own = report.fit(truth.model()).expect("generating model is fitted");
            let params = check_params(&truth, &own.params, generated.sample.max());
            Recovery {
                truth,
                generated,
                report,
                params,
            }
        })
        .collect()
}

pub fn run(a: &ValidateArgs) -> Result<(), CliError> {
    let criterion: Criterion = a.criterion.into();
    let results = run_suite(a.seed, criterion);
    let out = &a.output.out;
    let sample_dir = out.join("samples");
    ensure_dir(&sample_dir)?;

    let models = ModelId::FIXED_LENGTH_SET;
    let mut cols = vec!["generating_model".to_string(), "best".to_string()];
    cols.extend(models.iter().map(|m| format!("delta_{}", m.label())));
    let refs: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut matrix = Table::new(&format!("{}_matrix", criterion.to_string().to_lowercase()), &refs);
    let mut params = Table::new(
        "validation_params",
        &[
            "generating_model",
            "parameter",
            "real",
            "estimated",
            "error",
            "tolerance",
            "pass",
        ],
    );

    print!("{:<6}", "model");
    for m in &models {
        print!(" {:>9}", m.label());
    }
    println!();
    for r in &results {
        let label = r.truth.model().label();
        let mut row: Vec<Value> = vec![label.into(), r.report.best.label().into()];
        print!("{label:<6}");
        for m in &models {
            let d = r.report.delta(*m);
            row.push(d.map_or(Value::Null, num));
            match d {
                Some(0.0) => print!(" {:>9}", "*"),
                Some(d) => print!(" {d:>9.2}"),
                None => print!(" {:>9}", "-"),
            }
        }
        println!();
        matrix.push(row);
        for p in &r.params {
            params.push(vec![
                label.into(),
                p.name.into(),
                num(p.real),
                num(p.estimated),
                num(p.estimated - p.real),
                tolerance(p.name).map_or(Value::Null, num),
                p.pass.into(),
            ]);
        }
        let path = sample_dir.join(format!("validation_model{label}_seed{}.csv", a.seed));
        let f = File::create(&path).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
        write_sample_csv(BufWriter::new(f), &r.generated.sample, &r.generated.header())
            .map_err(|e| CliError::Output(e.to_string()))?;
    }
    matrix.write(out, a.output.format)?;
    params.write(out, a.output.format)?;

    let failed: Vec<String> = results
        .iter()
        .filter(|r| !r.pass())
        .map(|r| {
            if r.recovered() {
                format!("model {}: parameters out of tolerance", r.truth.model().label())
            } else {
                format!("model {} selected {}", r.truth.model().label(), r.report.best.label())
            }
        })
        .collect();
    if failed.is_empty() {
        println!("all {} models recovered", results.len());
        Ok(())
    } else {
        Err(CliError::Validation(failed.join("; ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_max_compared_with_observed_max() {
        let truth = ModelParams::TruncatedGeometric { q: 0.2, d_max: 19 };
        let fitted = ModelParams::TruncatedGeometric { q: 0.21, d_max: 18 };
        let c = check_params(&truth, &fitted, 18);
        assert!(c.iter().all(|p| p.pass));
        let c = check_params(&truth, &ModelParams::TruncatedGeometric { q: 0.25, d_max: 18 }, 19);
        assert!(c.iter().all(|p| !p.pass));
    }
}
