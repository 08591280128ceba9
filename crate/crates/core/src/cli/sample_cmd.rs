use std::fs::File;
use std::io::BufWriter;

use super::{ensure_dir, CliError, SampleArgs};
use crate::models::{ModelId, ModelParams};
use crate::sampling::{generate, SamplerConfig};
use crate::treebank::write_sample_csv;

fn need<T>(v: Option<T>, flag: &str, model: ModelId) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("model {} needs --{flag}", model.label())))
}

pub fn params_from_args(a: &SampleArgs) -> Result<ModelParams, CliError> {
    let m = a.model;
    let p = match m {
        ModelId::Null => ModelParams::Null {
            d_max: need(a.d_max, "d-max", m)?,
        },
        ModelId::ExtendedNull => {
            return Err(CliError::Usage(
                "model 0.1 depends on sentence lengths and cannot be sampled alone".into(),
            ))
        }
        ModelId::Geometric => ModelParams::Geometric { q: need(a.q, "q", m)? },
        ModelId::TruncatedGeometric => ModelParams::TruncatedGeometric {
            q: need(a.q, "q", m)?,
            d_max: need(a.d_max, "d-max", m)?,
        },
        ModelId::TwoRegimeGeometric => ModelParams::TwoRegimeGeometric {
            q1: need(a.q1, "q1", m)?,
            q2: need(a.q2, "q2", m)?,
            d_star: need(a.d_star, "d-star", m)?,
        },
        ModelId::TruncatedTwoRegimeGeometric => ModelParams::TruncatedTwoRegimeGeometric {
            q1: need(a.q1, "q1", m)?,
            q2: need(a.q2, "q2", m)?,
            d_star: need(a.d_star, "d-star", m)?,
            d_max: need(a.d_max, "d-max", m)?,
        },
        ModelId::TruncatedZeta => ModelParams::TruncatedZeta {
            gamma: need(a.gamma, "gamma", m)?,
            d_max: need(a.d_max, "d-max", m)?,
        },
        ModelId::ZetaGeometric => ModelParams::ZetaGeometric {
            gamma: need(a.gamma, "gamma", m)?,
            q: need(a.q, "q", m)?,
            d_star: need(a.d_star, "d-star", m)?,
        },
        ModelId::TruncatedZetaGeometric => ModelParams::TruncatedZetaGeometric {
            gamma: need(a.gamma, "gamma", m)?,
            q: need(a.q, "q", m)?,
            d_star: need(a.d_star, "d-star", m)?,
            d_max: need(a.d_max, "d-max", m)?,
        },
    };
    Ok(p)
}

pub fn run(a: &SampleArgs) -> Result<(), CliError> {
    let params = params_from_args(a)?;
    let cfg = SamplerConfig::new(params, a.n, a.seed).with_cutoff(a.cutoff);
    let g = generate(&cfg).map_err(|e| CliError::Usage(e.to_string()))?;
    ensure_dir(&a.output.out)?;
    let path = a
        .output
        .out
        .join(format!("sample_model{}_seed{}.csv", a.model.label(), a.seed));
    let f = File::create(&path).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
    write_sample_csv(BufWriter::new(f), &g.sample, &g.header()).map_err(|e| CliError::Output(e.to_string()))?;
    println!(
        "{} draws from {} ({}), mean {:.3}, max {}: {}",
        g.sample.total(),
        g.config.params,
        g.method.name(),
        g.sample.mean(),
        g.sample.max(),
        path.display()
    );
    if g.overflow > 0 {
        eprintln!("depdist: {} draws exceeded the cutoff {}", g.overflow, a.cutoff);
    }
    Ok(())
}
