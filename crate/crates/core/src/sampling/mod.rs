//! Random samples from every model: geometric inversion, rejection for
//! the truncated zeta, and tabular inversion for the rest.

mod geometric;
mod tabular;
mod zeta;

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use geometric::{geometric_deviate, invert_geometric};
pub use tabular::TabularSampler;
pub use zeta::zeta_deviate;

use crate::error::ParamError;
use crate::models::{ModelId, ModelParams};
use crate::treebank::DistanceSample;

/// Generator used for every sample, recorded in sample headers.
pub const RNG_NAME: &str = "ChaCha20Rng (rand_chacha 0.3), seed_from_u64 + set_stream";

/// Largest value drawn from models without right truncation.
pub const DEFAULT_CUTOFF: u32 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SamplerConfig {
    pub params: ModelParams,
    pub n: u64,
    pub seed: u64,
    /// Independent stream of the seeded generator.
    pub stream: u64,
    pub cutoff: u32,
}

impl SamplerConfig {
    pub fn new(params: ModelParams, n: u64, seed: u64) -> Self {
        SamplerConfig {
            params,
            n,
            seed,
            stream: 0,
            cutoff: DEFAULT_CUTOFF,
        }
    }

    pub fn with_stream(mut self, stream: u64) -> Self {
        self.stream = stream;
        self
    }

    pub fn with_cutoff(mut self, cutoff: u32) -> Self {
        self.cutoff = cutoff;
        self
    }

    pub fn rng(&self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    GeometricInversion,
    GeometricRejection,
    ZetaRejection,
    Tabular,
}

impl Method {
    pub fn for_params(params: &ModelParams) -> Self {
        match *params {
            ModelParams::Geometric { .. } => Method::GeometricInversion,
            ModelParams::TruncatedGeometric { .. } => Method::GeometricRejection,
            ModelParams::TruncatedZeta { gamma, .. } if gamma > 1.0 => Method::ZetaRejection,
            _ => Method::Tabular,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::GeometricInversion => "geometric-inversion",
            Method::GeometricRejection => "geometric-rejection",
            Method::ZetaRejection => "zeta-rejection",
            Method::Tabular => "tabular-inversion",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratedSample {
    pub sample: DistanceSample,
    pub config: SamplerConfig,
    pub method: Method,
    /// Draws beyond the cutoff, reported as the cutoff.
    pub overflow: u64,
    /// Candidates rejected by truncation or the acceptance test.
    pub rejected: u64,
}

impl GeneratedSample {
    /// `key=value` pairs for a sample file header.
    pub fn header(&self) -> Vec<(String, String)> {
        let mut h = vec![
            ("model".to_string(), self.config.params.model().label().to_string()),
            ("params".to_string(), params_field(&self.config.params)),
            ("n".to_string(), self.config.n.to_string()),
            ("seed".to_string(), self.config.seed.to_string()),
            ("stream".to_string(), self.config.stream.to_string()),
            ("rng".to_string(), RNG_NAME.to_string()),
            ("method".to_string(), self.method.name().to_string()),
        ];
        if self.config.params.d_max().is_none() {
            h.push(("cutoff".to_string(), self.config.cutoff.to_string()));
            h.push(("overflow".to_string(), self.overflow.to_string()));
        }
        h
    }
}

fn params_field(params: &ModelParams) -> String {
    params
        .named_values()
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

/// Draws `config.n` distances from `config.params`.
pub fn generate(config: &SamplerConfig) -> Result<GeneratedSample, ParamError> {
    config.params.validate()?;
    if config.n == 0 {
        return Err(ParamError::OutOfDomain {
            name: "n",
            value: 0.0,
            domain: "integer >= 1",
        });
    }
    let floor = config.params.d_star().unwrap_or(1).max(1);
    if config.cutoff < floor {
        return Err(ParamError::OutOfDomain {
            name: "cutoff",
            value: config.cutoff as f64,
            domain: "cutoff >= max(d*, 1)",
        });
    }
    let mut rng = config.rng();
    let method = Method::for_params(&config.params);
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    let mut overflow = 0u64;
    let mut rejected = 0u64;
    let cutoff = u64::from(config.cutoff);

    match (method, &config.params) {
        (Method::GeometricInversion, &ModelParams::Geometric { q }) => {
            for _ in 0..config.n {
                let mut l = geometric_deviate(&mut rng, q);
                if l > cutoff {
                    l = cutoff;
                    overflow += 1;
                }
                *counts.entry(l as u32).or_insert(0) += 1;
            }
        }
        (Method::GeometricRejection, &ModelParams::TruncatedGeometric { q, d_max }) => {
            for _ in 0..config.n {
                let l = loop {
                    let l = geometric_deviate(&mut rng, q);
                    if l <= u64::from(d_max) {
                        break l as u32;
                    }
                    rejected += 1;
                };
                *counts.entry(l).or_insert(0) += 1;
            }
        }
        (Method::ZetaRejection, &ModelParams::TruncatedZeta { gamma, d_max }) => {
            for _ in 0..config.n {
                let (x, r) = zeta_deviate(&mut rng, gamma, d_max);
                rejected += r;
                *counts.entry(x).or_insert(0) += 1;
            }
        }
        (_, params) => {
            let table = TabularSampler::new(params, config.cutoff);
            for _ in 0..config.n {
                let d = table.draw(&mut rng).unwrap_or_else(|top| {
                    overflow += 1;
                    top
                });
                *counts.entry(d).or_insert(0) += 1;
            }
        }
    }
    Ok(GeneratedSample {
        sample: DistanceSample::from_counts(counts).expect("n >= 1 draws"),
        config: config.clone(),
        method,
        overflow,
        rejected,
    })
}

/// Sample size of every validation sample.
pub const VALIDATION_N: u64 = 10_000;

/// Generating parameters of the validation samples, one per model of the
/// fixed-length set.
pub fn validation_params() -> Vec<ModelParams> {
    let (q, q1, q2, d_star, gamma, d_max) = (0.2, 0.5, 0.1, 4, 1.6, 19);
    vec![
        ModelParams::Null { d_max },
        ModelParams::Geometric { q },
        ModelParams::TruncatedGeometric { q, d_max },
        ModelParams::TwoRegimeGeometric { q1, q2, d_star },
        ModelParams::TruncatedTwoRegimeGeometric { q1, q2, d_star, d_max },
        ModelParams::TruncatedZeta { gamma, d_max },
        ModelParams::ZetaGeometric { gamma, q, d_star },
        ModelParams::TruncatedZetaGeometric {
            gamma,
            q,
            d_star,
            d_max,
        },
    ]
}

/// One sample of size `n` per validation model, each on its own stream
/// of the seeded generator.
pub fn generate_suite(seed: u64, n: u64) -> BTreeMap<ModelId, GeneratedSample> {
    validation_params()
        .into_par_iter()
        .enumerate()
        .map(|(i, p)| {
            let cfg = SamplerConfig::new(p, n, seed).with_stream(i as u64);
            let g = generate(&cfg).expect("validation parameters are valid");
            (g.config.params.model(), g)
        })
        .collect()
}

/// The validation suite: `VALIDATION_N` draws per model.
pub fn generate_validation_suite(seed: u64) -> BTreeMap<ModelId, GeneratedSample> {
    generate_suite(seed, VALIDATION_N)
}
