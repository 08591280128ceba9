//! The nine-member model ensemble for dependency distance distributions:
//! null models, (truncated) geometric, two-regime geometric, truncated
//! zeta and two-regime zeta-geometric.

mod likelihood;
mod normalizer;
mod stats;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use likelihood::{log_likelihood, log_likelihood_from_stats, LogLikelihood, MissingLengthData, Observations};
pub use normalizer::{two_regime_geometric_normalizer, zeta_geometric_normalizer, Normalizer};
pub use stats::{sufficient_stats, BreakStats, StatsTable, SufficientStats};

use crate::error::ParamError;
use crate::treebank::LengthDistribution;

/// Lower/upper margin for every probability-like parameter.
pub const EPSILON: f64 = 1e-8;

/// Log-probabilities below this are treated as zero mass.
pub const LOG_UNDERFLOW: f64 = -745.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelId {
    /// Random word order with `n = d_max + 1` estimated.
    Null,
    /// Random word order mixed over observed sentence lengths.
    ExtendedNull,
    Geometric,
    TruncatedGeometric,
    TwoRegimeGeometric,
    TruncatedTwoRegimeGeometric,
    TruncatedZeta,
    ZetaGeometric,
    TruncatedZetaGeometric,
}

impl ModelId {
    pub const ALL: [ModelId; 9] = [
        ModelId::Null,
        ModelId::ExtendedNull,
        ModelId::Geometric,
        ModelId::TruncatedGeometric,
        ModelId::TwoRegimeGeometric,
        ModelId::TruncatedTwoRegimeGeometric,
        ModelId::TruncatedZeta,
        ModelId::ZetaGeometric,
        ModelId::TruncatedZetaGeometric,
    ];

    /// Models used on single-length or artificial samples.
    pub const FIXED_LENGTH_SET: [ModelId; 8] = [
        ModelId::Null,
        ModelId::Geometric,
        ModelId::TruncatedGeometric,
        ModelId::TwoRegimeGeometric,
        ModelId::TruncatedTwoRegimeGeometric,
        ModelId::TruncatedZeta,
        ModelId::ZetaGeometric,
        ModelId::TruncatedZetaGeometric,
    ];

    /// Models used on samples pooling sentences of several lengths.
    pub const MIXED_LENGTH_SET: [ModelId; 8] = [
        ModelId::ExtendedNull,
        ModelId::Geometric,
        ModelId::TruncatedGeometric,
        ModelId::TwoRegimeGeometric,
        ModelId::TruncatedTwoRegimeGeometric,
        ModelId::TruncatedZeta,
        ModelId::ZetaGeometric,
        ModelId::TruncatedZetaGeometric,
    ];

    /// Number of free parameters.
    pub fn k(self) -> u32 {
        match self {
            ModelId::Null => 1,
            ModelId::ExtendedNull => 0,
            ModelId::Geometric => 1,
            ModelId::TruncatedGeometric => 2,
            ModelId::TwoRegimeGeometric => 3,
            ModelId::TruncatedTwoRegimeGeometric => 4,
            ModelId::TruncatedZeta => 2,
            ModelId::ZetaGeometric => 3,
            ModelId::TruncatedZetaGeometric => 4,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ModelId::Null => "0.0",
            ModelId::ExtendedNull => "0.1",
            ModelId::Geometric => "1",
            ModelId::TruncatedGeometric => "2",
            ModelId::TwoRegimeGeometric => "3",
            ModelId::TruncatedTwoRegimeGeometric => "4",
            ModelId::TruncatedZeta => "5",
            ModelId::ZetaGeometric => "6",
            ModelId::TruncatedZetaGeometric => "7",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelId::Null => "null",
            ModelId::ExtendedNull => "extended null",
            ModelId::Geometric => "geometric",
            ModelId::TruncatedGeometric => "right-truncated geometric",
            ModelId::TwoRegimeGeometric => "two-regime geometric",
            ModelId::TruncatedTwoRegimeGeometric => "two-regime right-truncated geometric",
            ModelId::TruncatedZeta => "right-truncated zeta",
            ModelId::ZetaGeometric => "two-regime zeta-geometric",
            ModelId::TruncatedZetaGeometric => "two-regime right-truncated zeta-geometric",
        }
    }

    pub fn is_two_regime(self) -> bool {
        self.family().is_two_regime()
    }

    pub fn is_truncated(self) -> bool {
        matches!(
            self,
            ModelId::Null
                | ModelId::TruncatedGeometric
                | ModelId::TruncatedTwoRegimeGeometric
                | ModelId::TruncatedZeta
                | ModelId::TruncatedZetaGeometric
        )
    }

    pub fn family(self) -> Family {
        match self {
            ModelId::Null | ModelId::ExtendedNull => Family::Null,
            ModelId::Geometric | ModelId::TruncatedGeometric => Family::Geometric,
            ModelId::TwoRegimeGeometric | ModelId::TruncatedTwoRegimeGeometric => Family::TwoRegimeGeometric,
            ModelId::TruncatedZeta => Family::Zeta,
            ModelId::ZetaGeometric | ModelId::TruncatedZetaGeometric => Family::ZetaGeometric,
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ModelId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "0" | "0.0" => ModelId::Null,
            "0.1" => ModelId::ExtendedNull,
            "1" => ModelId::Geometric,
            "2" => ModelId::TruncatedGeometric,
            "3" => ModelId::TwoRegimeGeometric,
            "4" => ModelId::TruncatedTwoRegimeGeometric,
            "5" => ModelId::TruncatedZeta,
            "6" => ModelId::ZetaGeometric,
            "7" => ModelId::TruncatedZetaGeometric,
            other => return Err(format!("unknown model `{other}` (expected 0, 0.0, 0.1 or 1..7)")),
        })
    }
}

impl Serialize for ModelId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for ModelId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Models counted together when voting for a best model across lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Null,
    Geometric,
    TwoRegimeGeometric,
    Zeta,
    ZetaGeometric,
}

impl Family {
    pub fn is_two_regime(self) -> bool {
        matches!(self, Family::TwoRegimeGeometric | Family::ZetaGeometric)
    }

    pub fn label(self) -> &'static str {
        match self {
            Family::Null => "0",
            Family::Geometric => "1-2",
            Family::TwoRegimeGeometric => "3-4",
            Family::Zeta => "5",
            Family::ZetaGeometric => "6-7",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

/// Parameters of one model. Normalization constants are derived on demand
/// and never stored.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "model")]
pub enum ModelParams {
    #[serde(rename = "0.0")]
    Null { d_max: u32 },
    #[serde(rename = "0.1")]
    ExtendedNull { lengths: LengthDistribution },
    #[serde(rename = "1")]
    Geometric { q: f64 },
    #[serde(rename = "2")]
    TruncatedGeometric { q: f64, d_max: u32 },
    #[serde(rename = "3")]
    TwoRegimeGeometric { q1: f64, q2: f64, d_star: u32 },
    #[serde(rename = "4")]
    TruncatedTwoRegimeGeometric { q1: f64, q2: f64, d_star: u32, d_max: u32 },
    #[serde(rename = "5")]
    TruncatedZeta { gamma: f64, d_max: u32 },
    #[serde(rename = "6")]
    ZetaGeometric { gamma: f64, q: f64, d_star: u32 },
    #[serde(rename = "7")]
    TruncatedZetaGeometric {
        gamma: f64,
        q: f64,
        d_star: u32,
        d_max: u32,
    },
}

fn check_prob(name: &'static str, v: f64) -> Result<(), ParamError> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(ParamError::OutOfDomain {
            name,
            value: v,
            domain: "0 < value < 1",
        })
    }
}

fn check_gamma(v: f64) -> Result<(), ParamError> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(ParamError::OutOfDomain {
            name: "gamma",
            value: v,
            domain: "0 <= gamma < inf",
        })
    }
}

fn check_int(name: &'static str, v: u32) -> Result<(), ParamError> {
    if v >= 1 {
        Ok(())
    } else {
        Err(ParamError::OutOfDomain {
            name,
            value: v as f64,
            domain: "integer >= 1",
        })
    }
}

fn check_break(d_star: u32, d_max: u32) -> Result<(), ParamError> {
    if d_star <= d_max {
        Ok(())
    } else {
        Err(ParamError::BreakBeyondTruncation { d_star, d_max })
    }
}

impl ModelParams {
    pub fn model(&self) -> ModelId {
        match self {
            ModelParams::Null { .. } => ModelId::Null,
            ModelParams::ExtendedNull { .. } => ModelId::ExtendedNull,
            ModelParams::Geometric { .. } => ModelId::Geometric,
            ModelParams::TruncatedGeometric { .. } => ModelId::TruncatedGeometric,
            ModelParams::TwoRegimeGeometric { .. } => ModelId::TwoRegimeGeometric,
            ModelParams::TruncatedTwoRegimeGeometric { .. } => ModelId::TruncatedTwoRegimeGeometric,
            ModelParams::TruncatedZeta { .. } => ModelId::TruncatedZeta,
            ModelParams::ZetaGeometric { .. } => ModelId::ZetaGeometric,
            ModelParams::TruncatedZetaGeometric { .. } => ModelId::TruncatedZetaGeometric,
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        match *self {
            ModelParams::Null { d_max } => check_int("d_max", d_max),
            ModelParams::ExtendedNull { ref lengths } => {
                let s: f64 = lengths.probs().values().sum();
                if lengths.probs().is_empty() || (s - 1.0).abs() > 1e-12 {
                    Err(ParamError::BadLengthDistribution)
                } else {
                    Ok(())
                }
            }
            ModelParams::Geometric { q } => check_prob("q", q),
            ModelParams::TruncatedGeometric { q, d_max } => {
                check_prob("q", q)?;
                check_int("d_max", d_max)
            }
            ModelParams::TwoRegimeGeometric { q1, q2, d_star } => {
                check_prob("q1", q1)?;
                check_prob("q2", q2)?;
                check_int("d_star", d_star)
            }
            ModelParams::TruncatedTwoRegimeGeometric { q1, q2, d_star, d_max } => {
                check_prob("q1", q1)?;
                check_prob("q2", q2)?;
                check_int("d_star", d_star)?;
                check_int("d_max", d_max)?;
                check_break(d_star, d_max)
            }
            ModelParams::TruncatedZeta { gamma, d_max } => {
                check_gamma(gamma)?;
                check_int("d_max", d_max)
            }
            ModelParams::ZetaGeometric { gamma, q, d_star } => {
                check_gamma(gamma)?;
                check_prob("q", q)?;
                check_int("d_star", d_star)
            }
            ModelParams::TruncatedZetaGeometric {
                gamma,
                q,
                d_star,
                d_max,
            } => {
                check_gamma(gamma)?;
                check_prob("q", q)?;
                check_int("d_star", d_star)?;
                check_int("d_max", d_max)?;
                check_break(d_star, d_max)
            }
        }
    }

    /// Right-truncation point, or the largest sentence length minus one for
    /// the extended null model. `None` for unbounded support.
    pub fn d_max(&self) -> Option<u32> {
        match *self {
            ModelParams::Null { d_max }
            | ModelParams::TruncatedGeometric { d_max, .. }
            | ModelParams::TruncatedTwoRegimeGeometric { d_max, .. }
            | ModelParams::TruncatedZeta { d_max, .. }
            | ModelParams::TruncatedZetaGeometric { d_max, .. } => Some(d_max),
            ModelParams::ExtendedNull { ref lengths } => Some(lengths.max_len() - 1),
            _ => None,
        }
    }

    pub fn d_star(&self) -> Option<u32> {
        match *self {
            ModelParams::TwoRegimeGeometric { d_star, .. }
            | ModelParams::TruncatedTwoRegimeGeometric { d_star, .. }
            | ModelParams::ZetaGeometric { d_star, .. }
            | ModelParams::TruncatedZetaGeometric { d_star, .. } => Some(d_star),
            _ => None,
        }
    }

    /// Named numeric parameters, in a stable order, for reports.
    pub fn named_values(&self) -> Vec<(&'static str, f64)> {
        match *self {
            ModelParams::Null { d_max } => vec![("d_max", d_max as f64)],
            ModelParams::ExtendedNull { .. } => vec![],
            ModelParams::Geometric { q } => vec![("q", q)],
            ModelParams::TruncatedGeometric { q, d_max } => vec![("q", q), ("d_max", d_max as f64)],
            ModelParams::TwoRegimeGeometric { q1, q2, d_star } => {
                vec![("q1", q1), ("q2", q2), ("d_star", d_star as f64)]
            }
            ModelParams::TruncatedTwoRegimeGeometric { q1, q2, d_star, d_max } => vec![
                ("q1", q1),
                ("q2", q2),
                ("d_star", d_star as f64),
                ("d_max", d_max as f64),
            ],
            ModelParams::TruncatedZeta { gamma, d_max } => vec![("gamma", gamma), ("d_max", d_max as f64)],
            ModelParams::ZetaGeometric { gamma, q, d_star } => {
                vec![("gamma", gamma), ("q", q), ("d_star", d_star as f64)]
            }
            ModelParams::TruncatedZetaGeometric {
                gamma,
                q,
                d_star,
                d_max,
            } => vec![
                ("gamma", gamma),
                ("q", q),
                ("d_star", d_star as f64),
                ("d_max", d_max as f64),
            ],
        }
    }

    /// Probability of distance `d`.
    pub fn pmf(&self, d: u32) -> f64 {
        Pmf::new(self).pmf(d)
    }

    pub fn log_pmf(&self, d: u32) -> f64 {
        Pmf::new(self).log_pmf(d)
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .named_values()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(f, "model={} {}", self.model(), parts.join(";"))
    }
}

/// Generalized harmonic number `sum_{k=1}^{n} k^-gamma`.
pub fn harmonic(n: u32, gamma: f64) -> f64 {
    // smallest terms first
    (1..=n).rev().map(|k| (k as f64).powf(-gamma)).sum()
}

/// A model with its normalization constants resolved, for repeated
/// evaluation.
#[derive(Debug, Clone)]
pub struct Pmf {
    kernel: Kernel,
}

#[derive(Debug, Clone)]
enum Kernel {
    Null {
        d_max: u32,
        log_norm: f64,
    },
    Mixture {
        terms: Vec<(u32, f64)>,
    },
    Geometric {
        log_head: f64,
        log_decay: f64,
        d_max: Option<u32>,
    },
    TwoRegimeGeometric {
        log_c1: f64,
        log_c2: f64,
        log_decay1: f64,
        log_decay2: f64,
        d_star: u32,
        d_max: Option<u32>,
    },
    Zeta {
        gamma: f64,
        log_h: f64,
        d_max: u32,
    },
    ZetaGeometric {
        log_c1: f64,
        log_c2: f64,
        gamma: f64,
        log_decay: f64,
        d_star: u32,
        d_max: Option<u32>,
    },
}

impl Pmf {
    pub fn new(params: &ModelParams) -> Self {
        let kernel = match *params {
            ModelParams::Null { d_max } => {
                let m = d_max as f64;
                Kernel::Null {
                    d_max,
                    log_norm: std::f64::consts::LN_2 - m.ln() - (m + 1.0).ln(),
                }
            }
            ModelParams::ExtendedNull { ref lengths } => Kernel::Mixture {
                terms: lengths
                    .probs()
                    .iter()
                    .map(|(&n, &p)| (n, p * 2.0 / (n as f64 * (n as f64 - 1.0))))
                    .collect(),
            },
            ModelParams::Geometric { q } => Kernel::Geometric {
                log_head: q.ln(),
                log_decay: (-q).ln_1p(),
                d_max: None,
            },
            ModelParams::TruncatedGeometric { q, d_max } => {
                let log_decay = (-q).ln_1p();
                Kernel::Geometric {
                    log_head: q.ln() - (-(d_max as f64 * log_decay).exp_m1()).ln(),
                    log_decay,
                    d_max: Some(d_max),
                }
            }
            ModelParams::TwoRegimeGeometric { q1, q2, d_star } => {
                let n = two_regime_geometric_normalizer(q1, q2, d_star, None);
                Kernel::TwoRegimeGeometric {
                    log_c1: n.log_c1(),
                    log_c2: n.log_c2(),
                    log_decay1: (-q1).ln_1p(),
                    log_decay2: (-q2).ln_1p(),
                    d_star,
                    d_max: None,
                }
            }
            ModelParams::TruncatedTwoRegimeGeometric { q1, q2, d_star, d_max } => {
                let n = two_regime_geometric_normalizer(q1, q2, d_star, Some(d_max));
                Kernel::TwoRegimeGeometric {
                    log_c1: n.log_c1(),
                    log_c2: n.log_c2(),
                    log_decay1: (-q1).ln_1p(),
                    log_decay2: (-q2).ln_1p(),
                    d_star,
                    d_max: Some(d_max),
                }
            }
            ModelParams::TruncatedZeta { gamma, d_max } => Kernel::Zeta {
                gamma,
                log_h: harmonic(d_max, gamma).ln(),
                d_max,
            },
            ModelParams::ZetaGeometric { gamma, q, d_star } => {
                let n = zeta_geometric_normalizer(gamma, q, d_star, None);
                Kernel::ZetaGeometric {
                    log_c1: n.log_c1(),
                    log_c2: n.log_c2(),
                    gamma,
                    log_decay: (-q).ln_1p(),
                    d_star,
                    d_max: None,
                }
            }
            ModelParams::TruncatedZetaGeometric {
                gamma,
                q,
                d_star,
                d_max,
            } => {
                let n = zeta_geometric_normalizer(gamma, q, d_star, Some(d_max));
                Kernel::ZetaGeometric {
                    log_c1: n.log_c1(),
                    log_c2: n.log_c2(),
                    gamma,
                    log_decay: (-q).ln_1p(),
                    d_star,
                    d_max: Some(d_max),
                }
            }
        };
        Pmf { kernel }
    }

    /// Natural log of the probability of `d`; `-inf` outside the support
    /// or below [`LOG_UNDERFLOW`].
    pub fn log_pmf(&self, d: u32) -> f64 {
        if d == 0 {
            return f64::NEG_INFINITY;
        }
        let x = d as f64;
        let v = match self.kernel {
            Kernel::Null { d_max, log_norm } => {
                if d > d_max {
                    return f64::NEG_INFINITY;
                }
                log_norm + ((d_max + 1 - d) as f64).ln()
            }
            Kernel::Mixture { ref terms } => {
                let p: f64 = terms
                    .iter()
                    .filter(|(n, _)| *n > d)
                    .map(|&(n, w)| w * (n - d) as f64)
                    .sum();
                p.ln()
            }
            Kernel::Geometric {
                log_head,
                log_decay,
                d_max,
            } => {
                if d_max.is_some_and(|m| d > m) {
                    return f64::NEG_INFINITY;
                }
                log_head + (x - 1.0) * log_decay
            }
            Kernel::TwoRegimeGeometric {
                log_c1,
                log_c2,
                log_decay1,
                log_decay2,
                d_star,
                d_max,
            } => {
                if d_max.is_some_and(|m| d > m) {
                    return f64::NEG_INFINITY;
                }
                if d <= d_star {
                    log_c1 + (x - 1.0) * log_decay1
                } else {
                    log_c2 + (x - 1.0) * log_decay2
                }
            }
            Kernel::Zeta { gamma, log_h, d_max } => {
                if d > d_max {
                    return f64::NEG_INFINITY;
                }
                -gamma * x.ln() - log_h
            }
            Kernel::ZetaGeometric {
                log_c1,
                log_c2,
                gamma,
                log_decay,
                d_star,
                d_max,
            } => {
                if d_max.is_some_and(|m| d > m) {
                    return f64::NEG_INFINITY;
                }
                if d <= d_star {
                    log_c1 - gamma * x.ln()
                } else {
                    log_c2 + (x - 1.0) * log_decay
                }
            }
        };
        if v < LOG_UNDERFLOW {
            f64::NEG_INFINITY
        } else {
            v
        }
    }

    pub fn pmf(&self, d: u32) -> f64 {
        self.log_pmf(d).exp()
    }

    /// Largest `d` with positive probability, if finite.
    pub fn support_max(&self) -> Option<u32> {
        match self.kernel {
            Kernel::Null { d_max, .. } | Kernel::Zeta { d_max, .. } => Some(d_max),
            Kernel::Mixture { ref terms } => terms.iter().map(|(n, _)| n - 1).max(),
            Kernel::Geometric { d_max, .. }
            | Kernel::TwoRegimeGeometric { d_max, .. }
            | Kernel::ZetaGeometric { d_max, .. } => d_max,
        }
    }

    /// `P(d > after)`. Closed form for geometric tails of unbounded models,
    /// an explicit sum otherwise.
    pub fn upper_tail(&self, after: u32) -> f64 {
        match self.kernel {
            Kernel::Geometric {
                log_head,
                log_decay,
                d_max: None,
            } => (log_head + after as f64 * log_decay - (-log_decay.exp_m1()).ln()).exp(),
            Kernel::TwoRegimeGeometric {
                log_c2,
                log_decay2,
                d_star,
                d_max: None,
                ..
            } if after >= d_star => (log_c2 + after as f64 * log_decay2 - (-log_decay2.exp_m1()).ln()).exp(),
            Kernel::ZetaGeometric {
                log_c2,
                log_decay,
                d_star,
                d_max: None,
                ..
            } if after >= d_star => (log_c2 + after as f64 * log_decay - (-log_decay.exp_m1()).ln()).exp(),
            _ => match self.support_max() {
                Some(m) => (after + 1..=m).rev().map(|d| self.pmf(d)).sum(),
                None => {
                    // unbounded two-regime with `after` inside the first regime
                    let d_star = match self.kernel {
                        Kernel::TwoRegimeGeometric { d_star, .. } | Kernel::ZetaGeometric { d_star, .. } => d_star,
                        _ => unreachable!(),
                    };
                    (after + 1..=d_star).map(|d| self.pmf(d)).sum::<f64>() + self.upper_tail(d_star)
                }
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn k_values() {
        let ks: Vec<u32> = ModelId::ALL.iter().map(|m| m.k()).collect();
        assert_eq!(ks, vec![1, 0, 1, 2, 3, 4, 2, 3, 4]);
    }

    #[test]
    fn labels_parse_back() {
        for m in ModelId::ALL {
            assert_eq!(m.label().parse::<ModelId>().unwrap(), m);
        }
        assert_eq!("0".parse::<ModelId>().unwrap(), ModelId::Null);
        assert!("8".parse::<ModelId>().is_err());
    }

    #[test]
    fn geometric_head() {
        assert_relative_eq!(ModelParams::Geometric { q: 0.2 }.pmf(1), 0.2, epsilon = 1e-15);
    }

    #[test]
    fn null_model_pairs() {
        // n = 4: 6 position pairs, 3 at distance 1, 1 at distance 3
        let p = ModelParams::Null { d_max: 3 };
        assert_relative_eq!(p.pmf(1), 0.5, epsilon = 1e-15);
        assert_relative_eq!(p.pmf(3), 1.0 / 6.0, epsilon = 1e-15);
        assert_eq!(p.pmf(4), 0.0);
    }

    #[test]
    fn two_regime_at_break() {
        let p = ModelParams::TwoRegimeGeometric {
            q1: 0.5,
            q2: 0.1,
            d_star: 4,
        };
        assert_relative_eq!(p.pmf(4), 1.0 / 24.0, epsilon = 1e-15);
        // second-regime branch evaluated at d* agrees
        let n = two_regime_geometric_normalizer(0.5, 0.1, 4, None);
        assert_relative_eq!(n.c2 * 0.9f64.powi(3), 1.0 / 24.0, epsilon = 1e-15);
    }

    #[test]
    fn harmonic_values() {
        assert_relative_eq!(harmonic(2, 1.0), 1.5, epsilon = 1e-15);
        assert_relative_eq!(harmonic(5, 0.0), 5.0, epsilon = 1e-15);
        let fwd: f64 = (1..=19).map(|k| (k as f64).powf(-1.6)).sum();
        assert_relative_eq!(harmonic(19, 1.6), fwd, epsilon = 1e-12);
    }

    #[test]
    fn validation() {
        assert!(ModelParams::Geometric { q: 1.0 }.validate().is_err());
        assert!(ModelParams::Geometric { q: 0.0 }.validate().is_err());
        assert!(ModelParams::TruncatedZeta { gamma: -0.1, d_max: 3 }.validate().is_err());
        assert_eq!(
            ModelParams::TruncatedTwoRegimeGeometric {
                q1: 0.5,
                q2: 0.1,
                d_star: 5,
                d_max: 4
            }
            .validate(),
            Err(ParamError::BreakBeyondTruncation { d_star: 5, d_max: 4 })
        );
        assert!(ModelParams::Null { d_max: 0 }.validate().is_err());
    }

    #[test]
    fn mixture_sums_to_one() {
        let ld = LengthDistribution::from_counts([(3, 2), (4, 1)]).unwrap();
        let p = ModelParams::ExtendedNull { lengths: ld };
        let total: f64 = (1..=3).map(|d| p.pmf(d)).sum();
        assert_relative_eq!(total, 1.0, epsilon = 1e-14);
        assert_eq!(p.pmf(4), 0.0);
    }

    #[test]
    fn upper_tail_matches_sum() {
        let p = Pmf::new(&ModelParams::ZetaGeometric {
            gamma: 1.6,
            q: 0.2,
            d_star: 4,
        });
        let head: f64 = (1..=2).map(|d| p.pmf(d)).sum();
        assert_relative_eq!(head + p.upper_tail(2), 1.0, epsilon = 1e-12);
        let t = Pmf::new(&ModelParams::TruncatedZeta { gamma: 1.6, d_max: 19 });
        assert_relative_eq!(t.upper_tail(18), t.pmf(19), epsilon = 1e-15);
    }
}
