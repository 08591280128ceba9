use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use super::stats::{StatsTable, SufficientStats};
use super::{harmonic, two_regime_geometric_normalizer, zeta_geometric_normalizer, ModelParams};
use crate::treebank::DistanceSample;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogLikelihood {
    pub value: f64,
    /// Set when some observed distance has zero probability; `value` is
    /// then `-inf`.
    pub out_of_support: bool,
}

impl LogLikelihood {
    fn finite(value: f64) -> Self {
        LogLikelihood {
            value,
            out_of_support: false,
        }
    }

    fn violated() -> Self {
        LogLikelihood {
            value: f64::NEG_INFINITY,
            out_of_support: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("the extended null model needs per-length samples")]
pub struct MissingLengthData;

/// Data a model is evaluated on: the pooled sample and, for the extended
/// null model, the samples split by sentence length.
#[derive(Debug, Clone, Copy)]
pub struct Observations<'a> {
    pub pooled: &'a DistanceSample,
    pub by_length: Option<&'a BTreeMap<u32, DistanceSample>>,
}

impl<'a> Observations<'a> {
    pub fn pooled(sample: &'a DistanceSample) -> Self {
        Observations {
            pooled: sample,
            by_length: None,
        }
    }

    pub fn with_lengths(sample: &'a DistanceSample, by_length: &'a BTreeMap<u32, DistanceSample>) -> Self {
        Observations {
            pooled: sample,
            by_length: Some(by_length),
        }
    }
}

/// Log-likelihood from sufficient statistics.
pub fn log_likelihood(params: &ModelParams, obs: &Observations) -> Result<LogLikelihood, MissingLengthData> {
    if let ModelParams::ExtendedNull { .. } = params {
        return obs.by_length.map(extended_null).ok_or(MissingLengthData);
    }
    let table = StatsTable::new(obs.pooled);
    let stats = table.stats(params.d_star(), params.d_max());
    Ok(log_likelihood_from_stats(params, &stats))
}

/// `sum_n [N_n ln(2 / (n (n-1))) + sum f_n(d) ln(n - d)]`.
fn extended_null(by_length: &BTreeMap<u32, DistanceSample>) -> LogLikelihood {
    let mut total = 0.0;
    for (&n, s) in by_length {
        if s.max() >= n {
            return LogLikelihood::violated();
        }
        let nf = n as f64;
        total += s.total() as f64 * (2.0 / (nf * (nf - 1.0))).ln();
        total += s.iter().map(|(d, f)| f as f64 * ((n - d) as f64).ln()).sum::<f64>();
    }
    LogLikelihood::finite(total)
}

/// Compact log-likelihood of every model except the extended null. The
/// statistics must have been computed at the model's `d*` and `d_max`.
///
/// # Panics
/// On the extended null model, or when the break statistics are missing
/// for a two-regime model.
pub fn log_likelihood_from_stats(params: &ModelParams, s: &SufficientStats) -> LogLikelihood {
    if let Some(m) = params.d_max() {
        if s.max_d > m {
            return LogLikelihood::violated();
        }
    }
    let n = s.n as f64;
    let m = s.m as f64;
    let brk = || {
        let b = s.brk.expect("break statistics");
        debug_assert_eq!(Some(b.d_star), params.d_star());
        (b.n as f64, b.m as f64, b.m_log)
    };
    let v = match *params {
        ModelParams::Null { d_max } => {
            let (dm, w) = s.w.expect("W statistic");
            debug_assert_eq!(dm, d_max);
            let x = d_max as f64;
            n * (2.0 / (x * (x + 1.0))).ln() + w
        }
        ModelParams::ExtendedNull { .. } => panic!("extended null likelihood needs per-length samples"),
        ModelParams::Geometric { q } => n * q.ln() + (m - n) * (-q).ln_1p(),
        ModelParams::TruncatedGeometric { q, d_max } => {
            let l = (-q).ln_1p();
            n * (q.ln() - (-(d_max as f64 * l).exp_m1()).ln()) + (m - n) * l
        }
        ModelParams::TwoRegimeGeometric { q1, q2, d_star } => two_regime(q1, q2, d_star, None, n, m, brk()),
        ModelParams::TruncatedTwoRegimeGeometric { q1, q2, d_star, d_max } => {
            two_regime(q1, q2, d_star, Some(d_max), n, m, brk())
        }
        ModelParams::TruncatedZeta { gamma, d_max } => -gamma * s.m_log - n * harmonic(d_max, gamma).ln(),
        ModelParams::ZetaGeometric { gamma, q, d_star } => zeta_geometric(gamma, q, d_star, None, n, m, brk()),
        ModelParams::TruncatedZetaGeometric {
            gamma,
            q,
            d_star,
            d_max,
        } => zeta_geometric(gamma, q, d_star, Some(d_max), n, m, brk()),
    };
    LogLikelihood::finite(v)
}

fn two_regime(q1: f64, q2: f64, d_star: u32, d_max: Option<u32>, n: f64, m: f64, b: (f64, f64, f64)) -> f64 {
    let (ns, ms, _) = b;
    let c = two_regime_geometric_normalizer(q1, q2, d_star, d_max);
    let l1 = (-q1).ln_1p();
    let l2 = (-q2).ln_1p();
    ns * c.log_c1() + (n - ns) * c.log_c2() + (ms - ns) * (l1 - l2) + (m - n) * l2
}

fn zeta_geometric(gamma: f64, q: f64, d_star: u32, d_max: Option<u32>, n: f64, m: f64, b: (f64, f64, f64)) -> f64 {
    let (ns, ms, mls) = b;
    let c = zeta_geometric_normalizer(gamma, q, d_star, d_max);
    let l = (-q).ln_1p();
    ns * c.log_c1() - gamma * mls + (n - ns) * c.log_c2() + (m - ms - n + ns) * l
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Pmf;
    use approx::assert_relative_eq;

    fn direct(params: &ModelParams, s: &DistanceSample) -> f64 {
        let p = Pmf::new(params);
        s.iter().map(|(d, f)| f as f64 * p.log_pmf(d)).sum()
    }

    fn sample() -> DistanceSample {
        DistanceSample::from_counts([(1, 40), (2, 21), (3, 9), (4, 6), (5, 3), (7, 2), (11, 1)]).unwrap()
    }

    #[test]
    fn compact_matches_direct() {
        let s = sample();
        let cases = [
            ModelParams::Null { d_max: 14 },
            ModelParams::Geometric { q: 0.37 },
            ModelParams::TruncatedGeometric { q: 0.37, d_max: 11 },
            ModelParams::TwoRegimeGeometric {
                q1: 0.5,
                q2: 0.2,
                d_star: 3,
            },
            ModelParams::TruncatedTwoRegimeGeometric {
                q1: 0.5,
                q2: 0.2,
                d_star: 3,
                d_max: 12,
            },
            ModelParams::TruncatedZeta { gamma: 1.7, d_max: 11 },
            ModelParams::ZetaGeometric {
                gamma: 1.2,
                q: 0.3,
                d_star: 4,
            },
            ModelParams::TruncatedZetaGeometric {
                gamma: 1.2,
                q: 0.3,
                d_star: 4,
                d_max: 20,
            },
        ];
        for p in cases {
            let c = log_likelihood(&p, &Observations::pooled(&s)).unwrap();
            assert!(!c.out_of_support);
            assert_relative_eq!(c.value, direct(&p, &s), max_relative = 1e-12);
        }
    }

    #[test]
    fn support_violation() {
        let s = sample();
        let l = log_likelihood(
            &ModelParams::TruncatedZeta { gamma: 1.0, d_max: 10 },
            &Observations::pooled(&s),
        )
        .unwrap();
        assert!(l.out_of_support);
        assert_eq!(l.value, f64::NEG_INFINITY);
    }

    #[test]
    fn extended_null_conditional_form() {
        let mut by = BTreeMap::new();
        by.insert(3, DistanceSample::from_distances([1, 1, 2, 1]).unwrap());
        by.insert(4, DistanceSample::from_distances([1, 2, 3]).unwrap());
        let pooled = DistanceSample::from_distances([1, 1, 2, 1, 1, 2, 3]).unwrap();
        let lengths = crate::treebank::LengthDistribution::from_counts([(3, 2), (4, 1)]).unwrap();
        let p = ModelParams::ExtendedNull { lengths };
        let got = log_likelihood(&p, &Observations::with_lengths(&pooled, &by)).unwrap();
        // p(d|3) = {2/3, 1/3}; p(d|4) = {1/2, 1/3, 1/6}
        let want =
            3.0 * (2.0f64 / 3.0).ln() + (1.0f64 / 3.0).ln() + 0.5f64.ln() + (1.0f64 / 3.0).ln() + (1.0f64 / 6.0).ln();
        assert_relative_eq!(got.value, want, epsilon = 1e-13);
        assert!(log_likelihood(&p, &Observations::pooled(&pooled)).is_err());
    }
}
