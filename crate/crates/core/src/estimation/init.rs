//! Starting values for the continuous parameters.

use crate::models::EPSILON;
use crate::treebank::DistanceSample;

/// Starting break point before the exhaustive scan narrows it.
pub const D_STAR_INIT: u32 = 5;

/// Used when every distance equals the minimum and the exponent
/// estimator is undefined.
pub const GAMMA_INIT_FALLBACK: f64 = 10.0;

pub fn clamp_q(q: f64) -> f64 {
    q.clamp(EPSILON, 1.0 - EPSILON)
}

/// Reciprocal of the mean distance.
pub fn q_init(sample: &DistanceSample) -> f64 {
    clamp_q(1.0 / sample.mean())
}

/// Reciprocal of the mean over the distances selected by `keep`; `None`
/// if nothing is kept.
pub fn q_init_where(sample: &DistanceSample, keep: impl Fn(u32) -> bool) -> Option<f64> {
    let (n, m) = sample
        .iter()
        .filter(|&(d, _)| keep(d))
        .fold((0u64, 0u64), |(n, m), (d, f)| (n + f, m + f * u64::from(d)));
    (n > 0).then(|| clamp_q(n as f64 / m as f64))
}

/// Power-law exponent estimate `1 + N / sum ln(d_i / min d)` over the
/// distances selected by `keep`.
pub fn gamma_init_where(sample: &DistanceSample, keep: impl Fn(u32) -> bool) -> f64 {
    let kept: Vec<(u32, u64)> = sample.iter().filter(|&(d, _)| keep(d)).collect();
    let Some(&(dmin, _)) = kept.first() else {
        return GAMMA_INIT_FALLBACK;
    };
    let n: u64 = kept.iter().map(|&(_, f)| f).sum();
    let s: f64 = kept
        .iter()
        .map(|&(d, f)| f as f64 * (d as f64 / dmin as f64).ln())
        .sum();
    if s > 0.0 {
        1.0 + n as f64 / s
    } else {
        GAMMA_INIT_FALLBACK
    }
}

pub fn gamma_init(sample: &DistanceSample) -> f64 {
    gamma_init_where(sample, |_| true)
}

/// Least-squares slope of `ln(f(d) / N)` against `d` over observed
/// distances in `[lo, hi]`; `None` with fewer than two points.
pub fn log_frequency_slope(sample: &DistanceSample, lo: u32, hi: u32) -> Option<f64> {
    let total = sample.total() as f64;
    let pts: Vec<(f64, f64)> = sample
        .iter()
        .filter(|&(d, _)| d >= lo && d <= hi)
        .map(|(d, f)| (d as f64, (f as f64 / total).ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// `1 - e^slope`, or the lower bound when the slope does not decay.
pub fn q_from_slope(slope: f64) -> f64 {
    if slope >= 0.0 {
        EPSILON
    } else {
        clamp_q(-slope.exp_m1())
    }
}

/// Starting `(q1, q2)` for a two-regime geometric fit split at `d_star`.
pub fn two_regime_init(sample: &DistanceSample, d_star: u32) -> (f64, f64) {
    let fallback = q_init(sample);
    let q1 = log_frequency_slope(sample, 1, d_star).map_or(fallback, q_from_slope);
    let q2 = log_frequency_slope(sample, d_star, u32::MAX).map_or(fallback, q_from_slope);
    (q1, q2)
}

/// Starting `(gamma, q)` for a zeta-geometric fit split at `d_star`: the
/// exponent from the first regime, `q` from the mean of the second.
pub fn zeta_geometric_init(sample: &DistanceSample, d_star: u32) -> (f64, f64) {
    let gamma = gamma_init_where(sample, |d| d <= d_star);
    let q = q_init_where(sample, |d| d > d_star).unwrap_or_else(|| q_init(sample));
    (gamma, q)
}
