use std::collections::BTreeMap;

use serde::Serialize;

use crate::models::{Family, ModelId};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdResult {
    /// Minimum number of sentences a length needs to take part.
    pub threshold: u64,
    pub lengths_used: usize,
    pub votes: BTreeMap<Family, usize>,
    /// `None` when every length was filtered out.
    pub winner: Option<Family>,
}

/// Most frequent family among `best` models. Ties go to families without
/// two regimes, then to the earlier family.
pub fn modal_family<I: IntoIterator<Item = ModelId>>(best: I) -> (BTreeMap<Family, usize>, Option<Family>) {
    let mut votes: BTreeMap<Family, usize> = BTreeMap::new();
    for m in best {
        *votes.entry(m.family()).or_insert(0) += 1;
    }
    let winner = votes
        .iter()
        .max_by(|a, b| {
            a.1.cmp(b.1)
                .then(b.0.is_two_regime().cmp(&a.0.is_two_regime()))
                .then(b.0.cmp(a.0))
        })
        .map(|(&f, _)| f);
    (votes, winner)
}

/// For every threshold, the modal family over the lengths with at least
/// that many sentences.
pub fn threshold_scan(
    best_by_length: &BTreeMap<u32, ModelId>,
    sentence_counts: &BTreeMap<u32, u64>,
    thresholds: &[u64],
) -> Vec<ThresholdResult> {
    thresholds
        .iter()
        .map(|&t| {
            let kept: Vec<ModelId> = best_by_length
                .iter()
                .filter(|(n, _)| sentence_counts.get(n).copied().unwrap_or(0) >= t)
                .map(|(_, &m)| m)
                .collect();
            let lengths_used = kept.len();
            let (votes, winner) = modal_family(kept);
            ThresholdResult {
                threshold: t,
                lengths_used,
                votes,
                winner,
            }
        })
        .collect()
}
