use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::DepTree;
use crate::error::SampleError;

/// Which sentences a sample pools.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LengthClass {
    /// Sentences of exactly `n` tokens.
    Fixed(u32),
    Mixed,
}

impl fmt::Display for LengthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthClass::Fixed(n) => write!(f, "{n}"),
            LengthClass::Mixed => f.write_str("mixed"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub language: String,
    pub collection: String,
    pub class: LengthClass,
}

impl Default for Provenance {
    fn default() -> Self {
        Provenance {
            language: String::new(),
            collection: String::new(),
            class: LengthClass::Mixed,
        }
    }
}

/// Frequency table of dependency distances. Keys are >= 1, stored counts
/// are >= 1 and the total is positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceSample {
    freq: BTreeMap<u32, u64>,
    total: u64,
    pub provenance: Provenance,
}

impl DistanceSample {
    /// Builds a sample from `(distance, count)` pairs; zero counts are
    /// dropped and repeated distances accumulate.
    pub fn from_counts<I>(counts: I) -> Result<Self, SampleError>
    where
        I: IntoIterator<Item = (u32, u64)>,
    {
        let mut freq = BTreeMap::new();
        for (d, c) in counts {
            if d == 0 {
                return Err(SampleError::ZeroDistance(d));
            }
            if c > 0 {
                *freq.entry(d).or_insert(0) += c;
            }
        }
        let total: u64 = freq.values().sum();
        if total == 0 {
            return Err(SampleError::Empty);
        }
        Ok(DistanceSample {
            freq,
            total,
            provenance: Provenance::default(),
        })
    }

    pub fn from_distances<I: IntoIterator<Item = u32>>(distances: I) -> Result<Self, SampleError> {
        Self::from_counts(distances.into_iter().map(|d| (d, 1)))
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// `N`, the number of distances.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn frequency(&self, d: u32) -> u64 {
        self.freq.get(&d).copied().unwrap_or(0)
    }

    /// `(d, f(d))` in increasing `d`.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.freq.iter().map(|(&d, &c)| (d, c))
    }

    pub fn distinct(&self) -> usize {
        self.freq.len()
    }

    pub fn min(&self) -> u32 {
        *self.freq.keys().next().expect("non-empty sample")
    }

    pub fn max(&self) -> u32 {
        *self.freq.keys().next_back().expect("non-empty sample")
    }

    /// `i`-th smallest distinct distance (1-based), as in `min_2(d)`.
    pub fn nth_min(&self, i: usize) -> Option<u32> {
        self.freq.keys().nth(i.checked_sub(1)?).copied()
    }

    /// `i`-th largest distinct distance (1-based), as in `max_2(d)`.
    pub fn nth_max(&self, i: usize) -> Option<u32> {
        self.freq.keys().rev().nth(i.checked_sub(1)?).copied()
    }

    pub fn mean(&self) -> f64 {
        let m: f64 = self.iter().map(|(d, c)| d as f64 * c as f64).sum();
        m / self.total as f64
    }

    /// Merges another sample's counts into this one.
    pub fn merge(&mut self, other: &DistanceSample) {
        for (d, c) in other.iter() {
            *self.freq.entry(d).or_insert(0) += c;
        }
        self.total += other.total;
    }
}

/// Proportion of sentences of each length, used by the extended null model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LengthDistribution {
    counts: BTreeMap<u32, u64>,
    probs: BTreeMap<u32, f64>,
}

impl LengthDistribution {
    /// Lengths below 2 carry no dependencies and are not part of the
    /// distribution.
    pub fn from_counts<I: IntoIterator<Item = (u32, u64)>>(counts: I) -> Option<Self> {
        let mut c = BTreeMap::new();
        for (n, k) in counts {
            if n >= 2 && k > 0 {
                *c.entry(n).or_insert(0u64) += k;
            }
        }
        let total: u64 = c.values().sum();
        if total == 0 {
            return None;
        }
        let probs = c.iter().map(|(&n, &k)| (n, k as f64 / total as f64)).collect();
        Some(LengthDistribution { counts: c, probs })
    }

    pub fn probs(&self) -> &BTreeMap<u32, f64> {
        &self.probs
    }

    pub fn counts(&self) -> &BTreeMap<u32, u64> {
        &self.counts
    }

    pub fn min_len(&self) -> u32 {
        *self.probs.keys().next().expect("non-empty")
    }

    pub fn max_len(&self) -> u32 {
        *self.probs.keys().next_back().expect("non-empty")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    Fixed,
    Mixed,
    Both,
}

/// Samples grouped by length class, with the sentence bookkeeping needed
/// by the extended null model and threshold scans.
#[derive(Debug, Clone)]
pub struct SampleSet {
    pub samples: BTreeMap<LengthClass, DistanceSample>,
    /// Sentence counts by length, including lengths without distances.
    pub sentence_counts: BTreeMap<u32, u64>,
    pub lengths: Option<LengthDistribution>,
    /// Per-length samples regardless of `mode`; the extended null model
    /// needs them even for pooled fits.
    pub by_length: BTreeMap<u32, DistanceSample>,
}

pub fn build_samples(trees: &[DepTree], mode: SampleMode, base: &Provenance) -> SampleSet {
    let mut per_len: BTreeMap<u32, BTreeMap<u32, u64>> = BTreeMap::new();
    let mut sentence_counts = BTreeMap::new();
    for t in trees {
        let n = t.len() as u32;
        *sentence_counts.entry(n).or_insert(0u64) += 1;
        let entry = per_len.entry(n).or_default();
        for d in t.distances() {
            *entry.entry(d).or_insert(0) += 1;
        }
    }
    let by_length: BTreeMap<u32, DistanceSample> = per_len
        .into_iter()
        .filter_map(|(n, freq)| {
            let s = DistanceSample::from_counts(freq).ok()?;
            Some((
                n,
                s.with_provenance(Provenance {
                    class: LengthClass::Fixed(n),
                    ..base.clone()
                }),
            ))
        })
        .collect();

    let mut samples = BTreeMap::new();
    if matches!(mode, SampleMode::Fixed | SampleMode::Both) {
        for (&n, s) in &by_length {
            samples.insert(LengthClass::Fixed(n), s.clone());
        }
    }
    if matches!(mode, SampleMode::Mixed | SampleMode::Both) {
        let mut pooled: Option<DistanceSample> = None;
        for s in by_length.values() {
            match pooled.as_mut() {
                Some(p) => p.merge(s),
                None => pooled = Some(s.clone()),
            }
        }
        if let Some(p) = pooled {
            samples.insert(
                LengthClass::Mixed,
                p.with_provenance(Provenance {
                    class: LengthClass::Mixed,
                    ..base.clone()
                }),
            );
        }
    }
    let lengths = LengthDistribution::from_counts(sentence_counts.iter().map(|(&n, &k)| (n, k)));
    SampleSet {
        samples,
        sentence_counts,
        lengths,
        by_length,
    }
}

/// Writes `d,count` rows preceded by `#` comment lines holding `header`.
pub fn write_sample_csv<W: Write>(
    mut out: W,
    sample: &DistanceSample,
    header: &[(String, String)],
) -> std::io::Result<()> {
    for (k, v) in header {
        writeln!(out, "# {k}={v}")?;
    }
    writeln!(out, "d,count")?;
    for (d, c) in sample.iter() {
        writeln!(out, "{d},{c}")?;
    }
    Ok(())
}

/// Reads the format produced by [`write_sample_csv`], returning the sample
/// and its header metadata.
pub fn read_sample_csv<R: BufRead>(reader: R) -> Result<(DistanceSample, Vec<(String, String)>), SampleError> {
    let mut header = Vec::new();
    let mut counts = Vec::new();
    let mut seen_columns = false;
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| SampleError::Format {
            line: i + 1,
            msg: e.to_string(),
        })?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(meta) = line.strip_prefix('#') {
            if let Some((k, v)) = meta.trim().split_once('=') {
                header.push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        if !seen_columns && line.eq_ignore_ascii_case("d,count") {
            seen_columns = true;
            continue;
        }
        let bad = |msg: &str| SampleError::Format {
            line: i + 1,
            msg: msg.to_string(),
        };
        let (d, c) = line.split_once(',').ok_or_else(|| bad("expected `d,count`"))?;
        let d: u32 = d.trim().parse().map_err(|_| bad("bad distance"))?;
        let c: u64 = c.trim().parse().map_err(|_| bad("bad count"))?;
        counts.push((d, c));
    }
    Ok((DistanceSample::from_counts(counts)?, header))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> DepTree {
        DepTree::new((0..n).collect()).unwrap()
    }

    #[test]
    fn basic_accessors() {
        let s = DistanceSample::from_counts([(3, 1), (1, 2), (7, 0)]).unwrap();
        assert_eq!(s.total(), 3);
        assert_eq!(s.distinct(), 2);
        assert_eq!((s.min(), s.max()), (1, 3));
        assert_eq!(s.nth_min(2), Some(3));
        assert_eq!(s.nth_max(2), Some(1));
        assert_eq!(s.nth_max(3), None);
        assert!((s.mean() - 5.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(DistanceSample::from_counts([(0, 1)]), Err(SampleError::ZeroDistance(0)));
        assert_eq!(DistanceSample::from_counts([(2, 0)]), Err(SampleError::Empty));
    }

    #[test]
    fn fixed_mode_two_chains() {
        let set = build_samples(&[chain(3), chain(3)], SampleMode::Fixed, &Provenance::default());
        assert_eq!(set.samples.len(), 1);
        let s = &set.samples[&LengthClass::Fixed(3)];
        assert_eq!(s.total(), 4);
        assert_eq!(s.frequency(1), 4);
    }

    #[test]
    fn length_distribution_proportions() {
        let set = build_samples(
            &[chain(3), chain(3), chain(4)],
            SampleMode::Both,
            &Provenance::default(),
        );
        let ld = set.lengths.unwrap();
        assert!((ld.probs()[&3] - 2.0 / 3.0).abs() < 1e-15);
        assert!((ld.probs()[&4] - 1.0 / 3.0).abs() < 1e-15);
        let fixed_total: u64 = set
            .samples
            .iter()
            .filter(|(k, _)| matches!(k, LengthClass::Fixed(_)))
            .map(|(_, s)| s.total())
            .sum();
        assert_eq!(fixed_total, set.samples[&LengthClass::Mixed].total());
    }

    #[test]
    fn single_token_sentences_have_no_class() {
        let set = build_samples(&[chain(1), chain(2)], SampleMode::Both, &Provenance::default());
        assert!(!set.samples.contains_key(&LengthClass::Fixed(1)));
        assert_eq!(set.sentence_counts[&1], 1);
        assert_eq!(set.lengths.unwrap().probs().len(), 1);
    }

    #[test]
    fn csv_round_trip() {
        let s = DistanceSample::from_counts([(1, 5), (4, 2)]).unwrap();
        let mut buf = Vec::new();
        write_sample_csv(&mut buf, &s, &[("model".into(), "3".into())]).unwrap();
        let (back, header) = read_sample_csv(buf.as_slice()).unwrap();
        assert_eq!(back.iter().collect::<Vec<_>>(), s.iter().collect::<Vec<_>>());
        assert_eq!(header, vec![("model".to_string(), "3".to_string())]);
    }
}
