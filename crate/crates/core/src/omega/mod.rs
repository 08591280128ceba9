//! The Ω optimality score: observed dependency length sum normalized by
//! its random baseline and its minimum.

mod mla;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

pub use mla::{min_arrangement, MlaSolver, Tree};

use crate::treebank::DepTree;

/// Half-width of the band around zero within which ⟨Ω⟩ counts as no
/// optimization.
pub const NEAR_ZERO_BAND: f64 = 0.1;

/// Expected sum of distances of a tree on `n` vertices under a uniformly
/// random arrangement, `(n^2 - 1) / 3`. `None` for `n < 2`.
pub fn expected_random(n: usize) -> Option<f64> {
    (n >= 2).then(|| ((n * n - 1) as f64) / 3.0)
}

/// Undirected view of a dependency tree.
pub fn to_tree(t: &DepTree) -> Tree {
    let edges: Vec<(usize, usize)> = t.edges().collect();
    Tree::from_edges(t.len(), &edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OmegaResult {
    pub n: usize,
    pub d: u64,
    pub d_rla: f64,
    pub d_min: u64,
    /// `None` when `D_rla = D_min` or `n < 2`.
    pub omega: Option<f64>,
}

/// `(D_rla - D) / (D_rla - D_min)` for an `n`-vertex tree, evaluated as
/// `(n^2 - 1 - 3D) / (n^2 - 1 - 3D_min)` in integers so that rational
/// values such as -1/2 come out exact.
pub fn omega_value(n: usize, d: u64, d_min: u64) -> Option<f64> {
    if n < 2 {
        return None;
    }
    let three_rla = (n as i128) * (n as i128) - 1;
    let denom = three_rla - 3 * i128::from(d_min);
    (denom != 0).then(|| (three_rla - 3 * i128::from(d)) as f64 / denom as f64)
}

pub fn omega_with(solver: &mut MlaSolver, t: &DepTree) -> OmegaResult {
    let n = t.len();
    let d = t.sum_distances();
    let Some(d_rla) = expected_random(n) else {
        return OmegaResult {
            n,
            d,
            d_rla: 0.0,
            d_min: 0,
            omega: None,
        };
    };
    let d_min = solver.min_arrangement(&to_tree(t));
    debug_assert!(d_min <= d, "minimum arrangement exceeds the observed sum");
    OmegaResult {
        n,
        d,
        d_rla,
        d_min,
        omega: omega_value(n, d, d_min),
    }
}

pub fn omega(t: &DepTree) -> OmegaResult {
    omega_with(&mut MlaSolver::new(), t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OmegaBand {
    Negative,
    NearZero,
    Positive,
}

pub fn band(mean_omega: f64) -> OmegaBand {
    if mean_omega.abs() <= NEAR_ZERO_BAND {
        OmegaBand::NearZero
    } else if mean_omega < 0.0 {
        OmegaBand::Negative
    } else {
        OmegaBand::Positive
    }
}

/// Running mean of Ω for one group of sentences.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct OmegaGroup {
    pub sum: f64,
    pub count: u64,
    /// Sentences with undefined Ω.
    pub skipped: u64,
}

impl OmegaGroup {
    pub fn add(&mut self, omega: Option<f64>) {
        match omega {
            Some(w) => {
                self.sum += w;
                self.count += 1;
            }
            None => self.skipped += 1,
        }
    }

    pub fn merge(&mut self, other: &OmegaGroup) {
        self.sum += other.sum;
        self.count += other.count;
        self.skipped += other.skipped;
    }

    /// `None` for an empty group.
    pub fn mean(&self) -> Option<f64> {
        (self.count > 0).then(|| self.sum / self.count as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct OmegaKey {
    pub language: String,
    pub collection: String,
    pub n: u32,
}

/// ⟨Ω⟩ per (language, collection, sentence length).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OmegaProfile {
    pub groups: BTreeMap<OmegaKey, OmegaGroup>,
}

impl OmegaProfile {
    pub fn merge(&mut self, other: OmegaProfile) {
        for (k, g) in other.groups {
            self.groups.entry(k).or_default().merge(&g);
        }
    }

    pub fn mean(&self, language: &str, collection: &str, n: u32) -> Option<f64> {
        self.groups
            .get(&OmegaKey {
                language: language.to_string(),
                collection: collection.to_string(),
                n,
            })
            .and_then(OmegaGroup::mean)
    }
}

/// Ω for every tree, averaged by sentence length.
pub fn average_omega(trees: &[DepTree], language: &str, collection: &str) -> OmegaProfile {
    let per_tree: Vec<(u32, Option<f64>)> = trees
        .par_iter()
        .map_init(MlaSolver::new, |s, t| (t.len() as u32, omega_with(s, t).omega))
        .collect();
    let mut profile = OmegaProfile::default();
    for (n, w) in per_tree {
        profile
            .groups
            .entry(OmegaKey {
                language: language.to_string(),
                collection: collection.to_string(),
                n,
            })
            .or_default()
            .add(w);
    }
    profile
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn expected_random_values() {
        assert_eq!(expected_random(1), None);
        assert_abs_diff_eq!(expected_random(2).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(expected_random(3).unwrap(), 8.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(expected_random(7).unwrap(), 16.0, epsilon = 1e-15);
    }

    #[test]
    fn three_word_sentences() {
        let center = DepTree::new(vec![2, 0, 2]).unwrap();
        let r = omega(&center);
        assert_eq!((r.d, r.d_min), (2, 2));
        assert_abs_diff_eq!(r.omega.unwrap(), 1.0, epsilon = 1e-15);
        let edge_root = DepTree::new(vec![0, 1, 1]).unwrap();
        assert_abs_diff_eq!(omega(&edge_root).omega.unwrap(), -0.5, epsilon = 1e-15);
    }

    #[test]
    fn undefined_cases() {
        assert_eq!(omega(&DepTree::new(vec![0, 1]).unwrap()).omega, None);
        assert_eq!(omega(&DepTree::new(vec![0]).unwrap()).omega, None);
    }

    #[test]
    fn figure_one_sentence() {
        let t = DepTree::new(vec![2, 0, 2, 5, 2, 8, 8, 5]).unwrap();
        let r = omega(&t);
        assert_eq!(r.d, 12);
        assert!(r.d_min <= 12);
        assert!(r.omega.unwrap() <= 1.0);
    }

    #[test]
    fn averages() {
        let mut g = OmegaGroup::default();
        g.add(Some(1.0));
        g.add(Some(0.0));
        g.add(None);
        assert_eq!(g.mean(), Some(0.5));
        assert_eq!(g.skipped, 1);
        assert_eq!(OmegaGroup::default().mean(), None);

        let chains: Vec<DepTree> = (2..8).map(|n| DepTree::new((0..n).collect()).unwrap()).collect();
        let p = average_omega(&chains, "xx", "c");
        for n in 3..8 {
            assert_abs_diff_eq!(p.mean("xx", "c", n).unwrap(), 1.0, epsilon = 1e-12);
        }
        assert_eq!(p.mean("xx", "c", 2), None);
    }

    #[test]
    fn bands() {
        assert_eq!(band(0.1), OmegaBand::NearZero);
        assert_eq!(band(-0.1), OmegaBand::NearZero);
        assert_eq!(band(-0.3), OmegaBand::Negative);
        assert_eq!(band(0.6), OmegaBand::Positive);
    }
}
