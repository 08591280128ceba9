//! Treebank ingestion: CoNLL-U parsing, dependency trees and the
//! distance samples every fit consumes.

mod conllu;
mod manifest;
mod sample;

pub use conllu::{parse_conllu, ParsedCorpus, RejectedSentence};
pub use manifest::{read_manifest, ManifestEntry, ManifestError};
pub use sample::{
    build_samples, read_sample_csv, write_sample_csv, DistanceSample, LengthClass, LengthDistribution, Provenance,
    SampleMode, SampleSet,
};

use crate::error::TreeError;

/// One sentence: `heads[i]` is the 1-based head position of the token at
/// position `i + 1`, or 0 for the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepTree {
    heads: Vec<usize>,
}

impl DepTree {
    /// Validates single root, no self loops, heads within range and
    /// acyclicity.
    pub fn new(heads: Vec<usize>) -> Result<Self, TreeError> {
        let n = heads.len();
        if n == 0 {
            return Err(TreeError::Empty);
        }
        let mut roots = 0;
        for (i, &h) in heads.iter().enumerate() {
            if h == 0 {
                roots += 1;
            } else if h > n {
                return Err(TreeError::BadHead {
                    token: i + 1,
                    head: h.to_string(),
                });
            } else if h == i + 1 {
                return Err(TreeError::SelfLoop(i + 1));
            }
        }
        if roots != 1 {
            return Err(TreeError::RootCount(roots));
        }
        // 0 = unvisited, 1 = on current path, 2 = reaches the root
        let mut state = vec![0u8; n + 1];
        state[0] = 2;
        for start in 1..=n {
            let mut path = Vec::new();
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                path.push(v);
                v = heads[v - 1];
            }
            if state[v] == 1 {
                return Err(TreeError::Cycle(v));
            }
            for p in path {
                state[p] = 2;
            }
        }
        Ok(DepTree { heads })
    }

    /// Number of tokens.
    pub fn len(&self) -> usize {
        self.heads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heads.is_empty()
    }

    pub fn heads(&self) -> &[usize] {
        &self.heads
    }

    /// Edges as 0-based `(dependent, head)` pairs.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.heads
            .iter()
            .enumerate()
            .filter(|(_, &h)| h != 0)
            .map(|(i, &h)| (i, h - 1))
    }

    /// Dependency distances `|pos(head) - pos(dependent)|`, one per
    /// non-root token, in token order.
    pub fn distances(&self) -> Vec<u32> {
        self.edges().map(|(i, h)| i.abs_diff(h) as u32).collect()
    }

    /// Sum of dependency distances.
    pub fn sum_distances(&self) -> u64 {
        self.distances().iter().map(|&d| u64::from(d)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn figure_one() -> DepTree {
        // John gave Bill the painting that Mary hated
        DepTree::new(vec![2, 0, 2, 5, 2, 8, 8, 5]).unwrap()
    }

    #[test]
    fn figure_one_distances() {
        let t = figure_one();
        let mut d = t.distances();
        d.sort_unstable();
        assert_eq!(d, vec![1, 1, 1, 1, 2, 3, 3]);
        assert_eq!(t.sum_distances(), 12);
    }

    #[test]
    fn small_shapes() {
        assert_eq!(DepTree::new(vec![0, 1, 2]).unwrap().distances(), vec![1, 1]);
        assert_eq!(DepTree::new(vec![0, 1, 1, 1]).unwrap().distances(), vec![1, 2, 3]);
        assert!(DepTree::new(vec![0]).unwrap().distances().is_empty());
    }

    #[test]
    fn structural_errors() {
        assert_eq!(DepTree::new(vec![]), Err(TreeError::Empty));
        assert_eq!(DepTree::new(vec![0, 0]), Err(TreeError::RootCount(2)));
        assert_eq!(DepTree::new(vec![2, 1]), Err(TreeError::RootCount(0)));
        assert_eq!(DepTree::new(vec![0, 2]), Err(TreeError::SelfLoop(2)));
        assert!(matches!(
            DepTree::new(vec![0, 5]),
            Err(TreeError::BadHead { token: 2, .. })
        ));
        assert!(matches!(DepTree::new(vec![0, 3, 2]), Err(TreeError::Cycle(_))));
    }
}
