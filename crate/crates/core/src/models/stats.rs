use crate::treebank::DistanceSample;

/// Sample summaries at a break point: `N*`, `M*`, `M'*` restricted to
/// `d <= d*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BreakStats {
    pub d_star: u32,
    pub n: u64,
    pub m: u64,
    pub m_log: f64,
}

/// Everything the compact log-likelihoods need.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SufficientStats {
    /// Number of distances.
    pub n: u64,
    /// Sum of distances.
    pub m: u64,
    /// Sum of log distances.
    pub m_log: f64,
    pub max_d: u32,
    pub brk: Option<BreakStats>,
    /// `(d_max, sum f(d) ln(d_max + 1 - d))`, only when every `d <= d_max`.
    pub w: Option<(u32, f64)>,
}

/// Prefix sums over the distinct distances of a sample, so statistics at
/// any break point cost a binary search.
#[derive(Debug, Clone)]
pub struct StatsTable {
    ds: Vec<u32>,
    freqs: Vec<u64>,
    cum_n: Vec<u64>,
    cum_m: Vec<u64>,
    cum_log: Vec<f64>,
}

impl StatsTable {
    pub fn new(sample: &DistanceSample) -> Self {
        let k = sample.distinct();
        let mut t = StatsTable {
            ds: Vec::with_capacity(k),
            freqs: Vec::with_capacity(k),
            cum_n: Vec::with_capacity(k + 1),
            cum_m: Vec::with_capacity(k + 1),
            cum_log: Vec::with_capacity(k + 1),
        };
        t.cum_n.push(0);
        t.cum_m.push(0);
        t.cum_log.push(0.0);
        for (d, f) in sample.iter() {
            t.ds.push(d);
            t.freqs.push(f);
            t.cum_n.push(t.cum_n.last().unwrap() + f);
            t.cum_m.push(t.cum_m.last().unwrap() + f * u64::from(d));
            t.cum_log.push(t.cum_log.last().unwrap() + f as f64 * (d as f64).ln());
        }
        t
    }

    pub fn distinct(&self) -> &[u32] {
        &self.ds
    }

    pub fn frequencies(&self) -> &[u64] {
        &self.freqs
    }

    pub fn max_d(&self) -> u32 {
        *self.ds.last().expect("sample is non-empty")
    }

    pub fn at_break(&self, d_star: u32) -> BreakStats {
        let i = self.ds.partition_point(|&d| d <= d_star);
        BreakStats {
            d_star,
            n: self.cum_n[i],
            m: self.cum_m[i],
            m_log: self.cum_log[i],
        }
    }

    /// `sum f(d) ln(d_max + 1 - d)`, `None` if some `d > d_max`.
    pub fn w(&self, d_max: u32) -> Option<f64> {
        if self.max_d() > d_max {
            return None;
        }
        Some(
            self.ds
                .iter()
                .zip(&self.freqs)
                .map(|(&d, &f)| f as f64 * ((d_max + 1 - d) as f64).ln())
                .sum(),
        )
    }

    pub fn stats(&self, d_star: Option<u32>, d_max: Option<u32>) -> SufficientStats {
        let k = self.ds.len();
        SufficientStats {
            n: self.cum_n[k],
            m: self.cum_m[k],
            m_log: self.cum_log[k],
            max_d: self.max_d(),
            brk: d_star.map(|s| self.at_break(s)),
            w: d_max.and_then(|m| self.w(m).map(|w| (m, w))),
        }
    }
}

pub fn sufficient_stats(sample: &DistanceSample, d_star: Option<u32>, d_max: Option<u32>) -> SufficientStats {
    StatsTable::new(sample).stats(d_star, d_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn figure_one_stats() {
        let s = DistanceSample::from_distances([1, 1, 1, 1, 2, 3, 3]).unwrap();
        let st = sufficient_stats(&s, Some(2), Some(3));
        assert_eq!((st.n, st.m, st.max_d), (7, 12, 3));
        assert_relative_eq!(st.m_log, 2f64.ln() + 2.0 * 3f64.ln(), epsilon = 1e-15);
        let b = st.brk.unwrap();
        assert_eq!((b.n, b.m), (5, 6));
        assert_relative_eq!(b.m_log, 2f64.ln(), epsilon = 1e-15);
        let (dm, w) = st.w.unwrap();
        assert_eq!(dm, 3);
        assert_relative_eq!(w, 4.0 * 3f64.ln() + 2f64.ln(), epsilon = 1e-14);
        assert!(sufficient_stats(&s, None, Some(2)).w.is_none());
    }

    #[test]
    fn break_outside_observed_range() {
        let s = DistanceSample::from_distances([2, 5, 5]).unwrap();
        let t = StatsTable::new(&s);
        assert_eq!(t.at_break(1).n, 0);
        assert_eq!(t.at_break(4).n, 1);
        assert_eq!(t.at_break(9).m, 12);
    }
}
