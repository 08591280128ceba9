use rand::distributions::Open01;
use rand::Rng;

use crate::models::{ModelParams, Pmf};

/// Inversion over a tabulated CDF with binary search.
#[derive(Debug, Clone)]
pub struct TabularSampler {
    cdf: Vec<f64>,
}

impl TabularSampler {
    /// Tabulates `params` over `[1, d_max]`, or `[1, cutoff]` for models
    /// without right truncation.
    pub fn new(params: &ModelParams, cutoff: u32) -> Self {
        let pmf = Pmf::new(params);
        let (top, bounded) = match pmf.support_max() {
            Some(m) => (m, true),
            None => (cutoff, false),
        };
        let mut cdf = Vec::with_capacity(top as usize);
        let mut acc = 0.0;
        for d in 1..=top {
            acc += pmf.pmf(d);
            cdf.push(acc);
        }
        if bounded {
            // absorb rounding so every u in (0, 1) lands in the support
            *cdf.last_mut().expect("non-empty support") = 1.0;
        }
        TabularSampler { cdf }
    }

    pub fn from_cdf(cdf: Vec<f64>) -> Self {
        TabularSampler { cdf }
    }

    /// Largest value the table can return.
    pub fn top(&self) -> u32 {
        self.cdf.len() as u32
    }

    /// Tabulated mass, below 1 for cut-off tables.
    pub fn mass(&self) -> f64 {
        self.cdf.last().copied().unwrap_or(0.0)
    }

    /// Least `c` with `u <= CDF(c)`. `Err(top)` when `u` exceeds the
    /// tabulated mass.
    pub fn invert(&self, u: f64) -> Result<u32, u32> {
        let i = self.cdf.partition_point(|&c| c < u);
        if i < self.cdf.len() {
            Ok(i as u32 + 1)
        } else {
            Err(self.top())
        }
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<u32, u32> {
        self.invert(rng.sample(Open01))
    }
}
