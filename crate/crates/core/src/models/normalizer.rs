use super::harmonic;

/// Normalization of a two-regime model. `c2 = tau * c1` makes the two
/// branches agree at the break point; logs are the primary values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalizer {
    pub log_c1: f64,
    pub log_tau: f64,
    pub c1: f64,
    pub tau: f64,
    pub c2: f64,
}

impl Normalizer {
    fn from_logs(log_c1: f64, log_tau: f64) -> Self {
        let c1 = log_c1.exp();
        let tau = log_tau.exp();
        Normalizer {
            log_c1,
            log_tau,
            c1,
            tau,
            c2: tau * c1,
        }
    }

    pub fn log_c1(&self) -> f64 {
        self.log_c1
    }

    pub fn log_c2(&self) -> f64 {
        self.log_tau + self.log_c1
    }
}

/// `c1` and `tau` for the two-regime geometric model, truncated at `d_max`
/// when given.
pub fn two_regime_geometric_normalizer(q1: f64, q2: f64, d_star: u32, d_max: Option<u32>) -> Normalizer {
    let l1 = (-q1).ln_1p();
    let l2 = (-q2).ln_1p();
    let k = (d_star - 1) as f64;
    let log_tau = k * (l1 - l2);
    let a = (k * l1).exp();
    let one_minus_a = -(k * l1).exp_m1();
    let one_minus_b = match d_max {
        Some(m) => -((m - d_star + 1) as f64 * l2).exp_m1(),
        None => 1.0,
    };
    let denom = q2 * one_minus_a + a * q1 * one_minus_b;
    Normalizer::from_logs(q1.ln() + q2.ln() - denom.ln(), log_tau)
}

/// `c1` and `tau` for the two-regime zeta-geometric model, truncated at
/// `d_max` when given.
pub fn zeta_geometric_normalizer(gamma: f64, q: f64, d_star: u32, d_max: Option<u32>) -> Normalizer {
    let l = (-q).ln_1p();
    let ds = d_star as f64;
    let head = ds.powf(-gamma);
    let log_tau = -gamma * ds.ln() - (ds - 1.0) * l;
    let tail = match d_max {
        // (1-q) - (1-q)^(d_max-d*+1)
        Some(m) => (1.0 - q) * -(((m - d_star) as f64) * l).exp_m1(),
        None => 1.0 - q,
    };
    let denom = q * harmonic(d_star, gamma) + head * tail;
    Normalizer::from_logs(q.ln() - denom.ln(), log_tau)
}
