use rand::distributions::Open01;
use rand::Rng;

/// Right-truncated zeta deviate by rejection from the Pareto envelope.
/// Requires `gamma > 1`. Returns the deviate and the number of rejected
/// candidates.
pub fn zeta_deviate<R: Rng + ?Sized>(rng: &mut R, gamma: f64, d_max: u32) -> (u32, u64) {
    debug_assert!(gamma > 1.0);
    let a = gamma - 1.0;
    let b = 2f64.powf(a);
    let mut rejected = 0;
    loop {
        let u: f64 = rng.sample(Open01);
        let v: f64 = rng.sample(Open01);
        let x = u.powf(-1.0 / a).floor();
        if x <= d_max as f64 && accepts(x, v, a, b) {
            return (x as u32, rejected);
        }
        rejected += 1;
    }
}

fn accepts(x: f64, v: f64, a: f64, b: f64) -> bool {
    let t = (1.0 + 1.0 / x).powf(a);
    v * x * (t - 1.0) / (b - 1.0) <= t / b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_is_always_accepted() {
        let a = 0.6;
        let b = 2f64.powf(a);
        for v in [0.01, 0.5, 0.999_999] {
            assert!(accepts(1.0, v, a, b));
        }
    }

    #[test]
    fn respects_truncation() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(3);
        for _ in 0..2000 {
            let (x, _) = zeta_deviate(&mut rng, 1.1, 5);
            assert!((1..=5).contains(&x));
        }
    }
}
