use rand::distributions::Open01;
use rand::Rng;

/// Displaced geometric deviate by inversion: `1 + floor(ln x / ln(1 - q))`
/// for `x` uniform on `(0, 1)`.
pub fn geometric_deviate<R: Rng + ?Sized>(rng: &mut R, q: f64) -> u64 {
    let x: f64 = rng.sample(Open01);
    invert_geometric(x, q)
}

pub fn invert_geometric(x: f64, q: f64) -> u64 {
    let l = (x.ln() / (-q).ln_1p()).floor();
    if l >= (u64::MAX - 1) as f64 {
        u64::MAX
    } else {
        1 + l as u64
    }
}
