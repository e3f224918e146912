//! Seeded random streams.
//!
//! Every randomized routine derives its generator from a master seed plus a
//! stream number, so results never depend on how work is split across threads.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Seed used by the command line tools when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_0001;

/// Generator for substream `stream` of `seed`.
pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Stream number for a pair of indices, e.g. (SNR point, block).
pub fn pair_stream(hi: u64, lo: u64) -> u64 {
    (hi << 32) ^ (lo & 0xffff_ffff)
}

/// Circularly-symmetric complex Gaussian with unit variance.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Uniform draw from the disc of radius sqrt(2), which has unit second moment.
pub fn uniform_disc<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let r = (2.0 * rng.random::<f64>()).sqrt();
    let phi = rng.random::<f64>() * std::f64::consts::TAU;
    Complex64::from_polar(r, phi)
}
