use crate::rng;

use super::Network;

/// Distribution used to fill in absent fading coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampler {
    /// Unit-variance circularly-symmetric complex Gaussian (Rayleigh magnitude).
    #[default]
    ComplexGaussian,
    /// Uniform on the disc with unit second moment.
    UniformDisc,
}

/// Replace every absent coefficient with an independent unit complex Gaussian.
pub fn sample_coefficients(net: &Network, seed: u64) -> Network {
    sample_coefficients_with(net, seed, Sampler::ComplexGaussian)
}

/// Replace every absent coefficient with a draw from `sampler`. Present
/// coefficients are kept. The k-th edge always uses the k-th draw, so the
/// result depends only on the seed and the edge order.
pub fn sample_coefficients_with(net: &Network, seed: u64, sampler: Sampler) -> Network {
    let mut rng = rng::stream(seed, 0);
    let coeffs = net
        .edges()
        .iter()
        .map(|e| {
            let draw = loop {
                let z = match sampler {
                    Sampler::ComplexGaussian => rng::complex_gaussian(&mut rng),
                    Sampler::UniformDisc => rng::uniform_disc(&mut rng),
                };
                if z.norm_sqr() > 0.0 {
                    break z;
                }
            };
            Some(e.coeff.unwrap_or(draw))
        })
        .collect();
    net.with_coefficients(coeffs)
        .expect("sampled coefficients are nonzero")
}
