use num_complex::Complex64;

/// Amplify-and-forward along a path of scalar hops at transmit power `rho`.
///
/// Each relay rescales what it heard to power `rho` using the realized gain.
/// Returns `(gain, 1.0)`: the end-to-end channel seen with unit noise, scaled
/// so that the effective SNR is `rho * |gain|^2`.
pub fn path_channel(coeffs: &[Complex64], rho: f64) -> (Complex64, f64) {
    assert!(!coeffs.is_empty(), "path has no hops");
    let mut gain = coeffs[0] * rho.sqrt();
    let mut noise = 1.0;
    for h in &coeffs[1..] {
        let g = (rho / (gain.norm_sqr() + noise)).sqrt();
        gain *= h * g;
        noise = h.norm_sqr() * g * g * noise + 1.0;
    }
    (gain / (noise * rho).sqrt(), 1.0)
}

/// Effective SNR at the end of an AF path, from per-hop fading powers `|h|^2`.
pub fn effective_snr(powers: &[f64], rho: f64) -> f64 {
    let mut signal = powers[0] * rho;
    let mut noise = 1.0;
    for &x in &powers[1..] {
        let g2 = rho / (signal + noise);
        signal *= x * g2;
        noise = x * g2 * noise + 1.0;
    }
    signal / noise
}
