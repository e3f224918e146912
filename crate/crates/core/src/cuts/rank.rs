use nalgebra::DMatrix;
use num_complex::Complex64;

/// Default relative singular-value threshold.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Number of singular values above `rel_tol` times the largest one.
pub fn numerical_rank(m: &DMatrix<Complex64>, rel_tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let largest = sv.iter().cloned().fold(0.0_f64, f64::max);
    if largest == 0.0 {
        return 0;
    }
    let cutoff = rel_tol * largest;
    sv.iter().filter(|&&s| s > cutoff).count()
}
