use crate::band::BandMatrix;
use crate::error::{Error, Result};
use crate::quad::dot_w;
use crate::rng::SplitMix64;

/// Smallest-magnitude eigenvalue of a banded operator by inverse power
/// iteration (dominant mode of A⁻¹), with the Rayleigh quotient taken in the
/// quadrature-weighted inner product. Returns (eigenvalue, eigenvector).
pub fn smallest_magnitude_eigenvalue(
    op: &BandMatrix,
    weights: &[f64],
    seed: u64,
) -> Result<(f64, Vec<f64>)> {
    let n = op.n;
    assert_eq!(weights.len(), n);
    let lu = op.clone().factor()?;
    let mut rng = SplitMix64::new(seed);
    let mut v = rng.vec(n);
    let mut lambda_old = f64::INFINITY;
    for it in 0..500 {
        let mut w = lu.solve(&v);
        let norm = dot_w(&w, &w, weights).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::EigenFailure(format!(
                "inverse iteration broke down at step {it}"
            )));
        }
        for x in &mut w {
            *x /= norm;
        }
        let av = op.apply(&w);
        let lambda = dot_w(&w, &av, weights) / dot_w(&w, &w, weights);
        let done = (lambda - lambda_old).abs() <= 1e-12 * lambda.abs().max(1e-300);
        v = w;
        lambda_old = lambda;
        if done && it >= 3 {
            return Ok((lambda, v));
        }
    }
    Ok((lambda_old, v))
}
