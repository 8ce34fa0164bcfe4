//! Terminating confluent hypergeometric series.

/// Coefficients `cₖ` of `₁F₁(-m, b; s·r) = Σₖ cₖ rᵏ`, a polynomial of
/// degree `m` because the first argument is a non-positive integer.
pub fn terminating_1f1(m: u32, b: f64, s: f64) -> Vec<f64> {
    let mut coeffs = Vec::with_capacity(m as usize + 1);
    let mut term = 1.0;
    coeffs.push(term);
    for k in 0..m {
        let k = f64::from(k);
        term *= (k - f64::from(m)) * s / ((b + k) * (k + 1.0));
        coeffs.push(term);
    }
    coeffs
}
