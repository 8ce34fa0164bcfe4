//! Closed-form bound-state energies.
//!
//! Energies are reported in the scaled form `E = (W - c²)/Z²`, where `W` is
//! the total energy in atomic units. `E` depends on κ only through `|κ|`.

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::quantum_numbers::{PhysicalParams, QuantumNumbers};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyResult {
    /// Scaled energy `(W - c²)/Z²`.
    pub e: f64,
    /// Total energy in atomic units.
    pub w: f64,
    /// Origin exponent `√(κ² - λ)`.
    pub gamma: f64,
    /// Decay rate `√(-E(2 + λE))`.
    pub alpha: f64,
}

/// Positive root `√(κ² - λ)`; the negative root is not square integrable.
pub fn gamma_param(kappa: HalfInt, lambda: f64) -> Result<f64> {
    let k = kappa.value();
    let kappa_sq = k * k;
    if lambda >= kappa_sq {
        return Err(Error::SupercriticalCharge { lambda, kappa_sq });
    }
    Ok((kappa_sq - lambda).sqrt())
}

/// `γ + κ` without the cancellation that hits κ < 0 for small λ.
pub fn gamma_plus_kappa(kappa: HalfInt, gamma: f64, lambda: f64) -> f64 {
    let k = kappa.value();
    if k > 0.0 {
        gamma + k
    } else {
        // (γ + κ)(γ - κ) = γ² - κ² = -λ
        -lambda / (gamma - k)
    }
}

/// Quantized energy of `qn`.
pub fn energy(qn: &QuantumNumbers, params: &PhysicalParams) -> Result<EnergyResult> {
    let lambda = params.lambda();
    let gamma = gamma_param(qn.kappa.abs(), lambda)?;
    let e = scaled_energy(qn.n_prime, gamma, lambda);
    let two_plus = 2.0 + lambda * e;
    if !(e < 0.0 && two_plus > 0.0) {
        return Err(Error::Internal(format!("energy {e} outside the bound-state window")));
    }
    let alpha = (-e * two_plus).sqrt();
    let z = params.z();
    let c = params.c();
    Ok(EnergyResult { e, w: z * z * e + c * c, gamma, alpha })
}

/// `(1/λ)[(1 + x)^{-1/2} - 1]` with `x = λ/(n' + γ)²`, rewritten as
/// `-1 / ((n'+γ)² √(1+x) (1 + √(1+x)))` so that no digits are lost as λ → 0.
fn scaled_energy(n_prime: u32, gamma: f64, lambda: f64) -> f64 {
    let s = f64::from(n_prime) + gamma;
    let s2 = s * s;
    let root = (1.0 + lambda / s2).sqrt();
    -1.0 / (s2 * root * (1.0 + root))
}

/// Nonrelativistic limit `-2/(2n - 1)²`.
pub fn energy_nonrel(n: u32) -> f64 {
    let d = 2.0 * f64::from(n) - 1.0;
    -2.0 / (d * d)
}
