//! Good quantum numbers of the planar Dirac–Coulomb problem.
//!
//! A stationary state is labelled by the principal number `n`, the Dirac
//! number κ (eigenvalue of `K = β(σ'_z l_z + 1/2)`) and μ (eigenvalue of
//! `j_z`). Everything else is derived: the radial number `n' = n - |κ| - 1/2`,
//! the sign η = κ/μ (eigenvalue of `P = βσ'_z`) and the orbital label
//! `l = |κ - 1/2|`.

use std::fmt;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;

/// Speed of light in atomic units used for the reference tables.
pub const SPEED_OF_LIGHT: f64 = 137.035_999_76;

/// Charge, speed of light and the scaled magnetic field `B / Z²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    z: f64,
    c: f64,
    field: f64,
}

impl PhysicalParams {
    pub fn new(z: f64, c: f64) -> Result<Self> {
        if !(z.is_finite() && z > 0.0) {
            return Err(Error::InvalidParams(format!("Z must be positive and finite, got {z}")));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidParams(format!("c must be positive and finite, got {c}")));
        }
        Ok(Self { z, c, field: 0.0 })
    }

    /// Hydrogen (`Z = 1`) with the reference speed of light.
    pub fn hydrogen() -> Self {
        Self { z: 1.0, c: SPEED_OF_LIGHT, field: 0.0 }
    }

    /// Sets the scaled field, already divided by `Z²`.
    pub fn with_field(mut self, field: f64) -> Self {
        self.field = field;
        self
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn field(&self) -> f64 {
        self.field
    }

    /// λ = (Z/c)².
    pub fn lambda(&self) -> f64 {
        let ratio = self.z / self.c;
        ratio * ratio
    }
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self::hydrogen()
    }
}

/// A validated `(n, n', κ, μ, η, l)` label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumNumbers {
    pub n: u32,
    pub n_prime: u32,
    pub kappa: HalfInt,
    pub mu: HalfInt,
    /// +1 or -1.
    pub eta: i32,
    pub l: u32,
}

impl QuantumNumbers {
    pub fn kappa_f64(&self) -> f64 {
        self.kappa.value()
    }

    pub fn mu_f64(&self) -> f64 {
        self.mu.value()
    }

    pub fn eta_f64(&self) -> f64 {
        f64::from(self.eta)
    }

    /// The same level with μ → -μ (and therefore η → -η).
    pub fn flipped_mu(&self) -> QuantumNumbers {
        QuantumNumbers { mu: -self.mu, eta: -self.eta, ..*self }
    }

    pub fn label(&self) -> String {
        spectroscopic_label(self)
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (kappa={}, mu={})", spectroscopic_label(self), self.kappa, self.mu)
    }
}

/// Checks `(n, κ, μ)` against every selection rule and fills in `n'`, η, `l`.
pub fn validate_state(n: u32, kappa: HalfInt, mu: HalfInt) -> Result<QuantumNumbers> {
    if n == 0 {
        return Err(Error::InvalidPrincipal(n));
    }
    let two_n = i64::from(n) * 2;
    let two_abs_kappa = i64::from(kappa.abs().twice());
    // |κ| ≤ n - 1/2  <=>  2|κ| ≤ 2n - 1
    if !kappa.is_half_odd() || two_abs_kappa > two_n - 1 {
        return Err(Error::InvalidKappa { n, kappa });
    }
    let n_prime = ((two_n - two_abs_kappa - 1) / 2) as u32;
    if n_prime == 0 && kappa.twice() < 0 {
        return Err(Error::ForbiddenNegativeKappa { kappa });
    }
    if mu.abs() != kappa.abs() {
        return Err(Error::MuMismatch { kappa, mu });
    }
    let eta = if mu == kappa { 1 } else { -1 };
    let l = ((kappa.twice() - 1).abs() / 2) as u32;
    Ok(QuantumNumbers { n, n_prime, kappa, mu, eta, l })
}

/// All states with `n <= n_max`, ordered by `n`, then `|κ|`, then κ > 0
/// before κ < 0, then ascending μ.
///
/// Every shell contributes `2n - 1` values of κ and `2(2n - 1)` states.
pub fn enumerate_states(n_max: u32) -> Vec<QuantumNumbers> {
    let mut out = Vec::with_capacity(2 * (n_max as usize).pow(2));
    for n in 1..=n_max {
        for level in enumerate_levels_in_shell(n) {
            let k = level.kappa.abs();
            for mu in [-k, k] {
                let qn = validate_state(n, level.kappa, mu)
                    .expect("enumerated state satisfies selection rules");
                out.push(qn);
            }
        }
    }
    out
}

/// One representative per `(n, κ)` level (μ = |κ|), in the same order as
/// [`enumerate_states`].
pub fn enumerate_levels(n_max: u32) -> Vec<QuantumNumbers> {
    (1..=n_max).flat_map(enumerate_levels_in_shell).collect()
}

fn enumerate_levels_in_shell(n: u32) -> Vec<QuantumNumbers> {
    let mut levels = Vec::new();
    for twice_abs in (1..2 * n as i32).step_by(2) {
        for sign in [1, -1] {
            let kappa = HalfInt::from_twice(sign * twice_abs);
            if let Ok(qn) = validate_state(n, kappa, kappa.abs()) {
                levels.push(qn);
            }
        }
    }
    levels
}

const ORBITAL_LETTERS: &[u8] = b"spdfghiklmnoqrtuvwxyz";

/// Spectroscopic notation such as `2p3/2`.
pub fn spectroscopic_label(qn: &QuantumNumbers) -> String {
    let letter = ORBITAL_LETTERS
        .get(qn.l as usize)
        .map(|&b| (b as char).to_string())
        .unwrap_or_else(|| format!("[l={}]", qn.l));
    format!("{}{}{}", qn.n, letter, qn.kappa.abs())
}
