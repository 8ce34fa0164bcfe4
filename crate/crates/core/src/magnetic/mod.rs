//! First-order (linear Paschen–Back) magnetic energy shifts.
//!
//! A uniform field `B ẑ` perpendicular to the plane adds `ηBr/2` to the
//! `κ/r` coupling of the radial pair. To first order in the scaled field
//! `B/Z²` the energy moves by `E⁽¹⁾·B` with
//!
//! ```text
//! E⁽¹⁾ = -η ⟨F, rG⟩ / (⟨F, F⟩ + λ⟨G, G⟩)
//! ```
//!
//! evaluated on the field-free pair. Three independent routes compute it,
//! see [`routes`].

pub mod routes;

use std::fmt;

use crate::error::{Error, Result};
use crate::polyexp::PolyExp;
use crate::quantum_numbers::{PhysicalParams, QuantumNumbers};
use crate::spectrum::gamma_param;
use crate::wavefunctions::{build_radial, confluent_pair, RadialSolution};

pub use routes::{
    ClosedAuto, ClosedGeneral, ClosedNodeless, Quadrature, RouteRegistry, ShiftRoute,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RouteKind {
    Quadrature,
    ClosedNodeless,
    ClosedGeneral,
}

impl fmt::Display for RouteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RouteKind::Quadrature => "quadrature",
            RouteKind::ClosedNodeless => "closed-n0",
            RouteKind::ClosedGeneral => "closed-general",
        })
    }
}

/// Radial integrals over the confluent polynomials `F₁`, `F₂` and the
/// coefficients `a, b, c, d` of `E⁽¹⁾ = -η(aκ + b)/(cκ + d)`.
///
/// For `n' = 0` the `F₂` integrals never contribute and are reported as zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentIntegrals {
    pub k1: f64,
    pub k2: f64,
    pub i1: f64,
    pub i2: f64,
    pub i12: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FirstOrderShift {
    pub e1: f64,
    pub a1: Option<f64>,
    pub a2: Option<f64>,
    pub integrals: Option<MomentIntegrals>,
    pub route: RouteKind,
}

impl FirstOrderShift {
    fn plain(e1: f64, route: RouteKind) -> Self {
        Self { e1, a1: None, a2: None, integrals: None, route }
    }
}

/// `E⁽¹⁾` from direct moments of the field-free pair. Normalization cancels.
pub fn shift_quadrature(sol: &RadialSolution) -> Result<FirstOrderShift> {
    let numerator = sol.large.product(&sol.small).mul_power(1).moment()?;
    let denominator = sol.norm_integral()?;
    let e1 = -sol.qn.eta_f64() * numerator / denominator;
    Ok(FirstOrderShift::plain(e1, RouteKind::Quadrature))
}

/// `E⁽¹⁾ = μ(2γ + 1)/(4κ)`, valid for nodeless (`n' = 0`) states only.
pub fn shift_closed_n0(qn: &QuantumNumbers, params: &PhysicalParams) -> Result<FirstOrderShift> {
    if qn.n_prime != 0 {
        return Err(Error::NotApplicable {
            route: "closed-n0",
            reason: format!("requires n' = 0, got n' = {}", qn.n_prime),
        });
    }
    let gamma = gamma_param(qn.kappa, params.lambda())?;
    let e1 = qn.mu_f64() / (4.0 * qn.kappa_f64()) * (2.0 * gamma + 1.0);
    Ok(FirstOrderShift::plain(e1, RouteKind::ClosedNodeless))
}

/// `K`, `I` integrals and `a, b, c, d` for the state of `sol`.
///
/// Only the energy parameters of `sol` are used; the integrals depend on κ
/// through κ² alone.
pub fn moment_integrals(sol: &RadialSolution) -> Result<MomentIntegrals> {
    let en = &sol.energy;
    let lambda = sol.lambda();
    let kappa_sq = sol.qn.kappa_f64().powi(2);
    let np = f64::from(sol.qn.n_prime);
    let (e, alpha) = (en.e, en.alpha);

    let (f1, f2) = confluent_pair(&sol.qn, en);
    let f1 = PolyExp::new(en.gamma, alpha, f1)?;
    let f1_sq = f1.product(&f1);
    let k1 = f1_sq.mul_power(1).moment()?;
    let i1 = f1_sq.moment()?;
    let (k2, i2, i12) = match f2 {
        Some(f2) => {
            let f2 = PolyExp::new(en.gamma, alpha, f2)?;
            let f2_sq = f2.product(&f2);
            (f2_sq.mul_power(1).moment()?, f2_sq.moment()?, f1.product(&f2).moment()?)
        }
        None => (0.0, 0.0, 0.0),
    };

    let t = lambda * e * e / (alpha * alpha);
    let inv_alpha_sq = 1.0 / (alpha * alpha);
    let a = 2.0 * e * inv_alpha_sq * k1;
    let b = e / alpha * ((kappa_sq + inv_alpha_sq) * k1 - np * np * k2);
    let c = 2.0 / alpha * (1.0 + t) * i1 + 2.0 * np * (t - 1.0) * i12;
    let d = (1.0 + t) * ((kappa_sq + inv_alpha_sq) * i1 + np * np * i2) + 2.0 * np / alpha * (t - 1.0) * i12;
    Ok(MomentIntegrals { k1, k2, i1, i2, i12, a, b, c, d })
}

/// `E⁽¹⁾ = -η(aκ + b)/(cκ + d) = μA₁ + (κ/μ)A₂` for any state.
pub fn shift_closed_general(qn: &QuantumNumbers, params: &PhysicalParams) -> Result<FirstOrderShift> {
    let sol = build_radial(qn, params, false)?;
    let ints = moment_integrals(&sol)?;
    let MomentIntegrals { a, b, c, d, .. } = ints;
    let kappa = qn.kappa_f64();
    let mu = qn.mu_f64();

    let denom = c * kappa + d;
    if denom.abs() < 1e-14 * d.abs() || denom == 0.0 {
        return Err(Error::DegenerateDenominator(denom));
    }
    let e1 = -qn.eta_f64() * (a * kappa + b) / denom;

    // For n' = 0 the decay rate is exactly 1/|κ|, which makes κ²c² = d²:
    // the (A₁, A₂) split is 0/0 there and only E⁽¹⁾ itself is defined.
    let split = kappa * kappa * c * c - d * d;
    if split.abs() <= 1e-12 * d * d {
        return Ok(FirstOrderShift { e1, a1: None, a2: None, integrals: Some(ints), route: RouteKind::ClosedGeneral });
    }
    let a1 = (a * d - b * c) / split;
    let a2 = (b * d - kappa * kappa * a * c) / split;
    let recombined = mu * a1 + kappa / mu * a2;
    let scale = (mu * a1).abs() + a2.abs() + e1.abs();
    if (recombined - e1).abs() > 1e-10 * scale {
        return Err(Error::Internal(format!(
            "E1 = {e1} but mu*A1 + (kappa/mu)*A2 = {recombined} for {qn}"
        )));
    }
    Ok(FirstOrderShift { e1, a1: Some(a1), a2: Some(a2), integrals: Some(ints), route: RouteKind::ClosedGeneral })
}

/// Nonrelativistic limit `(m + 2mₛ)/2` with `m = μ - η/2`, `mₛ = η/2`.
pub fn shift_nonrel(qn: &QuantumNumbers) -> f64 {
    // (μ - η/2 + η)/2 = (2μ + η)/4
    f64::from(qn.mu.twice() + qn.eta) / 4.0
}

/// A first-order differential operator entry `derivative·d/dr + multiplier`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorEntry {
    pub derivative: f64,
    pub multiplier: f64,
}

impl OperatorEntry {
    const fn mult(m: f64) -> Self {
        Self { derivative: 0.0, multiplier: m }
    }
}

pub type OperatorMatrix = [[OperatorEntry; 2]; 2];

/// Coefficients of the in-field radial pair
///
/// ```text
/// dG/dr + (κ/r + ηBr/2) G + (1/r + E) F = 0
/// dF/dr - (κ/r + ηBr/2) F - [λ(1/r + E) + 2] G = 0
/// ```
///
/// and of its matrix form `(h⁽⁰⁾ + B h⁽¹⁾ - E S) Φ = 0`, `Φ = (F, G)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialSystem {
    pub kappa: f64,
    pub eta: f64,
    pub lambda: f64,
    pub field: f64,
}

pub fn perturbed_radial_system(qn: &QuantumNumbers, params: &PhysicalParams, field: f64) -> RadialSystem {
    RadialSystem { kappa: qn.kappa_f64(), eta: qn.eta_f64(), lambda: params.lambda(), field }
}

impl RadialSystem {
    /// `κ/r + ηBr/2`
    pub fn coupling(&self, r: f64) -> f64 {
        self.kappa / r + 0.5 * self.eta * self.field * r
    }

    /// Left-hand sides of the pair at one radius.
    pub fn residuals(&self, r: f64, e: f64, f: f64, df: f64, g: f64, dg: f64) -> (f64, f64) {
        let w = self.coupling(r);
        let first = dg + w * g + (1.0 / r + e) * f;
        let second = df - w * f - (self.lambda * (1.0 / r + e) + 2.0) * g;
        (first, second)
    }

    /// Field-free operator `h⁽⁰⁾` at radius `r`.
    pub fn h0(&self, r: f64) -> OperatorMatrix {
        let k = self.kappa / r;
        [
            [OperatorEntry::mult(-1.0 / r), OperatorEntry { derivative: -1.0, multiplier: -k }],
            [OperatorEntry { derivative: 1.0, multiplier: -k }, OperatorEntry::mult(-(2.0 + self.lambda / r))],
        ]
    }

    /// Perturbation `h⁽¹⁾`, off-diagonal `-ηr/2`.
    pub fn h1(&self, r: f64) -> OperatorMatrix {
        let off = OperatorEntry::mult(-0.5 * self.eta * r);
        [[OperatorEntry::mult(0.0), off], [off, OperatorEntry::mult(0.0)]]
    }

    /// Metric `S = diag(1, λ)`.
    pub fn overlap(&self) -> [[f64; 2]; 2] {
        [[1.0, 0.0], [0.0, self.lambda]]
    }

    /// `(h⁽⁰⁾ + B h⁽¹⁾ - E S) Φ` at one radius, given values and derivatives.
    pub fn apply(&self, r: f64, e: f64, f: f64, df: f64, g: f64, dg: f64) -> [f64; 2] {
        let h0 = self.h0(r);
        let h1 = self.h1(r);
        let s = self.overlap();
        let vals = [f, g];
        let ders = [df, dg];
        let mut out = [0.0; 2];
        for (row, slot) in out.iter_mut().enumerate() {
            for col in 0..2 {
                let entry = |m: &OperatorMatrix| m[row][col].derivative * ders[col] + m[row][col].multiplier * vals[col];
                *slot += entry(&h0) + self.field * entry(&h1) - e * s[row][col] * vals[col];
            }
        }
        out
    }
}
