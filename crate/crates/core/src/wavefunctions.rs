//! Radial amplitudes and four-component spinor states.
//!
//! The canonical radial pair `(F, G)` solves
//!
//! ```text
//! dG/dr + (κ/r) G + (1/r + E) F = 0
//! dF/dr - (κ/r) F - [λ(1/r + E) + 2] G = 0
//! ```
//!
//! and has the form `r^γ e^{-αr} Σ aᵢ rⁱ`. The spinor amplitudes `f, g` of the
//! full state carry the extra `r^{-1/2}` of the two-dimensional measure, so
//! `∫ (F² + λG²) dr = ∫ (f² + λg²) r dr`.

use std::fmt;

use crate::confluent::terminating_1f1;
use crate::error::Result;
use crate::polyexp::PolyExp;
use crate::quantum_numbers::{PhysicalParams, QuantumNumbers};
use crate::spectrum::{energy, gamma_plus_kappa, EnergyResult};

#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    pub qn: QuantumNumbers,
    pub params: PhysicalParams,
    pub energy: EnergyResult,
    /// Large component `F`, exponent γ.
    pub large: PolyExp,
    /// Small component `G`, exponent γ.
    pub small: PolyExp,
    /// Power-series coefficients with `a₀ = 1`.
    pub a_coeffs: Vec<f64>,
    pub b_coeffs: Vec<f64>,
    /// Factor applied to the raw series to reach `∫(F² + λG²) dr = 1`.
    pub norm_factor: f64,
    pub norm_applied: bool,
}

impl RadialSolution {
    pub fn lambda(&self) -> f64 {
        self.params.lambda()
    }

    /// `f = r^{-1/2} F`, exponent `γ - 1/2`.
    pub fn f_amplitude(&self) -> PolyExp {
        self.large.mul_rpow(-0.5)
    }

    /// `g = r^{-1/2} G`, exponent `γ - 1/2`.
    pub fn g_amplitude(&self) -> PolyExp {
        self.small.mul_rpow(-0.5)
    }

    /// `∫ (F² + λG²) dr`.
    pub fn norm_integral(&self) -> Result<f64> {
        weighted_overlap(&self.large, &self.small, &self.large, &self.small, self.lambda())
    }
}

/// `∫ (F₁F₂ + λG₁G₂) dr` for two radial pairs.
pub fn weighted_overlap(f1: &PolyExp, g1: &PolyExp, f2: &PolyExp, g2: &PolyExp, lambda: f64) -> Result<f64> {
    Ok(f1.product(f2).moment()? + lambda * g1.product(g2).moment()?)
}

/// First `terms` coefficients of the power-series recurrence, `a₀ = 1`.
///
/// With a quantized energy the series terminates: entries past index `n'`
/// vanish up to rounding.
pub fn series_recurrence(
    qn: &QuantumNumbers,
    energy: &EnergyResult,
    lambda: f64,
    terms: usize,
) -> (Vec<f64>, Vec<f64>) {
    assert!(energy.e != 0.0, "bound-state energy is never zero");
    let kappa = qn.kappa_f64();
    let EnergyResult { e, gamma, alpha, .. } = *energy;
    let mut a = Vec::with_capacity(terms);
    let mut b = Vec::with_capacity(terms);
    if terms == 0 {
        return (a, b);
    }
    a.push(1.0);
    b.push(-1.0 / gamma_plus_kappa(qn.kappa, gamma, lambda));
    for i in 1..terms {
        let fi = i as f64;
        let w = -e * a[i - 1] + alpha * b[i - 1];
        let bi = (fi + gamma - kappa + alpha / e) * w / (fi * (fi + 2.0 * gamma));
        let ai = w - (fi + gamma + kappa) * bi;
        a.push(ai);
        b.push(bi);
    }
    (a, b)
}

/// The `n' + 1` nonzero series coefficients.
pub fn series_coefficients(qn: &QuantumNumbers, energy: &EnergyResult, lambda: f64) -> (Vec<f64>, Vec<f64>) {
    series_recurrence(qn, energy, lambda, qn.n_prime as usize + 1)
}

/// Power-series radial solution, optionally normalized to
/// `∫(F² + λG²) dr = 1` with `a₀ > 0`.
pub fn build_radial(qn: &QuantumNumbers, params: &PhysicalParams, normalize: bool) -> Result<RadialSolution> {
    let lambda = params.lambda();
    let en = energy(qn, params)?;
    let (a, b) = series_coefficients(qn, &en, lambda);
    let raw_f = PolyExp::new(en.gamma, en.alpha, a.clone())?;
    let raw_g = PolyExp::new(en.gamma, en.alpha, b.clone())?;
    let norm_factor = if normalize {
        let n = weighted_overlap(&raw_f, &raw_g, &raw_f, &raw_g, lambda)?;
        1.0 / n.sqrt()
    } else {
        1.0
    };
    Ok(RadialSolution {
        qn: *qn,
        params: *params,
        energy: en,
        large: raw_f.scale(norm_factor),
        small: raw_g.scale(norm_factor),
        a_coeffs: a,
        b_coeffs: b,
        norm_factor,
        norm_applied: normalize,
    })
}

/// The two confluent polynomials `F₁(r) = ₁F₁(-n', 2γ+1; 2αr)` and
/// `F₂(r) = ₁F₁(1-n', 2γ+1; 2αr)`, as coefficient lists in `r`.
///
/// `F₂` only enters multiplied by `n'`; for `n' = 0` it is returned as `None`.
pub fn confluent_pair(qn: &QuantumNumbers, energy: &EnergyResult) -> (Vec<f64>, Option<Vec<f64>>) {
    let b = 2.0 * energy.gamma + 1.0;
    let s = 2.0 * energy.alpha;
    let f1 = terminating_1f1(qn.n_prime, b, s);
    let f2 = qn.n_prime.checked_sub(1).map(|m| terminating_1f1(m, b, s));
    (f1, f2)
}

/// Radial pair in confluent hypergeometric form (exponent γ):
///
/// ```text
/// F = r^γ e^{-αr} [(κ + 1/α) F₁ - n' F₂]
/// G = (E/α) r^γ e^{-αr} [(κ + 1/α) F₁ + n' F₂]
/// ```
pub fn build_hypergeometric(qn: &QuantumNumbers, params: &PhysicalParams) -> Result<(PolyExp, PolyExp)> {
    let en = energy(qn, params)?;
    let (f1, f2) = confluent_pair(qn, &en);
    let p = qn.kappa_f64() + 1.0 / en.alpha;
    let np = f64::from(qn.n_prime);
    let first = PolyExp::new(en.gamma, en.alpha, f1)?;
    let (large, small) = match f2 {
        Some(f2) => {
            let second = PolyExp::new(en.gamma, en.alpha, f2)?;
            (
                PolyExp::linear_combine(&[(p, &first), (-np, &second)])?,
                PolyExp::linear_combine(&[(p, &first), (np, &second)])?,
            )
        }
        None => (first.scale(p), first.scale(p)),
    };
    Ok((large, small.scale(en.e / en.alpha)))
}

/// Left-hand sides of the radial pair, with the size of the largest input
/// term for relative comparisons.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    /// `dG/dr + (κ/r)G + (1/r + E)F`
    pub first: PolyExp,
    /// `dF/dr - (κ/r)F - [λ(1/r + E) + 2]G`
    pub second: PolyExp,
    pub scale: f64,
}

impl Residual {
    /// Largest residual coefficient divided by the input scale.
    pub fn relative(&self) -> f64 {
        let worst = self.first.max_abs_coeff().max(self.second.max_abs_coeff());
        if self.scale == 0.0 {
            worst
        } else {
            worst / self.scale
        }
    }
}

/// Residuals of an arbitrary `(F, G)` pair at energy `e`.
pub fn residual_of(large: &PolyExp, small: &PolyExp, kappa: f64, e: f64, lambda: f64) -> Result<Residual> {
    let dg = small.derivative();
    let df = large.derivative();
    let g_over_r = small.mul_power(-1);
    let f_over_r = large.mul_power(-1);

    let first_terms = [(1.0, &dg), (kappa, &g_over_r), (1.0, &f_over_r), (e, large)];
    let second_terms = [
        (1.0, &df),
        (-kappa, &f_over_r),
        (-lambda, &g_over_r),
        (-(lambda * e + 2.0), small),
    ];
    let scale = first_terms
        .iter()
        .chain(second_terms.iter())
        .map(|(s, p)| s.abs() * p.max_abs_coeff())
        .fold(0.0, f64::max);
    Ok(Residual {
        first: PolyExp::linear_combine(&first_terms)?,
        second: PolyExp::linear_combine(&second_terms)?,
        scale,
    })
}

pub fn radial_residual(sol: &RadialSolution) -> Result<Residual> {
    residual_of(&sol.large, &sol.small, sol.qn.kappa_f64(), sol.energy.e, sol.lambda())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialPart {
    Large,
    Small,
}

/// One entry of the four-component spinor:
/// `weight · (i if imaginary) · radial(r) · e^{i·phase·φ}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinorComponent {
    pub radial: RadialPart,
    /// Cylindrical-spinor weight, 0 or 1.
    pub weight: i32,
    pub imaginary: bool,
    pub phase: i32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinorState {
    pub qn: QuantumNumbers,
    /// `f_{nκ}`, exponent `γ - 1/2`.
    pub f: PolyExp,
    /// `g_{nκ}`, exponent `γ - 1/2`.
    pub g: PolyExp,
    /// `μ - 1/2`
    pub upper_phase: i32,
    /// `μ + 1/2`
    pub lower_phase: i32,
    pub components: [SpinorComponent; 4],
}

impl SpinorState {
    /// 1-based indices of the components that do not vanish identically.
    pub fn nonzero_components(&self) -> Vec<usize> {
        (0..4).filter(|&i| self.component_is_nonzero(i)).map(|i| i + 1).collect()
    }

    fn component_is_nonzero(&self, i: usize) -> bool {
        let c = &self.components[i];
        let radial = match c.radial {
            RadialPart::Large => &self.f,
            RadialPart::Small => &self.g,
        };
        c.weight != 0 && !radial.is_zero()
    }
}

/// Assembles `Ψ = [f Ω_{κμ}, i g Ω_{-κμ}]` with
/// `Ω_{κμ} = ((κ+μ)/(2μ) e^{i(μ-1/2)φ}, (μ-κ)/(2μ) e^{i(μ+1/2)φ})`.
pub fn assemble_state(sol: &RadialSolution) -> SpinorState {
    let twice_kappa = sol.qn.kappa.twice();
    let twice_mu = sol.qn.mu.twice();
    // (κ+μ)/(2μ) = (2κ+2μ)/(2·2μ) is 0 or 1 because μ = ±κ
    let w_same = (twice_kappa + twice_mu) / (2 * twice_mu);
    let w_flip = (twice_mu - twice_kappa) / (2 * twice_mu);
    let upper_phase = (twice_mu - 1) / 2;
    let lower_phase = (twice_mu + 1) / 2;
    let comp = |radial, weight, imaginary, phase| SpinorComponent { radial, weight, imaginary, phase };
    SpinorState {
        qn: sol.qn,
        f: sol.f_amplitude(),
        g: sol.g_amplitude(),
        upper_phase,
        lower_phase,
        components: [
            comp(RadialPart::Large, w_same, false, upper_phase),
            comp(RadialPart::Large, w_flip, false, lower_phase),
            comp(RadialPart::Small, w_flip, true, upper_phase),
            comp(RadialPart::Small, w_same, true, lower_phase),
        ],
    }
}

/// Diagonal entries of β and σ'_z in the Dirac–Pauli representation.
const BETA: [i32; 4] = [1, 1, -1, -1];
const SIGMA_Z: [i32; 4] = [1, -1, 1, -1];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `PΨ = ηΨ`, `P = βσ'_z`
    ParityEigen,
    /// `j_zΨ = μΨ`, `j_z = l_z + σ'_z/2`
    JzEigen,
    /// `KΨ = κΨ`, `K = β(σ'_z l_z + 1/2)`
    KappaEigen,
    /// `K = P j_z`, hence κ = μη
    KEqualsPJz,
    /// `K² = j_z²`, hence κ² = μ²
    KSquaredEqualsJzSquared,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::ParityEigen => "P psi = eta psi",
            Relation::JzEigen => "j_z psi = mu psi",
            Relation::KappaEigen => "K psi = kappa psi",
            Relation::KEqualsPJz => "K = P j_z",
            Relation::KSquaredEqualsJzSquared => "K^2 = j_z^2",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: Relation,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantsReport {
    pub checks: Vec<RelationCheck>,
}

impl ConstantsReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<Relation> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.relation).collect()
    }
}

/// Applies `P`, `j_z` and `K` to every nonvanishing component analytically
/// and checks the eigenvalue relations. Half-integers are handled doubled.
pub fn check_constants_of_motion(state: &SpinorState) -> ConstantsReport {
    let eta = state.qn.eta;
    let twice_mu = state.qn.mu.twice();
    let twice_kappa = state.qn.kappa.twice();
    let live: Vec<usize> = (0..4).filter(|&i| state.component_is_nonzero(i)).collect();

    let p_val = |i: usize| BETA[i] * SIGMA_Z[i];
    let twice_jz = |i: usize| 2 * state.components[i].phase + SIGMA_Z[i];
    let twice_k = |i: usize| BETA[i] * (2 * SIGMA_Z[i] * state.components[i].phase + 1);

    let every = |pred: &dyn Fn(usize) -> bool| !live.is_empty() && live.iter().all(|&i| pred(i));

    let checks = vec![
        RelationCheck { relation: Relation::ParityEigen, passed: every(&|i| p_val(i) == eta) },
        RelationCheck { relation: Relation::JzEigen, passed: every(&|i| twice_jz(i) == twice_mu) },
        RelationCheck { relation: Relation::KappaEigen, passed: every(&|i| twice_k(i) == twice_kappa) },
        RelationCheck {
            relation: Relation::KEqualsPJz,
            passed: every(&|i| twice_k(i) == p_val(i) * twice_jz(i)) && twice_kappa == eta * twice_mu,
        },
        RelationCheck {
            relation: Relation::KSquaredEqualsJzSquared,
            passed: every(&|i| twice_k(i).pow(2) == twice_jz(i).pow(2)) && twice_kappa.pow(2) == twice_mu.pow(2),
        },
    ];
    ConstantsReport { checks }
}
