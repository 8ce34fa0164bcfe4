//! Exact algebra on `q(r) = r^γ e^{-βr} Σ aᵢ rⁱ`.
//!
//! Every radial amplitude of the Coulomb problem, its derivative, and every
//! integrand built from products of amplitudes belongs to this family, so
//! residuals and matrix elements can be formed coefficient by coefficient and
//! integrated in closed form through the Gamma function.

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_092;
const LANCZOS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];

/// Lanczos approximation to `Γ(x)` for `x > 0`; relative error below 2e-14
/// for `x < 50`.
pub fn gamma(x: f64) -> f64 {
    let t = x + LANCZOS_G;
    let mut ser = LANCZOS_C0;
    let mut y = x;
    for c in LANCZOS {
        y += 1.0;
        ser += c / y;
    }
    // t^{x+1/2} split in two halves to stay finite up to x ≈ 170
    let half = t.powf(0.5 * (x + 0.5));
    half * (half * (-t).exp()) * (2.0 * std::f64::consts::PI).sqrt() * ser / x
}

/// Gap between two exponents is accepted as an integer within this distance.
const GAMMA_GAP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PolyExp {
    gamma_exp: f64,
    beta: f64,
    coeffs: Vec<f64>,
}

impl PolyExp {
    /// Builds `r^γ e^{-βr} Σ aᵢ rⁱ`. Trailing zero coefficients are trimmed.
    pub fn new(gamma_exp: f64, beta: f64, coeffs: Vec<f64>) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::NonPositiveDecay(beta));
        }
        let mut p = Self { gamma_exp, beta, coeffs };
        p.trim();
        Ok(p)
    }

    pub fn zero(gamma_exp: f64, beta: f64) -> Result<Self> {
        Self::new(gamma_exp, beta, Vec::new())
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
    }

    pub fn gamma_exp(&self) -> f64 {
        self.gamma_exp
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Polynomial degree; `None` for the zero function.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn scale(&self, s: f64) -> PolyExp {
        let mut p = PolyExp {
            gamma_exp: self.gamma_exp,
            beta: self.beta,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        };
        p.trim();
        p
    }

    /// Exact `d/dr`; the result has exponent `γ - 1` and one more coefficient.
    pub fn derivative(&self) -> PolyExp {
        let n = self.coeffs.len();
        let mut out = vec![0.0; n + 1];
        for (i, slot) in out.iter_mut().enumerate() {
            let own = if i < n { (i as f64 + self.gamma_exp) * self.coeffs[i] } else { 0.0 };
            let lower = if i > 0 { self.beta * self.coeffs[i - 1] } else { 0.0 };
            *slot = own - lower;
        }
        let mut p = PolyExp { gamma_exp: self.gamma_exp - 1.0, beta: self.beta, coeffs: out };
        p.trim();
        p
    }

    /// Multiplies by `r^k`.
    pub fn mul_power(&self, k: i32) -> PolyExp {
        self.mul_rpow(f64::from(k))
    }

    /// Multiplies by `r^s` for real `s`.
    pub fn mul_rpow(&self, s: f64) -> PolyExp {
        PolyExp { gamma_exp: self.gamma_exp + s, beta: self.beta, coeffs: self.coeffs.clone() }
    }

    /// Exact `Σ sₖ pₖ`. Exponents are aligned down to the smallest one, which
    /// requires all pairwise gaps to be integers and all decay rates equal.
    pub fn linear_combine(terms: &[(f64, &PolyExp)]) -> Result<PolyExp> {
        let (_, first) = terms.first().ok_or(Error::EmptyCombination)?;
        let beta = first.beta;
        let base = terms.iter().map(|(_, p)| p.gamma_exp).fold(f64::INFINITY, f64::min);

        let mut shifts = Vec::with_capacity(terms.len());
        for (_, p) in terms {
            if p.beta != beta {
                return Err(Error::IncompatibleBeta(beta, p.beta));
            }
            let gap = p.gamma_exp - base;
            let k = gap.round();
            if (gap - k).abs() > GAMMA_GAP_TOL {
                return Err(Error::NonIntegerGammaGap(base, p.gamma_exp));
            }
            shifts.push(k as usize);
        }

        let len = terms
            .iter()
            .zip(&shifts)
            .map(|((_, p), &k)| p.coeffs.len() + k)
            .max()
            .unwrap_or(0);
        let mut out = vec![0.0; len];
        for ((s, p), &k) in terms.iter().zip(&shifts) {
            for (i, c) in p.coeffs.iter().enumerate() {
                out[i + k] += s * c;
            }
        }
        let mut p = PolyExp { gamma_exp: base, beta, coeffs: out };
        p.trim();
        Ok(p)
    }

    /// Pointwise product: exponents add, decay rates add, coefficients convolve.
    pub fn product(&self, other: &PolyExp) -> PolyExp {
        let mut coeffs = Vec::new();
        if !self.is_zero() && !other.is_zero() {
            coeffs = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
            for (i, a) in self.coeffs.iter().enumerate() {
                for (j, b) in other.coeffs.iter().enumerate() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        let mut p = PolyExp {
            gamma_exp: self.gamma_exp + other.gamma_exp,
            beta: self.beta + other.beta,
            coeffs,
        };
        p.trim();
        p
    }

    /// `∫₀^∞ q(r) dr = Σ aᵢ Γ(γ+i+1) / β^{γ+i+1}`.
    ///
    /// One Gamma evaluation anchors the sequence; later terms follow from
    /// `Γ(s+1) = sΓ(s)`.
    pub fn moment(&self) -> Result<f64> {
        if self.gamma_exp <= -1.0 || self.beta <= 0.0 {
            return Err(Error::DivergentIntegral { gamma: self.gamma_exp, beta: self.beta });
        }
        let s0 = self.gamma_exp + 1.0;
        let mut weight = gamma(s0) / self.beta.powf(s0);
        let mut sum = NeumaierSum::default();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                weight *= (s0 + (i - 1) as f64) / self.beta;
            }
            sum.add(a * weight);
        }
        Ok(sum.value())
    }

    /// Horner evaluation. `r = 0` is allowed only for `γ >= 0`.
    pub fn eval(&self, r: f64) -> Result<f64> {
        if r < 0.0 || (r == 0.0 && self.gamma_exp < 0.0) {
            return Err(Error::DomainError { gamma: self.gamma_exp, r });
        }
        let poly = self.eval_poly(r);
        if poly == 0.0 {
            return Ok(0.0);
        }
        let prefactor = if self.gamma_exp == 0.0 { 1.0 } else { r.powf(self.gamma_exp) };
        Ok(poly * prefactor * (-self.beta * r).exp())
    }

    /// `r^γ e^{-βr} Σ |aᵢ| rⁱ`, the rounding scale of [`eval`](Self::eval).
    pub fn eval_abs_terms(&self, r: f64) -> Result<f64> {
        let abs = Self { gamma_exp: self.gamma_exp, beta: self.beta, coeffs: self.coeffs.iter().map(|c| c.abs()).collect() };
        abs.eval(r)
    }

    /// The polynomial factor `Σ aᵢ rⁱ` alone.
    pub fn eval_poly(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c)
    }
}

/// Kahan–Babuška (Neumaier) compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
