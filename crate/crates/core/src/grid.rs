//! Finite-difference eigensolver for the radial pair, in and out of field.
//!
//! Shares no code with the closed forms: energies come from shifted inverse
//! iteration on a discretized first-order system.
//!
//! # Discretization
//!
//! With `(F, G) = r^γ (u, v)` the amplitudes `u, v` are smooth at the origin.
//! On a grid uniform in `x` (`r = x` or `r = eˣ`, Jacobian `J = dr/dx`) the
//! pair becomes
//!
//! ```text
//! -[v' + J((γ+κ)/r + ηBr/2) v] - (J/r) u         = E J u
//!   u' + J((γ-κ)/r - ηBr/2) u  - J(λ/r + 2) v    = λE J v
//! ```
//!
//! `u` lives on nodes `xᵢ` and `v` on midpoints `x_{i+1/2}` (a staggered grid,
//! which keeps central differences free of the doubled spurious branch).
//! Boundary conditions: `u = 0` one step past the last node, and
//! `v_{-1/2} = v_{1/2}` at the inner edge. Interleaving `(u₀, v_{1/2}, u₁, …)`
//! makes both matrices tridiagonal, so each inverse-iteration step is O(N).

use crate::error::{Error, Result};
use crate::quantum_numbers::{PhysicalParams, QuantumNumbers};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridScheme {
    Uniform,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    /// Number of `u` nodes; the system has `2N` unknowns.
    pub points: usize,
    pub scheme: GridScheme,
}

impl GridSpec {
    pub const DEFAULT_POINTS: usize = 4000;
    pub const DEFAULT_R_MIN: f64 = 1e-8;

    pub fn new(r_min: f64, r_max: f64, points: usize, scheme: GridScheme) -> Result<Self> {
        let spec = Self { r_min, r_max, points, scheme };
        spec.validate()?;
        Ok(spec)
    }

    /// Log grid from `1e-8` to 30 decay lengths of the nonrelativistic state,
    /// stretched by half again when a field is on.
    pub fn default_for(qn: &QuantumNumbers, field: f64) -> Self {
        // nonrelativistic decay rate 2/(2n - 1)
        let alpha = 2.0 / (2.0 * f64::from(qn.n) - 1.0);
        let stretch = if field != 0.0 { 1.5 } else { 1.0 };
        Self {
            r_min: Self::DEFAULT_R_MIN,
            r_max: 30.0 / alpha * stretch,
            points: Self::DEFAULT_POINTS,
            scheme: GridScheme::Log,
        }
    }

    pub fn with_points(mut self, points: usize) -> Self {
        self.points = points;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0 && self.r_min < self.r_max && self.r_max.is_finite()) {
            return Err(Error::InvalidGrid(format!("need 0 < r_min < r_max, got [{}, {}]", self.r_min, self.r_max)));
        }
        if self.points < 100 {
            return Err(Error::InvalidGrid(format!("need at least 100 points, got {}", self.points)));
        }
        Ok(())
    }

    fn step(&self) -> f64 {
        let (a, b) = self.x_range();
        (b - a) / self.points as f64
    }

    fn x_range(&self) -> (f64, f64) {
        match self.scheme {
            GridScheme::Uniform => (self.r_min, self.r_max),
            GridScheme::Log => (self.r_min.ln(), self.r_max.ln()),
        }
    }

    /// `(r, J)` at coordinate `x`.
    fn map(&self, x: f64) -> (f64, f64) {
        match self.scheme {
            GridScheme::Uniform => (x, 1.0),
            GridScheme::Log => {
                let r = x.exp();
                (r, r)
            }
        }
    }
}

/// Converged discrete eigenpair.
#[derive(Debug, Clone)]
pub struct NumericSolution {
    pub energy: f64,
    pub gamma: f64,
    pub lambda: f64,
    pub spec: GridSpec,
    pub iterations: usize,
    /// `x` of the `u` nodes.
    x_nodes: Vec<f64>,
    u: Vec<f64>,
    v: Vec<f64>,
}

impl NumericSolution {
    /// Sign changes of the large component, ignoring the numerically flat tail.
    pub fn large_component_nodes(&self) -> usize {
        count_sign_changes(&self.u)
    }

    /// Normalized `(F, G)` at radius `r`, linearly interpolated in `x`.
    pub fn amplitudes_at(&self, r: f64) -> Option<(f64, f64)> {
        let h = self.spec.step();
        let x = match self.spec.scheme {
            GridScheme::Uniform => r,
            GridScheme::Log => r.ln(),
        };
        let x0 = self.x_nodes[0];
        let u = interpolate(&self.u, x0, h, x)?;
        let v = interpolate(&self.v, x0 + 0.5 * h, h, x)?;
        let w = r.powf(self.gamma) * self.norm_scale();
        Some((w * u, w * v))
    }

    /// Factor bringing `∫(F² + λG²) dr` to one with `u₀ > 0`.
    fn norm_scale(&self) -> f64 {
        let h = self.spec.step();
        let mut total = 0.0;
        for (i, (&u, &v)) in self.u.iter().zip(&self.v).enumerate() {
            let xn = self.x_nodes[i];
            let (rn, jn) = self.spec.map(xn);
            let (rm, jm) = self.spec.map(xn + 0.5 * h);
            total += jn * rn.powf(2.0 * self.gamma) * u * u + self.lambda * jm * rm.powf(2.0 * self.gamma) * v * v;
        }
        let sign = if self.u[0] < 0.0 { -1.0 } else { 1.0 };
        sign / (total * h).sqrt()
    }
}

fn interpolate(values: &[f64], x0: f64, h: f64, x: f64) -> Option<f64> {
    let t = (x - x0) / h;
    if t < 0.0 || t > (values.len() - 1) as f64 {
        return None;
    }
    let i = (t.floor() as usize).min(values.len() - 2);
    let frac = t - i as f64;
    Some(values[i] * (1.0 - frac) + values[i + 1] * frac)
}

fn count_sign_changes(values: &[f64]) -> usize {
    let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = 1e-8 * peak;
    let mut last = 0.0f64;
    let mut changes = 0;
    for &v in values.iter().filter(|v| v.abs() > floor) {
        if last != 0.0 && v.signum() != last.signum() {
            changes += 1;
        }
        last = v;
    }
    changes
}

/// Tridiagonal matrix in `(sub, diag, sup)` form.
#[derive(Debug, Clone)]
struct Tridiagonal {
    sub: Vec<f64>,
    diag: Vec<f64>,
    sup: Vec<f64>,
}

impl Tridiagonal {
    fn shifted(&self, sigma: f64, mass: &[f64]) -> Tridiagonal {
        Tridiagonal {
            sub: self.sub.clone(),
            diag: self.diag.iter().zip(mass).map(|(d, m)| d - sigma * m).collect(),
            sup: self.sup.clone(),
        }
    }
}

/// LU factorization with partial pivoting of a tridiagonal matrix
/// (the same elimination order as LAPACK `gttrf`).
struct TridiagonalLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagonalLu {
    fn factor(m: Tridiagonal) -> Self {
        let Tridiagonal { sub: mut dl, diag: mut d, sup: mut du } = m;
        let n = d.len();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                if d[i] != 0.0 {
                    let fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 1 < n - 1 {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        // an exactly singular shift still gives a usable inverse-iteration direction
        let tiny = d.iter().fold(0.0f64, |m, v| m.max(v.abs())) * f64::EPSILON;
        for v in d.iter_mut().filter(|v| **v == 0.0) {
            *v = tiny.max(f64::MIN_POSITIVE);
        }
        Self { dl, d, du, du2, swapped }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                let temp = b[i] - self.dl[i] * b[i + 1];
                b[i] = b[i + 1];
                b[i + 1] = temp;
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

/// Assembled `A Φ = E M Φ` for one state.
struct Discretization {
    a: Tridiagonal,
    mass: Vec<f64>,
    x_nodes: Vec<f64>,
    gamma: f64,
}

fn discretize(qn: &QuantumNumbers, params: &PhysicalParams, field: f64, spec: &GridSpec) -> Result<Discretization> {
    spec.validate()?;
    let lambda = params.lambda();
    let kappa = qn.kappa_f64();
    let eta = qn.eta_f64();
    let kappa_sq = kappa * kappa;
    if lambda >= kappa_sq {
        return Err(Error::SupercriticalCharge { lambda, kappa_sq });
    }
    let gamma = (kappa_sq - lambda).sqrt();

    let n = spec.points;
    let h = spec.step();
    let (x0, _) = spec.x_range();
    let size = 2 * n;
    let mut sub = vec![0.0; size - 1];
    let mut diag = vec![0.0; size];
    let mut sup = vec![0.0; size - 1];
    let mut mass = vec![0.0; size];
    let mut x_nodes = Vec::with_capacity(n);

    for i in 0..n {
        let xn = x0 + i as f64 * h;
        x_nodes.push(xn);
        let (r, j) = spec.map(xn);
        // row 2i: -[v' + p v] - q u = E J u
        let p = j * ((gamma + kappa) / r + 0.5 * eta * field * r);
        let q = j / r;
        let row = 2 * i;
        diag[row] = -q;
        mass[row] = j;
        if i == 0 {
            // v_{-1/2} = v_{1/2}
            sup[row] = -p;
        } else {
            sub[row - 1] = 1.0 / h - 0.5 * p;
            sup[row] = -(1.0 / h + 0.5 * p);
        }

        // row 2i+1: u' + s u - t v = λE J v
        let (rm, jm) = spec.map(xn + 0.5 * h);
        let s = jm * ((gamma - kappa) / rm - 0.5 * eta * field * rm);
        let t = jm * (lambda / rm + 2.0);
        let row = 2 * i + 1;
        sub[row - 1] = -1.0 / h + 0.5 * s;
        diag[row] = -t;
        mass[row] = lambda * jm;
        if i + 1 < n {
            sup[row] = 1.0 / h + 0.5 * s;
        }
    }
    Ok(Discretization { a: Tridiagonal { sub, diag, sup }, mass, x_nodes, gamma })
}

const MAX_ITERATIONS: usize = 200;

/// Discrete eigenvalue nearest `e_guess`, with its eigenvector.
///
/// Fixed-shift inverse iteration locks onto the eigenvalue closest to the
/// guess; once it settles, two shift updates polish it to machine precision.
/// The converged mode must have `n - l - 1` sign changes in its large
/// component, otherwise it is reported as spurious.
pub fn solve_radial_numeric(
    qn: &QuantumNumbers,
    params: &PhysicalParams,
    field: f64,
    spec: &GridSpec,
    e_guess: f64,
) -> Result<NumericSolution> {
    if !(e_guess < 0.0) {
        return Err(Error::NoEigenvalueNear { guess: e_guess, found: f64::NAN });
    }
    let disc = discretize(qn, params, field, spec)?;
    let size = disc.mass.len();

    let mut x: Vec<f64> = (0..size).map(|i| if i % 2 == 0 { 1.0 } else { 0.0 }).collect();
    normalize(&mut x);
    let mut sigma = e_guess;
    let mut lu = TridiagonalLu::factor(disc.a.shifted(sigma, &disc.mass));
    let mut estimate = f64::NAN;
    let mut refinements = 0;
    let mut converged = false;
    let mut iterations = 0;

    for it in 0..MAX_ITERATIONS {
        iterations = it + 1;
        let mut y: Vec<f64> = x.iter().zip(&disc.mass).map(|(a, m)| a * m).collect();
        lu.solve(&mut y);
        let proj: f64 = y.iter().zip(&x).map(|(a, b)| a * b).sum();
        if !proj.is_finite() || proj == 0.0 {
            return Err(Error::ConvergenceFailure(format!("degenerate iterate at step {it}")));
        }
        let next = sigma + 1.0 / proj;
        normalize(&mut y);
        let change = (next - estimate).abs();
        estimate = next;
        x = y;
        if change <= 1e-14 * estimate.abs().max(1e-3) {
            if refinements == 2 {
                converged = true;
                break;
            }
            refinements += 1;
            sigma = estimate;
            lu = TridiagonalLu::factor(disc.a.shifted(sigma, &disc.mass));
            estimate = f64::NAN;
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure(format!("no convergence after {MAX_ITERATIONS} steps")));
    }
    if (estimate - e_guess).abs() > 0.5 * e_guess.abs() {
        return Err(Error::NoEigenvalueNear { guess: e_guess, found: estimate });
    }

    let (u, v): (Vec<f64>, Vec<f64>) = x.chunks_exact(2).map(|c| (c[0], c[1])).unzip();
    let sol = NumericSolution {
        energy: estimate,
        gamma: disc.gamma,
        lambda: params.lambda(),
        spec: *spec,
        iterations,
        x_nodes: disc.x_nodes,
        u,
        v,
    };
    let expected = (qn.n - qn.l - 1) as usize;
    let found = sol.large_component_nodes();
    if found != expected {
        return Err(Error::SpuriousMode { expected, found });
    }
    Ok(sol)
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
}

/// Nonrelativistic level `-2/(2n-1)²`, the default starting shift.
pub fn nonrelativistic_guess(qn: &QuantumNumbers) -> f64 {
    let d = 2.0 * f64::from(qn.n) - 1.0;
    -2.0 / (d * d)
}

/// One Richardson step on an `h²` scheme: `(4E(h/2) - E(h))/3`.
pub fn solve_extrapolated(qn: &QuantumNumbers, params: &PhysicalParams, field: f64, spec: &GridSpec) -> Result<f64> {
    let guess = nonrelativistic_guess(qn);
    let coarse = solve_radial_numeric(qn, params, field, spec, guess)?.energy;
    let fine = solve_radial_numeric(qn, params, field, &spec.with_points(2 * spec.points), guess)?.energy;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Central-difference slope `(E(+B) - E(-B)) / 2B` on a shared grid.
pub fn finite_field_slope(qn: &QuantumNumbers, params: &PhysicalParams, b_small: f64, spec: &GridSpec) -> Result<f64> {
    let guess = nonrelativistic_guess(qn);
    let plus = solve_radial_numeric(qn, params, b_small, spec, guess)?.energy;
    let minus = solve_radial_numeric(qn, params, -b_small, spec, guess)?.energy;
    Ok((plus - minus) / (2.0 * b_small))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halfint::HalfInt;
    use crate::quantum_numbers::validate_state;

    fn state(n: u32, k: i32, m: i32) -> QuantumNumbers {
        validate_state(n, HalfInt::from_twice(k), HalfInt::from_twice(m)).unwrap()
    }

    fn dense(m: &Tridiagonal) -> Vec<Vec<f64>> {
        let n = m.diag.len();
        let mut out = vec![vec![0.0; n]; n];
        for i in 0..n {
            out[i][i] = m.diag[i];
            if i + 1 < n {
                out[i][i + 1] = m.sup[i];
                out[i + 1][i] = m.sub[i];
            }
        }
        out
    }

    #[test]
    fn pivoted_tridiagonal_solve() {
        // small diagonal forces row interchanges
        let m = Tridiagonal {
            sub: vec![3.0, -2.0, 5.0, 1.0],
            diag: vec![1e-3, 0.0, 2.0, -1.0, 4.0],
            sup: vec![2.0, 1.0, -3.0, 0.5],
        };
        let a = dense(&m);
        let x_true = [1.0, -2.0, 0.5, 3.0, -1.5];
        let mut b: Vec<f64> = a.iter().map(|row| row.iter().zip(&x_true).map(|(p, q)| p * q).sum()).collect();
        TridiagonalLu::factor(m).solve(&mut b);
        for (got, want) in b.iter().zip(&x_true) {
            assert!((got - want).abs() < 1e-12, "{b:?}");
        }
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(0.0, 10.0, 1000, GridScheme::Log).is_err());
        assert!(GridSpec::new(1.0, 0.5, 1000, GridScheme::Log).is_err());
        assert!(GridSpec::new(1e-5, 10.0, 99, GridScheme::Log).is_err());
        assert!(GridSpec::new(1e-5, 10.0, 100, GridScheme::Uniform).is_ok());
    }

    #[test]
    fn ground_state_energy() {
        let qn = state(1, 1, 1);
        let p = PhysicalParams::hydrogen();
        let spec = GridSpec::default_for(&qn, 0.0);
        let sol = solve_radial_numeric(&qn, &p, 0.0, &spec, -2.0).unwrap();
        assert!((sol.energy + 2.000_106_514_052).abs() < 1e-4, "{}", sol.energy);
        assert_eq!(sol.large_component_nodes(), 0);
    }

    #[test]
    fn rejects_far_guess() {
        let qn = state(1, 1, 1);
        let p = PhysicalParams::hydrogen();
        let spec = GridSpec::default_for(&qn, 0.0).with_points(400);
        assert!(solve_radial_numeric(&qn, &p, 0.0, &spec, 0.5).is_err());
    }
}
