//! Self-check suite behind `dirac2d verify`.
//!
//! Every check sweeps all states with `n ≤ 3` and reports the worst measured
//! deviation against its tolerance. Tolerances are multiplied by
//! [`VerifyOptions::tolerance_scale`], which exists so that a deliberately
//! corrupted run can be shown to fail.

use std::fmt;

use crate::error::Result;
use crate::grid::{finite_field_slope, nonrelativistic_guess, solve_extrapolated, solve_radial_numeric, GridSpec};
use crate::halfint::HalfInt;
use crate::magnetic::{shift_closed_general, shift_closed_n0, shift_nonrel, RouteRegistry};
use crate::quantum_numbers::{enumerate_states, validate_state, PhysicalParams, QuantumNumbers};
use crate::spectrum::{energy, energy_nonrel};
use crate::wavefunctions::{
    assemble_state, build_hypergeometric, build_radial, check_constants_of_motion, radial_residual,
    series_recurrence, weighted_overlap,
};

const N_MAX: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub with_grid: bool,
    pub tolerance_scale: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { with_grid: false, tolerance_scale: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Worst deviation found; zero for exact checks that hold.
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {:<28} worst {:.3e} (tol {:.1e})", self.name, self.measured, self.tolerance)?;
        if !self.detail.is_empty() {
            write!(f, "  {}", self.detail)?;
        }
        Ok(())
    }
}

/// Tracks the worst deviation and the state where it occurred.
struct Worst {
    value: f64,
    at: String,
}

impl Worst {
    fn new() -> Self {
        Self { value: 0.0, at: String::new() }
    }

    fn update(&mut self, value: f64, at: impl fmt::Display) {
        // NaN must never pass silently
        if value.is_nan() || value > self.value {
            self.value = if value.is_nan() { f64::INFINITY } else { value };
            self.at = at.to_string();
        }
    }

    fn into_check(self, name: &'static str, tolerance: f64) -> CheckResult {
        CheckResult { name, passed: self.value <= tolerance, measured: self.value, tolerance, detail: self.at }
    }
}

fn failed(name: &'static str, tolerance: f64, err: crate::Error) -> CheckResult {
    CheckResult { name, passed: false, measured: f64::INFINITY, tolerance, detail: err.to_string() }
}

fn run(name: &'static str, tolerance: f64, body: impl FnOnce(&mut Worst) -> Result<()>) -> CheckResult {
    let mut worst = Worst::new();
    match body(&mut worst) {
        Ok(()) => worst.into_check(name, tolerance),
        Err(e) => failed(name, tolerance, e),
    }
}

pub fn run_verification(opts: &VerifyOptions) -> Vec<CheckResult> {
    let s = opts.tolerance_scale;
    let p = PhysicalParams::hydrogen();
    let states = enumerate_states(N_MAX);
    let mut out = vec![
        check_residuals(&states, &p, 1e-12 * s),
        check_termination(&states, &p, 1e-12 * s),
        check_degeneracy(&states, &p),
        check_route_agreement(&states, &p, 1e-12 * s),
        check_nodeless_routes(&states, &p, 1e-12 * s),
        check_mu_antisymmetry(&states, &p),
        check_nonrel_limit(&states, 1e-9 * s),
        check_constants(&states, &p),
        check_orthogonality(&states, &p, 1e-10 * s),
        check_proportionality(&states, &p, 1e-12 * s),
    ];
    if opts.with_grid {
        out.extend([
            check_grid_energies(&p, 1e-6 * s),
            check_grid_convergence(&p, 0.2 * s),
            check_grid_slopes(&p, 1e-4 * s),
            check_grid_eigenvector(&p, 1e-3 * s),
        ]);
    }
    out
}

fn check_residuals(states: &[QuantumNumbers], p: &PhysicalParams, tol: f64) -> CheckResult {
    run("radial residuals", tol, |w| {
        for qn in states {
            w.update(radial_residual(&build_radial(qn, p, true)?)?.relative(), qn);
        }
        Ok(())
    })
}

fn check_termination(states: &[QuantumNumbers], p: &PhysicalParams, tol: f64) -> CheckResult {
    run("series termination", tol, |w| {
        for qn in states {
            let en = energy(qn, p)?;
            let k = qn.n_prime as usize;
            let (a, b) = series_recurrence(qn, &en, p.lambda(), k + 2);
            let scale = a[..=k].iter().chain(&b[..=k]).fold(0.0f64, |m, v| m.max(v.abs()));
            w.update(a[k + 1].abs().max(b[k + 1].abs()) / scale, qn);
        }
        Ok(())
    })
}

fn check_degeneracy(states: &[QuantumNumbers], p: &PhysicalParams) -> CheckResult {
    run("kappa degeneracy (exact)", 0.0, |w| {
        for qn in states.iter().filter(|q| q.kappa.twice() < 0) {
            let partner = validate_state(qn.n, -qn.kappa, qn.mu)?;
            let (e1, e2) = (energy(qn, p)?.e, energy(&partner, p)?.e);
            if e1.to_bits() != e2.to_bits() {
                w.update((e1 - e2).abs().max(f64::MIN_POSITIVE), qn);
            }
        }
        Ok(())
    })
}

fn check_route_agreement(states: &[QuantumNumbers], p: &PhysicalParams, tol: f64) -> CheckResult {
    let reg = RouteRegistry::with_defaults();
    run("route agreement", tol, |w| {
        for qn in states {
            let quad = reg.shift("quadrature", qn, p)?.e1;
            let closed = reg.shift("closed", qn, p)?.e1;
            w.update((quad - closed).abs() / quad.abs().max(1.0), qn);
        }
        Ok(())
    })
}

fn check_nodeless_routes(states: &[QuantumNumbers], p: &PhysicalParams, tol: f64) -> CheckResult {
    run("nodeless closed forms", tol, |w| {
        for qn in states.iter().filter(|q| q.n_prime == 0) {
            let simple = shift_closed_n0(qn, p)?.e1;
            let general = shift_closed_general(qn, p)?.e1;
            w.update((simple - general).abs() / simple.abs(), qn);
        }
        Ok(())
    })
}

fn check_mu_antisymmetry(states: &[QuantumNumbers], p: &PhysicalParams) -> CheckResult {
    let reg = RouteRegistry::with_defaults();
    run("mu antisymmetry (exact)", 0.0, |w| {
        for qn in states {
            for route in ["quadrature", "closed"] {
                let up = reg.shift(route, qn, p)?.e1;
                let down = reg.shift(route, &qn.flipped_mu(), p)?.e1;
                w.update((up + down).abs(), format_args!("{qn} via {route}"));
            }
        }
        Ok(())
    })
}

fn check_nonrel_limit(states: &[QuantumNumbers], tol: f64) -> CheckResult {
    let reg = RouteRegistry::with_defaults();
    run("nonrelativistic limit", tol, |w| {
        let p = PhysicalParams::new(1.0, 1e6)?;
        for qn in states {
            w.update((energy(qn, &p)?.e - energy_nonrel(qn.n)).abs(), format_args!("{qn} energy"));
            w.update((reg.shift("closed", qn, &p)?.e1 - shift_nonrel(qn)).abs(), format_args!("{qn} shift"));
        }
        Ok(())
    })
}

fn check_constants(states: &[QuantumNumbers], p: &PhysicalParams) -> CheckResult {
    run("constants of motion", 0.0, |w| {
        for qn in states {
            let report = check_constants_of_motion(&assemble_state(&build_radial(qn, p, true)?));
            if !report.all_passed() {
                let names: Vec<String> = report.failed().iter().map(ToString::to_string).collect();
                w.update(1.0, format_args!("{qn}: {}", names.join(", ")));
            }
        }
        Ok(())
    })
}

fn check_orthogonality(states: &[QuantumNumbers], p: &PhysicalParams, tol: f64) -> CheckResult {
    run("same-kappa orthogonality", tol, |w| {
        let sols = states
            .iter()
            .filter(|q| q.mu.twice() > 0)
            .map(|q| build_radial(q, p, true))
            .collect::<Result<Vec<_>>>()?;
        for (i, s1) in sols.iter().enumerate() {
            for s2 in sols[i + 1..].iter().filter(|s| s.qn.kappa == s1.qn.kappa) {
                let overlap = weighted_overlap(&s1.large, &s1.small, &s2.large, &s2.small, p.lambda())?;
                w.update(overlap.abs(), format_args!("{} vs {}", s1.qn, s2.qn));
            }
        }
        Ok(())
    })
}

/// Radii `10^{-2} … 10^{1.3}`, log-spaced.
pub fn proportionality_radii() -> Vec<f64> {
    (0..20).map(|i| 10f64.powf(-2.0 + 3.3 * f64::from(i) / 19.0)).collect()
}

fn check_proportionality(states: &[QuantumNumbers], p: &PhysicalParams, tol: f64) -> CheckResult {
    run("hypergeometric vs series", tol, |w| {
        for qn in states {
            let sol = build_radial(qn, p, false)?;
            let (fh, gh) = build_hypergeometric(qn, p)?;
            // the leading small-component coefficients never cancel, unlike
            // (κ + 1/α) - n' in F for κ < 0
            let c0 = gh.coeffs()[0] / sol.small.coeffs()[0];
            for r in proportionality_radii() {
                for (hyp, ser) in [(&fh, &sol.large), (&gh, &sol.small)] {
                    let diff = hyp.eval(r)? - c0 * ser.eval(r)?;
                    // sum of absolute terms bounds the rounding in either form
                    let cond = hyp.eval_abs_terms(r)?.max((c0 * ser.eval_abs_terms(r)?).abs());
                    w.update(diff.abs() / cond, format_args!("{qn} at r = {r:.3}"));
                }
            }
        }
        Ok(())
    })
}

fn h(twice: i32) -> HalfInt {
    HalfInt::from_twice(twice)
}

/// 1s, 2s, 2p3/2 with `μ = +|κ|`.
fn grid_states() -> Result<Vec<QuantumNumbers>> {
    [(1, 1), (2, 1), (2, 3)].into_iter().map(|(n, k)| validate_state(n, h(k), h(k))).collect()
}

fn check_grid_energies(p: &PhysicalParams, tol: f64) -> CheckResult {
    run("grid energies", tol, |w| {
        for qn in grid_states()? {
            let numeric = solve_extrapolated(&qn, p, 0.0, &GridSpec::default_for(&qn, 0.0))?;
            w.update((numeric - energy(&qn, p)?.e).abs(), qn);
        }
        Ok(())
    })
}

/// Deviation of the error ratio under h-halving from 4, relative to 4.
fn check_grid_convergence(p: &PhysicalParams, tol: f64) -> CheckResult {
    run("grid convergence order", tol, |w| {
        for qn in &grid_states()?[..2] {
            let exact = energy(qn, p)?.e;
            let spec = GridSpec::default_for(qn, 0.0);
            let guess = nonrelativistic_guess(qn);
            let coarse = solve_radial_numeric(qn, p, 0.0, &spec, guess)?.energy - exact;
            let fine = solve_radial_numeric(qn, p, 0.0, &spec.with_points(2 * spec.points), guess)?.energy - exact;
            let ratio = coarse / fine;
            w.update((ratio - 4.0).abs() / 4.0, format_args!("{qn}: ratio {ratio:.4}"));
        }
        Ok(())
    })
}

fn check_grid_slopes(p: &PhysicalParams, tol: f64) -> CheckResult {
    let reg = RouteRegistry::with_defaults();
    run("grid field slopes", tol, |w| {
        for qn in [grid_states()?[0], grid_states()?[2]] {
            let slope = finite_field_slope(&qn, p, 1e-4, &GridSpec::default_for(&qn, 1e-4))?;
            w.update((slope - reg.shift("closed", &qn, p)?.e1).abs(), qn);
        }
        Ok(())
    })
}

/// Ten radii across the bulk of the state, where linear interpolation of the
/// grid vector is meaningful.
pub fn eigenvector_radii(qn: &QuantumNumbers) -> Vec<f64> {
    let outer = 3.0 * f64::from(qn.n * qn.n);
    (0..10).map(|i| 0.1 * (outer / 0.1).powf(f64::from(i) / 9.0)).collect()
}

fn check_grid_eigenvector(p: &PhysicalParams, tol: f64) -> CheckResult {
    run("grid eigenvector", tol, |w| {
        for qn in grid_states()? {
            let exact = build_radial(&qn, p, true)?;
            let spec = GridSpec::default_for(&qn, 0.0);
            let numeric = solve_radial_numeric(&qn, p, 0.0, &spec, nonrelativistic_guess(&qn))?;
            for r in eigenvector_radii(&qn) {
                let (f, g) = numeric.amplitudes_at(r).ok_or_else(|| crate::Error::Internal(format!("r = {r} off grid")))?;
                let (fa, ga) = (exact.large.eval(r)?, exact.small.eval(r)?);
                // F and G never vanish together, so the pair norm is a safe scale
                w.update((f - fa).hypot(g - ga) / fa.hypot(ga), format_args!("{qn} at r = {r:.3}"));
            }
        }
        Ok(())
    })
}
