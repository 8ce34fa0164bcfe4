mod common;

use common::state;
use dirac2d::grid::{
    finite_field_slope, nonrelativistic_guess, solve_extrapolated, solve_radial_numeric, GridScheme, GridSpec,
};
use dirac2d::verify::eigenvector_radii;
use dirac2d::{build_radial, energy, Error, PhysicalParams, QuantumNumbers, RouteRegistry};

fn analytic_shift(qn: &QuantumNumbers, p: &PhysicalParams) -> f64 {
    RouteRegistry::with_defaults().shift("closed", qn, p).unwrap().e1
}

#[test]
fn field_free_energies_after_extrapolation() {
    let p = PhysicalParams::hydrogen();
    for (qn, table) in [(state(1, 1, 1), -2.000_106_514_052), (state(2, 3, 3), -0.222_223_537_086)] {
        let numeric = solve_extrapolated(&qn, &p, 0.0, &GridSpec::default_for(&qn, 0.0)).unwrap();
        assert!((numeric - table).abs() < 1e-6, "{qn}: {numeric}");
    }
    let qn = state(2, 1, 1);
    let numeric = solve_extrapolated(&qn, &p, 0.0, &GridSpec::default_for(&qn, 0.0)).unwrap();
    assert!((numeric - energy(&qn, &p).unwrap().e).abs() < 1e-6);
}

#[test]
fn thirty_bohr_box_for_ground_state() {
    let p = PhysicalParams::hydrogen();
    let qn = state(1, 1, 1);
    let spec = GridSpec::new(1e-8, 30.0, 4000, GridScheme::Log).unwrap();
    let e = solve_extrapolated(&qn, &p, 0.0, &spec).unwrap();
    assert!((e + 2.000_106_514_052).abs() < 1e-6, "{e}");
}

#[test]
fn opposite_kappa_partners_are_degenerate_on_the_grid() {
    let p = PhysicalParams::hydrogen();
    let (plus, minus) = (state(2, 1, 1), state(2, -1, 1));
    let spec = GridSpec::default_for(&plus, 0.0);
    let e_plus = solve_extrapolated(&plus, &p, 0.0, &spec).unwrap();
    let e_minus = solve_extrapolated(&minus, &p, 0.0, &spec).unwrap();
    assert!((e_plus - e_minus).abs() < 1e-8, "{e_plus} vs {e_minus}");
}

#[test]
fn second_order_convergence() {
    let p = PhysicalParams::hydrogen();
    for qn in [state(1, 1, 1), state(2, 1, 1)] {
        let exact = energy(&qn, &p).unwrap().e;
        let spec = GridSpec::default_for(&qn, 0.0);
        let guess = nonrelativistic_guess(&qn);
        let errors: Vec<f64> = [1, 2, 4]
            .iter()
            .map(|m| solve_radial_numeric(&qn, &p, 0.0, &spec.with_points(m * spec.points), guess).unwrap().energy - exact)
            .collect();
        for w in errors.windows(2) {
            let ratio = w[0] / w[1];
            assert!((ratio - 4.0).abs() <= 0.8, "{qn}: ratio {ratio}, errors {errors:?}");
        }
    }
}

#[test]
fn uniform_grid_also_converges() {
    let p = PhysicalParams::hydrogen();
    let qn = state(2, 3, 3);
    let spec = GridSpec::new(1e-4, 40.0, 4000, GridScheme::Uniform).unwrap();
    let e = solve_extrapolated(&qn, &p, 0.0, &spec).unwrap();
    assert!((e - energy(&qn, &p).unwrap().e).abs() < 1e-6, "{e}");
}

#[test]
fn eigenvector_matches_analytic_pair() {
    let p = PhysicalParams::hydrogen();
    for qn in [state(1, 1, 1), state(2, 1, 1), state(2, 3, 3), state(3, -3, 3)] {
        let exact = build_radial(&qn, &p, true).unwrap();
        let spec = GridSpec::default_for(&qn, 0.0);
        let numeric = solve_radial_numeric(&qn, &p, 0.0, &spec, nonrelativistic_guess(&qn)).unwrap();
        assert_eq!(numeric.large_component_nodes(), (qn.n - qn.l - 1) as usize);
        let radii = eigenvector_radii(&qn);
        assert_eq!(radii.len(), 10);
        for r in radii {
            let (f, g) = numeric.amplitudes_at(r).unwrap();
            let (fa, ga) = (exact.large.eval(r).unwrap(), exact.small.eval(r).unwrap());
            let err = (f - fa).hypot(g - ga) / fa.hypot(ga);
            assert!(err < 1e-3, "{qn} r = {r}: ({f}, {g}) vs ({fa}, {ga})");
        }
    }
}

#[test]
fn slopes_reproduce_first_order_shifts() {
    let p = PhysicalParams::hydrogen();
    for qn in [state(1, 1, 1), state(2, 3, 3), state(2, 3, -3), state(3, 5, 5)] {
        let slope = finite_field_slope(&qn, &p, 1e-4, &GridSpec::default_for(&qn, 1e-4)).unwrap();
        let e1 = analytic_shift(&qn, &p);
        assert!((slope - e1).abs() < 1e-4, "{qn}: {slope} vs {e1}");
    }
}

#[test]
fn slopes_are_antisymmetric_in_mu() {
    let p = PhysicalParams::hydrogen();
    for qn in [state(1, 1, 1), state(2, -1, 1), state(3, -3, 3)] {
        let spec = GridSpec::default_for(&qn, 1e-4);
        let up = finite_field_slope(&qn, &p, 1e-4, &spec).unwrap();
        let down = finite_field_slope(&qn.flipped_mu(), &p, 1e-4, &spec).unwrap();
        assert!((up + down).abs() < 2e-6, "{qn}: {up} vs {down}");
    }
}

#[test]
fn tiny_p_half_slope_on_tightened_grid() {
    // E⁽¹⁾ ≈ -3e-6 sits far below the default grid's slope error
    let p = PhysicalParams::hydrogen();
    let qn = state(2, -1, 1);
    let spec = GridSpec::default_for(&qn, 1e-4).with_points(16_000);
    let slope = finite_field_slope(&qn, &p, 1e-4, &spec).unwrap();
    let e1 = analytic_shift(&qn, &p);
    assert!((slope - e1).abs() < 1e-6, "{slope} vs {e1}");
    assert!(slope < 0.0);
}

#[test]
fn guess_and_grid_errors() {
    let p = PhysicalParams::hydrogen();
    let qn = state(1, 1, 1);
    let spec = GridSpec::default_for(&qn, 0.0).with_points(500);
    assert!(matches!(
        solve_radial_numeric(&qn, &p, 0.0, &spec, 0.1),
        Err(Error::NoEigenvalueNear { .. })
    ));
    // a guess near 2s converges to 2s, whose radial node is wrong for a 1s request
    let excited = solve_radial_numeric(&qn, &p, 0.0, &spec, -0.2);
    assert!(matches!(excited, Err(Error::SpuriousMode { expected: 0, found: 1 })), "{excited:?}");
    assert!(matches!(GridSpec::new(1e-5, 30.0, 50, GridScheme::Log), Err(Error::InvalidGrid(_))));
}

#[test]
fn field_runs_use_a_wider_box() {
    let qn = state(2, 1, 1);
    let off = GridSpec::default_for(&qn, 0.0);
    let on = GridSpec::default_for(&qn, 1e-4);
    assert_eq!(on.r_max, 1.5 * off.r_max);
    assert_eq!(on.points, 4000);
}
