//! Bound states of the two-dimensional relativistic hydrogenic atom.
//!
//! The planar Dirac–Coulomb problem separates with the commuting set
//! `(H, K, j_z)`; every state is labelled by `(n, κ, μ)` and its radial pair
//! is a terminating power series times `r^γ e^{-αr}`. On top of the exact
//! field-free solutions the crate computes first-order energy shifts in a
//! perpendicular magnetic field, and cross-checks all of it against an
//! independent finite-difference eigensolver.
//!
//! ```
//! use dirac2d::{energy, validate_state, HalfInt, PhysicalParams};
//!
//! let half = HalfInt::from_twice(1);
//! let ground = validate_state(1, half, half).unwrap();
//! let e = energy(&ground, &PhysicalParams::hydrogen()).unwrap().e;
//! assert!((e + 2.000106514052).abs() < 1e-11);
//! ```

pub mod confluent;
pub mod error;
pub mod grid;
pub mod halfint;
pub mod magnetic;
pub mod polyexp;
pub mod quantum_numbers;
pub mod spectrum;
pub mod verify;
pub mod wavefunctions;

pub use error::{Error, Result};
pub use halfint::HalfInt;
pub use magnetic::{FirstOrderShift, RouteKind, RouteRegistry, ShiftRoute};
pub use polyexp::PolyExp;
pub use quantum_numbers::{
    enumerate_levels, enumerate_states, spectroscopic_label, validate_state, PhysicalParams, QuantumNumbers,
    SPEED_OF_LIGHT,
};
pub use spectrum::{energy, energy_nonrel, gamma_param, EnergyResult};
pub use verify::{run_verification, CheckResult, VerifyOptions};
pub use wavefunctions::{assemble_state, build_hypergeometric, build_radial, RadialSolution, SpinorState};
