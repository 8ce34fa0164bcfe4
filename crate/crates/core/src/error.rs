use thiserror::Error;

use crate::halfint::HalfInt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("principal quantum number must be >= 1, got {0}")]
    InvalidPrincipal(u32),

    #[error("kappa = {kappa} is not an allowed half-odd-integer for n = {n}")]
    InvalidKappa { n: u32, kappa: HalfInt },

    #[error("kappa = {kappa} < 0 is forbidden for a nodeless (n' = 0) state")]
    ForbiddenNegativeKappa { kappa: HalfInt },

    #[error("|mu| = |{mu}| must equal |kappa| = |{kappa}|")]
    MuMismatch { kappa: HalfInt, mu: HalfInt },

    #[error("invalid physical parameters: {0}")]
    InvalidParams(String),

    #[error("supercritical charge: lambda = {lambda} >= kappa^2 = {kappa_sq}")]
    SupercriticalCharge { lambda: f64, kappa_sq: f64 },

    #[error("decay rate must be positive, got {0}")]
    NonPositiveDecay(f64),

    #[error("cannot combine terms with decay rates {0} and {1}")]
    IncompatibleBeta(f64, f64),

    #[error("power exponents {0} and {1} do not differ by an integer")]
    NonIntegerGammaGap(f64, f64),

    #[error("empty linear combination")]
    EmptyCombination,

    #[error("integral diverges: gamma = {gamma}, beta = {beta}")]
    DivergentIntegral { gamma: f64, beta: f64 },

    #[error("cannot evaluate r^{gamma} at r = {r}")]
    DomainError { gamma: f64, r: f64 },

    #[error("route `{route}` is not applicable: {reason}")]
    NotApplicable { route: &'static str, reason: String },

    #[error("denominator c*kappa + d = {0} is numerically zero")]
    DegenerateDenominator(f64),

    #[error("unknown shift route `{0}`")]
    UnknownRoute(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("no eigenvalue near {guess} (closest found {found})")]
    NoEigenvalueNear { guess: f64, found: f64 },

    #[error("eigenvalue iteration did not converge: {0}")]
    ConvergenceFailure(String),

    #[error("converged to a mode with {found} nodes, expected {expected}")]
    SpuriousMode { expected: usize, found: usize },
}
