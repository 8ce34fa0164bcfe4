//! Interchangeable strategies for the first-order shift, looked up by name.
//!
//! | name             | method                                       |
//! |------------------|----------------------------------------------|
//! | `quadrature`     | moments of the power-series pair             |
//! | `closed-n0`      | `μ(2γ+1)/(4κ)`, nodeless states only          |
//! | `closed-general` | `a, b, c, d` integrals of confluent polynomials |
//! | `closed`         | `closed-n0` when it applies, else `closed-general` |

use std::fmt;

use super::{shift_closed_general, shift_closed_n0, shift_quadrature, FirstOrderShift};
use crate::error::{Error, Result};
use crate::quantum_numbers::{PhysicalParams, QuantumNumbers};
use crate::wavefunctions::build_radial;

pub trait ShiftRoute: Send + Sync {
    fn name(&self) -> &'static str;

    fn applies_to(&self, _qn: &QuantumNumbers) -> bool {
        true
    }

    fn shift(&self, qn: &QuantumNumbers, params: &PhysicalParams) -> Result<FirstOrderShift>;
}

impl fmt::Debug for dyn ShiftRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ShiftRoute({})", self.name())
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Quadrature;

impl ShiftRoute for Quadrature {
    fn name(&self) -> &'static str {
        "quadrature"
    }

    fn shift(&self, qn: &QuantumNumbers, params: &PhysicalParams) -> Result<FirstOrderShift> {
        shift_quadrature(&build_radial(qn, params, true)?)
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct ClosedNodeless;

impl ShiftRoute for ClosedNodeless {
    fn name(&self) -> &'static str {
        "closed-n0"
    }

    fn applies_to(&self, qn: &QuantumNumbers) -> bool {
        qn.n_prime == 0
    }

    fn shift(&self, qn: &QuantumNumbers, params: &PhysicalParams) -> Result<FirstOrderShift> {
        shift_closed_n0(qn, params)
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct ClosedGeneral;

impl ShiftRoute for ClosedGeneral {
    fn name(&self) -> &'static str {
        "closed-general"
    }

    fn shift(&self, qn: &QuantumNumbers, params: &PhysicalParams) -> Result<FirstOrderShift> {
        shift_closed_general(qn, params)
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct ClosedAuto;

impl ShiftRoute for ClosedAuto {
    fn name(&self) -> &'static str {
        "closed"
    }

    fn shift(&self, qn: &QuantumNumbers, params: &PhysicalParams) -> Result<FirstOrderShift> {
        if ClosedNodeless.applies_to(qn) {
            ClosedNodeless.shift(qn, params)
        } else {
            ClosedGeneral.shift(qn, params)
        }
    }
}

pub struct RouteRegistry {
    routes: Vec<Box<dyn ShiftRoute>>,
}

impl RouteRegistry {
    pub fn empty() -> Self {
        Self { routes: Vec::new() }
    }

    /// Registry holding every built-in route.
    pub fn with_defaults() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(Quadrature));
        reg.register(Box::new(ClosedNodeless));
        reg.register(Box::new(ClosedGeneral));
        reg.register(Box::new(ClosedAuto));
        reg
    }

    /// Adds a route; a later registration replaces an earlier one of the same name.
    pub fn register(&mut self, route: Box<dyn ShiftRoute>) {
        self.routes.retain(|r| r.name() != route.name());
        self.routes.push(route);
    }

    pub fn get(&self, name: &str) -> Result<&dyn ShiftRoute> {
        self.routes
            .iter()
            .find(|r| r.name() == name)
            .map(|r| r.as_ref())
            .ok_or_else(|| Error::UnknownRoute(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.routes.iter().map(|r| r.name()).collect()
    }

    /// Runs the named route.
    pub fn shift(&self, name: &str, qn: &QuantumNumbers, params: &PhysicalParams) -> Result<FirstOrderShift> {
        self.get(name)?.shift(qn, params)
    }

    /// Every registered route that applies to `qn`, in registration order.
    pub fn applicable<'a>(&'a self, qn: &'a QuantumNumbers) -> impl Iterator<Item = &'a dyn ShiftRoute> + 'a {
        self.routes.iter().filter(move |r| r.applies_to(qn)).map(|r| r.as_ref())
    }
}

impl Default for RouteRegistry {
    fn default() -> Self {
        Self::with_defaults()
    }
}

impl fmt::Debug for RouteRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halfint::HalfInt;
    use crate::magnetic::RouteKind;
    use crate::quantum_numbers::validate_state;

    struct Constant;

    impl ShiftRoute for Constant {
        fn name(&self) -> &'static str {
            "quadrature"
        }

        fn shift(&self, _: &QuantumNumbers, _: &PhysicalParams) -> Result<FirstOrderShift> {
            Ok(FirstOrderShift { e1: 42.0, a1: None, a2: None, integrals: None, route: RouteKind::Quadrature })
        }
    }

    #[test]
    fn lookup_by_name() {
        let reg = RouteRegistry::with_defaults();
        assert_eq!(reg.names(), vec!["quadrature", "closed-n0", "closed-general", "closed"]);
        assert!(matches!(reg.get("simpson"), Err(Error::UnknownRoute(_))));
    }

    #[test]
    fn auto_route_dispatch() {
        let reg = RouteRegistry::with_defaults();
        let p = PhysicalParams::hydrogen();
        let h = HalfInt::from_twice;
        let nodeless = validate_state(1, h(1), h(1)).unwrap();
        let radial = validate_state(2, h(1), h(1)).unwrap();
        assert_eq!(reg.shift("closed", &nodeless, &p).unwrap().route, RouteKind::ClosedNodeless);
        assert_eq!(reg.shift("closed", &radial, &p).unwrap().route, RouteKind::ClosedGeneral);
        assert_eq!(reg.applicable(&radial).count(), 3);
        assert_eq!(reg.applicable(&nodeless).count(), 4);
    }

    #[test]
    fn registration_replaces_by_name() {
        let mut reg = RouteRegistry::with_defaults();
        reg.register(Box::new(Constant));
        assert_eq!(reg.names().len(), 4);
        let p = PhysicalParams::hydrogen();
        let qn = validate_state(1, HalfInt::HALF, HalfInt::HALF).unwrap();
        assert_eq!(reg.shift("quadrature", &qn, &p).unwrap().e1, 42.0);
    }
}
