//! Hyperbolic-valued functions built from real components.

use crate::error::{Component, Error, Result};
use crate::expr::ast::{RealExpr, Side, Var};
use crate::expr::diff;
use crate::expr::parse;
use crate::hyperbolic::Hyperbolic;

/// A real function of one real variable.
///
/// Closures `Fn(f64) -> f64` implement this directly, which is how opaque
/// callbacks enter the library. Parsed expressions additionally expose their
/// tree, unlocking jump detection and exact variation.
pub trait RealFunction: Sync {
    fn eval(&self, t: f64) -> Result<f64>;

    /// Points where the function may jump. Callbacks report none.
    fn jump_points(&self) -> Result<Vec<f64>> {
        Ok(Vec::new())
    }

    fn expression(&self) -> Option<&Univariate> {
        None
    }
}

impl<F: Fn(f64) -> f64 + Sync> RealFunction for F {
    fn eval(&self, t: f64) -> Result<f64> {
        let v = self(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow { component: None })
        }
    }
}

/// An expression in a single variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Univariate {
    expr: RealExpr,
    var: Var,
}

impl Univariate {
    /// Fails with `VariableMismatch` if `expr` mentions the other variable.
    pub fn new(expr: RealExpr, var: Var, component: Component) -> Result<Self> {
        let other = match var {
            Var::X => Var::Y,
            Var::Y => Var::X,
        };
        if expr.mentions(other) {
            return Err(Error::VariableMismatch {
                component,
                allowed: var.name(),
            });
        }
        Ok(Univariate { expr, var })
    }

    pub fn expr(&self) -> &RealExpr {
        &self.expr
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn one_sided(&self, t: f64, side: Side) -> Result<f64> {
        self.expr.eval_one_sided(self.var, t, side)
    }

    pub fn derivative(&self) -> Result<Univariate> {
        Ok(Univariate {
            expr: self.expr.differentiate(self.var)?,
            var: self.var,
        })
    }

    /// Derivative valid away from jumps and kinks.
    pub fn piecewise_derivative(&self) -> Univariate {
        Univariate {
            expr: self.expr.differentiate_piecewise(self.var),
            var: self.var,
        }
    }

    pub fn kink_points(&self) -> Vec<f64> {
        self.expr.kink_points(self.var)
    }

    pub(crate) fn times(&self, other: &Univariate) -> Univariate {
        debug_assert_eq!(self.var, other.var);
        Univariate {
            expr: diff::mul(self.expr.clone(), other.expr.clone()),
            var: self.var,
        }
    }
}

impl RealFunction for Univariate {
    fn eval(&self, t: f64) -> Result<f64> {
        self.expr.eval(t, t)
    }

    fn jump_points(&self) -> Result<Vec<f64>> {
        self.expr.jump_points(self.var)
    }

    fn expression(&self) -> Option<&Univariate> {
        Some(self)
    }
}

/// A function `D -> D` evaluated pointwise.
pub trait HyperbolicFn: Sync {
    fn eval(&self, xi: Hyperbolic) -> Result<Hyperbolic>;
}

/// `F = F1(x) e1 + F2(y) e2`: each component sees only its own projection.
pub trait Natural: Sync {
    fn e1(&self) -> &dyn RealFunction;
    fn e2(&self) -> &dyn RealFunction;

    fn component(&self, c: Component) -> &dyn RealFunction {
        match c {
            Component::E1 => self.e1(),
            Component::E2 => self.e2(),
        }
    }
}

impl<T: Natural + ?Sized> HyperbolicFn for T {
    fn eval(&self, xi: Hyperbolic) -> Result<Hyperbolic> {
        let a1 = self
            .e1()
            .eval(xi.a1)
            .map_err(|e| e.in_component(Component::E1))?;
        let a2 = self
            .e2()
            .eval(xi.a2)
            .map_err(|e| e.in_component(Component::E2))?;
        Ok(Hyperbolic::new(a1, a2))
    }
}

/// A natural function given by expressions, `f1` in `x` and `f2` in `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct NaturalFunction {
    f1: Univariate,
    f2: Univariate,
}

impl NaturalFunction {
    pub fn new(f1: RealExpr, f2: RealExpr) -> Result<Self> {
        Ok(NaturalFunction {
            f1: Univariate::new(f1, Var::X, Component::E1)?,
            f2: Univariate::new(f2, Var::Y, Component::E2)?,
        })
    }

    pub fn parse(f1: &str, f2: &str) -> Result<Self> {
        Self::new(parse(f1)?, parse(f2)?)
    }

    /// `Id_k(ξ) = ξ`.
    pub fn identity() -> Self {
        Self::new(RealExpr::x(), RealExpr::y()).expect("identity is natural")
    }

    pub fn constant(c: Hyperbolic) -> Self {
        Self::new(RealExpr::Const(c.a1), RealExpr::Const(c.a2)).expect("constants are natural")
    }

    pub fn f1(&self) -> &Univariate {
        &self.f1
    }

    pub fn f2(&self) -> &Univariate {
        &self.f2
    }

    /// `F'(ξ) = F1'(x) e1 + F2'(y) e2`.
    pub fn derivative(&self) -> Result<NaturalFunction> {
        Ok(NaturalFunction {
            f1: self.f1.derivative()?,
            f2: self.f2.derivative()?,
        })
    }

    /// Pointwise product `F·G`.
    pub fn times(&self, other: &NaturalFunction) -> NaturalFunction {
        NaturalFunction {
            f1: self.f1.times(&other.f1),
            f2: self.f2.times(&other.f2),
        }
    }
}

impl Natural for NaturalFunction {
    fn e1(&self) -> &dyn RealFunction {
        &self.f1
    }

    fn e2(&self) -> &dyn RealFunction {
        &self.f2
    }
}

/// `F1(x) e1 + F2(y) e2` for the components of `f` at `xi`, with errors
/// tagged by component.
pub fn eval_natural(f: &NaturalFunction, xi: Hyperbolic) -> Result<Hyperbolic> {
    HyperbolicFn::eval(f, xi)
}

/// A natural function from any two real functions, typically closures.
pub struct NaturalPair<A, B>(pub A, pub B);

impl<A: RealFunction, B: RealFunction> Natural for NaturalPair<A, B> {
    fn e1(&self) -> &dyn RealFunction {
        &self.0
    }

    fn e2(&self) -> &dyn RealFunction {
        &self.1
    }
}

/// Components that may depend on both projections.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralFunction {
    g1: RealExpr,
    g2: RealExpr,
}

impl GeneralFunction {
    pub fn new(g1: RealExpr, g2: RealExpr) -> Self {
        GeneralFunction { g1, g2 }
    }

    pub fn parse(g1: &str, g2: &str) -> Result<Self> {
        Ok(Self::new(parse(g1)?, parse(g2)?))
    }

    pub fn g1(&self) -> &RealExpr {
        &self.g1
    }

    pub fn g2(&self) -> &RealExpr {
        &self.g2
    }

    /// The natural function with the same components, if each depends only
    /// on its own variable.
    pub fn to_natural(&self) -> Result<NaturalFunction> {
        NaturalFunction::new(self.g1.clone(), self.g2.clone())
    }
}

impl HyperbolicFn for GeneralFunction {
    fn eval(&self, xi: Hyperbolic) -> Result<Hyperbolic> {
        let a1 = self
            .g1
            .eval(xi.a1, xi.a2)
            .map_err(|e| e.in_component(Component::E1))?;
        let a2 = self
            .g2
            .eval(xi.a1, xi.a2)
            .map_err(|e| e.in_component(Component::E2))?;
        Ok(Hyperbolic::new(a1, a2))
    }
}

/// Wraps a closure on hyperbolic numbers.
pub struct FnHyperbolic<F>(pub F);

impl<F: Fn(Hyperbolic) -> Hyperbolic + Sync> HyperbolicFn for FnHyperbolic<F> {
    fn eval(&self, xi: Hyperbolic) -> Result<Hyperbolic> {
        (self.0)(xi).check_finite("function value")
    }
}
