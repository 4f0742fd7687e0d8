//! Symbolic differentiation and affine analysis.

use crate::error::{Error, Result};
use crate::expr::ast::{BinOp, Func, RealExpr, Var};

// Smart constructors folding the trivial identities, so derivatives stay
// readable ("2*x" rather than "2*x^1*1").

pub(crate) fn constant(c: f64) -> RealExpr {
    RealExpr::Const(c)
}

fn as_const(e: &RealExpr) -> Option<f64> {
    match e {
        RealExpr::Const(c) => Some(*c),
        _ => None,
    }
}

pub(crate) fn add(a: RealExpr, b: RealExpr) -> RealExpr {
    match (as_const(&a), as_const(&b)) {
        (Some(x), Some(y)) => constant(x + y),
        (Some(0.0), _) => b,
        (_, Some(0.0)) => a,
        _ => RealExpr::Bin(BinOp::Add, Box::new(a), Box::new(b)),
    }
}

pub(crate) fn sub(a: RealExpr, b: RealExpr) -> RealExpr {
    match (as_const(&a), as_const(&b)) {
        (Some(x), Some(y)) => constant(x - y),
        (Some(0.0), _) => neg(b),
        (_, Some(0.0)) => a,
        _ => RealExpr::Bin(BinOp::Sub, Box::new(a), Box::new(b)),
    }
}

pub(crate) fn mul(a: RealExpr, b: RealExpr) -> RealExpr {
    match (as_const(&a), as_const(&b)) {
        (Some(x), Some(y)) => constant(x * y),
        (Some(0.0), _) | (_, Some(0.0)) => constant(0.0),
        (Some(1.0), _) => b,
        (_, Some(1.0)) => a,
        (Some(-1.0), _) => neg(b),
        (_, Some(-1.0)) => neg(a),
        // Keep constants in front.
        (None, Some(_)) => RealExpr::Bin(BinOp::Mul, Box::new(b), Box::new(a)),
        _ => RealExpr::Bin(BinOp::Mul, Box::new(a), Box::new(b)),
    }
}

pub(crate) fn div(a: RealExpr, b: RealExpr) -> RealExpr {
    match (as_const(&a), as_const(&b)) {
        (Some(0.0), _) => constant(0.0),
        (_, Some(1.0)) => a,
        _ => RealExpr::Bin(BinOp::Div, Box::new(a), Box::new(b)),
    }
}

pub(crate) fn neg(a: RealExpr) -> RealExpr {
    match a {
        RealExpr::Const(c) => constant(-c),
        RealExpr::Neg(inner) => *inner,
        other => RealExpr::Neg(Box::new(other)),
    }
}

pub(crate) fn pow(a: RealExpr, n: i32) -> RealExpr {
    match n {
        0 => constant(1.0),
        1 => a,
        _ => RealExpr::Pow(Box::new(a), n),
    }
}

pub(crate) fn call(f: Func, a: RealExpr) -> RealExpr {
    RealExpr::Call(f, Box::new(a))
}

impl RealExpr {
    /// Symbolic derivative with respect to `var`. Fails on any `abs` or `H`
    /// node, wherever it occurs.
    pub fn differentiate(&self, var: Var) -> Result<RealExpr> {
        self.derive(var, false)
    }

    /// Derivative valid away from the zeros of `abs` and `H` arguments:
    /// `abs(u)' = (2*H(u) - 1)*u'` and `H(u)' = 0`.
    pub fn differentiate_piecewise(&self, var: Var) -> RealExpr {
        self.derive(var, true)
            .expect("piecewise differentiation is total")
    }

    fn derive(&self, var: Var, piecewise: bool) -> Result<RealExpr> {
        Ok(match self {
            RealExpr::Const(_) => constant(0.0),
            RealExpr::Var(v) => constant(if *v == var { 1.0 } else { 0.0 }),
            RealExpr::Bin(op, a, b) => {
                let da = a.derive(var, piecewise)?;
                let db = b.derive(var, piecewise)?;
                let (a, b) = (a.as_ref().clone(), b.as_ref().clone());
                match op {
                    BinOp::Add => add(da, db),
                    BinOp::Sub => sub(da, db),
                    BinOp::Mul => add(mul(da, b), mul(a, db)),
                    BinOp::Div => div(sub(mul(da, b.clone()), mul(a, db)), pow(b, 2)),
                }
            }
            RealExpr::Pow(a, n) => {
                let da = a.derive(var, piecewise)?;
                if *n == 0 {
                    constant(0.0)
                } else {
                    mul(
                        mul(constant(f64::from(*n)), pow(a.as_ref().clone(), n - 1)),
                        da,
                    )
                }
            }
            RealExpr::Neg(a) => neg(a.derive(var, piecewise)?),
            RealExpr::Call(f, a) => {
                let inner = a.as_ref().clone();
                let outer = match f {
                    Func::Sin => call(Func::Cos, inner),
                    Func::Cos => neg(call(Func::Sin, inner)),
                    Func::Exp => call(Func::Exp, inner),
                    Func::Abs if piecewise => sub(
                        mul(constant(2.0), call(Func::Heaviside, inner)),
                        constant(1.0),
                    ),
                    Func::Heaviside if piecewise => return Ok(constant(0.0)),
                    Func::Abs => return Err(Error::NotDifferentiable("abs")),
                    Func::Heaviside => return Err(Error::NotDifferentiable("heaviside")),
                };
                mul(outer, a.derive(var, piecewise)?)
            }
        })
    }

    /// `(slope, offset)` when the expression equals `slope*var + offset`
    /// structurally. Other variables make it non-affine.
    pub fn affine_in(&self, var: Var) -> Option<(f64, f64)> {
        match self {
            RealExpr::Const(c) => Some((0.0, *c)),
            RealExpr::Var(v) => (*v == var).then_some((1.0, 0.0)),
            RealExpr::Bin(op, a, b) => {
                let (sa, oa) = a.affine_in(var)?;
                let (sb, ob) = b.affine_in(var)?;
                match op {
                    BinOp::Add => Some((sa + sb, oa + ob)),
                    BinOp::Sub => Some((sa - sb, oa - ob)),
                    BinOp::Mul if sa == 0.0 => Some((oa * sb, oa * ob)),
                    BinOp::Mul if sb == 0.0 => Some((sa * ob, oa * ob)),
                    BinOp::Div if sb == 0.0 && ob != 0.0 => Some((sa / ob, oa / ob)),
                    _ => None,
                }
            }
            RealExpr::Pow(a, n) => {
                let (s, o) = a.affine_in(var)?;
                match n {
                    0 => Some((0.0, 1.0)),
                    1 => Some((s, o)),
                    _ if s == 0.0 && (o != 0.0 || *n > 0) => Some((0.0, o.powi(*n))),
                    _ => None,
                }
            }
            RealExpr::Neg(a) => a.affine_in(var).map(|(s, o)| (-s, -o)),
            RealExpr::Call(f, a) => match a.affine_in(var)? {
                (0.0, o) => Some((0.0, f.apply(o))),
                _ => None,
            },
        }
    }

    /// Sorted, deduplicated roots of the arguments of every `func` node.
    /// Arguments constant in `var` contribute nothing.
    fn affine_roots(&self, var: Var, func: Func) -> Result<Vec<f64>> {
        let mut roots = Vec::new();
        let mut non_affine = false;
        self.walk(&mut |node| {
            if let RealExpr::Call(f, arg) = node {
                if *f != func {
                    return;
                }
                match arg.affine_in(var) {
                    Some((0.0, _)) => {}
                    Some((s, o)) => roots.push(-o / s),
                    None => non_affine = true,
                }
            }
        });
        if non_affine {
            return Err(Error::NonAffineJump);
        }
        roots.retain(|r: &f64| r.is_finite());
        roots.sort_by(f64::total_cmp);
        roots.dedup();
        Ok(roots)
    }

    /// Points where a step `H(u)` switches, sorted. Every step argument must
    /// be affine in `var`.
    pub fn jump_points(&self, var: Var) -> Result<Vec<f64>> {
        self.affine_roots(var, Func::Heaviside)
    }

    /// Zeros of affine `abs` arguments. Kinks of non-affine arguments are
    /// left to derivative sampling.
    pub fn kink_points(&self, var: Var) -> Vec<f64> {
        let mut out = Vec::new();
        self.walk(&mut |node| {
            if let RealExpr::Call(Func::Abs, arg) = node {
                if let Some((s, o)) = arg.affine_in(var) {
                    if s != 0.0 && (-o / s).is_finite() {
                        out.push(-o / s);
                    }
                }
            }
        });
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::parse;

    use super::*;

    fn d(src: &str) -> String {
        parse(src)
            .unwrap()
            .differentiate(Var::X)
            .unwrap()
            .to_string()
    }

    #[test]
    fn textbook_derivatives() {
        assert_eq!(d("x^2"), "2*x");
        assert_eq!(d("sin(x)"), "cos(x)");
        assert_eq!(d("cos(x)"), "-sin(x)");
        assert_eq!(d("exp(2*x)"), "2*exp(2*x)");
        assert_eq!(d("3"), "0");
        assert_eq!(d("x^0"), "0");
        assert_eq!(d("y^2"), "0");
        assert_eq!(d("1/x"), "-1/x^2");
    }

    #[test]
    fn excluded_nodes() {
        let abs = parse("abs(x)").unwrap();
        assert_eq!(
            abs.differentiate(Var::X),
            Err(Error::NotDifferentiable("abs"))
        );
        let step = parse("x + H(x)").unwrap();
        assert_eq!(
            step.differentiate(Var::X),
            Err(Error::NotDifferentiable("heaviside"))
        );
        let piecewise = abs.differentiate_piecewise(Var::X);
        assert_eq!(piecewise.eval(-2.0, 0.0).unwrap(), -1.0);
        assert_eq!(piecewise.eval(3.0, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn affine_forms() {
        let e = parse("2*(x - 1/4) + 3").unwrap();
        assert_eq!(e.affine_in(Var::X), Some((2.0, 2.5)));
        assert_eq!(
            parse("x/4 - 1").unwrap().affine_in(Var::X),
            Some((0.25, -1.0))
        );
        assert_eq!(parse("x*x").unwrap().affine_in(Var::X), None);
        assert_eq!(parse("x + y").unwrap().affine_in(Var::X), None);
        assert_eq!(
            parse("sin(2)*x").unwrap().affine_in(Var::X),
            Some((2f64.sin(), 0.0))
        );
    }

    #[test]
    fn jumps() {
        let e = parse("H(x-1/3) + H(x-2/3)").unwrap();
        assert_eq!(e.jump_points(Var::X).unwrap(), vec![1.0 / 3.0, 2.0 / 3.0]);
        assert_eq!(
            parse("x^2").unwrap().jump_points(Var::X).unwrap(),
            Vec::<f64>::new()
        );
        assert_eq!(
            parse("H(x^2-1)").unwrap().jump_points(Var::X),
            Err(Error::NonAffineJump)
        );
        let dup = parse("H(x - 0.5) - H(2*x - 1) + H(1)").unwrap();
        assert_eq!(dup.jump_points(Var::X).unwrap(), vec![0.5]);
    }

    #[test]
    fn kinks() {
        let e = parse("abs(x - 1) + abs(3 - 2*x) + abs(x^2)").unwrap();
        assert_eq!(e.kink_points(Var::X), vec![1.0, 1.5]);
    }
}
