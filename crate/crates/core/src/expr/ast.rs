use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn name(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Abs,
    /// Right-continuous unit step: `H(u) = 0` for `u < 0`, `1` for `u >= 0`.
    Heaviside,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Abs => "abs",
            Func::Heaviside => "H",
        }
    }

    pub fn apply(self, u: f64) -> f64 {
        match self {
            Func::Sin => u.sin(),
            Func::Cos => u.cos(),
            Func::Exp => u.exp(),
            Func::Abs => u.abs(),
            Func::Heaviside => heaviside(u),
        }
    }
}

pub fn heaviside(u: f64) -> f64 {
    if u < 0.0 {
        0.0
    } else {
        1.0
    }
}

/// Expression tree for a real function of `x` and/or `y`.
#[derive(Debug, Clone, PartialEq)]
pub enum RealExpr {
    Const(f64),
    Var(Var),
    Bin(BinOp, Box<RealExpr>, Box<RealExpr>),
    /// Integer power.
    Pow(Box<RealExpr>, i32),
    Neg(Box<RealExpr>),
    Call(Func, Box<RealExpr>),
}

/// Side from which a one-sided limit is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn finite(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow { component: None })
    }
}

impl RealExpr {
    pub fn x() -> Self {
        RealExpr::Var(Var::X)
    }

    pub fn y() -> Self {
        RealExpr::Var(Var::Y)
    }

    /// Evaluates at `(x, y)`. Division by zero and non-finite intermediate
    /// values are errors, so a successful result is always finite.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        self.eval_with(x, y, &|_, _| None)
    }

    /// Evaluates a single-variable expression as the limit from `side` at
    /// `t`. Only steps whose argument vanishes exactly at `t` behave
    /// differently from [`RealExpr::eval`].
    pub fn eval_one_sided(&self, var: Var, t: f64, side: Side) -> Result<f64> {
        let step = |f: Func, arg: &RealExpr| -> Option<f64> {
            if f != Func::Heaviside {
                return None;
            }
            let (slope, offset) = arg.affine_in(var)?;
            if slope == 0.0 || t != -offset / slope {
                return None;
            }
            // The argument crosses zero at `t` with the sign of `slope`.
            let before_is_negative = slope > 0.0;
            Some(match (side, before_is_negative) {
                (Side::Left, true) | (Side::Right, false) => 0.0,
                _ => 1.0,
            })
        };
        self.eval_with(t, t, &step)
    }

    fn eval_with(
        &self,
        x: f64,
        y: f64,
        hook: &dyn Fn(Func, &RealExpr) -> Option<f64>,
    ) -> Result<f64> {
        match self {
            RealExpr::Const(c) => Ok(*c),
            RealExpr::Var(Var::X) => Ok(x),
            RealExpr::Var(Var::Y) => Ok(y),
            RealExpr::Bin(op, a, b) => {
                let a = a.eval_with(x, y, hook)?;
                let b = b.eval_with(x, y, hook)?;
                finite(match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => {
                        if b == 0.0 {
                            return Err(Error::DivByZero { component: None });
                        }
                        a / b
                    }
                })
            }
            RealExpr::Pow(a, n) => {
                let a = a.eval_with(x, y, hook)?;
                if a == 0.0 && *n < 0 {
                    return Err(Error::DivByZero { component: None });
                }
                finite(a.powi(*n))
            }
            RealExpr::Neg(a) => Ok(-a.eval_with(x, y, hook)?),
            RealExpr::Call(f, a) => {
                if let Some(v) = hook(*f, a) {
                    return Ok(v);
                }
                finite(f.apply(a.eval_with(x, y, hook)?))
            }
        }
    }

    pub fn mentions(&self, var: Var) -> bool {
        match self {
            RealExpr::Const(_) => false,
            RealExpr::Var(v) => *v == var,
            RealExpr::Bin(_, a, b) => a.mentions(var) || b.mentions(var),
            RealExpr::Pow(a, _) | RealExpr::Neg(a) | RealExpr::Call(_, a) => a.mentions(var),
        }
    }

    /// Whether some node applies `func`.
    pub fn contains(&self, func: Func) -> bool {
        match self {
            RealExpr::Const(_) | RealExpr::Var(_) => false,
            RealExpr::Bin(_, a, b) => a.contains(func) || b.contains(func),
            RealExpr::Pow(a, _) | RealExpr::Neg(a) => a.contains(func),
            RealExpr::Call(f, a) => *f == func || a.contains(func),
        }
    }

    /// Calls `visit` on every node, parents first.
    pub fn walk<'a>(&'a self, visit: &mut dyn FnMut(&'a RealExpr)) {
        visit(self);
        match self {
            RealExpr::Const(_) | RealExpr::Var(_) => {}
            RealExpr::Bin(_, a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
            RealExpr::Pow(a, _) | RealExpr::Neg(a) | RealExpr::Call(_, a) => a.walk(visit),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            RealExpr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
            RealExpr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
            RealExpr::Neg(_) => 3,
            RealExpr::Const(c) if c.is_sign_negative() => 3,
            RealExpr::Pow(..) => 4,
            _ => 5,
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &RealExpr, min: u8) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Renders in the parser's grammar with the fewest parentheses that keep
/// the tree shape.
impl fmt::Display for RealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealExpr::Const(c) => write!(f, "{c}"),
            RealExpr::Var(v) => write!(f, "{}", v.name()),
            RealExpr::Bin(op, a, b) => {
                let (p, sym) = match op {
                    BinOp::Add => (1, " + "),
                    BinOp::Sub => (1, " - "),
                    BinOp::Mul => (2, "*"),
                    BinOp::Div => (2, "/"),
                };
                write_operand(f, a, p)?;
                f.write_str(sym)?;
                write_operand(f, b, p + 1)
            }
            RealExpr::Pow(a, n) => {
                write_operand(f, a, 5)?;
                write!(f, "^{n}")
            }
            RealExpr::Neg(a) => {
                f.write_str("-")?;
                write_operand(f, a, 3)
            }
            RealExpr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}
