//! Recursive-descent parser.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' int)?
//! atom   := number | 'x' | 'y' | func '(' expr ')' | '(' expr ')'
//! int    := '-'? digits | '(' '-'? digits ')'
//! func   := 'sin' | 'cos' | 'exp' | 'abs' | 'H'
//! ```
//!
//! Unary minus binds looser than `^`, so `-x^2` is `-(x^2)`.

use crate::error::{Error, Result};
use crate::expr::ast::{BinOp, Func, RealExpr, Var};
use crate::hyperbolic::scan_number;

pub fn parse(src: &str) -> Result<RealExpr> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<RealExpr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(b'+') => BinOp::Add,
                Some(b'-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = RealExpr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<RealExpr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(b'*') => BinOp::Mul,
                Some(b'/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = RealExpr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<RealExpr> {
        if self.eat(b'-') {
            Ok(RealExpr::Neg(Box::new(self.unary()?)))
        } else {
            self.factor()
        }
    }

    fn factor(&mut self) -> Result<RealExpr> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let paren = self.eat(b'(');
        let negative = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer exponent"));
        }
        let digits = &self.src[start..self.pos];
        let magnitude: i32 = digits.parse().map_err(|_| Error::Syntax {
            offset: start,
            message: "exponent out of range".into(),
        })?;
        if paren {
            self.expect(b')')?;
        }
        let n = if negative { -magnitude } else { magnitude };
        Ok(RealExpr::Pow(Box::new(base), n))
    }

    fn atom(&mut self) -> Result<RealExpr> {
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return Err(self.error("unexpected end of input")),
        };
        let bytes = self.src.as_bytes();

        if let Some(end) = scan_number(bytes, start, false) {
            self.pos = end;
            let v: f64 = self.src[start..end].parse().map_err(|_| Error::Syntax {
                offset: start,
                message: "malformed number".into(),
            })?;
            return Ok(RealExpr::Const(v));
        }

        if bytes[start] == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(b')')?;
            return Ok(e);
        }

        if bytes[start].is_ascii_alphabetic() {
            let mut end = start;
            while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                end += 1;
            }
            let name = &self.src[start..end];
            self.pos = end;
            let func = match name {
                "x" => return Ok(RealExpr::Var(Var::X)),
                "y" => return Ok(RealExpr::Var(Var::Y)),
                "sin" => Func::Sin,
                "cos" => Func::Cos,
                "exp" => Func::Exp,
                "abs" => Func::Abs,
                "H" => Func::Heaviside,
                _ => {
                    return Err(Error::UnknownIdentifier {
                        name: name.to_string(),
                        offset: start,
                    })
                }
            };
            self.expect(b'(')?;
            let arg = self.expr()?;
            self.expect(b')')?;
            return Ok(RealExpr::Call(func, Box::new(arg)));
        }

        Err(self.error("expected a number, variable, function or '('"))
    }
}
