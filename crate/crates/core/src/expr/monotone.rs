//! Splitting an expression's domain into monotone pieces.

use crate::error::Result;
use crate::expr::ast::{BinOp, RealExpr};
use crate::expr::function::{RealFunction, Univariate};

/// Derivative samples per piece.
const SAMPLES: usize = 256;

/// Points `a = p0 < p1 < … < pk = b` such that `f` is monotone on every
/// open piece `(p_i, p_{i+1})`, together with the subset of them where `f`
/// may jump.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonePieces {
    pub points: Vec<f64>,
    pub jumps: Vec<f64>,
}

/// Locates the monotone pieces of `f` on `[a, b]`.
///
/// Breakpoints are the endpoints, jump points and affine kinks. Between
/// them the piecewise derivative is sampled and every sign change is
/// bisected down to adjacent floats. Returns `None` when the derivative
/// cannot be evaluated somewhere or a denominator changes sign, which is
/// how poles inside the interval show up.
///
/// Sampling can miss a pair of sign changes closer together than the
/// sample spacing; callers should cross-check against a fine grid.
pub fn monotone_pieces(f: &Univariate, a: f64, b: f64) -> Result<Option<MonotonePieces>> {
    let jumps: Vec<f64> = f
        .jump_points()?
        .into_iter()
        .filter(|&t| a < t && t < b)
        .collect();
    let mut breaks = vec![a, b];
    breaks.extend(&jumps);
    breaks.extend(f.kink_points().into_iter().filter(|&t| a < t && t < b));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let slope = f.piecewise_derivative();
    let mut denominators = Vec::new();
    f.expr().walk(&mut |node| match node {
        RealExpr::Bin(BinOp::Div, _, d) => denominators.push(d.as_ref()),
        RealExpr::Pow(base, n) if *n < 0 => denominators.push(base.as_ref()),
        _ => {}
    });

    let mut points = vec![a];
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let no_pole = denominators.iter().all(|d| {
            let at = |t: f64| d.eval(t, t).ok().filter(|&v| v != 0.0);
            matches!(critical_points(&at, lo, hi), Some(c) if c.is_empty())
        });
        if !no_pole {
            return Ok(None);
        }
        let at = |t: f64| slope.eval(t).ok();
        let Some(critical) = critical_points(&at, lo, hi) else {
            return Ok(None);
        };
        points.extend(critical);
        points.push(hi);
    }
    points.dedup();
    Ok(Some(MonotonePieces { points, jumps }))
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Sign changes of `at` strictly inside `(lo, hi)`.
fn critical_points(at: &dyn Fn(f64) -> Option<f64>, lo: f64, hi: f64) -> Option<Vec<f64>> {
    let width = hi - lo;
    let mut out = Vec::new();
    let mut prev: Option<(f64, i8)> = None;
    for i in 0..SAMPLES {
        let t = lo + width * ((i as f64 + 0.5) / SAMPLES as f64);
        if t <= lo || t >= hi {
            continue;
        }
        // Zero samples carry no direction; a flat stretch is monotone both
        // ways, so only flips between nonzero samples matter.
        let s = sign(at(t)?);
        if s == 0 {
            continue;
        }
        if let Some((pt, ps)) = prev {
            if ps != s {
                out.push(bisect(at, pt, t, ps)?);
            }
        }
        prev = Some((t, s));
    }
    Some(out)
}

/// Narrows `[l, r]` where the sign flips from `left_sign` to its opposite.
fn bisect(at: &dyn Fn(f64) -> Option<f64>, mut l: f64, mut r: f64, left_sign: i8) -> Option<f64> {
    loop {
        let mid = l + (r - l) / 2.0;
        if mid <= l || mid >= r {
            return Some(mid);
        }
        match sign(at(mid)?) {
            0 => return Some(mid),
            s if s == left_sign => l = mid,
            _ => r = mid,
        }
    }
}
