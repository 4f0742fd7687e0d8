//! One-dimensional Riemann–Stieltjes sums and their refinement.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::RealFunction;
use crate::integration::{RsOptions, SumMode, TagRule};
use crate::intervals::{uniform_grid, RealInterval};
use crate::numeric::exact_sum;
use crate::variation::eval_all;

/// Points in the coarsest refinement level.
pub const START_POINTS: usize = 8;
/// The refinement grid never exceeds this many sub-intervals.
pub const MAX_SUBINTERVALS: usize = 1 << 20;
/// Levels allowed by [`MAX_SUBINTERVALS`].
pub const MAX_LEVELS: usize = 17;

/// A tag in `[l, r]` chosen by `rule`.
pub fn tag(rule: TagRule, l: f64, r: f64) -> f64 {
    match rule {
        TagRule::Left => l,
        TagRule::Right => r,
        TagRule::Midpoint => l + (r - l) / 2.0,
    }
}

fn increment(mode: SumMode, from: f64, to: f64) -> f64 {
    match mode {
        SumMode::Signed => to - from,
        SumMode::PaperAbs => (to - from).abs(),
    }
}

/// `Σ f(γ_j)·Δg_j` over consecutive `points`, with `Δg_j` signed or
/// absolute according to `mode`.
pub fn rs_sum(
    f: &dyn RealFunction,
    g: &dyn RealFunction,
    points: &[f64],
    tags: TagRule,
    mode: SumMode,
) -> Result<f64> {
    Ok(level(f, g, points, tags, mode)?.value)
}

/// One row of a refinement history.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Level {
    pub points: usize,
    pub value: f64,
    /// `Σ |f(x_{j+1}) - f(x_j)|·|Δg_j|`, a bound on how far any two tag
    /// choices can pull the sum apart on this grid.
    pub tag_gap: f64,
}

fn level(
    f: &dyn RealFunction,
    g: &dyn RealFunction,
    points: &[f64],
    tags: TagRule,
    mode: SumMode,
) -> Result<Level> {
    let gv = eval_all(g, points)?;
    let fv = eval_all(f, points)?;
    let tagged = match tags {
        TagRule::Left => fv[..fv.len().saturating_sub(1)].to_vec(),
        TagRule::Right => fv.get(1..).unwrap_or_default().to_vec(),
        TagRule::Midpoint => {
            let mids: Vec<f64> = points.windows(2).map(|w| tag(tags, w[0], w[1])).collect();
            eval_all(f, &mids)?
        }
    };
    let n = points.len().saturating_sub(1);
    let value = exact_sum((0..n).map(|j| tagged[j] * increment(mode, gv[j], gv[j + 1])));
    let tag_gap = exact_sum((0..n).map(|j| (fv[j + 1] - fv[j]).abs() * (gv[j + 1] - gv[j]).abs()));
    Ok(Level {
        points: points.len(),
        value,
        tag_gap,
    })
}

/// Outcome of refining one component.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealIntegral {
    pub value: f64,
    pub error_estimate: f64,
    pub refinements: usize,
    pub converged: bool,
    pub tag_gap: f64,
    pub history: Vec<Level>,
}

/// Ratio between the grid spacing and the cells placed around forced points.
pub const GRADING: f64 = 1024.0;

/// The grid of refinement level `k`: `8·2^k` uniform sub-intervals plus
/// the forced points strictly inside, each flanked by points `h/1024` away.
///
/// Without the flanking points a tag sits up to `h/2` from a jump of `g`,
/// which makes even midpoint sums converge only at first order.
pub fn level_grid(interval: RealInterval, k: usize, forced: &[f64]) -> Vec<f64> {
    let n = (START_POINTS << k.min(MAX_LEVELS)).min(MAX_SUBINTERVALS);
    let mut grid = uniform_grid(interval.lo, interval.hi, n);
    let offset = interval.width() / n as f64 / GRADING;
    grid.extend(
        forced
            .iter()
            .flat_map(|&t| [t - offset, t, t + offset])
            .filter(|&t| interval.lo < t && t < interval.hi),
    );
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// Refines uniform grids, with the jumps of `f` and `g` forced in, until
/// two successive sums differ by less than `tol` and the tag gap vanishes.
///
/// The gap condition is what catches a jump shared by `f` and `g`: one tag
/// rule can settle on a value while another settles elsewhere, and the gap
/// then stays at the product of the jumps instead of shrinking.
pub fn rs_integral(
    f: &dyn RealFunction,
    g: &dyn RealFunction,
    interval: RealInterval,
    options: &RsOptions,
) -> Result<RealIntegral> {
    options.check()?;
    if interval.lo == interval.hi {
        return Ok(RealIntegral {
            value: 0.0,
            error_estimate: 0.0,
            refinements: 0,
            converged: true,
            tag_gap: 0.0,
            history: Vec::new(),
        });
    }
    if interval.lo.partial_cmp(&interval.hi) != Some(std::cmp::Ordering::Less) {
        return Err(Error::InvalidArgument(
            "integration interval is reversed".into(),
        ));
    }
    let mut forced = f.jump_points()?;
    forced.extend(g.jump_points()?);

    let last = options.max_refinements.min(MAX_LEVELS);
    let mut history: Vec<Level> = Vec::new();
    let mut error_estimate = f64::INFINITY;
    let mut converged = false;
    for k in 0..=last {
        let grid = level_grid(interval, k, &forced);
        let row = level(f, g, &grid, options.tags, options.mode)?;
        if let Some(prev) = history.last() {
            error_estimate = (row.value - prev.value).abs();
            let gap_vanishing = row.tag_gap < options.tol || row.tag_gap <= 0.75 * prev.tag_gap;
            converged = error_estimate < options.tol && gap_vanishing;
        }
        history.push(row);
        if converged {
            break;
        }
    }
    let final_row = history[history.len() - 1];
    Ok(RealIntegral {
        value: final_row.value,
        error_estimate,
        refinements: history.len() - 1,
        converged,
        tag_gap: final_row.tag_gap,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, Univariate, Var};
    use crate::Component;

    fn uni(src: &str) -> Univariate {
        Univariate::new(parse(src).unwrap(), Var::X, Component::E1).unwrap()
    }

    const UNIT: RealInterval = RealInterval { lo: 0.0, hi: 1.0 };

    #[test]
    fn two_term_left_sum() {
        let id = uni("x");
        let s = rs_sum(&id, &id, &[0.0, 0.5, 1.0], TagRule::Left, SumMode::Signed).unwrap();
        assert_eq!(s, 0.25);
    }

    #[test]
    fn abs_mode_differs_for_decreasing_integrator() {
        let one = uni("1");
        let down = uni("-x");
        let pts = [0.0, 0.5, 1.0];
        assert_eq!(
            rs_sum(&one, &down, &pts, TagRule::Left, SumMode::Signed).unwrap(),
            -1.0
        );
        assert_eq!(
            rs_sum(&one, &down, &pts, TagRule::Left, SumMode::PaperAbs).unwrap(),
            1.0
        );
    }

    #[test]
    fn smooth_integral_converges() {
        let opts = RsOptions {
            mode: SumMode::Signed,
            ..RsOptions::default()
        };
        let r = rs_integral(&uni("x"), &uni("x^2"), UNIT, &opts).unwrap();
        assert!(r.converged);
        assert!((r.value - 2.0 / 3.0).abs() < 1e-6);
        assert!(r.error_estimate < opts.tol);
        assert_eq!(r.history.len(), r.refinements + 1);
    }

    #[test]
    fn left_tags_converge_too() {
        let opts = RsOptions {
            tol: 1e-5,
            tags: TagRule::Left,
            ..RsOptions::default()
        };
        let r = rs_integral(&uni("cos(x)"), &uni("x + H(x - 0.3)"), UNIT, &opts).unwrap();
        assert!(r.converged);
        let exact = 1f64.sin() + 0.3f64.cos();
        assert!((r.value - exact).abs() < 1e-4, "{}", r.value);
    }

    #[test]
    fn shared_jump_does_not_converge() {
        let step = uni("H(x - 1/2)");
        let r = rs_integral(&step, &step, UNIT, &RsOptions::default()).unwrap();
        assert!(!r.converged);
        assert!(r.tag_gap >= 0.5);
        assert_eq!(r.refinements, MAX_LEVELS);
    }

    #[test]
    fn capped_levels() {
        let opts = RsOptions {
            max_refinements: 3,
            tol: 1e-15,
            ..RsOptions::default()
        };
        let r = rs_integral(&uni("exp(x)"), &uni("x"), UNIT, &opts).unwrap();
        assert_eq!(r.refinements, 3);
        assert_eq!(r.history.last().unwrap().points, 65);
    }

    #[test]
    fn forced_points_enter_grid() {
        let g = level_grid(UNIT, 0, &[0.3, 0.5, 2.0]);
        // 9 uniform points, 0.3 with two flanks, flanks around the grid point 0.5
        assert_eq!(g.len(), 14);
        let offset = 1.0 / 8.0 / GRADING;
        for t in [0.3 - offset, 0.3, 0.3 + offset, 0.5 - offset, 0.5 + offset] {
            assert!(g.contains(&t), "{t} missing");
        }
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }
}
