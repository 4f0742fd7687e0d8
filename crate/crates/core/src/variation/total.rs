use serde::Serialize;

use crate::error::{Component, Error, Result};
use crate::expr::{monotone_pieces, MonotonePieces, Natural, RealFunction, Side, Univariate};
use crate::hyperbolic::Hyperbolic;
use crate::intervals::{uniform_grid, HInterval, RealInterval};
use crate::numeric::exact_sum;
use crate::variation::real_variation_sum;

/// Grid used to cross-check a certified value.
const CHECK_POINTS: usize = 4096;
/// Uniform subdivisions of each gap between breakpoints before refining.
const START_SUBDIVISIONS: usize = 64;
/// Refinement stops growing the grid beyond this many points.
const MAX_POINTS: usize = 1 << 22;
/// Minimum refinement levels before the increase test may stop early.
const MIN_LEVELS: usize = 3;

/// Total variation of a real function over a real interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RealVariation {
    pub value: f64,
    pub partitions_used: usize,
    pub converged: bool,
    /// The value is a refinement lower bound rather than a certified total.
    pub lower_bound_only: bool,
}

/// Total variation of a natural hyperbolic function, one component per
/// idempotent projection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VariationEstimate {
    pub value: Hyperbolic,
    pub partitions_used: usize,
    pub converged: bool,
    pub lower_bound_only: bool,
}

/// Total variation of `f` on `interval`.
///
/// Parsed expressions that split into monotone pieces get the exact
/// telescoped value. Anything else, including callbacks, is estimated by
/// bisecting a grid through the jump points until an extra level adds less
/// than `tol`; that estimate is a lower bound.
pub fn real_total_variation(
    f: &dyn RealFunction,
    interval: RealInterval,
    tol: f64,
    max_depth: usize,
) -> Result<RealVariation> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let RealInterval { lo: a, hi: b } = interval;
    if a == b {
        return Ok(RealVariation {
            value: 0.0,
            partitions_used: 1,
            converged: true,
            lower_bound_only: false,
        });
    }
    if let Some(expr) = f.expression() {
        if let Some(pieces) = monotone_pieces(expr, a, b)? {
            let value = certified_value(expr, &pieces, a, b)?;
            if passes_grid_check(f, &pieces, a, b, value)? {
                return Ok(RealVariation {
                    value,
                    partitions_used: 1,
                    converged: true,
                    lower_bound_only: false,
                });
            }
        }
    }
    refine(f, a, b, tol, max_depth)
}

/// Sum of the rises of each monotone piece plus every jump, taking
/// one-sided limits at the breakpoints.
fn certified_value(f: &Univariate, pieces: &MonotonePieces, a: f64, b: f64) -> Result<f64> {
    let mut terms = Vec::with_capacity(3 * pieces.points.len());
    for &p in &pieces.points {
        let at = f.eval(p)?;
        if p > a {
            terms.push((at - f.one_sided(p, Side::Left)?).abs());
        }
        if p < b {
            terms.push((f.one_sided(p, Side::Right)? - at).abs());
        }
    }
    for w in pieces.points.windows(2) {
        let right_of_start = f.one_sided(w[0], Side::Right)?;
        let left_of_end = f.one_sided(w[1], Side::Left)?;
        terms.push((left_of_end - right_of_start).abs());
    }
    Ok(exact_sum(terms))
}

/// No partition can beat the true total variation, so a fine grid that
/// does is evidence the derivative sampling missed an extremum.
fn passes_grid_check(
    f: &dyn RealFunction,
    pieces: &MonotonePieces,
    a: f64,
    b: f64,
    certified: f64,
) -> Result<bool> {
    let mut grid = uniform_grid(a, b, CHECK_POINTS);
    grid.extend(&pieces.points);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let probe = real_variation_sum(f, &grid)?;
    Ok(probe <= certified + 1e-9 * certified.max(1.0))
}

fn refine(
    f: &dyn RealFunction,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: usize,
) -> Result<RealVariation> {
    let mut breaks = vec![a, b];
    breaks.extend(f.jump_points()?.into_iter().filter(|&t| a < t && t < b));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let mut grid: Vec<f64> = Vec::new();
    for w in breaks.windows(2) {
        let mut gap = uniform_grid(w[0], w[1], START_SUBDIVISIONS);
        gap.pop();
        grid.extend(gap);
    }
    grid.push(b);
    grid.dedup();

    let mut value = real_variation_sum(f, &grid)?;
    let mut used = 1;
    let mut converged = false;
    while used <= max_depth && 2 * grid.len() <= MAX_POINTS {
        grid = bisect_all(&grid);
        let next = real_variation_sum(f, &grid)?;
        used += 1;
        let increase = next - value;
        value = value.max(next);
        if used > MIN_LEVELS && increase < tol {
            converged = true;
            break;
        }
    }
    Ok(RealVariation {
        value,
        partitions_used: used,
        converged,
        lower_bound_only: true,
    })
}

fn bisect_all(grid: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * grid.len());
    for w in grid.windows(2) {
        out.push(w[0]);
        let mid = w[0] + (w[1] - w[0]) / 2.0;
        if w[0] < mid && mid < w[1] {
            out.push(mid);
        }
    }
    out.push(grid[grid.len() - 1]);
    out
}

/// Total variation of a natural function, computed separately on each
/// projection of `interval`. The components run in parallel and are
/// bit-identical to [`real_total_variation`] on the projections.
pub fn total_variation<F: Natural + ?Sized>(
    f: &F,
    interval: &HInterval,
    tol: f64,
    max_depth: usize,
) -> Result<VariationEstimate> {
    let (i1, i2) = interval.projections();
    let (r1, r2) = rayon::join(
        || {
            real_total_variation(f.e1(), i1, tol, max_depth)
                .map_err(|e| e.in_component(Component::E1))
        },
        || {
            real_total_variation(f.e2(), i2, tol, max_depth)
                .map_err(|e| e.in_component(Component::E2))
        },
    );
    let (r1, r2) = (r1?, r2?);
    Ok(VariationEstimate {
        value: Hyperbolic::new(r1.value, r2.value),
        partitions_used: r1.partitions_used.max(r2.partitions_used),
        converged: r1.converged && r2.converged,
        lower_bound_only: r1.lower_bound_only || r2.lower_bound_only,
    })
}
