//! Variation sums, total variation and discontinuity lines.

mod bruteforce;
mod total;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Component, Result};
use crate::expr::{HyperbolicFn, Natural, NaturalFunction, RealFunction};
use crate::hyperbolic::Hyperbolic;
use crate::intervals::{HInterval, StrongPartition};
use crate::numeric::exact_sum;

pub use bruteforce::{variation_sum_set_bruteforce, MAX_LATTICE_SIDE};
pub use total::{real_total_variation, total_variation, RealVariation, VariationEstimate};

/// Below this many points evaluation stays on the calling thread.
const PARALLEL_THRESHOLD: usize = 4096;

pub(crate) fn eval_all(f: &dyn RealFunction, points: &[f64]) -> Result<Vec<f64>> {
    if points.len() < PARALLEL_THRESHOLD {
        points.iter().map(|&t| f.eval(t)).collect()
    } else {
        points.par_iter().map(|&t| f.eval(t)).collect()
    }
}

/// `Σ |f(x_{j+1}) - f(x_j)|`, correctly rounded.
pub fn real_variation_sum(f: &dyn RealFunction, points: &[f64]) -> Result<f64> {
    let values = eval_all(f, points)?;
    Ok(exact_sum(values.windows(2).map(|w| (w[1] - w[0]).abs())))
}

/// `Σ |F(ρ_{j+1}) - F(ρ_j)|_k` over the points of `partition`.
pub fn variation_sum<F: HyperbolicFn + ?Sized>(
    f: &F,
    partition: &StrongPartition,
) -> Result<Hyperbolic> {
    let values = partition
        .points()
        .iter()
        .map(|&p| f.eval(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(Hyperbolic::exact_sum(
        values.windows(2).map(|w| w[1].metric(w[0])),
    ))
}

/// The variation sum of a natural function computed from the deduplicated
/// projections of `partition`. Equal to [`variation_sum`].
pub fn variation_sum_projected<F: Natural + ?Sized>(
    f: &F,
    partition: &StrongPartition,
) -> Result<Hyperbolic> {
    let (p1, p2) = partition.project();
    let v1 = real_variation_sum(f.e1(), &p1).map_err(|e| e.in_component(Component::E1))?;
    let v2 = real_variation_sum(f.e2(), &p2).map_err(|e| e.in_component(Component::E2))?;
    Ok(Hyperbolic::new(v1, v2))
}

/// Lines along which a natural function may be discontinuous: `x = c`
/// for each jump `c` of `f1` and `y = c` for each jump of `f2`.
///
/// A finite union of lines, so the discontinuity set has planar measure
/// zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscontinuityLines {
    pub vertical: Vec<f64>,
    pub horizontal: Vec<f64>,
}

pub fn discontinuity_lines(
    f: &NaturalFunction,
    interval: &HInterval,
) -> Result<DiscontinuityLines> {
    let (i1, i2) = interval.projections();
    let mut vertical = f.f1().jump_points()?;
    vertical.retain(|&t| i1.contains(t));
    let mut horizontal = f.f2().jump_points()?;
    horizontal.retain(|&t| i2.contains(t));
    Ok(DiscontinuityLines {
        vertical,
        horizontal,
    })
}
