use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperbolic::Hyperbolic;
use crate::intervals::HInterval;
use crate::numeric::exact_sum;

/// Sub-intervals whose lengths add up to the length of the whole interval.
///
/// Only the length identity is checked. Members may be disjoint and need not
/// cover the interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeakPartition {
    interval: HInterval,
    subintervals: Vec<HInterval>,
}

impl WeakPartition {
    pub fn interval(&self) -> &HInterval {
        &self.interval
    }

    pub fn subintervals(&self) -> &[HInterval] {
        &self.subintervals
    }
}

/// Correctly rounded sum of the lengths.
pub fn total_length(subintervals: &[HInterval]) -> Hyperbolic {
    Hyperbolic::exact_sum(subintervals.iter().map(HInterval::length))
}

/// Accepts iff the summed lengths equal `interval.length()` exactly.
pub fn validate_weak(subintervals: Vec<HInterval>, interval: HInterval) -> Result<WeakPartition> {
    validate_weak_with_tolerance(subintervals, interval, 0.0)
}

/// As [`validate_weak`], allowing an absolute per-component slack.
pub fn validate_weak_with_tolerance(
    subintervals: Vec<HInterval>,
    interval: HInterval,
    tolerance: f64,
) -> Result<WeakPartition> {
    if subintervals.is_empty() {
        return Err(Error::InvalidArgument(
            "weak partition has no members".into(),
        ));
    }
    let actual = total_length(&subintervals);
    let expected = interval.length();
    let gap = actual.metric(expected);
    if gap.a1 > tolerance || gap.a2 > tolerance {
        return Err(Error::LengthMismatch { actual, expected });
    }
    Ok(WeakPartition {
        interval,
        subintervals,
    })
}

/// Axis-aligned cells with disjoint interiors whose Euclidean areas add up
/// to the area of the interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularPartition {
    interval: HInterval,
    cells: Vec<HInterval>,
}

impl RegularPartition {
    pub fn interval(&self) -> &HInterval {
        &self.interval
    }

    pub fn cells(&self) -> &[HInterval] {
        &self.cells
    }

    pub fn total_area(&self) -> f64 {
        exact_sum(self.cells.iter().map(HInterval::area))
    }
}

/// Relative tolerance on the area identity.
pub const AREA_RTOL: f64 = 1e-12;

pub fn validate_regular(cells: Vec<HInterval>, interval: HInterval) -> Result<RegularPartition> {
    if cells.is_empty() {
        return Err(Error::InvalidArgument(
            "regular partition has no cells".into(),
        ));
    }
    if let Some(index) = cells.iter().position(|c| !interval.encloses(c)) {
        return Err(Error::CellOutsideInterval { index });
    }
    for (i, a) in cells.iter().enumerate() {
        if let Some(j) = cells[i + 1..].iter().position(|b| a.interiors_overlap(b)) {
            return Err(Error::OverlappingCells {
                first: i,
                second: i + 1 + j,
            });
        }
    }
    let actual = exact_sum(cells.iter().map(HInterval::area));
    let expected = interval.area();
    if (actual - expected).abs() > AREA_RTOL * expected {
        return Err(Error::AreaMismatch { actual, expected });
    }
    Ok(RegularPartition { interval, cells })
}
