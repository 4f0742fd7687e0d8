use std::collections::HashMap;

use serde::Serialize;

use crate::error::{End, Error, Result};
use crate::hyperbolic::Hyperbolic;
use crate::intervals::HInterval;

/// A finite chain `ρ0 ⪯ ρ1 ⪯ … ⪯ ρn` of distinct points running from the
/// lower to the upper endpoint of an interval.
///
/// Consecutive points may agree in one component, which yields degenerate
/// sub-intervals; they never agree in both.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrongPartition {
    interval: HInterval,
    points: Vec<Hyperbolic>,
}

fn key(x: Hyperbolic) -> (u64, u64) {
    // `+ 0.0` folds -0.0 into 0.0 so the key agrees with `==`.
    ((x.a1 + 0.0).to_bits(), (x.a2 + 0.0).to_bits())
}

impl StrongPartition {
    /// Checks the defining clauses in order: endpoints, distinctness, chain.
    pub fn validate(points: Vec<Hyperbolic>, interval: HInterval) -> Result<Self> {
        let (first, last) = match (points.first(), points.last()) {
            (Some(f), Some(l)) => (*f, *l),
            _ => return Err(Error::InvalidArgument("partition has no points".into())),
        };
        for p in &points {
            p.check_finite("partition point")?;
        }
        if first != interval.lo() {
            return Err(Error::EndpointMismatch {
                which: End::First,
                expected: interval.lo(),
                found: first,
            });
        }
        if last != interval.hi() {
            return Err(Error::EndpointMismatch {
                which: End::Last,
                expected: interval.hi(),
                found: last,
            });
        }
        let mut seen = HashMap::with_capacity(points.len());
        for (index, p) in points.iter().enumerate() {
            if let Some(&first) = seen.get(&key(*p)) {
                return Err(Error::DuplicatePoint { index, first });
            }
            seen.insert(key(*p), index);
        }
        if let Some(index) = points.windows(2).position(|w| !w[0].precedes(w[1])) {
            return Err(Error::NotAChain { index });
        }
        Ok(Self { interval, points })
    }

    /// Caller guarantees the invariants.
    pub(crate) fn from_parts(interval: HInterval, points: Vec<Hyperbolic>) -> Self {
        debug_assert!(Self::validate(points.clone(), interval).is_ok());
        Self { interval, points }
    }

    /// The two-point partition `{lo, hi}`, or `{lo}` when `lo = hi`.
    pub fn trivial(interval: HInterval) -> Self {
        let mut points = vec![interval.lo()];
        if interval.hi() != interval.lo() {
            points.push(interval.hi());
        }
        Self { interval, points }
    }

    /// `n + 1` points `lo + (j/n)(hi - lo)` on the diagonal of the interval.
    ///
    /// A zero-width component stays frozen at its endpoint; only a fully
    /// degenerate interval (`lo = hi`) is rejected for `n > 1`.
    pub fn uniform(interval: HInterval, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "uniform partition needs n >= 1".into(),
            ));
        }
        if interval.lo() == interval.hi() {
            return if n == 1 {
                Ok(Self::trivial(interval))
            } else {
                Err(Error::DegenerateInterval)
            };
        }
        let (p1, p2) = interval.projections();
        let g1 = uniform_grid(p1.lo, p1.hi, n);
        let g2 = uniform_grid(p2.lo, p2.hi, n);
        let mut points: Vec<Hyperbolic> = g1
            .into_iter()
            .zip(g2)
            .map(|(a1, a2)| Hyperbolic::new(a1, a2))
            .collect();
        // Only reachable for widths near the float resolution.
        points.dedup();
        Ok(Self::from_parts(interval, points))
    }

    pub fn interval(&self) -> &HInterval {
        &self.interval
    }

    pub fn points(&self) -> &[Hyperbolic] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Hyperbolic> {
        self.points
    }

    /// Number of sub-intervals.
    pub fn len(&self) -> usize {
        self.points.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The sub-intervals `[ρj, ρj+1]_k`.
    pub fn subintervals(&self) -> impl Iterator<Item = HInterval> + '_ {
        self.points
            .windows(2)
            .map(|w| HInterval::closed(w[0], w[1]).expect("chain is ordered"))
    }

    /// Sum of the sub-interval lengths. Equals the interval length whenever
    /// the differences are exact, e.g. on dyadic points.
    pub fn telescoped_lengths(&self) -> Hyperbolic {
        Hyperbolic::exact_sum(self.points.windows(2).map(|w| w[1] - w[0]))
    }

    /// The projection sets with consecutive repeats removed. The chain
    /// property makes both strictly increasing real partitions.
    pub fn project(&self) -> (Vec<f64>, Vec<f64>) {
        let mut p1: Vec<f64> = self.points.iter().map(|p| p.a1).collect();
        let mut p2: Vec<f64> = self.points.iter().map(|p| p.a2).collect();
        p1.dedup();
        p2.dedup();
        (p1, p2)
    }

    /// `diam(P_e1) e1 + diam(P_e2) e2`.
    pub fn diameter(&self) -> Hyperbolic {
        let (p1, p2) = self.project();
        Hyperbolic::new(real_diameter(&p1), real_diameter(&p2))
    }

    /// Inserts the componentwise midpoint of every sub-interval.
    pub fn refine(&self) -> Self {
        let mut points = Vec::with_capacity(2 * self.points.len());
        for w in self.points.windows(2) {
            points.push(w[0]);
            let mid = Hyperbolic::new(midpoint(w[0].a1, w[1].a1), midpoint(w[0].a2, w[1].a2));
            if mid != w[0] && mid != w[1] {
                points.push(mid);
            }
        }
        points.extend(self.points.last());
        Self::from_parts(self.interval, points)
    }
}

fn midpoint(a: f64, b: f64) -> f64 {
    a + (b - a) / 2.0
}

/// `n + 1` points from `lo` to `hi`, nondecreasing, with exact endpoints.
pub(crate) fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let width = hi - lo;
    let mut grid: Vec<f64> = (0..=n)
        .map(|j| (lo + width * j as f64 / n as f64).min(hi))
        .collect();
    grid[n] = hi;
    grid
}

/// Largest gap between successive points; zero for fewer than two points.
pub fn real_diameter(points: &[f64]) -> f64 {
    points.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
}

/// Free-function form of [`StrongPartition::validate`].
pub fn validate_strong(points: Vec<Hyperbolic>, interval: HInterval) -> Result<StrongPartition> {
    StrongPartition::validate(points, interval)
}

/// Free-function form of [`StrongPartition::uniform`].
pub fn uniform_partition(interval: HInterval, n: usize) -> Result<StrongPartition> {
    StrongPartition::uniform(interval, n)
}
