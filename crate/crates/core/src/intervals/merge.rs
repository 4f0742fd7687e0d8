//! Building a strong partition out of two real partitions.
//!
//! Each step advances the `e1` index, the `e2` index, or both, never neither,
//! so consecutive points are ordered and distinct. The generic step rule
//! leaves the choice open; [`MergeMode`] pins it down.

use serde::{Deserialize, Serialize};

use crate::error::{End, Error, Result};
use crate::hyperbolic::Hyperbolic;
use crate::intervals::{HInterval, StrongPartition};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MergeMode {
    /// Advance both indices together until one list runs out.
    #[default]
    Diagonal,
    /// Walk all of `P` along `e1` first, then all of `Q`.
    E1First,
    /// Walk all of `Q` along `e2` first, then all of `P`.
    E2First,
}

fn check_real_partition(points: &[f64], which: char) -> Result<()> {
    if points.is_empty() {
        return Err(Error::EndpointMissing {
            which,
            end: End::First,
        });
    }
    if let Some(index) = points.iter().position(|x| !x.is_finite()) {
        return Err(Error::UnsortedInput { which, index });
    }
    if let Some(i) = points.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::UnsortedInput {
            which,
            index: i + 1,
        });
    }
    Ok(())
}

/// Merges `P ⊂ [a1, b1]` and `Q ⊂ [a2, b2]` into a strong partition of
/// `[a1 e1 + a2 e2, b1 e1 + b2 e2]_k`. The endpoints are taken from the
/// first and last entries of each list.
pub fn merge_real_partitions(p: &[f64], q: &[f64], mode: MergeMode) -> Result<StrongPartition> {
    check_real_partition(p, 'P')?;
    check_real_partition(q, 'Q')?;
    let (sp, sq) = (p.len() - 1, q.len() - 1);
    let at = |i: usize, j: usize| Hyperbolic::new(p[i], q[j]);

    let points: Vec<Hyperbolic> = match mode {
        MergeMode::Diagonal => (0..=sp.max(sq)).map(|k| at(k.min(sp), k.min(sq))).collect(),
        MergeMode::E1First => (0..=sp)
            .map(|i| at(i, 0))
            .chain((1..=sq).map(|j| at(sp, j)))
            .collect(),
        MergeMode::E2First => (0..=sq)
            .map(|j| at(0, j))
            .chain((1..=sp).map(|i| at(i, sq)))
            .collect(),
    };
    let interval = HInterval::closed(at(0, 0), at(sp, sq))?;
    Ok(StrongPartition::from_parts(interval, points))
}

/// Like [`merge_real_partitions`], but also requires `P` and `Q` to start
/// and end at the projections of `interval`.
pub fn merge_within(
    interval: &HInterval,
    p: &[f64],
    q: &[f64],
    mode: MergeMode,
) -> Result<StrongPartition> {
    let (i1, i2) = interval.projections();
    for (pts, which, proj) in [(p, 'P', i1), (q, 'Q', i2)] {
        if pts.first() != Some(&proj.lo) {
            return Err(Error::EndpointMissing {
                which,
                end: End::First,
            });
        }
        if pts.last() != Some(&proj.hi) {
            return Err(Error::EndpointMissing {
                which,
                end: End::Last,
            });
        }
    }
    let merged = merge_real_partitions(p, q, mode)?;
    Ok(StrongPartition::from_parts(*interval, merged.into_points()))
}
