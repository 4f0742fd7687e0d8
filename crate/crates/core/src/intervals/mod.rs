//! Hyperbolic intervals and their partitions.

mod interval;
mod merge;
mod strong;
mod weak;

pub use interval::{HInterval, IntervalKind, RealInterval};
pub use merge::{merge_real_partitions, merge_within, MergeMode};
pub(crate) use strong::uniform_grid;
pub use strong::{real_diameter, uniform_partition, validate_strong, StrongPartition};
pub use weak::{
    total_length, validate_regular, validate_weak, validate_weak_with_tolerance, RegularPartition,
    WeakPartition, AREA_RTOL,
};
