//! Calculus over the hyperbolic (split-complex) plane.
//!
//! Hyperbolic numbers are stored in idempotent coordinates `a1 e1 + a2 e2`,
//! where multiplication, the partial order and the metric all act
//! componentwise. On top of that sit intervals and their partitions,
//! variation of hyperbolic functions and the Riemann–Stieltjes integral.

pub mod cli;
pub mod error;
pub mod expr;
pub mod hyperbolic;
pub mod integration;
pub mod intervals;
pub mod numeric;
pub mod svg;
pub mod variation;

pub use error::{Component, End, Error, Result};
pub use hyperbolic::{sup_set, Hyperbolic, OrderRelation};
