use std::fmt;

use thiserror::Error;

use crate::hyperbolic::Hyperbolic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// One of the two idempotent components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    E1,
    E2,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::E1 => f.write_str("e1"),
            Component::E2 => f.write_str("e2"),
        }
    }
}

/// Which end of an interval or partition a diagnostic refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    First,
    Last,
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            End::First => f.write_str("first"),
            End::Last => f.write_str("last"),
        }
    }
}

fn tag(component: &Option<Component>) -> String {
    match component {
        Some(c) => format!(" in the {c} component"),
        None => String::new(),
    }
}

/// Library error. Serializes as `{"code": …, "details": …}` with the same
/// code string as [`Error::code`].
#[derive(Debug, Clone, PartialEq, Error, serde::Serialize)]
#[serde(tag = "code", content = "details")]
pub enum Error {
    #[error("{0} is a zero divisor and has no inverse")]
    ZeroDivisor(Hyperbolic),
    #[error("zero has no inverse")]
    ZeroValue,
    #[error("supremum of an empty set")]
    EmptySet,
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("interval endpoints are not ordered: {lo} is not below {hi}")]
    UnorderedEndpoints { lo: Hyperbolic, hi: Hyperbolic },

    #[error("{which} point {found} does not match the interval endpoint {expected}")]
    EndpointMismatch {
        which: End,
        expected: Hyperbolic,
        found: Hyperbolic,
    },
    #[error("point {index} repeats point {first}")]
    DuplicatePoint { index: usize, first: usize },
    #[error("points {index} and {} are not ordered (not a chain)", .index + 1)]
    NotAChain { index: usize },
    #[error("sum of sub-interval lengths {actual} differs from the interval length {expected}")]
    LengthMismatch {
        actual: Hyperbolic,
        expected: Hyperbolic,
    },
    #[error("sum of cell areas {actual} differs from the interval area {expected}")]
    AreaMismatch { actual: f64, expected: f64 },
    #[error("cells {first} and {second} have overlapping interiors")]
    OverlappingCells { first: usize, second: usize },
    #[error("cell {index} is not contained in the interval")]
    CellOutsideInterval { index: usize },
    #[error("real partition {which} is not strictly increasing at index {index}")]
    UnsortedInput { which: char, index: usize },
    #[error("real partition {which} is missing the {end} endpoint of its interval")]
    EndpointMissing { which: char, end: End },
    #[error("degenerate interval cannot be split into distinct points")]
    DegenerateInterval,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("syntax error at offset {offset}: {message}")]
    #[serde(rename = "SyntaxError")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier '{name}' at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("division by zero{}", tag(.component))]
    DivByZero { component: Option<Component> },
    #[error("evaluation overflowed to a non-finite value{}", tag(.component))]
    Overflow { component: Option<Component> },
    #[error("expression containing {0} is not differentiable")]
    NotDifferentiable(&'static str),
    #[error("jump argument is not affine in the variable")]
    NonAffineJump,
    #[error("{component} component must depend only on '{allowed}'")]
    VariableMismatch { component: Component, allowed: char },

    #[error("lattice {m}x{n} exceeds the 6x6 enumeration limit")]
    GridTooLarge { m: usize, n: usize },
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroDivisor(_) => "ZeroDivisor",
            Error::ZeroValue => "ZeroValue",
            Error::EmptySet => "EmptySet",
            Error::NonFinite(_) => "NonFinite",
            Error::UnorderedEndpoints { .. } => "UnorderedEndpoints",
            Error::EndpointMismatch { .. } => "EndpointMismatch",
            Error::DuplicatePoint { .. } => "DuplicatePoint",
            Error::NotAChain { .. } => "NotAChain",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::AreaMismatch { .. } => "AreaMismatch",
            Error::OverlappingCells { .. } => "OverlappingCells",
            Error::CellOutsideInterval { .. } => "CellOutsideInterval",
            Error::UnsortedInput { .. } => "UnsortedInput",
            Error::EndpointMissing { .. } => "EndpointMissing",
            Error::DegenerateInterval => "DegenerateInterval",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownIdentifier { .. } => "UnknownIdentifier",
            Error::DivByZero { .. } => "DivByZero",
            Error::Overflow { .. } => "Overflow",
            Error::NotDifferentiable(_) => "NotDifferentiable",
            Error::NonAffineJump => "NonAffineJump",
            Error::VariableMismatch { .. } => "VariableMismatch",
            Error::GridTooLarge { .. } => "GridTooLarge",
        }
    }

    /// True for the errors produced by partition and interval validation.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::UnorderedEndpoints { .. }
                | Error::EndpointMismatch { .. }
                | Error::DuplicatePoint { .. }
                | Error::NotAChain { .. }
                | Error::LengthMismatch { .. }
                | Error::AreaMismatch { .. }
                | Error::OverlappingCells { .. }
                | Error::CellOutsideInterval { .. }
                | Error::UnsortedInput { .. }
                | Error::EndpointMissing { .. }
        )
    }

    /// Tags evaluation errors with the component they came from.
    pub(crate) fn in_component(self, c: Component) -> Self {
        match self {
            Error::DivByZero { component: None } => Error::DivByZero { component: Some(c) },
            Error::Overflow { component: None } => Error::Overflow { component: Some(c) },
            other => other,
        }
    }
}
