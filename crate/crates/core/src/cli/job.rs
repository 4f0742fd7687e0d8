//! Job-file schema.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::expr::{GeneralFunction, NaturalFunction};
use crate::hyperbolic::Hyperbolic;
use crate::integration::{SumMode, TagRule};
use crate::intervals::{HInterval, MergeMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    ValidateStrong,
    ValidateWeak,
    ValidateRegular,
    Merge,
    Variation,
    VariationSet,
    Integrate,
    Riemann,
    CheckSubstitution,
    Render,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub task: Task,
    pub payload: serde_json::Value,
    pub output: Option<String>,
    pub format: Option<Format>,
    /// Extra SVG diagram written next to the main output.
    pub svg: Option<String>,
}

/// `{"f1": "...", "f2": "..."}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    pub f1: String,
    pub f2: String,
}

impl FunctionSpec {
    pub fn natural(&self) -> Result<NaturalFunction> {
        NaturalFunction::parse(&self.f1, &self.f2)
    }

    pub fn general(&self) -> Result<GeneralFunction> {
        GeneralFunction::parse(&self.f1, &self.f2)
    }
}

/// An integrator: component expressions or the string `"identity"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum IntegratorSpec {
    Named(String),
    Components(FunctionSpec),
}

impl IntegratorSpec {
    pub fn natural(&self) -> Result<NaturalFunction> {
        match self {
            IntegratorSpec::Named(name) if name == "identity" => Ok(NaturalFunction::identity()),
            IntegratorSpec::Named(name) => Err(Error::InvalidArgument(format!(
                "unknown integrator '{name}', expected \"identity\" or {{\"f1\", \"f2\"}}"
            ))),
            IntegratorSpec::Components(spec) => spec.natural(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrongPayload {
    pub interval: HInterval,
    pub points: Vec<Hyperbolic>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeakPayload {
    pub interval: HInterval,
    pub subintervals: Vec<HInterval>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegularPayload {
    pub interval: HInterval,
    pub cells: Vec<HInterval>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MergePayload {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    #[serde(default)]
    pub mode: MergeMode,
    pub interval: Option<HInterval>,
}

fn default_variation_tol() -> f64 {
    1e-9
}

fn default_depth() -> usize {
    20
}

fn default_tol() -> f64 {
    1e-6
}

fn default_refinements() -> usize {
    22
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariationPayload {
    #[serde(rename = "F")]
    pub f: FunctionSpec,
    pub interval: HInterval,
    /// When given, only the variation sum over these points is computed,
    /// which also works for general functions.
    pub points: Option<Vec<Hyperbolic>>,
    #[serde(default = "default_variation_tol")]
    pub tol: f64,
    #[serde(default = "default_depth")]
    pub max_depth: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariationSetPayload {
    #[serde(rename = "F")]
    pub f: FunctionSpec,
    pub interval: HInterval,
    pub grid: (usize, usize),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratePayload {
    #[serde(rename = "F")]
    pub f: FunctionSpec,
    #[serde(rename = "G")]
    pub g: IntegratorSpec,
    pub interval: HInterval,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub mode: SumMode,
    #[serde(default)]
    pub tags: TagRule,
    #[serde(default = "default_refinements")]
    pub max_refinements: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RiemannPayload {
    #[serde(rename = "F")]
    pub f: FunctionSpec,
    pub interval: HInterval,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub tags: TagRule,
    #[serde(default = "default_refinements")]
    pub max_refinements: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubstitutionPayload {
    #[serde(rename = "F")]
    pub f: FunctionSpec,
    #[serde(rename = "G")]
    pub g: FunctionSpec,
    pub interval: HInterval,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub mode: SumMode,
    #[serde(default)]
    pub tags: TagRule,
    #[serde(default = "default_refinements")]
    pub max_refinements: usize,
}

/// Exactly one decoration (or none, for the bare interval).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderPayload {
    pub interval: HInterval,
    pub points: Option<Vec<Hyperbolic>>,
    pub subintervals: Option<Vec<HInterval>>,
    pub cells: Option<Vec<HInterval>>,
    #[serde(rename = "F")]
    pub f: Option<FunctionSpec>,
}
