//! Real expressions: parsing, evaluation, differentiation, and the
//! hyperbolic functions assembled from them.

mod ast;
mod diff;
mod function;
mod monotone;
mod parser;

pub use ast::{heaviside, BinOp, Func, RealExpr, Side, Var};
pub use function::{
    eval_natural, FnHyperbolic, GeneralFunction, HyperbolicFn, Natural, NaturalFunction,
    NaturalPair, RealFunction, Univariate,
};
pub use monotone::{monotone_pieces, MonotonePieces};
pub use parser::parse;
