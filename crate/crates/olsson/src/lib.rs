//! Symbolic derivation of linear transformations (analytic continuations)
//! of multivariable hypergeometric series by Olsson's method, together with
//! a Horn-theorem engine for the regions of convergence of double
//! hypergeometric series, and numeric cross-validation of every derived
//! identity.

pub mod catalog;
pub mod engine;
pub mod error;
pub mod eval;
pub mod expr;
pub mod factors;
pub mod grammar;
pub mod named;
pub mod poly;
pub mod rat;
pub mod ratfn;
pub mod region;
pub mod render;
pub mod roc;
pub mod rules;
pub mod series;
pub mod varexpr;

pub use error::{CatalogError, EngineError, EvalError, ParseError, RocError, SeriesError, SimError};
pub use expr::{Bindings, Index, LinearForm, Param};
pub use factors::FactorProduct;
pub use rat::Q;
pub use series::{CharacteristicList, HypSeries, Term, TermSum, VarArg};
pub use varexpr::VarExpr;
