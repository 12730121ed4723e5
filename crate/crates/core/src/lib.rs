//! Exact construction, verification and classification of the
//! finite-dimensional modules `R_d(a, b, c)` of the Racah algebra.

pub mod analyzer;
mod error;
pub mod linalg;
pub mod module;
pub mod params;
pub mod pbw;
pub mod verma;

pub use analyzer::{analyze, AnalysisReport};
pub use error::{Error, Result};
pub use linalg::{LinalgError, Mat, Poly, Rat, Subspace};
pub use module::{build_r, verify_relations, BasisKind, CheckReport, ModuleRep};
pub use params::{ParamTriple, Scalars, SignFlip};
pub use pbw::{normal_form, parse, FreeElement, NormalElement};
