//! Exact linear algebra over the rationals.
//!
//! Everything here is exact: [`Rat`] wraps an arbitrary-precision rational,
//! [`Poly`] and [`Mat`] are built on it, and [`Subspace`] keeps a canonical
//! echelon basis so equality of subspaces is literal equality.

mod mat;
mod poly;
mod rat;
mod subspace;

pub use mat::Mat;
pub use poly::{Poly, RationalRoots};
pub use rat::{rat, Rat};
pub use subspace::{intertwiner_space, spin, unit_vector, Subspace};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch in {op}: {}x{} vs {}x{}", left.0, left.1, right.0, right.1)]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op} needs a square matrix, got {}x{}", shape.0, shape.1)]
    NotSquare {
        op: &'static str,
        shape: (usize, usize),
    },
    #[error("expected vectors of dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("rationals must be given as p/q, got {0:?}")]
    ParseRational(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Monic minimal polynomial, found as the first linear dependency among
/// `I, M, M^2, ...` (flattened to vectors).
pub fn minimal_polynomial(m: &Mat) -> Result<Poly, LinalgError> {
    let n = m.require_square("minimal_polynomial")?;
    if n == 0 {
        return Ok(Poly::one());
    }
    let mut powers: Vec<Vec<Rat>> = vec![Mat::identity(n).entries().to_vec()];
    let mut current = Mat::identity(n);
    for k in 1..=n {
        current = current.mul(m)?;
        powers.push(current.entries().to_vec());
        // columns are vec(M^0) .. vec(M^k)
        let system = Mat::from_fn(n * n, k + 1, |i, j| powers[j][i].clone());
        let kernel = system.kernel();
        if let Some(v) = kernel.basis().first() {
            // earlier powers are independent, so the dependency is unique up
            // to scale and involves M^k
            let lead = v[k].clone();
            return Ok(Poly::new(v.iter().map(|c| c / &lead).collect()));
        }
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}
