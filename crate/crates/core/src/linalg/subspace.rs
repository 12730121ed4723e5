use serde::{Deserialize, Serialize};

use super::{LinalgError, Mat, Rat};

/// Subspace of `Q^n` stored by a canonical basis: the rows of the reduced
/// row echelon form of any spanning set (equivalently, the reduced column
/// echelon form of the basis as columns). Two subspaces are equal iff their
/// stored bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rat>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| unit_vector(ambient_dim, i))
            .collect();
        Subspace { ambient_dim, basis }
    }

    /// Span of arbitrary vectors of length `ambient_dim`.
    pub fn span(ambient_dim: usize, vectors: Vec<Vec<Rat>>) -> Result<Self, LinalgError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(LinalgError::DimensionMismatch {
                expected: ambient_dim,
                found: v.len(),
            });
        }
        if vectors.is_empty() {
            return Ok(Subspace::zero(ambient_dim));
        }
        let (r, pivots) = Mat::from_rows(vectors)?.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Mat::from_rows(rows).expect("equal lengths").rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// Sum of two subspaces.
    pub fn join(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, vs)
    }

    /// True when every operator maps the subspace into itself.
    pub fn is_invariant_under(&self, ops: &[&Mat]) -> Result<bool, LinalgError> {
        for op in ops {
            for v in &self.basis {
                if !self.contains(&op.mul_vec(v)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// Smallest subspace containing `seeds` and invariant under every operator.
pub fn spin(ambient_dim: usize, seeds: &[Vec<Rat>], ops: &[&Mat]) -> Result<Subspace, LinalgError> {
    for op in ops {
        if op.shape() != (ambient_dim, ambient_dim) {
            return Err(LinalgError::DimensionMismatch {
                expected: ambient_dim,
                found: op.rows(),
            });
        }
    }
    let mut current = Subspace::span(ambient_dim, seeds.to_vec())?;
    // each productive round raises the dimension, so ambient_dim + 1 rounds suffice
    for _ in 0..=ambient_dim {
        let mut vs = current.basis.clone();
        for op in ops {
            for v in &current.basis {
                vs.push(op.mul_vec(v)?);
            }
        }
        let next = Subspace::span(ambient_dim, vs)?;
        if next.dim() == current.dim() {
            return Ok(next);
        }
        current = next;
    }
    Ok(current)
}

/// Basis of `{X (m x n) : X A1 = A2 X and X B1 = B2 X}`.
///
/// The unknown entries `X[r][c]` are flattened row-major and the two
/// commutation conditions are stacked into one homogeneous system.
pub fn intertwiner_space(a1: &Mat, b1: &Mat, a2: &Mat, b2: &Mat) -> Result<Vec<Mat>, LinalgError> {
    let n = a1.require_square("intertwiner_space")?;
    let m = a2.require_square("intertwiner_space")?;
    if b1.shape() != (n, n) {
        return Err(LinalgError::ShapeMismatch {
            op: "intertwiner_space",
            left: a1.shape(),
            right: b1.shape(),
        });
    }
    if b2.shape() != (m, m) {
        return Err(LinalgError::ShapeMismatch {
            op: "intertwiner_space",
            left: a2.shape(),
            right: b2.shape(),
        });
    }
    let unknowns = m * n;
    let mut system = Mat::zeros(2 * unknowns, unknowns);
    for (block, (src, dst)) in [(a1, a2), (b1, b2)].into_iter().enumerate() {
        for r in 0..m {
            for c in 0..n {
                let eq = block * unknowns + r * n + c;
                // (X src)[r][c] = sum_k X[r][k] src[k][c]
                for k in 0..n {
                    let v = src.get(k, c);
                    if !v.is_zero() {
                        let idx = r * n + k;
                        let cur = system.get(eq, idx) + v;
                        system.set(eq, idx, cur);
                    }
                }
                // (dst X)[r][c] = sum_k dst[r][k] X[k][c]
                for k in 0..m {
                    let v = dst.get(r, k);
                    if !v.is_zero() {
                        let idx = k * n + c;
                        let cur = system.get(eq, idx) - v;
                        system.set(eq, idx, cur);
                    }
                }
            }
        }
    }
    Ok(system
        .kernel()
        .basis()
        .iter()
        .map(|v| Mat::from_fn(m, n, |r, c| v[r * n + c].clone()))
        .collect())
}
