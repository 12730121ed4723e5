use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LinalgError, Rat, Subspace};

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Rat::one())
    }

    /// `k * I_n`
    pub fn scalar(n: usize, k: &Rat) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = k.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(LinalgError::RaggedRows {
                row: bad,
                expected: cols,
                found: rows[bad].len(),
            });
        }
        let n = rows.len();
        Ok(Mat {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from integer rows, scaled by `1/denom`.
    pub fn from_ints(rows: &[&[i64]], denom: i64) -> Self {
        let r: Vec<Vec<Rat>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| Rat::new(x, denom)).collect())
            .collect();
        Mat::from_rows(r).expect("rectangular integer rows")
    }

    /// Column vector as an `n x 1` matrix.
    pub fn column(v: &[Rat]) -> Self {
        Mat {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub(crate) fn require_square(&self, op: &'static str) -> Result<usize, LinalgError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(LinalgError::NotSquare {
                op,
                shape: self.shape(),
            })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of range"
        );
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of range"
        );
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<Rat> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    fn check_same_shape(&self, other: &Mat, op: &'static str) -> Result<(), LinalgError> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(LinalgError::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            })
        }
    }

    pub fn add(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.check_same_shape(other, "add")?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.check_same_shape(other, "sub")?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::ShapeMismatch {
                op: "mul_vec",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn scale(&self, k: &Rat) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn pow(&self, exp: u32) -> Result<Mat, LinalgError> {
        let n = self.require_square("pow")?;
        let mut acc = Mat::identity(n);
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `MN - NM`
    pub fn commutator(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.require_square("commutator")?;
        self.check_same_shape(other, "commutator")?;
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `M - lambda I`
    pub fn shift(&self, lambda: &Rat) -> Result<Mat, LinalgError> {
        let n = self.require_square("shift")?;
        let mut m = self.clone();
        for i in 0..n {
            m.data[i * n + i] -= lambda;
        }
        Ok(m)
    }

    pub fn trace(&self) -> Rat {
        self.diagonal().into_iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    /// First `(row, col)` where the two matrices differ, row-major.
    pub fn first_difference(&self, other: &Mat) -> Option<(usize, usize)> {
        if self.shape() != other.shape() {
            return Some((0, 0));
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|k| (k / self.cols, k % self.cols))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &factor * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space `{v : Mv = 0}` in canonical echelon form.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f);
                }
                v
            })
            .collect();
        Subspace::span(self.cols, vectors).expect("kernel vectors have ambient length")
    }

    /// `{v : Mv = lambda v}`
    pub fn eigenspace(&self, lambda: &Rat) -> Result<Subspace, LinalgError> {
        Ok(self.shift(lambda)?.kernel())
    }

    pub fn inverse(&self) -> Option<Mat> {
        let n = self.rows;
        if !self.is_square() {
            return None;
        }
        let aug = Mat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Rat::one()
            } else {
                Rat::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| r.get(i, j + n).clone()))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Text form: one row per line, entries separated by single spaces.
    pub fn to_text(&self) -> String {
        self.to_rows()
            .iter()
            .map(|r| r.iter().map(Rat::to_string).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Parses rows separated by `;` or newlines with whitespace-separated entries.
impl FromStr for Mat {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows = s
            .split([';', '\n'])
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(|r| r.split_whitespace().map(str::parse).collect())
            .collect::<Result<Vec<Vec<Rat>>, _>>()?;
        Mat::from_rows(rows)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(Rat::to_string).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

/// Serialized as a list of rows of rational strings.
impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Rat>>::deserialize(deserializer)?;
        Mat::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        Mat::add(self, rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        Mat::sub(self, rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        Mat::mul(self, rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn sample() -> Mat {
        Mat::from_ints(&[&[1, 2, 0], &[-3, 4, 5], &[0, 7, -1]], 2)
    }

    #[test]
    fn identity_is_neutral() {
        let m = sample();
        assert_eq!(&Mat::identity(3) * &m, m);
        assert_eq!(&m * &Mat::identity(3), m);
    }

    #[test]
    fn additive_inverse() {
        let m = sample();
        assert!(m.add(&m.scale(&rat(-1, 1))).unwrap().is_zero());
    }

    #[test]
    fn shape_mismatch_names_both_shapes() {
        let err = Mat::zeros(2, 3).mul(&Mat::zeros(2, 3)).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("2x3"), "{msg}");
        assert!(Mat::zeros(2, 2).add(&Mat::zeros(3, 3)).is_err());
        assert!(Mat::zeros(2, 3).commutator(&Mat::zeros(2, 3)).is_err());
    }

    #[test]
    fn self_commutator_vanishes() {
        let m = sample();
        assert!(m.commutator(&m).unwrap().is_zero());
    }

    #[test]
    fn kernel_edge_cases() {
        assert_eq!(Mat::zeros(4, 4).kernel().dim(), 4);
        assert_eq!(Mat::identity(4).kernel().dim(), 0);
        let k = Mat::from_ints(&[&[1, 1], &[2, 2]], 1).kernel();
        assert_eq!(k.basis(), &[vec![rat(1, 1), rat(-1, 1)]]);
    }

    #[test]
    fn rank_nullity() {
        let m = Mat::from_ints(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]], 1);
        assert_eq!(m.rank() + m.kernel().dim(), 4);
        for v in m.kernel().basis() {
            assert!(m.mul_vec(v).unwrap().iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = sample();
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(3));
        assert!(Mat::from_ints(&[&[1, 2], &[2, 4]], 1).inverse().is_none());
    }

    #[test]
    fn text_format_round_trip() {
        let m = sample();
        let text = m.to_text();
        assert_eq!(text.parse::<Mat>().unwrap(), m);
        let semi: Mat = "1/2 1 0; -3/2 2 5/2; 0 7/2 -1/2".parse().unwrap();
        assert_eq!(semi, m);
        assert!("1 2; 3".parse::<Mat>().is_err());
        assert!("0.5 1".parse::<Mat>().is_err());
    }
}
