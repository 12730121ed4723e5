//! Finite truncations of the infinite-dimensional module with basis
//! `m_0, m_1, ...` on which `A` is lower bidiagonal and `B` upper bidiagonal.
//!
//! A truncation is not itself a module. Every defining relation is a word
//! of length at most three in `A` and `B`, and `A` raises the index by at
//! most one, so products computed on the `(N+1) x (N+1)` truncation are
//! exact on columns `0..=N-2`. All identity checks are restricted to that
//! window.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{unit_vector, Mat, Rat};
use crate::module::{build_r, cubic_lhs, cubic_rhs, BasisKind, Check, CheckReport};
use crate::params::{self, ParamTriple};

pub const DEFAULT_EXTRA: usize = 10;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VermaTruncation {
    pub params: ParamTriple,
    pub nu: Rat,
    pub cutoff: usize,
    #[serde(rename = "A")]
    pub mat_a: Mat,
    #[serde(rename = "B")]
    pub mat_b: Mat,
    pub safe_window: usize,
}

/// Truncation to `m_0..m_N`. `N` must be at least 2.
pub fn build_verma(p: &ParamTriple, nu: &Rat, cutoff: usize) -> Result<VermaTruncation> {
    if cutoff < 2 {
        return Err(Error::CutoffTooSmall {
            min: 2,
            got: cutoff,
        });
    }
    let n = cutoff + 1;
    let mat_a = Mat::from_fn(n, n, |i, j| {
        if i == j {
            params::theta(p, nu, i as i64)
        } else if i == j + 1 {
            Rat::one()
        } else {
            Rat::zero()
        }
    });
    let mat_b = Mat::from_fn(n, n, |i, j| {
        if i == j {
            params::theta_star(p, nu, i as i64)
        } else if j == i + 1 {
            params::varphi(p, nu, j as i64)
        } else {
            Rat::zero()
        }
    });
    Ok(VermaTruncation {
        params: p.clone(),
        nu: nu.clone(),
        cutoff,
        mat_a,
        mat_b,
        safe_window: cutoff - 2,
    })
}

/// Default cutoff `d + 10`.
pub fn default_cutoff(d: u32) -> usize {
    d as usize + DEFAULT_EXTRA
}

fn leading_columns(m: &Mat, cols: usize) -> Mat {
    Mat::from_fn(m.rows(), cols, |i, j| m.get(i, j).clone())
}

fn leading_block(m: &Mat, n: usize) -> Mat {
    Mat::from_fn(n, n, |i, j| m.get(i, j).clone())
}

pub const CHECK_U1: &str = "(B-theta*_0)m_0=0";
pub const CHECK_U2: &str = "(B-theta*_1)(A-theta_0)m_0=varphi_1 m_0";
pub const CHECK_TAIL: &str = "tail m_{d+1}.. is a submodule";
pub const CHECK_PRODUCT: &str = "m_{j+1}=(A-theta_j)..(A-theta_i)m_i";
pub const CHECK_AAB: &str = "AAB on window";
pub const CHECK_ABB: &str = "ABB on window";
pub const CHECK_QUOTIENT: &str = "quotient block = R_d v basis";

/// Checks on a truncation against dimension parameter `d`.
///
/// The tail check fails, as "not a submodule at this nu", when `nu != d`
/// makes `varphi_{d+1}` nonzero.
pub fn verma_checks(vt: &VermaTruncation, d: u32) -> Result<CheckReport> {
    let du = d as usize;
    if vt.cutoff < du + 3 {
        return Err(Error::CutoffTooSmall {
            min: du + 3,
            got: vt.cutoff,
        });
    }
    let n = vt.cutoff + 1;
    let (a, b) = (&vt.mat_a, &vt.mat_b);
    let p = &vt.params;
    let nu = &vt.nu;
    let mut report = CheckReport::default();

    let m0 = unit_vector(n, 0);
    let u1 = b.shift(&params::theta_star(p, nu, 0))?.mul_vec(&m0)?;
    report.push(Check::compare(
        CHECK_U1,
        &Mat::column(&u1),
        &Mat::zeros(n, 1),
    ));

    let step = a.shift(&params::theta(p, nu, 0))?.mul_vec(&m0)?;
    let u2 = b.shift(&params::theta_star(p, nu, 1))?.mul_vec(&step)?;
    let want: Vec<Rat> = m0.iter().map(|x| x * params::varphi(p, nu, 1)).collect();
    report.push(Check::compare(
        CHECK_U2,
        &Mat::column(&u2),
        &Mat::column(&want),
    ));

    // columns d+1..N of A and B must vanish on rows 0..=d
    let mut tail = Check::flag(CHECK_TAIL, true);
    'outer: for m in [a, b] {
        for j in du + 1..n {
            for i in 0..=du {
                if !m.get(i, j).is_zero() {
                    tail = Check::compare(
                        format!("{CHECK_TAIL}: not a submodule at this nu"),
                        &Mat::column(&[m.get(i, j).clone()]),
                        &Mat::zeros(1, 1),
                    );
                    if let Some(off) = tail.first_offending.as_mut() {
                        off.row = i;
                        off.col = j;
                    }
                    break 'outer;
                }
            }
        }
    }
    report.push(tail);

    let mut product = Check::flag(CHECK_PRODUCT, true);
    'product: for i in 0..=vt.safe_window {
        let mut v = unit_vector(n, i);
        for j in i..=vt.safe_window {
            v = a.shift(&params::theta(p, nu, j as i64))?.mul_vec(&v)?;
            let want = unit_vector(n, j + 1);
            if v != want {
                product = Check::compare(CHECK_PRODUCT, &Mat::column(&v), &Mat::column(&want));
                if let Some(off) = product.first_offending.as_mut() {
                    off.col = i;
                }
                break 'product;
            }
        }
    }
    report.push(product);

    let scalars = params::scalars(p, nu);
    let window = vt.safe_window + 1;
    let (lhs_aab, lhs_abb) = cubic_lhs(a, b)?;
    let (rhs_aab, rhs_abb) = cubic_rhs(a, b, &scalars)?;
    report.push(Check::compare(
        CHECK_AAB,
        &leading_columns(&lhs_aab, window),
        &leading_columns(&rhs_aab, window),
    ));
    report.push(Check::compare(
        CHECK_ABB,
        &leading_columns(&lhs_abb, window),
        &leading_columns(&rhs_abb, window),
    ));

    let rd = build_r(p, d, BasisKind::V);
    let block_a = Check::compare(CHECK_QUOTIENT, &leading_block(a, du + 1), &rd.mat_a);
    let block_b = Check::compare(CHECK_QUOTIENT, &leading_block(b, du + 1), &rd.mat_b);
    report.push(if block_a.passed { block_b } else { block_a });

    Ok(report)
}
