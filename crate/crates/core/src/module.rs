//! Concrete modules `R_d(a, b, c)` and exact verification of the defining
//! relations on them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{Mat, Rat};
use crate::params::{self, ParamTriple, Scalars};

/// Which of the three standard bases the matrices are written in.
///
/// * `V`: `A` lower bidiagonal with diagonal `theta_0..theta_d`, `B` upper
///   bidiagonal with diagonal `theta*_0..theta*_d` and superdiagonal
///   `varphi_1..varphi_d`.
/// * `W`: `A` has diagonal `theta_d..theta_0`, `B` has superdiagonal
///   `phi_1..phi_d`. Same module as `V`, written in the basis
///   `w_i = (A - theta_d)...(A - theta_{d-i+1}) v_0`.
/// * `U`: `A` as in `V`, `B` has diagonal `theta*_d..theta*_0` and
///   superdiagonal `phi_d..phi_1`. This is `R_d(a, -b-1, c)` in its own
///   v basis, isomorphic to `R_d(a, b, c)` whenever that is irreducible.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    V,
    W,
    U,
}

impl BasisKind {
    pub const ALL: [BasisKind; 3] = [BasisKind::V, BasisKind::W, BasisKind::U];
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisKind::V => "v",
            BasisKind::W => "w",
            BasisKind::U => "u",
        })
    }
}

impl std::str::FromStr for BasisKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "v" => Ok(BasisKind::V),
            "w" => Ok(BasisKind::W),
            "u" => Ok(BasisKind::U),
            other => Err(format!("unknown basis {other:?}, expected v, w or u")),
        }
    }
}

/// A `(d+1)`-dimensional module given by the matrices of the generators.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ModuleRep {
    pub d: u32,
    pub params: ParamTriple,
    #[serde(rename = "basis")]
    pub basis: BasisKind,
    #[serde(rename = "A")]
    pub mat_a: Mat,
    #[serde(rename = "B")]
    pub mat_b: Mat,
    #[serde(rename = "C")]
    pub mat_c: Mat,
    #[serde(rename = "D")]
    pub mat_d: Mat,
    pub scalars: Scalars,
}

impl ModuleRep {
    pub fn dim(&self) -> usize {
        self.d as usize + 1
    }

    /// Assembles a module from `A` and `B`, deriving `C = eta I - A - B` and
    /// `D = (AB - BA)/2`.
    pub fn from_ab(
        d: u32,
        params: ParamTriple,
        basis: BasisKind,
        mat_a: Mat,
        mat_b: Mat,
    ) -> Result<Self> {
        let scalars = params::scalars(&params, &Rat::from(d as i64));
        let n = d as usize + 1;
        let mat_c = Mat::scalar(n, &scalars.eta).sub(&mat_a)?.sub(&mat_b)?;
        let mat_d = mat_a.commutator(&mat_b)?.scale(&Rat::new(1, 2));
        Ok(ModuleRep {
            d,
            params,
            basis,
            mat_a,
            mat_b,
            mat_c,
            mat_d,
            scalars,
        })
    }
}

fn bidiagonal_lower(diag: &[Rat]) -> Mat {
    let n = diag.len();
    Mat::from_fn(n, n, |i, j| {
        if i == j {
            diag[i].clone()
        } else if i == j + 1 {
            Rat::one()
        } else {
            Rat::zero()
        }
    })
}

/// `super_diag[k]` sits at `(k, k+1)`.
fn bidiagonal_upper(diag: &[Rat], super_diag: &[Rat]) -> Mat {
    let n = diag.len();
    Mat::from_fn(n, n, |i, j| {
        if i == j {
            diag[i].clone()
        } else if j == i + 1 {
            super_diag[i].clone()
        } else {
            Rat::zero()
        }
    })
}

pub fn build_r(p: &ParamTriple, d: u32, basis: BasisKind) -> ModuleRep {
    let nu = Rat::from(d as i64);
    let d_i = d as i64;
    let th: Vec<Rat> = (0..=d_i).map(|i| params::theta(p, &nu, i)).collect();
    let ths: Vec<Rat> = (0..=d_i).map(|i| params::theta_star(p, &nu, i)).collect();
    let (diag_a, diag_b, sup_b): (Vec<Rat>, Vec<Rat>, Vec<Rat>) = match basis {
        BasisKind::V => (
            th,
            ths,
            (1..=d_i).map(|i| params::varphi(p, &nu, i)).collect(),
        ),
        BasisKind::W => (
            th.into_iter().rev().collect(),
            ths,
            (1..=d_i).map(|i| params::phi(p, &nu, i)).collect(),
        ),
        BasisKind::U => (
            th,
            ths.into_iter().rev().collect(),
            (1..=d_i).rev().map(|i| params::phi(p, &nu, i)).collect(),
        ),
    };
    let mat_a = bidiagonal_lower(&diag_a);
    let mat_b = bidiagonal_upper(&diag_b, &sup_b);
    ModuleRep::from_ab(d, p.clone(), basis, mat_a, mat_b).expect("square matrices of equal size")
}

/// Position and values of the first entry where an identity fails.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Offending {
    pub row: usize,
    pub col: usize,
    pub lhs: Rat,
    pub rhs: Rat,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_offending: Option<Offending>,
}

impl Check {
    pub fn compare(name: impl Into<String>, lhs: &Mat, rhs: &Mat) -> Check {
        let first_offending = lhs.first_difference(rhs).map(|(row, col)| Offending {
            row,
            col,
            lhs: entry_or_zero(lhs, row, col),
            rhs: entry_or_zero(rhs, row, col),
        });
        Check {
            name: name.into(),
            passed: first_offending.is_none(),
            first_offending,
        }
    }

    pub fn flag(name: impl Into<String>, passed: bool) -> Check {
        Check {
            name: name.into(),
            passed,
            first_offending: None,
        }
    }
}

fn entry_or_zero(m: &Mat, i: usize, j: usize) -> Rat {
    if i < m.rows() && j < m.cols() {
        m.get(i, j).clone()
    } else {
        Rat::zero()
    }
}

/// Ordered list of named identity checks.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }
}

/// Matrices of the central elements computed from their defining
/// expressions in `A, B, C, D` (not from the scalar formulas).
pub struct CentralMatrices {
    pub alpha: Mat,
    pub beta: Mat,
    pub gamma: Mat,
    pub delta: Mat,
}

pub fn central_matrices(a: &Mat, b: &Mat, c: &Mat, d: &Mat) -> Result<CentralMatrices> {
    // alpha = [A,D] + AC - BA, beta = [B,D] + BA - CB, gamma = [C,D] + CB - AC
    let alpha = a.commutator(d)?.add(&a.mul(c)?)?.sub(&b.mul(a)?)?;
    let beta = b.commutator(d)?.add(&b.mul(a)?)?.sub(&c.mul(b)?)?;
    let gamma = c.commutator(d)?.add(&c.mul(b)?)?.sub(&a.mul(c)?)?;
    let delta = a.add(b)?.add(c)?;
    Ok(CentralMatrices {
        alpha,
        beta,
        gamma,
        delta,
    })
}

/// Left-hand sides of the two cubic relations in `A, B`:
/// `A^2B - 2ABA + BA^2 - 2AB - 2BA` and `AB^2 - 2BAB + B^2A - 2AB - 2BA`.
pub(crate) fn cubic_lhs(a: &Mat, b: &Mat) -> Result<(Mat, Mat)> {
    let ab = a.mul(b)?;
    let ba = b.mul(a)?;
    let two = Rat::from(2);
    let common = ab.add(&ba)?.scale(&two);
    let aab = a
        .mul(&ab)?
        .sub(&a.mul(&ba)?.scale(&two))?
        .add(&ba.mul(a)?)?
        .sub(&common)?;
    let abb = ab
        .mul(b)?
        .sub(&ba.mul(b)?.scale(&two))?
        .add(&b.mul(&ba)?)?
        .sub(&common)?;
    Ok((aab, abb))
}

/// Right-hand sides `2A^2 - 2 eta A + 2 zeta I` and `2B^2 - 2 eta B - 2 zeta* I`.
pub(crate) fn cubic_rhs(a: &Mat, b: &Mat, s: &Scalars) -> Result<(Mat, Mat)> {
    let n = a.rows();
    let two = Rat::from(2);
    let aab = a
        .mul(a)?
        .scale(&two)
        .sub(&a.scale(&(&two * &s.eta)))?
        .add(&Mat::scalar(n, &(&two * &s.zeta)))?;
    let abb = b
        .mul(b)?
        .scale(&two)
        .sub(&b.scale(&(&two * &s.eta)))?
        .sub(&Mat::scalar(n, &(&two * &s.zeta_star)))?;
    Ok((aab, abb))
}

/// Checks every defining identity exactly on the stored matrices.
///
/// Failures are report entries, never errors; an error means the matrices
/// have inconsistent shapes.
pub fn verify_relations(rep: &ModuleRep) -> Result<CheckReport> {
    let (a, b, c, d) = (&rep.mat_a, &rep.mat_b, &rep.mat_c, &rep.mat_d);
    let n = a.rows();
    let s = &rep.scalars;
    let two_d = d.scale(&Rat::from(2));
    let mut report = CheckReport::default();

    report.push(Check::compare("[A,B]=2D", &a.commutator(b)?, &two_d));
    report.push(Check::compare("[B,C]=2D", &b.commutator(c)?, &two_d));
    report.push(Check::compare("[C,A]=2D", &c.commutator(a)?, &two_d));

    let central = central_matrices(a, b, c, d)?;
    report.push(Check::compare(
        "alpha=zeta",
        &central.alpha,
        &Mat::scalar(n, &s.zeta),
    ));
    report.push(Check::compare(
        "beta=zeta*",
        &central.beta,
        &Mat::scalar(n, &s.zeta_star),
    ));
    report.push(Check::compare(
        "gamma=-zeta-zeta*",
        &central.gamma,
        &Mat::scalar(n, &s.gamma_scalar),
    ));
    report.push(Check::compare(
        "delta=eta",
        &central.delta,
        &Mat::scalar(n, &s.eta),
    ));

    let (lhs_aab, lhs_abb) = cubic_lhs(a, b)?;
    let (rhs_aab, rhs_abb) = cubic_rhs(a, b, s)?;
    report.push(Check::compare("AAB", &lhs_aab, &rhs_aab));
    report.push(Check::compare("ABB", &lhs_abb, &rhs_abb));

    for (label, m) in [
        ("alpha", &central.alpha),
        ("beta", &central.beta),
        ("gamma", &central.gamma),
    ] {
        let mut check = Check::flag(format!("{label} central"), true);
        for g in [a, b, c, d] {
            let comm = m.commutator(g)?;
            if !comm.is_zero() {
                check = Check::compare(format!("{label} central"), &comm, &Mat::zeros(n, n));
                break;
            }
        }
        report.push(check);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::params::{act, SignFlip};

    fn half_all() -> ParamTriple {
        ParamTriple::new(rat(-1, 2), rat(-1, 2), rat(-1, 2))
    }

    #[test]
    fn example_matrices() {
        let rep = build_r(&half_all(), 4, BasisKind::V);
        let a = Mat::from_ints(
            &[
                &[15, 0, 0, 0, 0],
                &[4, 3, 0, 0, 0],
                &[0, 4, -1, 0, 0],
                &[0, 0, 4, 3, 0],
                &[0, 0, 0, 4, 15],
            ],
            4,
        );
        let b = Mat::from_ints(
            &[
                &[15, -36, 0, 0, 0],
                &[0, 3, -6, 0, 0],
                &[0, 0, -1, -6, 0],
                &[0, 0, 0, 3, -36],
                &[0, 0, 0, 0, 15],
            ],
            4,
        );
        assert_eq!(rep.mat_a, a);
        assert_eq!(rep.mat_b, b);
        // single entry of AB: (15/4)(15/4) + 0
        assert_eq!(a.mul(&b).unwrap().get(0, 0), &rat(225, 16));
    }

    #[test]
    fn one_dimensional_module() {
        let p = ParamTriple::new(rat(2, 3), rat(-1, 5), rat(4, 1));
        let rep = build_r(&p, 0, BasisKind::V);
        assert_eq!(rep.dim(), 1);
        assert_eq!(rep.mat_a.get(0, 0), &(&p.a * (&p.a + Rat::one())));
        assert_eq!(rep.mat_b.get(0, 0), &(&p.b * (&p.b + Rat::one())));
        assert!(rep.mat_d.is_zero());
        assert!(verify_relations(&rep).unwrap().all_passed());
    }

    #[test]
    fn w_basis_reverses_a_diagonal() {
        let p = ParamTriple::new(rat(1, 3), rat(2, 7), rat(-5, 4));
        let v = build_r(&p, 3, BasisKind::V);
        let w = build_r(&p, 3, BasisKind::W);
        let mut rev = v.mat_a.diagonal();
        rev.reverse();
        assert_eq!(w.mat_a.diagonal(), rev);
    }

    #[test]
    fn w_basis_is_flipped_v_basis() {
        let p = ParamTriple::new(rat(1, 3), rat(2, 7), rat(-5, 4));
        for d in 0..6 {
            let w = build_r(&p, d, BasisKind::W);
            let v = build_r(&act(&p, SignFlip::FLIP_A), d, BasisKind::V);
            assert_eq!(w.mat_a, v.mat_a);
            assert_eq!(w.mat_b, v.mat_b);
            let u = build_r(&p, d, BasisKind::U);
            let vb = build_r(&act(&p, SignFlip::FLIP_B), d, BasisKind::V);
            assert_eq!(u.mat_a, vb.mat_a);
            assert_eq!(u.mat_b, vb.mat_b);
        }
    }

    #[test]
    fn relations_hold_for_all_bases() {
        let p = ParamTriple::new(rat(3, 5), rat(-7, 2), rat(1, 9));
        for d in 0..=6 {
            for basis in BasisKind::ALL {
                let report = verify_relations(&build_r(&p, d, basis)).unwrap();
                assert!(
                    report.all_passed(),
                    "d={d} {basis}: {:?}",
                    report.first_failure()
                );
            }
        }
    }

    #[test]
    fn perturbed_entry_is_caught() {
        let mut rep = build_r(&half_all(), 4, BasisKind::V);
        let bumped = rep.mat_a.get(0, 0) + Rat::one();
        rep.mat_a.set(0, 0, bumped);
        let report = verify_relations(&rep).unwrap();
        let fail = report.first_failure().unwrap();
        assert_eq!(fail.name, "[A,B]=2D");
        assert!(fail.first_offending.is_some());
    }

    #[test]
    fn module_document_round_trip() {
        let rep = build_r(&half_all(), 2, BasisKind::W);
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains("\"basis\":\"w\""));
        assert!(json.contains("\"A\":[["));
        let back: ModuleRep = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rep);
    }
}
