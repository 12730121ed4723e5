use serde::Serialize;

use crate::linalg::{Mat, Rat};
use crate::module::{build_r, BasisKind};
use crate::params::{self, ParamTriple};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LMethod {
    /// Binomial closed form.
    Closed,
    /// Column recurrence seeded by the first column.
    Recurrence,
    /// Reads `R S_i v_j = L_ij v_0` off the module matrices.
    Direct,
}

impl LMethod {
    pub const ALL: [LMethod; 3] = [LMethod::Closed, LMethod::Recurrence, LMethod::Direct];
}

/// Lower-triangular `(d+1) x (d+1)` matrix with `R S_i v_j = L_ij v_0`, where
/// `R = prod_{h=1}^{d} (B - theta*_h)` and
/// `S_i = prod_{h=1}^{d-i} (A - theta_{d-h+1})`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LMatrix {
    pub d: u32,
    pub entries: Mat,
}

impl LMatrix {
    pub fn diagonal(&self) -> Vec<Rat> {
        self.entries.diagonal()
    }

    /// Product of the diagonal; `L` is lower triangular.
    pub fn det(&self) -> Rat {
        self.diagonal().into_iter().product()
    }

    pub fn is_lower_triangular(&self) -> bool {
        let n = self.entries.rows();
        (0..n).all(|i| (i + 1..n).all(|j| self.entries.get(i, j).is_zero()))
    }
}

struct Sequences {
    theta: Vec<Rat>,
    theta_star: Vec<Rat>,
    phi: Vec<Rat>,
    varphi: Vec<Rat>,
}

impl Sequences {
    fn new(p: &ParamTriple, d: u32) -> Self {
        let nu = Rat::from(d as i64);
        let d = d as i64;
        Sequences {
            theta: (0..=d).map(|i| params::theta(p, &nu, i)).collect(),
            theta_star: (0..=d).map(|i| params::theta_star(p, &nu, i)).collect(),
            // index 0 unused so phi[h] is phi_h
            phi: (0..=d).map(|i| params::phi(p, &nu, i)).collect(),
            varphi: (0..=d).map(|i| params::varphi(p, &nu, i)).collect(),
        }
    }

    /// `prod_{h=1}^{k} (theta*_0 - theta*_{d-h+1})`
    fn star_gap_product(&self, d: usize, k: usize) -> Rat {
        (1..=k)
            .map(|h| &self.theta_star[0] - &self.theta_star[d - h + 1])
            .product()
    }

    fn phi_product(&self, k: usize) -> Rat {
        self.phi[1..=k].iter().cloned().product()
    }

    fn varphi_product(&self, k: usize) -> Rat {
        self.varphi[1..=k].iter().cloned().product()
    }
}

fn binomial(n: usize, k: usize) -> Rat {
    if k > n {
        return Rat::zero();
    }
    (0..k)
        .map(|i| Rat::new((n - i) as i64, (i + 1) as i64))
        .product()
}

pub fn l_matrix(p: &ParamTriple, d: u32, method: LMethod) -> LMatrix {
    let entries = match method {
        LMethod::Closed => closed(p, d),
        LMethod::Recurrence => recurrence(p, d),
        LMethod::Direct => direct(p, d),
    };
    LMatrix { d, entries }
}

/// `L_ii = prod_{h=1}^{d-i} phi_h * prod_{h=1}^{i} varphi_h`
pub fn l_diagonal_formula(p: &ParamTriple, d: u32) -> Vec<Rat> {
    let seq = Sequences::new(p, d);
    let du = d as usize;
    (0..=du)
        .map(|i| seq.phi_product(du - i) * seq.varphi_product(i))
        .collect()
}

fn closed(p: &ParamTriple, d: u32) -> Mat {
    let seq = Sequences::new(p, d);
    let du = d as usize;
    Mat::from_fn(du + 1, du + 1, |i, j| {
        if j > i {
            return Rat::zero();
        }
        binomial(du - i + j, j) * binomial(i, j) / binomial(du, j)
            * seq.star_gap_product(du, i - j)
            * seq.phi_product(du - i)
            * seq.varphi_product(j)
    })
}

fn recurrence(p: &ParamTriple, d: u32) -> Mat {
    let seq = Sequences::new(p, d);
    let du = d as usize;
    let mut l = Mat::zeros(du + 1, du + 1);
    for i in 0..=du {
        l.set(i, 0, seq.star_gap_product(du, i) * seq.phi_product(du - i));
    }
    for i in 1..=du {
        for j in 1..=i {
            let v = (&seq.theta[i] - &seq.theta[j - 1]) * l.get(i, j - 1) + l.get(i - 1, j - 1);
            l.set(i, j, v);
        }
    }
    l
}

fn direct(p: &ParamTriple, d: u32) -> Mat {
    let seq = Sequences::new(p, d);
    let rep = build_r(p, d, BasisKind::V);
    let du = d as usize;
    let n = du + 1;
    let mut r = Mat::identity(n);
    for h in 1..=du {
        r = r
            .mul(&rep.mat_b.shift(&seq.theta_star[h]).unwrap())
            .unwrap();
    }
    let mut rows = Vec::with_capacity(n);
    for i in 0..=du {
        let mut s = Mat::identity(n);
        for h in 1..=du - i {
            s = s
                .mul(&rep.mat_a.shift(&seq.theta[du - h + 1]).unwrap())
                .unwrap();
        }
        let rs = r.mul(&s).unwrap();
        debug_assert!((1..n).all(|k| rs.row(k).iter().all(Rat::is_zero)));
        rows.push(rs.row(0).to_vec());
    }
    Mat::from_rows(rows).expect("square")
}
