//! Classification of `R_d(a, b, c)`: irreducibility, diagonalizability of
//! the generators, recovery of the parameters from traces, and isomorphism.
//!
//! Each closed-form criterion has an independent linear-algebra oracle, and
//! [`analyze`] refuses to report when the two disagree.

mod lmatrix;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use lmatrix::{l_diagonal_formula, l_matrix, LMatrix, LMethod};

use crate::error::{Error, Result};
use crate::linalg::{intertwiner_space, minimal_polynomial, spin, Mat, Poly, Rat, Subspace};
use crate::module::{build_r, BasisKind, ModuleRep};
use crate::params::{self, Membership, ParamTriple, SignFlip};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Generator {
    A,
    B,
    C,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::A, Generator::B, Generator::C];

    fn coordinate(self, p: &ParamTriple) -> &Rat {
        match self {
            Generator::A => &p.a,
            Generator::B => &p.b,
            Generator::C => &p.c,
        }
    }

    fn matrix(self, rep: &ModuleRep) -> &Mat {
        match self {
            Generator::A => &rep.mat_a,
            Generator::B => &rep.mat_b,
            Generator::C => &rep.mat_c,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Generator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "A" | "a" => Ok(Generator::A),
            "B" | "b" => Ok(Generator::B),
            "C" | "c" => Ok(Generator::C),
            _ => Err(format!("unknown generator {s:?}, expected A, B or C")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Criterion,
    Oracle,
}

pub fn irreducible_criterion(p: &ParamTriple, d: u32) -> Membership {
    params::in_p(p, d)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IrreducibilityOracle {
    pub irreducible: bool,
    /// A proper nonzero submodule when one exists.
    pub witness: Option<Subspace>,
}

/// Decides irreducibility from the matrices of a v-basis module.
///
/// If some `varphi_i` vanishes, `span{v_h : h >= i}` is a submodule.
/// Otherwise `B` is upper bidiagonal with nonzero superdiagonal, so each of
/// its eigenspaces is a line, and every nonzero submodule contains one of
/// them. The module is irreducible iff each eigenline spins up to everything.
pub fn irreducible_oracle(rep: &ModuleRep) -> Result<IrreducibilityOracle> {
    if rep.basis != BasisKind::V {
        return Err(Error::WrongBasis(rep.basis));
    }
    let n = rep.dim();
    let b = &rep.mat_b;
    if let Some(i) = (1..n).find(|&i| b.get(i - 1, i).is_zero()) {
        let vecs = (i..n).map(|h| crate::linalg::unit_vector(n, h)).collect();
        return Ok(IrreducibilityOracle {
            irreducible: false,
            witness: Some(Subspace::span(n, vecs)?),
        });
    }
    let ops = [&rep.mat_a, &rep.mat_b];
    let mut seen: Vec<&Rat> = Vec::new();
    for lambda in b.entries().iter().step_by(n + 1) {
        if seen.contains(&lambda) {
            continue;
        }
        seen.push(lambda);
        for v in b.eigenspace(lambda)?.basis() {
            let sub = spin(n, std::slice::from_ref(v), &ops)?;
            if !sub.is_full() {
                return Ok(IrreducibilityOracle {
                    irreducible: false,
                    witness: Some(sub),
                });
            }
        }
    }
    Ok(IrreducibilityOracle {
        irreducible: true,
        witness: None,
    })
}

/// Values of a coordinate at which two eigenvalues of its generator collide:
/// `(i - d - 1)/2` for `1 <= i <= 2d - 1`.
pub fn collision_values(d: u32) -> Vec<Rat> {
    let d = d as i64;
    (1..2 * d).map(|i| Rat::new(i - d - 1, 2)).collect()
}

/// Whether the generator acts diagonalizably on `R_d(p)`.
///
/// The criterion only applies on the irreducible locus; outside it this
/// returns [`Error::Reducible`]. The oracle checks that the minimal
/// polynomial is square-free (all eigenvalues are rational here).
pub fn diagonalizable(p: &ParamTriple, d: u32, gen: Generator, mode: Mode) -> Result<bool> {
    match mode {
        Mode::Criterion => {
            let membership = params::in_p(p, d);
            if !membership.member {
                return Err(Error::Reducible {
                    d,
                    detail: describe_violations(&membership),
                });
            }
            let x = gen.coordinate(p);
            Ok(!collision_values(d).contains(x))
        }
        Mode::Oracle => {
            let rep = build_r(p, d, BasisKind::V);
            diagonalizable_oracle(gen.matrix(&rep))
        }
    }
}

pub fn diagonalizable_oracle(m: &Mat) -> Result<bool> {
    Ok(minimal_polynomial(m)?.is_squarefree()?)
}

fn describe_violations(m: &Membership) -> String {
    m.violations
        .iter()
        .map(|v| format!("{} = {} = d/2 - {}", v.form, v.value, v.i))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Parameters recovered from the traces of one generator.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TraceRoots {
    pub generator: Generator,
    pub trace: Rat,
    /// `x^2 + x + d(d+2)/12 - trace/(d+1)`; its roots are `x` and `-x-1`.
    pub quadratic: Poly,
    /// Empty when the roots are irrational.
    pub roots: Vec<Rat>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Identification {
    pub d: u32,
    pub quadratics: Vec<TraceRoots>,
    /// Every triple compatible with the traces, sorted.
    pub candidates: Vec<ParamTriple>,
    pub canonical: Option<ParamTriple>,
    pub irrational: bool,
}

/// Recovers the parameter orbit from the traces of `A`, `B`, `C`.
pub fn identify(a: &Mat, b: &Mat, c: &Mat) -> Result<Identification> {
    let n = a.rows();
    if n == 0 {
        return Err(Error::EmptyModule);
    }
    for m in [a, b, c] {
        m.require_square("identify")?;
        if m.rows() != n {
            return Err(crate::linalg::LinalgError::DimensionMismatch {
                expected: n,
                found: m.rows(),
            }
            .into());
        }
    }
    let d = (n - 1) as u32;
    let di = d as i64;
    let offset = Rat::new(di * (di + 2), 12);
    let size = Rat::from(n);
    let mut quadratics = Vec::with_capacity(3);
    for (generator, m) in Generator::ALL.into_iter().zip([a, b, c]) {
        let trace = m.trace();
        let c0 = &offset - &trace / &size;
        let disc = Rat::one() - Rat::from(4) * &c0;
        let roots = match disc.sqrt_exact() {
            Some(s) => {
                let half = Rat::new(1, 2);
                let mut r = vec![(-Rat::one() - &s) * &half, (-Rat::one() + &s) * &half];
                r.dedup();
                r
            }
            None => Vec::new(),
        };
        quadratics.push(TraceRoots {
            generator,
            trace,
            quadratic: Poly::new(vec![c0, Rat::one(), Rat::one()]),
            roots,
        });
    }
    let irrational = quadratics.iter().any(|q| q.roots.is_empty());
    let mut candidates = Vec::new();
    if !irrational {
        for x in &quadratics[0].roots {
            for y in &quadratics[1].roots {
                for z in &quadratics[2].roots {
                    candidates.push(ParamTriple::new(x.clone(), y.clone(), z.clone()));
                }
            }
        }
        candidates.sort();
    }
    let canonical = candidates.first().map(|p| params::canonical(p).0);
    Ok(Identification {
        d,
        quadratics,
        candidates,
        canonical,
        irrational,
    })
}

/// Homomorphisms between two modules of the same dimension.
///
/// Commuting with `A` and `B` is not quite enough: `delta` acts by `eta`, so
/// a nonzero map also needs equal `eta`.
pub fn module_hom_space(m1: &ModuleRep, m2: &ModuleRep) -> Result<Vec<Mat>> {
    if m1.scalars.eta != m2.scalars.eta {
        return Ok(Vec::new());
    }
    Ok(intertwiner_space(
        &m1.mat_a, &m1.mat_b, &m2.mat_a, &m2.mat_b,
    )?)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IsomorphismVerdict {
    pub d: u32,
    pub canonical: (ParamTriple, ParamTriple),
    pub same_orbit: bool,
    pub hom_dim: usize,
    pub invertible: bool,
    pub isomorphic: bool,
}

/// Decides `R_d(p1) ~ R_d(p2)` for irreducible modules by orbit comparison,
/// and confirms it by computing the intertwiner space.
pub fn isomorphic(p1: &ParamTriple, p2: &ParamTriple, d: u32) -> Result<IsomorphismVerdict> {
    for p in [p1, p2] {
        let membership = params::in_p(p, d);
        if !membership.member {
            return Err(Error::Reducible {
                d,
                detail: format!("{p}: {}", describe_violations(&membership)),
            });
        }
    }
    let (c1, _) = params::canonical(p1);
    let (c2, _) = params::canonical(p2);
    let same_orbit = c1 == c2;
    let m1 = build_r(p1, d, BasisKind::V);
    let m2 = build_r(p2, d, BasisKind::V);
    let homs = module_hom_space(&m1, &m2)?;
    let invertible = homs.first().is_some_and(Mat::is_invertible);
    let isomorphic = homs.len() == 1 && invertible;
    if isomorphic != same_orbit {
        return Err(Error::OracleDisagreement(format!(
            "{p1} vs {p2} at d = {d}: orbits {}, intertwiner dimension {}",
            if same_orbit { "equal" } else { "differ" },
            homs.len()
        )));
    }
    Ok(IsomorphismVerdict {
        d,
        canonical: (c1, c2),
        same_orbit,
        hom_dim: homs.len(),
        invertible,
        isomorphic,
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IrreducibilitySummary {
    pub criterion: bool,
    pub oracle: bool,
    pub witness: Option<Subspace>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DiagonalizabilitySummary {
    pub generator: Generator,
    /// Absent off the irreducible locus.
    pub criterion: Option<bool>,
    pub oracle: bool,
    pub minimal_polynomial: Poly,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TraceSummary {
    pub computed: [Rat; 3],
    pub formula: [Rat; 3],
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AnalysisReport {
    pub params: ParamTriple,
    pub d: u32,
    pub in_p: Membership,
    pub irreducible: IrreducibilitySummary,
    pub diagonalizable: Vec<DiagonalizabilitySummary>,
    pub traces: TraceSummary,
    pub canonical: ParamTriple,
    pub canonical_flip: SignFlip,
    pub identified: Option<ParamTriple>,
    pub l_diagonal: Vec<Rat>,
    pub l_det_nonzero: bool,
}

/// Full classification of `R_d(p)`, failing with
/// [`Error::OracleDisagreement`] if any criterion and its oracle differ.
pub fn analyze(p: &ParamTriple, d: u32) -> Result<AnalysisReport> {
    let rep = build_r(p, d, BasisKind::V);
    let in_p = params::in_p(p, d);
    let oracle = irreducible_oracle(&rep)?;
    let disagree = |what: String| Error::OracleDisagreement(format!("{p} at d = {d}: {what}"));
    if in_p.member != oracle.irreducible {
        return Err(disagree(format!(
            "irreducibility criterion {} but oracle {}",
            in_p.member, oracle.irreducible
        )));
    }

    let mut diag = Vec::with_capacity(3);
    for gen in Generator::ALL {
        let minpoly = minimal_polynomial(gen.matrix(&rep))?;
        let oracle = minpoly.is_squarefree()?;
        let criterion = if in_p.member {
            Some(diagonalizable(p, d, gen, Mode::Criterion)?)
        } else {
            None
        };
        if criterion.is_some_and(|c| c != oracle) {
            return Err(disagree(format!(
                "{gen} diagonalizable by criterion {criterion:?} but oracle {oracle}"
            )));
        }
        diag.push(DiagonalizabilitySummary {
            generator: gen,
            criterion,
            oracle,
            minimal_polynomial: minpoly,
        });
    }

    let computed = [rep.mat_a.trace(), rep.mat_b.trace(), rep.mat_c.trace()];
    let (fa, fb, fc) = params::trace_formula(p, d);
    let formula = [fa, fb, fc];
    if computed != formula {
        return Err(disagree("trace formula".into()));
    }

    let (canonical, canonical_flip) = params::canonical(p);
    let identified = identify(&rep.mat_a, &rep.mat_b, &rep.mat_c)?.canonical;
    if identified.as_ref() != Some(&canonical) {
        return Err(disagree(format!("traces identify {identified:?}")));
    }

    let l = l_matrix(p, d, LMethod::Closed);
    let l_diagonal = l.diagonal();
    let l_det_nonzero = l_diagonal.iter().all(|x| !x.is_zero());
    if l_det_nonzero != in_p.member {
        return Err(disagree(format!("det L nonzero is {l_det_nonzero}")));
    }

    Ok(AnalysisReport {
        params: p.clone(),
        d,
        in_p,
        irreducible: IrreducibilitySummary {
            criterion: oracle.irreducible,
            oracle: oracle.irreducible,
            witness: oracle.witness,
        },
        diagonalizable: diag,
        traces: TraceSummary { computed, formula },
        canonical,
        canonical_flip,
        identified,
        l_diagonal,
        l_det_nonzero,
    })
}
