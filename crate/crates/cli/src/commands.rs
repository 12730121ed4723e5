use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use racah_core::analyzer::{self, module_hom_space, Generator, Identification, Mode};
use racah_core::module::central_matrices;
use racah_core::pbw::{self, CentralValues};
use racah_core::verma::{build_verma, default_cutoff, verma_checks};
use racah_core::{
    analyze, build_r, verify_relations, AnalysisReport, BasisKind, CheckReport, Error, Mat,
    ModuleRep, ParamTriple, Poly, Rat,
};

use crate::grid::parse_grid;

/// A bad invocation: exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Syntax errors in user input are usage errors; everything else is a failure.
fn core_err(e: Error) -> anyhow::Error {
    match e {
        Error::Syntax { .. }
        | Error::Reducible { .. }
        | Error::CutoffTooSmall { .. }
        | Error::WrongBasis(_) => usage(e.to_string()),
        other => other.into(),
    }
}

pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn new(doc: &impl Serialize, text: String, ok: bool) -> Result<Outcome> {
        Ok(Outcome {
            json: serde_json::to_value(doc)?,
            text,
            ok,
        })
    }
}

fn matrices_text(rep: &ModuleRep) -> String {
    let mut s = format!("R_{}{} in the {} basis\n", rep.d, rep.params, rep.basis);
    for (name, m) in [
        ("A", &rep.mat_a),
        ("B", &rep.mat_b),
        ("C", &rep.mat_c),
        ("D", &rep.mat_d),
    ] {
        let _ = writeln!(s, "{name} =\n{m}");
    }
    s
}

pub fn report_text(report: &CheckReport) -> String {
    let mut s = String::new();
    for c in &report.checks {
        if c.passed {
            let _ = writeln!(s, "PASS {}", c.name);
        } else if let Some(o) = &c.first_offending {
            let _ = writeln!(
                s,
                "FAIL {} at ({}, {}): {} vs {}",
                c.name, o.row, o.col, o.lhs, o.rhs
            );
        } else {
            let _ = writeln!(s, "FAIL {}", c.name);
        }
    }
    s
}

pub fn construct(p: &ParamTriple, d: u32, basis: BasisKind) -> Result<Outcome> {
    let rep = build_r(p, d, basis);
    Outcome::new(&rep, matrices_text(&rep), true)
}

pub fn load_module(path: &Path) -> Result<ModuleRep> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let rep: ModuleRep = serde_json::from_str(&text)
        .map_err(|e| usage(format!("{} is not a module document: {e}", path.display())))?;
    let n = rep.dim();
    for m in [&rep.mat_a, &rep.mat_b, &rep.mat_c, &rep.mat_d] {
        if m.shape() != (n, n) {
            return Err(usage(format!(
                "{}: matrices must be {n} x {n}",
                path.display()
            )));
        }
    }
    Ok(rep)
}

pub fn verify(rep: &ModuleRep) -> Result<Outcome> {
    let report = verify_relations(rep).map_err(core_err)?;
    let ok = report.all_passed();
    Outcome::new(&report, report_text(&report), ok)
}

fn analysis_text(r: &AnalysisReport) -> String {
    let mut s = format!("R_{}{}\n", r.d, r.params);
    let _ = writeln!(s, "irreducible: {}", r.irreducible.oracle);
    for v in &r.in_p.violations {
        let _ = writeln!(s, "  {} = {} = d/2 - {}", v.form, v.value, v.i);
    }
    if let Some(w) = &r.irreducible.witness {
        let _ = writeln!(s, "  submodule of dimension {}", w.dim());
    }
    for g in &r.diagonalizable {
        let _ = writeln!(
            s,
            "{} diagonalizable: {} (minimal polynomial {})",
            g.generator, g.oracle, g.minimal_polynomial
        );
    }
    let [ta, tb, tc] = &r.traces.computed;
    let _ = writeln!(s, "traces: A {ta}, B {tb}, C {tc}");
    let _ = writeln!(s, "canonical: {} via {}", r.canonical, r.canonical_flip);
    let diag: Vec<String> = r.l_diagonal.iter().map(Rat::to_string).collect();
    let _ = writeln!(s, "L diagonal: {}", diag.join(", "));
    s
}

pub fn analyze_point(p: &ParamTriple, d: u32) -> Result<Outcome> {
    let report = analyze(p, d)?;
    Outcome::new(&report, analysis_text(&report), true)
}

#[derive(Serialize)]
struct SweepPoint {
    params: ParamTriple,
    d: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<AnalysisReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct SweepSummary {
    points: usize,
    irreducible: usize,
    reducible: usize,
    disagreements: usize,
}

pub fn sweep(grid_text: &str) -> Result<Outcome> {
    let grid = parse_grid(grid_text).map_err(usage)?;
    let points = grid.points();
    if points.is_empty() {
        return Err(usage("grid is empty"));
    }
    let start = Instant::now();
    let results: Vec<SweepPoint> = points
        .par_iter()
        .map(|(p, d)| {
            let (report, error) = match analyze(p, *d) {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(e.to_string())),
            };
            SweepPoint {
                params: p.clone(),
                d: *d,
                report,
                error,
            }
        })
        .collect();
    let irreducible = results
        .iter()
        .filter(|r| r.report.as_ref().is_some_and(|r| r.irreducible.oracle))
        .count();
    let disagreements = results.iter().filter(|r| r.error.is_some()).count();
    let summary = SweepSummary {
        points: results.len(),
        irreducible,
        reducible: results.len() - irreducible - disagreements,
        disagreements,
    };
    eprintln!(
        "swept {} points in {:.3} s",
        results.len(),
        start.elapsed().as_secs_f64()
    );

    let mut text = String::new();
    for r in &results {
        let verdict = match (&r.report, &r.error) {
            (Some(rep), _) if rep.irreducible.oracle => "irreducible".to_string(),
            (Some(rep), _) => format!(
                "reducible, submodule of dimension {}",
                rep.irreducible.witness.as_ref().map_or(0, |w| w.dim())
            ),
            (None, Some(e)) => format!("ERROR {e}"),
            (None, None) => unreachable!(),
        };
        let _ = writeln!(text, "{} d={}: {verdict}", r.params, r.d);
    }
    let _ = writeln!(
        text,
        "{} points, {} irreducible, {} reducible, {} disagreements",
        summary.points, summary.irreducible, summary.reducible, summary.disagreements
    );
    let ok = disagreements == 0;
    Outcome::new(&json!({ "points": results, "summary": summary }), text, ok)
}

pub fn intertwine(m1: &ModuleRep, m2: &ModuleRep) -> Result<Outcome> {
    let homs = module_hom_space(m1, m2)?;
    let invertible = homs.first().is_some_and(Mat::is_invertible);
    let isomorphic = homs.len() == 1 && invertible;
    let same_orbit =
        racah_core::params::canonical(&m1.params).0 == racah_core::params::canonical(&m2.params).0;
    let mut text = format!(
        "intertwiner space has dimension {}; invertible: {invertible}; isomorphic: {isomorphic}\n",
        homs.len()
    );
    for (i, x) in homs.iter().enumerate() {
        let _ = writeln!(text, "X{i} =\n{x}");
    }
    let doc = json!({
        "from": { "params": m1.params, "basis": m1.basis },
        "to": { "params": m2.params, "basis": m2.basis },
        "d": m1.d,
        "dimension": homs.len(),
        "basis": homs,
        "invertible": invertible,
        "isomorphic": isomorphic,
        "same_orbit": same_orbit,
    });
    Outcome::new(&doc, text, true)
}

pub fn reduce(expr: &str) -> Result<Outcome> {
    let x = pbw::parse(expr).map_err(core_err)?;
    let nf = pbw::normal_form(&x).map_err(core_err)?;
    let text = format!("{nf}\n");
    let doc = json!({ "input": x.to_string(), "normal_form": nf.to_string() });
    Outcome::new(&doc, text, true)
}

pub fn eval(expr: &str, rep: &ModuleRep, from_matrices: bool) -> Result<Outcome> {
    let x = pbw::parse(expr).map_err(core_err)?;
    let mode = if from_matrices {
        CentralValues::Matrices
    } else {
        CentralValues::Scalars
    };
    let m = pbw::evaluate(&x, rep, mode)?;
    let text = format!("{m}\n");
    Outcome::new(&m, text, true)
}

pub fn verma(p: &ParamTriple, nu: &Rat, d: Option<u32>, cutoff: Option<usize>) -> Result<Outcome> {
    let d = match d {
        Some(d) => d,
        None => nu
            .to_i64()
            .and_then(|n| u32::try_from(n).ok())
            .ok_or_else(|| {
                usage(format!(
                    "--d is required when nu = {nu} is not a nonnegative integer"
                ))
            })?,
    };
    let cutoff = cutoff.unwrap_or_else(|| default_cutoff(d));
    let vt = build_verma(p, nu, cutoff).map_err(core_err)?;
    let report = verma_checks(&vt, d).map_err(core_err)?;
    let ok = report.all_passed();
    let text = format!(
        "truncation at N = {cutoff}, safe window 0..={}\n{}",
        vt.safe_window,
        report_text(&report)
    );
    Outcome::new(
        &json!({ "truncation": vt, "d": d, "checks": report }),
        text,
        ok,
    )
}

fn identification_text(id: &Identification) -> String {
    let mut s = String::new();
    for q in &id.quadratics {
        let roots: Vec<String> = q.roots.iter().map(Rat::to_string).collect();
        let roots = if roots.is_empty() {
            "irrational".to_string()
        } else {
            roots.join(", ")
        };
        let _ = writeln!(
            s,
            "{}: trace {}, {} = 0, roots {roots}",
            q.generator, q.trace, q.quadratic
        );
    }
    match &id.canonical {
        Some(c) => {
            let _ = writeln!(
                s,
                "identified as R_{}{c}; candidates: {}",
                id.d,
                id.candidates.len()
            );
        }
        None => s.push_str("no rational parameters\n"),
    }
    s
}

pub fn identify(rep: &ModuleRep) -> Result<Outcome> {
    let id = analyzer::identify(&rep.mat_a, &rep.mat_b, &rep.mat_c).map_err(core_err)?;
    Outcome::new(&id, identification_text(&id), true)
}

pub fn diagonalizable(
    p: &ParamTriple,
    d: u32,
    generator: Generator,
    oracle: bool,
) -> Result<Outcome> {
    let mode = if oracle {
        Mode::Oracle
    } else {
        Mode::Criterion
    };
    let verdict = analyzer::diagonalizable(p, d, generator, mode).map_err(core_err)?;
    let text = format!("{generator} diagonalizable on R_{d}{p}: {verdict}\n");
    let doc = json!({ "params": p, "d": d, "generator": generator, "mode": format!("{mode:?}").to_lowercase(), "diagonalizable": verdict });
    Outcome::new(&doc, text, true)
}

pub mod golden {
    use super::*;
    use racah_core::analyzer::{diagonalizable, irreducible_oracle};
    use racah_core::linalg::{minimal_polynomial, rat};
    use racah_core::module::Check;

    const FIXTURE: &str = include_str!("../fixtures/golden_d4.json");

    pub fn fixture() -> ModuleRep {
        serde_json::from_str(FIXTURE).expect("bundled fixture parses")
    }

    fn built(negate_varphi: bool) -> Result<ModuleRep> {
        let h = rat(-1, 2);
        let p = ParamTriple::new(h.clone(), h.clone(), h);
        let rep = build_r(&p, 4, BasisKind::V);
        if !negate_varphi {
            return Ok(rep);
        }
        let mut b = rep.mat_b.clone();
        for i in 0..4 {
            let x = -b.get(i, i + 1);
            b.set(i, i + 1, x);
        }
        Ok(ModuleRep::from_ab(4, p, BasisKind::V, rep.mat_a, b)?)
    }

    pub fn run(negate_varphi: bool) -> Result<Outcome> {
        let want = fixture();
        let rep = built(negate_varphi)?;
        let mut report = CheckReport::default();
        for (name, got, fix) in [
            ("A matches fixture", &rep.mat_a, &want.mat_a),
            ("B matches fixture", &rep.mat_b, &want.mat_b),
            ("C matches fixture", &rep.mat_c, &want.mat_c),
            ("D matches fixture", &rep.mat_d, &want.mat_d),
        ] {
            report.push(Check::compare(name, got, fix));
        }
        let minpoly = Poly::from_roots(&[rat(-1, 4), rat(3, 4), rat(3, 4), rat(15, 4), rat(15, 4)]);
        for (name, m) in [("A", &rep.mat_a), ("B", &rep.mat_b), ("C", &rep.mat_c)] {
            let got = minimal_polynomial(m)?;
            report.push(Check::flag(
                format!("minimal polynomial of {name} is (x + 1/4)(x - 3/4)^2(x - 15/4)^2"),
                got == minpoly,
            ));
        }
        for (lambda, v) in [
            (rat(15, 4), [1, 0, 0, 0, 0]),
            (rat(3, 4), [3, 1, 0, 0, 0]),
            (rat(-1, 4), [27, 12, 8, 0, 0]),
        ] {
            let es = rep.mat_b.eigenspace(&lambda)?;
            let v: Vec<Rat> = v.iter().map(|&x| Rat::from(x)).collect();
            report.push(Check::flag(
                format!("B eigenspace at {lambda} is the line through {v:?}"),
                es.dim() == 1 && es.contains(&v),
            ));
        }
        let c = central_matrices(&rep.mat_a, &rep.mat_b, &rep.mat_c, &rep.mat_d)?;
        let zero = Mat::zeros(5, 5);
        for (name, m) in [
            ("alpha = 0", &c.alpha),
            ("beta = 0", &c.beta),
            ("gamma = 0", &c.gamma),
        ] {
            report.push(Check::compare(name, m, &zero));
        }
        report.push(Check::flag(
            "irreducible",
            irreducible_oracle(&rep)?.irreducible,
        ));
        for gen in Generator::ALL {
            let oracle = analyzer::diagonalizable_oracle(match gen {
                Generator::A => &rep.mat_a,
                Generator::B => &rep.mat_b,
                Generator::C => &rep.mat_c,
            })?;
            let criterion = diagonalizable(&rep.params, 4, gen, Mode::Criterion)?;
            report.push(Check::flag(
                format!("{gen} not diagonalizable"),
                !oracle && !criterion,
            ));
        }
        let id = analyzer::identify(&rep.mat_a, &rep.mat_b, &rep.mat_c)?;
        report.push(Check::flag(
            "traces identify (-1/2, -1/2, -1/2)",
            id.canonical.as_ref() == Some(&want.params),
        ));

        let ok = report.all_passed();
        let mut text = report_text(&report);
        text.push_str(&identification_text(&id));
        let _ = writeln!(
            text,
            "{}",
            if ok {
                "golden example: pass"
            } else {
                "golden example: FAIL"
            }
        );
        let doc = json!({ "passed": ok, "checks": report, "identification": id });
        Outcome::new(&doc, text, ok)
    }
}
