//! Sweep grids: `a=<list>;b=<list>;c=<list>;d=<list>` where each list is
//! comma-separated values or a stride `start..end:step` (end inclusive).

use racah_core::{ParamTriple, Rat};

use crate::args::parse_rat;

#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub a: Vec<Rat>,
    pub b: Vec<Rat>,
    pub c: Vec<Rat>,
    pub d: Vec<u32>,
}

impl Grid {
    /// Points in lexicographic order of `(a, b, c, d)` as listed.
    pub fn points(&self) -> Vec<(ParamTriple, u32)> {
        let mut out = Vec::with_capacity(self.a.len() * self.b.len() * self.c.len() * self.d.len());
        for a in &self.a {
            for b in &self.b {
                for c in &self.c {
                    for &d in &self.d {
                        out.push((ParamTriple::new(a.clone(), b.clone(), c.clone()), d));
                    }
                }
            }
        }
        out
    }
}

fn parse_values(axis: &str, spec: &str) -> Result<Vec<Rat>, String> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((range, step)) = item.split_once(':') {
            let (start, end) = range.split_once("..").ok_or_else(|| {
                format!("axis {axis}: stride {item:?} must look like start..end:step")
            })?;
            let (start, end, step) = (parse_rat(start)?, parse_rat(end)?, parse_rat(step)?);
            if step.is_zero() || step.is_negative() {
                return Err(format!("axis {axis}: stride step must be positive"));
            }
            let mut x = start;
            while x <= end {
                out.push(x.clone());
                x += step.clone();
            }
        } else {
            out.push(parse_rat(item)?);
        }
    }
    Ok(out)
}

pub fn parse_grid(text: &str) -> Result<Grid, String> {
    let mut axes: [Option<Vec<Rat>>; 4] = Default::default();
    for part in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, spec) = part
            .split_once('=')
            .ok_or_else(|| format!("grid entry {part:?} must look like name=values"))?;
        let slot = match name.trim() {
            "a" => 0,
            "b" => 1,
            "c" => 2,
            "d" => 3,
            other => return Err(format!("unknown grid axis {other:?}")),
        };
        if axes[slot].is_some() {
            return Err(format!("grid axis {} given twice", name.trim()));
        }
        axes[slot] = Some(parse_values(name.trim(), spec)?);
    }
    let [a, b, c, d] = axes;
    let missing = |n: &str| format!("grid is missing axis {n}");
    let d = d
        .ok_or_else(|| missing("d"))?
        .into_iter()
        .map(|x| {
            x.to_i64()
                .and_then(|v| u32::try_from(v).ok())
                .ok_or_else(|| format!("grid values of d must be nonnegative integers, got {x}"))
        })
        .collect::<Result<Vec<u32>, String>>()?;
    Ok(Grid {
        a: a.ok_or_else(|| missing("a"))?,
        b: b.ok_or_else(|| missing("b"))?,
        c: c.ok_or_else(|| missing("c"))?,
        d,
    })
}
