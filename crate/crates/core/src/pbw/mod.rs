//! Noncommutative expressions in `A, B, C, D, alpha, beta, gamma, delta`,
//! and their reduction to the ordered monomials
//! `A^i D^j B^k alpha^r delta^s beta^t`.

mod parse;
mod rewrite;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Mat, Rat};
use crate::module::{central_matrices, ModuleRep};

pub use parse::{parse, MAX_EXPONENT};
pub use rewrite::{eliminate, normal_form, Rewriter, DEFAULT_REWRITE_LIMIT};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Symbol {
    A,
    B,
    C,
    D,
    #[serde(rename = "alpha")]
    Alpha,
    #[serde(rename = "beta")]
    Beta,
    #[serde(rename = "gamma")]
    Gamma,
    #[serde(rename = "delta")]
    Delta,
}

impl Symbol {
    pub const ALL: [Symbol; 8] = [
        Symbol::A,
        Symbol::B,
        Symbol::C,
        Symbol::D,
        Symbol::Alpha,
        Symbol::Beta,
        Symbol::Gamma,
        Symbol::Delta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::A => "A",
            Symbol::B => "B",
            Symbol::C => "C",
            Symbol::D => "D",
            Symbol::Alpha => "alpha",
            Symbol::Beta => "beta",
            Symbol::Gamma => "gamma",
            Symbol::Delta => "delta",
        }
    }

    pub fn from_name(s: &str) -> Option<Symbol> {
        Symbol::ALL.into_iter().find(|sym| sym.name() == s)
    }

    pub fn is_central(self) -> bool {
        matches!(
            self,
            Symbol::Alpha | Symbol::Beta | Symbol::Gamma | Symbol::Delta
        )
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type Word = Vec<Symbol>;

/// Element of the free algebra: a finite sum of words with rational
/// coefficients. The empty word is the unit. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct FreeElement {
    terms: BTreeMap<Word, Rat>,
}

impl FreeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(Vec::new(), c)
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::word(vec![s])
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Rat::one())
    }

    pub fn term(w: Word, c: Rat) -> Self {
        let mut x = Self::zero();
        x.add_term(w, c);
        x
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        FreeElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `xy - yx`
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Longest word length, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(w, c)| (w.as_slice(), c)))
    }
}

impl FromStr for FreeElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

/// Exponents `(i, j, k, r, s, t)` of `A^i D^j B^k alpha^r delta^s beta^t`.
pub type Exponents = [u32; 6];

/// Order of the factors in a normal monomial.
pub const NORMAL_ORDER: [Symbol; 6] = [
    Symbol::A,
    Symbol::D,
    Symbol::B,
    Symbol::Alpha,
    Symbol::Delta,
    Symbol::Beta,
];

#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct NormalElement {
    terms: BTreeMap<Exponents, Rat>,
}

impl NormalElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(e: Exponents) -> Self {
        let mut x = Self::zero();
        x.add_term(e, Rat::one());
        x
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponents) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, e: Exponents, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        NormalElement {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn to_free(&self) -> FreeElement {
        let mut out = FreeElement::zero();
        for (e, c) in &self.terms {
            out.add_term(exponents_to_word(e), c.clone());
        }
        out
    }
}

impl fmt::Display for NormalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_free().fmt(f)
    }
}

pub fn exponents_to_word(e: &Exponents) -> Word {
    NORMAL_ORDER
        .iter()
        .zip(e)
        .flat_map(|(&s, &n)| std::iter::repeat_n(s, n as usize))
        .collect()
}

/// Terms are written longest word first, then in lexicographic word order,
/// with runs collapsed to powers: `A^2*B - 2*D + 1/3`.
fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a [Symbol], &'a Rat)>,
) -> fmt::Result {
    let mut terms: Vec<_> = terms.collect();
    if terms.is_empty() {
        return f.write_str("0");
    }
    terms.sort_by(|(w1, _), (w2, _)| w2.len().cmp(&w1.len()).then_with(|| w1.cmp(w2)));
    for (n, (w, c)) in terms.into_iter().enumerate() {
        let mag = c.abs();
        match (n, c.is_negative()) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        if w.is_empty() {
            write!(f, "{mag}")?;
            continue;
        }
        if !mag.is_one() {
            write!(f, "{mag}*")?;
        }
        let mut first = true;
        for run in w.chunk_by(|x, y| x == y) {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match run.len() {
                1 => write!(f, "{}", run[0])?,
                k => write!(f, "{}^{k}", run[0])?,
            }
        }
    }
    Ok(())
}

/// How central symbols are interpreted by [`evaluate`].
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum CentralValues {
    /// `alpha, beta, gamma, delta` act as `zeta, zeta*, -zeta-zeta*, eta`.
    #[default]
    Scalars,
    /// Compute each central element from the module's `A, B, C, D`.
    Matrices,
}

/// Substitutes the module's matrices for the generators.
pub fn evaluate(x: &FreeElement, rep: &ModuleRep, central: CentralValues) -> Result<Mat> {
    let n = rep.dim();
    let [alpha, beta, gamma, delta] = match central {
        CentralValues::Scalars => {
            let s = &rep.scalars;
            [&s.zeta, &s.zeta_star, &s.gamma_scalar, &s.eta].map(|k| Mat::scalar(n, k))
        }
        CentralValues::Matrices => {
            let c = central_matrices(&rep.mat_a, &rep.mat_b, &rep.mat_c, &rep.mat_d)?;
            [c.alpha, c.beta, c.gamma, c.delta]
        }
    };
    let image = |s: Symbol| match s {
        Symbol::A => &rep.mat_a,
        Symbol::B => &rep.mat_b,
        Symbol::C => &rep.mat_c,
        Symbol::D => &rep.mat_d,
        Symbol::Alpha => &alpha,
        Symbol::Beta => &beta,
        Symbol::Gamma => &gamma,
        Symbol::Delta => &delta,
    };
    let mut total = Mat::zeros(n, n);
    for (w, c) in x.terms() {
        let mut m = Mat::scalar(n, c);
        for &s in w {
            m = m.mul(image(s))?;
        }
        total = total.add(&m)?;
    }
    Ok(total)
}

pub fn evaluate_normal(x: &NormalElement, rep: &ModuleRep, central: CentralValues) -> Result<Mat> {
    evaluate(&x.to_free(), rep, central)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::module::{build_r, BasisKind};
    use crate::params::ParamTriple;

    fn example() -> ModuleRep {
        let h = rat(-1, 2);
        build_r(&ParamTriple::new(h.clone(), h.clone(), h), 4, BasisKind::V)
    }

    #[test]
    fn format_orders_longest_first() {
        let x = parse("1/3 - 2*D + A*B").unwrap();
        assert_eq!(x.to_string(), "A*B - 2*D + 1/3");
        assert_eq!(FreeElement::zero().to_string(), "0");
        assert_eq!(parse("-A*A*B*alpha").unwrap().to_string(), "-A^2*B*alpha");
    }

    #[test]
    fn evaluate_delta_on_example() {
        let rep = example();
        let delta = FreeElement::symbol(Symbol::Delta);
        let want = Mat::scalar(5, &rat(21, 4));
        assert_eq!(
            evaluate(&delta, &rep, CentralValues::Scalars).unwrap(),
            want
        );
        assert_eq!(
            evaluate(&delta, &rep, CentralValues::Matrices).unwrap(),
            want
        );
    }

    #[test]
    fn evaluate_alpha_on_example_is_zero() {
        let rep = example();
        let alpha = FreeElement::symbol(Symbol::Alpha);
        for mode in [CentralValues::Scalars, CentralValues::Matrices] {
            assert!(evaluate(&alpha, &rep, mode).unwrap().is_zero());
        }
    }

    #[test]
    fn normal_word_round_trip() {
        let e = [2, 1, 0, 0, 3, 1];
        let w = exponents_to_word(&e);
        assert_eq!(w.len(), 7);
        assert_eq!(NormalElement::monomial(e).to_string(), "A^2*D*delta^3*beta");
    }
}
