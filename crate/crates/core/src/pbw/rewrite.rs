//! Normal ordering.
//!
//! After eliminating `C = delta - A - B` and `gamma = -alpha - beta`, the
//! remaining noncentral letters are put in the order `A < D < B` by
//! rewriting the leftmost out-of-order pair:
//!
//! ```text
//! BA -> AB - 2D
//! DA -> AD + A delta - A^2 - 2AB + 2D - alpha
//! BD -> DB - 2AB - B^2 + 2D + B delta + beta
//! ```
//!
//! With weights `A = B = 1` and `D = alpha = beta = delta = 2`, each rule
//! either keeps the weight and removes one inversion or lowers the weight,
//! so the rewriting terminates. Results for noncentral words are memoized.

use std::collections::HashMap;

use super::{Exponents, FreeElement, NormalElement, Symbol};
use crate::error::{Error, Result};
use crate::linalg::Rat;

pub const DEFAULT_REWRITE_LIMIT: usize = 1_000_000;

/// Replaces `C` by `delta - A - B` and `gamma` by `-alpha - beta`.
pub fn eliminate(x: &FreeElement) -> FreeElement {
    let image = |s: Symbol| -> FreeElement {
        let sym = FreeElement::symbol;
        match s {
            Symbol::C => sym(Symbol::Delta).sub(&sym(Symbol::A)).sub(&sym(Symbol::B)),
            Symbol::Gamma => sym(Symbol::Alpha)
                .add(&sym(Symbol::Beta))
                .scale(&-Rat::one()),
            other => sym(other),
        }
    };
    let mut out = FreeElement::zero();
    for (w, c) in x.terms() {
        if !w.iter().any(|s| matches!(s, Symbol::C | Symbol::Gamma)) {
            out.add_term(w.clone(), c.clone());
            continue;
        }
        let expanded = w.iter().fold(FreeElement::constant(c.clone()), |acc, &s| {
            acc.mul(&image(s))
        });
        out = out.add(&expanded);
    }
    out
}

/// Noncentral letters after elimination, in normal order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
enum Letter {
    A,
    D,
    B,
}

/// `(coefficient, noncentral word, [alpha, delta, beta] exponents)`
type RuleTerm = (i64, &'static [Letter], [u32; 3]);

const BA: &[RuleTerm] = &[
    (1, &[Letter::A, Letter::B], [0; 3]),
    (-2, &[Letter::D], [0; 3]),
];

const DA: &[RuleTerm] = &[
    (1, &[Letter::A, Letter::D], [0; 3]),
    (1, &[Letter::A], [0, 1, 0]),
    (-1, &[Letter::A, Letter::A], [0; 3]),
    (-2, &[Letter::A, Letter::B], [0; 3]),
    (2, &[Letter::D], [0; 3]),
    (-1, &[], [1, 0, 0]),
];

const BD: &[RuleTerm] = &[
    (1, &[Letter::D, Letter::B], [0; 3]),
    (-2, &[Letter::A, Letter::B], [0; 3]),
    (-1, &[Letter::B, Letter::B], [0; 3]),
    (2, &[Letter::D], [0; 3]),
    (1, &[Letter::B], [0, 1, 0]),
    (1, &[], [0, 0, 1]),
];

fn rule(left: Letter, right: Letter) -> Option<&'static [RuleTerm]> {
    match (left, right) {
        (Letter::B, Letter::A) => Some(BA),
        (Letter::D, Letter::A) => Some(DA),
        (Letter::B, Letter::D) => Some(BD),
        _ => None,
    }
}

fn shifted(x: &NormalElement, central: [u32; 3], k: &Rat) -> NormalElement {
    let mut out = NormalElement::zero();
    for (e, c) in x.terms() {
        let mut e = *e;
        for (slot, add) in e[3..].iter_mut().zip(central) {
            *slot += add;
        }
        out.add_term(e, c * k);
    }
    out
}

/// Normal-ordering engine with a memo table that persists across calls.
#[derive(Debug)]
pub struct Rewriter {
    memo: HashMap<Vec<Letter>, NormalElement>,
    limit: usize,
    steps: usize,
}

impl Default for Rewriter {
    fn default() -> Self {
        Self::with_limit(DEFAULT_REWRITE_LIMIT)
    }
}

impl Rewriter {
    pub fn new() -> Self {
        Self::default()
    }

    /// `limit` bounds the rule applications of a single `normal_form` call.
    pub fn with_limit(limit: usize) -> Self {
        Rewriter {
            memo: HashMap::new(),
            limit,
            steps: 0,
        }
    }

    pub fn normal_form(&mut self, x: &FreeElement) -> Result<NormalElement> {
        self.steps = 0;
        let mut out = NormalElement::zero();
        for (w, c) in eliminate(x).terms() {
            let mut letters = Vec::with_capacity(w.len());
            let mut central = [0u32; 3];
            for &s in w {
                match s {
                    Symbol::A => letters.push(Letter::A),
                    Symbol::D => letters.push(Letter::D),
                    Symbol::B => letters.push(Letter::B),
                    Symbol::Alpha => central[0] += 1,
                    Symbol::Delta => central[1] += 1,
                    Symbol::Beta => central[2] += 1,
                    Symbol::C | Symbol::Gamma => unreachable!("eliminated"),
                }
            }
            let nf = self.word(&letters)?;
            out = out.add(&shifted(&nf, central, c));
        }
        Ok(out)
    }

    fn word(&mut self, w: &[Letter]) -> Result<NormalElement> {
        if let Some(hit) = self.memo.get(w) {
            return Ok(hit.clone());
        }
        let found = w
            .windows(2)
            .enumerate()
            .find_map(|(i, pair)| rule(pair[0], pair[1]).map(|r| (i, r)));
        let result = match found {
            None => {
                let count = |l: Letter| w.iter().filter(|&&x| x == l).count() as u32;
                let e: Exponents = [
                    count(Letter::A),
                    count(Letter::D),
                    count(Letter::B),
                    0,
                    0,
                    0,
                ];
                NormalElement::monomial(e)
            }
            Some((i, terms)) => {
                self.steps += 1;
                if self.steps > self.limit {
                    return Err(Error::RewriteLimit(self.limit));
                }
                let mut acc = NormalElement::zero();
                for &(k, middle, central) in terms {
                    let mut next = Vec::with_capacity(w.len() + 1);
                    next.extend_from_slice(&w[..i]);
                    next.extend_from_slice(middle);
                    next.extend_from_slice(&w[i + 2..]);
                    let nf = self.word(&next)?;
                    acc = acc.add(&shifted(&nf, central, &Rat::from(k)));
                }
                acc
            }
        };
        self.memo.insert(w.to_vec(), result.clone());
        Ok(result)
    }
}

pub fn normal_form(x: &FreeElement) -> Result<NormalElement> {
    Rewriter::new().normal_form(x)
}
