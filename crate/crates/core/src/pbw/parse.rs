//! Recursive-descent parser for expressions such as `[A,B] - 2*D` or
//! `1/2*A^2*B - alpha`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := rational | symbol | '(' expr ')' | '[' expr ',' expr ']'
//! ```
//!
//! Products need an explicit `*`. Positions in errors are 0-based character
//! offsets.

use num_bigint::BigInt;

use super::{FreeElement, Symbol};
use crate::error::{Error, Result};
use crate::linalg::Rat;

pub const MAX_EXPONENT: u32 = 64;

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Punct(char),
}

struct Token {
    tok: Tok,
    pos: usize,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn tokenize(text: &str) -> Result<(Vec<Token>, usize)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Int(digits.parse().expect("ascii digits")),
                pos: start,
            });
        } else if ch.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                pos: start,
            });
        } else if "+-*/^()[],".contains(ch) || ch == '\u{2212}' {
            let ch = if ch == '\u{2212}' { '-' } else { ch };
            out.push(Token {
                tok: Tok::Punct(ch),
                pos: i,
            });
            i += 1;
        } else {
            return Err(syntax(i, format!("unexpected character {ch:?}")));
        }
    }
    Ok((out, chars.len()))
}

struct Parser {
    tokens: Vec<Token>,
    next: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.next).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.next).map_or(self.end, |t| t.pos)
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(&Tok::Punct(ch)) {
            self.next += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected '{ch}'")))
        }
    }

    fn unexpected(&self, want: &str) -> Error {
        match self.tokens.get(self.next) {
            None => syntax(self.end, format!("unexpected end of input, {want}")),
            Some(t) => {
                let found = match &t.tok {
                    Tok::Int(n) => n.to_string(),
                    Tok::Ident(s) => s.clone(),
                    Tok::Punct(c) => c.to_string(),
                };
                syntax(t.pos, format!("unexpected {found:?}, {want}"))
            }
        }
    }

    fn expr(&mut self) -> Result<FreeElement> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<FreeElement> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<FreeElement> {
        if self.eat('-') {
            Ok(self.unary()?.scale(&-Rat::one()))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<FreeElement> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.next += 1;
                match u32::try_from(&n) {
                    Ok(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
                    _ => Err(syntax(pos, format!("exponent {n} exceeds {MAX_EXPONENT}"))),
                }
            }
            _ => Err(self.unexpected("expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<FreeElement> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(p)) => {
                self.next += 1;
                if self.eat('/') {
                    let qpos = self.pos();
                    match self.peek().cloned() {
                        Some(Tok::Int(q)) => {
                            self.next += 1;
                            if q == BigInt::from(0) {
                                return Err(syntax(qpos, "zero denominator"));
                            }
                            Ok(FreeElement::constant(Rat::new(p, q)))
                        }
                        _ => Err(self.unexpected("expected a denominator")),
                    }
                } else {
                    Ok(FreeElement::constant(Rat::from(p)))
                }
            }
            Some(Tok::Ident(name)) => {
                self.next += 1;
                Symbol::from_name(&name)
                    .map(FreeElement::symbol)
                    .ok_or_else(|| syntax(pos, format!("unknown generator {name:?}")))
            }
            Some(Tok::Punct('(')) => {
                self.next += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(Tok::Punct('[')) => {
                self.next += 1;
                let x = self.expr()?;
                self.expect(',')?;
                let y = self.expr()?;
                self.expect(']')?;
                Ok(x.commutator(&y))
            }
            _ => Err(self.unexpected("expected a number, generator, '(' or '['")),
        }
    }
}

pub fn parse(text: &str) -> Result<FreeElement> {
    let (tokens, end) = tokenize(text)?;
    let mut p = Parser {
        tokens,
        next: 0,
        end,
    };
    let x = p.expr()?;
    if p.next < p.tokens.len() {
        return Err(p.unexpected("expected an operator (products need '*')"));
    }
    Ok(x)
}
