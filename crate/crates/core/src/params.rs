//! Parameter families attached to a triple `(a, b, c)` and a weight `nu`:
//! eigenvalue sequences, split sequences, central scalars, the irreducibility
//! locus, the sign-flip orbit action, and trace formulas.
//!
//! `nu` is an arbitrary rational here. Finite modules use `nu = d`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::Rat;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ParamTriple {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl ParamTriple {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Self {
        ParamTriple { a, b, c }
    }

    pub fn coords(&self) -> [&Rat; 3] {
        [&self.a, &self.b, &self.c]
    }
}

impl fmt::Display for ParamTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Central scalars: how `alpha`, `beta`, `gamma`, `delta` act on a module.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Scalars {
    pub zeta: Rat,
    pub zeta_star: Rat,
    pub eta: Rat,
    /// Always `-(zeta + zeta_star)`.
    pub gamma_scalar: Rat,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Sign {
    fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Element of `{+1, -1}^3`. A `Minus` coordinate applies `x -> -x - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SignFlip {
    pub sa: Sign,
    pub sb: Sign,
    pub sc: Sign,
}

impl SignFlip {
    pub const IDENTITY: SignFlip = SignFlip {
        sa: Sign::Plus,
        sb: Sign::Plus,
        sc: Sign::Plus,
    };
    pub const FLIP_A: SignFlip = SignFlip {
        sa: Sign::Minus,
        sb: Sign::Plus,
        sc: Sign::Plus,
    };
    pub const FLIP_B: SignFlip = SignFlip {
        sa: Sign::Plus,
        sb: Sign::Minus,
        sc: Sign::Plus,
    };
    pub const FLIP_C: SignFlip = SignFlip {
        sa: Sign::Plus,
        sb: Sign::Plus,
        sc: Sign::Minus,
    };

    /// All eight group elements.
    pub fn all() -> Vec<SignFlip> {
        let signs = [Sign::Plus, Sign::Minus];
        let mut out = Vec::with_capacity(8);
        for sa in signs {
            for sb in signs {
                for sc in signs {
                    out.push(SignFlip { sa, sb, sc });
                }
            }
        }
        out
    }

    pub fn compose(self, other: SignFlip) -> SignFlip {
        SignFlip {
            sa: self.sa.times(other.sa),
            sb: self.sb.times(other.sb),
            sc: self.sc.times(other.sc),
        }
    }
}

impl fmt::Display for SignFlip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |x: Sign| if x == Sign::Plus { "1" } else { "-1" };
        write!(f, "({},{},{})", s(self.sa), s(self.sb), s(self.sc))
    }
}

fn half(x: &Rat) -> Rat {
    x * Rat::new(1, 2)
}

fn int(i: i64) -> Rat {
    Rat::from(i)
}

/// `(x + nu/2 - i)(x + nu/2 - i + 1)`
fn eigen_value(x: &Rat, nu: &Rat, i: i64) -> Rat {
    let base = x + half(nu) - int(i);
    &base * (&base + Rat::one())
}

/// Eigenvalue sequence of `A`.
pub fn theta(p: &ParamTriple, nu: &Rat, i: i64) -> Rat {
    eigen_value(&p.a, nu, i)
}

/// Eigenvalue sequence of `B`.
pub fn theta_star(p: &ParamTriple, nu: &Rat, i: i64) -> Rat {
    eigen_value(&p.b, nu, i)
}

/// `i (i - nu - 1)(a - b + c - nu/2 + i)(a - b - c - nu/2 + i - 1)`
pub fn phi(p: &ParamTriple, nu: &Rat, i: i64) -> Rat {
    let h = half(nu);
    let i_r = int(i);
    &i_r * (&i_r - nu - Rat::one())
        * (&p.a - &p.b + &p.c - &h + &i_r)
        * (&p.a - &p.b - &p.c - &h + &i_r - Rat::one())
}

/// `i (i - nu - 1)(a + b + c + nu/2 - i + 2)(a + b - c + nu/2 - i + 1)`
pub fn varphi(p: &ParamTriple, nu: &Rat, i: i64) -> Rat {
    let h = half(nu);
    let i_r = int(i);
    &i_r * (&i_r - nu - Rat::one())
        * (&p.a + &p.b + &p.c + &h - &i_r + int(2))
        * (&p.a + &p.b - &p.c + &h - &i_r + Rat::one())
}

pub fn scalars(p: &ParamTriple, nu: &Rat) -> Scalars {
    let h = half(nu);
    let one = Rat::one();
    let zeta = (&p.c - &p.b) * (&p.c + &p.b + &one) * (&p.a - &h) * (&p.a + &h + &one);
    let zeta_star = (&p.a - &p.c) * (&p.a + &p.c + &one) * (&p.b - &h) * (&p.b + &h + &one);
    let eta = &h * (&h + &one) + &p.a * (&p.a + &one) + &p.b * (&p.b + &one) + &p.c * (&p.c + &one);
    let gamma_scalar = -(&zeta + &zeta_star);
    Scalars {
        zeta,
        zeta_star,
        eta,
        gamma_scalar,
    }
}

/// The four linear forms whose values are constrained on the irreducible locus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum LinearForm {
    #[serde(rename = "a+b+c+1")]
    SumPlusOne,
    #[serde(rename = "-a+b+c")]
    NegA,
    #[serde(rename = "a-b+c")]
    NegB,
    #[serde(rename = "a+b-c")]
    NegC,
}

impl LinearForm {
    pub const ALL: [LinearForm; 4] = [
        LinearForm::SumPlusOne,
        LinearForm::NegA,
        LinearForm::NegB,
        LinearForm::NegC,
    ];

    pub fn eval(self, p: &ParamTriple) -> Rat {
        match self {
            LinearForm::SumPlusOne => &p.a + &p.b + &p.c + Rat::one(),
            LinearForm::NegA => -&p.a + &p.b + &p.c,
            LinearForm::NegB => &p.a - &p.b + &p.c,
            LinearForm::NegC => &p.a + &p.b - &p.c,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            LinearForm::SumPlusOne => "a+b+c+1",
            LinearForm::NegA => "-a+b+c",
            LinearForm::NegB => "a-b+c",
            LinearForm::NegC => "a+b-c",
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A linear form hitting the forbidden value `d/2 - i`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Violation {
    pub form: LinearForm,
    pub i: u32,
    pub value: Rat,
}

/// Result of the membership test for the irreducible locus at dimension `d + 1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Membership {
    pub member: bool,
    pub violations: Vec<Violation>,
}

/// True iff none of the four linear forms lies in `{d/2 - i : 1 <= i <= d}`.
pub fn in_p(p: &ParamTriple, d: u32) -> Membership {
    let half_d = Rat::new(d as i64, 2);
    let mut violations = Vec::new();
    for form in LinearForm::ALL {
        let value = form.eval(p);
        // value = d/2 - i  <=>  i = d/2 - value
        let i = &half_d - &value;
        if let Some(i) = i.to_i64() {
            if (1..=d as i64).contains(&i) {
                violations.push(Violation {
                    form,
                    i: i as u32,
                    value,
                });
            }
        }
    }
    Membership {
        member: violations.is_empty(),
        violations,
    }
}

fn reflect(x: &Rat) -> Rat {
    -x - Rat::one()
}

pub fn act(p: &ParamTriple, s: SignFlip) -> ParamTriple {
    let apply = |x: &Rat, sign: Sign| match sign {
        Sign::Plus => x.clone(),
        Sign::Minus => reflect(x),
    };
    ParamTriple {
        a: apply(&p.a, s.sa),
        b: apply(&p.b, s.sb),
        c: apply(&p.c, s.sc),
    }
}

/// Orbit representative with every coordinate `>= -1/2`, and the flip that
/// maps `p` onto it.
pub fn canonical(p: &ParamTriple) -> (ParamTriple, SignFlip) {
    let minus_half = Rat::new(-1, 2);
    let sign = |x: &Rat| {
        if x < &minus_half {
            Sign::Minus
        } else {
            Sign::Plus
        }
    };
    let flip = SignFlip {
        sa: sign(&p.a),
        sb: sign(&p.b),
        sc: sign(&p.c),
    };
    (act(p, flip), flip)
}

/// Traces of `A`, `B`, `C` on the `(d+1)`-dimensional module:
/// `(d + 1)(x^2 + x + d(d+2)/12)` at `x = a, b, c`.
pub fn trace_formula(p: &ParamTriple, d: u32) -> (Rat, Rat, Rat) {
    let d = d as i64;
    let offset = Rat::new(d * (d + 2), 12);
    let scale = int(d + 1);
    let f = |x: &Rat| &scale * (x * x + x + &offset);
    (f(&p.a), f(&p.b), f(&p.c))
}
