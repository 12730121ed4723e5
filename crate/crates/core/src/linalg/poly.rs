use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{LinalgError, Mat, Rat};

/// Univariate polynomial over the rationals, coefficients lowest degree first.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

/// Rational roots with multiplicities, plus the cofactor left after dividing
/// them out. The cofactor has no rational roots.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalRoots {
    pub roots: Vec<(Rat, usize)>,
    pub cofactor: Poly,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn x() -> Self {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }

    /// `x - root`
    pub fn linear(root: &Rat) -> Self {
        Poly::new(vec![-root, Rat::one()])
    }

    /// Monic polynomial with the given roots (repeated entries give multiplicity).
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rat>) -> Self {
        roots
            .into_iter()
            .fold(Poly::one(), |acc, r| acc.mul(&Poly::linear(r)))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from(k))
                .collect(),
        )
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly), LinalgError> {
        let dd = divisor.degree().ok_or(LinalgError::ZeroPolynomial)?;
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let factor = &rem[rem.len() - 1] / &lc;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &factor * c;
            }
            quot[k] = factor;
            rem.pop();
            while rem.last().is_some_and(Rat::is_zero) && rem.len() > dd {
                rem.pop();
            }
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_mat(&self, m: &Mat) -> Result<Mat, LinalgError> {
        let n = m.require_square("eval_mat")?;
        let mut acc = Mat::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m)?.add(&Mat::identity(n).scale(c))?;
        }
        Ok(acc)
    }

    /// True iff `gcd(p, p')` is constant, i.e. no repeated roots over the
    /// algebraic closure.
    pub fn is_squarefree(&self) -> Result<bool, LinalgError> {
        if self.is_zero() {
            return Err(LinalgError::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative()).is_constant())
    }

    /// Every rational root with its multiplicity, in increasing order.
    ///
    /// Roots are isolated with a Sturm sequence on the squarefree part and
    /// then recovered as the simplest fraction inside an interval narrower
    /// than `1/L^2`, where `L` bounds the possible denominators. No integer
    /// factoring is involved, so large coefficients are fine.
    pub fn rational_roots(&self) -> Result<RationalRoots, LinalgError> {
        if self.is_zero() {
            return Err(LinalgError::ZeroPolynomial);
        }
        let sqf = self.div_rem(&self.gcd(&self.derivative()))?.0.monic();
        let simple = simple_rational_roots(&sqf);
        let mut cofactor = self.clone();
        let mut roots = Vec::with_capacity(simple.len());
        for r in simple {
            let lin = Poly::linear(&r);
            let mut mult = 0;
            loop {
                let (q, rem) = cofactor.div_rem(&lin)?;
                if !rem.is_zero() {
                    break;
                }
                cofactor = q;
                mult += 1;
            }
            roots.push((r, mult));
        }
        Ok(RationalRoots { roots, cofactor })
    }
}

/// Integer-coefficient primitive multiple of `p` with the sign of `p` kept.
fn primitive_part(p: &Poly) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn from_ints(ints: Vec<BigInt>) -> Poly {
    Poly::new(ints.into_iter().map(Rat::from).collect())
}

/// Sturm chain, each member scaled by a positive constant to a primitive
/// integer polynomial so coefficient growth stays in check.
fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![
        from_ints(primitive_part(p)),
        from_ints(primitive_part(&p.derivative())),
    ];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]).expect("nonzero");
        if r.is_zero() {
            break;
        }
        chain.push(from_ints(primitive_part(&r.scale(&Rat::from(-1)))));
    }
    chain
}

fn sign_variations(chain: &[Poly], x: &Rat) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_negative())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Fraction with the smallest denominator in the closed interval `[lo, hi]`.
pub(crate) fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    debug_assert!(lo <= hi);
    if lo <= &Rat::zero() && !hi.is_negative() {
        return Rat::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = Rat::from(lo.floor());
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rat::one();
    if &next <= hi {
        return next;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// Rational roots of a squarefree polynomial, ascending.
///
/// A rational root `p/q` of the primitive integer form has `q | L` (the
/// leading coefficient), and two distinct fractions with denominators at
/// most `L` are at least `1/L^2` apart. So inside an isolating interval of
/// width below `1/L^2` the root, if rational, is the simplest fraction.
fn simple_rational_roots(sqf: &Poly) -> Vec<Rat> {
    match sqf.degree() {
        None | Some(0) => return Vec::new(),
        _ => {}
    }
    let ints = primitive_part(sqf);
    let lead = ints.last().unwrap().abs();
    let lead_sq = Rat::from(&lead * &lead);
    let f = from_ints(ints);
    let lc = sqf.leading().unwrap();
    let bound = sqf.coeffs().iter().map(|c| (c / lc).abs()).max().unwrap() + Rat::one();
    let chain = sturm_chain(sqf);
    let count = |lo: &Rat, hi: &Rat| sign_variations(&chain, lo) - sign_variations(&chain, hi);

    let mut roots = Vec::new();
    let mut stack = vec![(-&bound, bound.clone())];
    while let Some((lo, hi)) = stack.pop() {
        match count(&lo, &hi) {
            0 => {}
            1 => {
                if let Some(r) = refine_isolated(&f, lo, hi, &lead_sq) {
                    roots.push(r);
                }
            }
            _ => {
                let mid = (&lo + &hi) * Rat::new(1, 2);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    roots.sort();
    roots
}

/// Bisects `(lo, hi]`, which holds exactly one simple root of `f`, until the
/// root is found as a simplest fraction or the width drops below `1/L^2`.
fn refine_isolated(f: &Poly, mut lo: Rat, mut hi: Rat, lead_sq: &Rat) -> Option<Rat> {
    let at_hi = f.eval(&hi);
    if at_hi.is_zero() {
        return Some(hi);
    }
    // one simple root inside, so f just right of lo has the opposite sign
    let lo_neg = !at_hi.is_negative();
    loop {
        let candidate = simplest_between(&lo, &hi);
        if f.eval(&candidate).is_zero() {
            return Some(candidate);
        }
        if (&hi - &lo) * lead_sq < Rat::one() {
            return None;
        }
        let mid = (&lo + &hi) * Rat::new(1, 2);
        let v = f.eval(&mid);
        if v.is_zero() {
            return Some(mid);
        }
        if v.is_negative() == lo_neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn p(cs: &[(i64, i64)]) -> Poly {
        Poly::new(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn zero_is_empty() {
        assert!(Poly::new(vec![Rat::zero(), Rat::zero()])
            .coeffs()
            .is_empty());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn degree_of_product_adds() {
        let a = p(&[(1, 2), (0, 1), (3, 1)]);
        let b = p(&[(-1, 1), (1, 1)]);
        assert_eq!(a.mul(&b).degree(), Some(3));
    }

    #[test]
    fn division_reconstructs() {
        let a = p(&[(1, 1), (2, 3), (0, 1), (-5, 2), (1, 1)]);
        let b = p(&[(1, 7), (1, 1), (2, 1)]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert!(r.degree() < b.degree());
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn roots_of_x_squared_minus_one() {
        let rr = p(&[(-1, 1), (0, 1), (1, 1)]).rational_roots().unwrap();
        assert_eq!(rr.roots, vec![(rat(-1, 1), 1), (rat(1, 1), 1)]);
        assert_eq!(rr.cofactor, Poly::one());
    }

    #[test]
    fn x_squared_plus_one_has_no_rational_roots() {
        let q = p(&[(1, 1), (0, 1), (1, 1)]);
        let rr = q.rational_roots().unwrap();
        assert!(rr.roots.is_empty());
        assert_eq!(rr.cofactor, q);
    }

    #[test]
    fn repeated_and_fractional_roots() {
        let roots = [rat(-1, 4), rat(3, 4), rat(3, 4), rat(15, 4), rat(15, 4)];
        let q = Poly::from_roots(&roots);
        let rr = q.rational_roots().unwrap();
        assert_eq!(
            rr.roots,
            vec![(rat(-1, 4), 1), (rat(3, 4), 2), (rat(15, 4), 2)]
        );
        assert_eq!(rr.cofactor, Poly::one());
        assert!(!q.is_squarefree().unwrap());
    }

    #[test]
    fn mixed_rational_and_irrational() {
        // (x^2 - 2)(3x - 1)(x + 7)^2
        let q = p(&[(-2, 1), (0, 1), (1, 1)])
            .mul(&p(&[(-1, 1), (3, 1)]))
            .mul(&Poly::from_roots(&[rat(-7, 1), rat(-7, 1)]));
        let rr = q.rational_roots().unwrap();
        assert_eq!(rr.roots, vec![(rat(-7, 1), 2), (rat(1, 3), 1)]);
        assert_eq!(rr.cofactor.monic(), p(&[(-2, 1), (0, 1), (1, 1)]));
    }

    #[test]
    fn roots_with_large_coefficients() {
        let roots: Vec<Rat> = (1..=9).map(|k| rat(k * 1_000_003 - 17, 324 + k)).collect();
        let rr = Poly::from_roots(&roots).rational_roots().unwrap();
        let mut want: Vec<(Rat, usize)> = roots.into_iter().map(|r| (r, 1)).collect();
        want.sort();
        assert_eq!(rr.roots, want);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(Poly::zero().rational_roots().is_err());
        assert!(Poly::zero().is_squarefree().is_err());
    }

    #[test]
    fn squarefree_examples() {
        assert!(p(&[(-1, 1), (0, 1), (1, 1)]).is_squarefree().unwrap());
        assert!(Poly::from_roots(&[rat(3, 4), rat(-1, 4)])
            .is_squarefree()
            .unwrap());
    }

    #[test]
    fn simplest_fraction() {
        assert_eq!(simplest_between(&rat(3, 10), &rat(4, 10)), rat(1, 3));
        assert_eq!(simplest_between(&rat(-4, 10), &rat(-3, 10)), rat(-1, 3));
        assert_eq!(simplest_between(&rat(-1, 10), &rat(1, 10)), Rat::zero());
        assert_eq!(simplest_between(&rat(5, 2), &rat(7, 2)), rat(3, 1));
        assert_eq!(simplest_between(&rat(2, 1), &rat(2, 1)), rat(2, 1));
    }

    #[test]
    fn display() {
        let q = Poly::from_roots(&[rat(1, 2), rat(1, 2)]);
        assert_eq!(q.to_string(), "x^2 - x + 1/4");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p(&[(0, 1), (-3, 4)]).to_string(), "-3/4*x");
    }
}
