//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, to_f64, Rational};

/// Dense polynomial; `coeffs[i]` is the coefficient of `t^i`.
///
/// Trailing zero coefficients are never stored, so the zero polynomial is
/// the empty vector and structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The monomial `t`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + to_f64(c))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading();
        self.scale(&lc.recip())
    }

    /// Quotient and remainder with `self = q·divisor + r`, `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let inv_lc = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Inconsistent(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial("gcd of two zero polynomials"));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            // Keeping the remainders monic stops coefficient sizes from drifting.
            b = r.monic();
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> Polynomial {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect(),
        )
    }

    /// The antiderivative vanishing at zero.
    pub fn antiderivative_zero(&self) -> Polynomial {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / Rational::from_integer(BigInt::from(i + 1)));
        }
        Self::new(coeffs)
    }

    /// `self / gcd(self, self')`, made monic.
    pub fn squarefree_part(&self) -> Result<Polynomial> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("squarefree part"));
        }
        if self.deg() == 0 {
            return Ok(Self::one());
        }
        if crate::modular::squarefree_by_reduction(self) {
            return Ok(self.monic());
        }
        let g = self.gcd(&self.derivative())?;
        Ok(self.exact_div(&g)?.monic())
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) if crate::modular::squarefree_by_reduction(self) => true,
            Some(_) => self.gcd(&self.derivative()).map(|g| g.deg() == 0).unwrap_or(false),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &Polynomial) -> Polynomial {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// Splits into `content · primitive` where `primitive` has coprime
    /// integer coefficients and positive leading coefficient.
    pub fn integer_primitive(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, lcm), prim)
    }

    /// The primitive integer polynomial as a `Polynomial`.
    pub fn primitive(&self) -> Polynomial {
        Self::from_bigints(&self.integer_primitive().1)
    }

    /// Parses the repo-wide text grammar: a comma-separated coefficient list
    /// low-to-high (`"-2,0,1"`) or a symbolic form (`"x^2-2"`, `"1/3*x^3-2*x"`).
    pub fn parse(text: &str) -> Result<Polynomial> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if s.contains(',') || !s.contains(['x', 't']) {
            let coeffs = s.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
            return Ok(Self::new(coeffs));
        }
        let var = if s.contains('x') { 'x' } else { 't' };
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            if i > 0 && (ch == '+' || ch == '-') && !s[..i].ends_with(['e', 'E', '^']) {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        let mut acc = Self::zero();
        for term in terms {
            acc = &acc + &parse_term(term, var)?;
        }
        Ok(acc)
    }
}

fn parse_term(term: &str, var: char) -> Result<Polynomial> {
    let (neg, body) = match term.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, term.strip_prefix('+').unwrap_or(term)),
    };
    if body.is_empty() {
        return Err(Error::Parse(format!("dangling sign in {term:?}")));
    }
    let (coeff, degree) = match body.split_once(var) {
        None => (parse_rational(body)?, 0),
        Some((before, after)) => {
            let before = before.strip_suffix('*').unwrap_or(before);
            let c = if before.is_empty() { Rational::one() } else { parse_rational(before)? };
            let d = if after.is_empty() {
                1
            } else {
                after
                    .strip_prefix('^')
                    .and_then(|e| e.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad exponent in {term:?}")))?
            };
            (c, d)
        }
    };
    Ok(Polynomial::monomial(if neg { -coeff } else { coeff }, degree))
}

impl FromStr for Polynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Polynomial::parse(s)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let coeff = if a.is_integer() { a.numer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) };
            match i {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    write!(f, "x")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("x^2-2") * &p("x^2-3"), p("x^4-5*x^2+6"));
        let (q, r) = p("x^3").div_rem(&p("x^2-2")).unwrap();
        assert_eq!((q, r), (p("x"), p("2*x")));
        let s = &p("x^2-2") + &p("-x^2+2");
        assert!(s.is_zero());
        assert_eq!(s, Polynomial::zero());
        assert_eq!(s.degree(), None);
    }

    #[test]
    fn divrem_by_zero_is_error() {
        assert_eq!(p("x").div_rem(&Polynomial::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p("x^2-2").gcd(&p("x^3-2*x")).unwrap(), p("x^2-2"));
        assert_eq!(p("x^2-2").gcd(&p("x^2-3")).unwrap(), Polynomial::one());
        assert_eq!(p("3*x^2-6").gcd(&Polynomial::zero()).unwrap(), p("x^2-2"));
        assert!(Polynomial::zero().gcd(&Polynomial::zero()).is_err());
    }

    #[test]
    fn calculus_examples() {
        let m = p("x^2-2");
        let big_m = m.antiderivative_zero();
        assert_eq!(big_m, p("1/3*x^3-2*x"));
        assert_eq!(big_m.derivative(), m);
        assert!(Polynomial::zero().antiderivative_zero().is_zero());
        assert_eq!(big_m.eval(&int(0)), int(0));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(p("x^2-2").pow(2).squarefree_part().unwrap(), p("x^2-2"));
        assert_eq!(p("x^2-2").squarefree_part().unwrap(), p("x^2-2"));
        assert_eq!(p("x^3-x^2").squarefree_part().unwrap(), p("x^2-x"));
        assert!(Polynomial::zero().squarefree_part().is_err());
    }

    #[test]
    fn grammar_forms_agree() {
        assert_eq!(p("-2,0,1"), p("x^2-2"));
        assert_eq!(p("1/3*x^3-2*x"), Polynomial::new(vec![int(0), int(-2), int(0), rat(1, 3)]));
        assert_eq!(p("x - 2"), p("-2,1"));
        assert_eq!(p("5"), Polynomial::constant(int(5)));
        assert_eq!(p("2x+x^2"), p("0,2,1"));
        assert_eq!(p("t^2-2"), p("x^2-2"));
        assert!(Polynomial::parse("x^-1").is_err());
        assert!(Polynomial::parse("").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["x^2-2", "1/3*x^3-2*x", "-x+1/2", "0", "7", "x^5-x^3-4*x^2+4*x+1"] {
            let q = p(s);
            assert_eq!(q.to_string().parse::<Polynomial>().unwrap(), q, "{s}");
        }
        assert_eq!(p("1/3*x^3-2*x").to_string(), "1/3*x^3-2*x");
    }

    #[test]
    fn primitive_part_has_positive_lead() {
        let (c, prim) = p("-3/2*x^2+3").integer_primitive();
        assert_eq!(c, rat(-3, 2));
        assert_eq!(prim, vec![BigInt::from(-2), BigInt::from(0), BigInt::from(1)]);
    }
}
