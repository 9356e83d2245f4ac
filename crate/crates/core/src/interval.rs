//! Closed rational intervals and the interval arithmetic used to enclose
//! values of algebraic expressions.

use std::fmt;

use num_traits::{One, Zero};

use crate::poly::Polynomial;
use crate::rational::{to_f64, to_fraction_string, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    /// Builds `[lo, hi]`, swapping the endpoints if they arrive reversed.
    pub fn new(lo: Rational, hi: Rational) -> Self {
        if lo <= hi {
            Interval { lo, hi }
        } else {
            Interval { lo: hi, hi: lo }
        }
    }

    pub fn point(q: Rational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let lo = products.iter().min().cloned().unwrap_or_else(Rational::zero);
        let hi = products.iter().max().cloned().unwrap_or_else(Rational::zero);
        Interval { lo, hi }
    }

    pub fn scale(&self, k: &Rational) -> Interval {
        Interval::new(&self.lo * k, &self.hi * k)
    }

    pub fn shift(&self, k: &Rational) -> Interval {
        Interval { lo: &self.lo + k, hi: &self.hi + k }
    }

    /// Horner enclosure of `p` over the interval.
    pub fn eval_poly(&self, p: &Polynomial) -> Interval {
        let mut acc = Interval::point(Rational::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).shift(c);
        }
        acc
    }

    pub fn pow(&self, exp: u32) -> Interval {
        let mut acc = Interval::point(Rational::one());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (to_f64(&self.lo), to_f64(&self.hi))
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", to_fraction_string(&self.lo), to_fraction_string(&self.hi))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_f64_pair();
        write!(f, "[{lo:.8}, {hi:.8}]")
    }
}
