//! Root counting on an interval by Descartes' rule of signs after the
//! Möbius map `x ↦ (lo + hi·x)/(1 + x)`.
//!
//! Needs only integer Taylor shifts, so it stays cheap for high-degree
//! polynomials whose Sturm chains would be enormous.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::interval::Interval;
use crate::poly::Polynomial;

/// Sign variations of `(1+x)^n · p((lo + hi·x)/(1 + x))`: an upper bound on
/// the number of roots of `p` in the open interval `(lo, hi)`, with the
/// same parity.
pub fn descartes_bound(p: &Polynomial, iv: &Interval) -> usize {
    let n = p.deg();
    if n == 0 || iv.lo == iv.hi {
        return 0;
    }
    let (_, a) = p.integer_primitive();
    let den = iv.lo.denom().lcm(iv.hi.denom());
    let u = (&iv.lo * crate::rational::Rational::from_integer(den.clone())).to_integer();
    let v = (&iv.hi * crate::rational::Rational::from_integer(den.clone())).to_integer() - &u;

    // H = Σ a_i (u + v x)^i den^{n-i}: den^n · p(lo + (hi - lo)·x)
    let mut den_pow = vec![BigInt::one()];
    for k in 1..=n {
        let next = &den_pow[k - 1] * &den;
        den_pow.push(next);
    }
    let mut h: Vec<BigInt> = vec![a[n].clone()];
    for k in (0..n).rev() {
        let mut next = vec![BigInt::zero(); h.len() + 1];
        for (i, c) in h.iter().enumerate() {
            next[i] += c * &u;
            next[i + 1] += c * &v;
        }
        next[0] += &a[k] * &den_pow[n - k];
        h = next;
    }
    // reverse, then shift by one: roots in (0, 1) become roots in (0, ∞)
    h.reverse();
    for i in 0..n {
        for j in (i..n).rev() {
            let t = h[j + 1].clone();
            h[j] += t;
        }
    }
    let mut last = 0i8;
    let mut count = 0;
    for c in &h {
        let s = if c.is_zero() {
            0
        } else if c.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of roots of the squarefree `p` in the closed interval when
/// Descartes' bound decides it (at most one interior root), else `None`.
pub fn certified_root_count(p: &Polynomial, iv: &Interval) -> Option<usize> {
    let at_lo = usize::from(p.eval(&iv.lo).is_zero());
    if iv.lo == iv.hi {
        return Some(at_lo);
    }
    let at_hi = usize::from(p.eval(&iv.hi).is_zero());
    match descartes_bound(p, iv) {
        v @ (0 | 1) => Some(v + at_lo + at_hi),
        _ => None,
    }
}
