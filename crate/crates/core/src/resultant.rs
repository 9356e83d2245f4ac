//! Resultants by the subresultant pseudo-remainder sequence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// `Res(p, q)`, the determinant of the Sylvester matrix.
///
/// Both inputs are split into rational content times a primitive integer
/// polynomial; the integer parts go through the subresultant PRS so that
/// intermediate coefficients stay bounded by the subresultant determinants.
pub fn resultant(p: &Polynomial, q: &Polynomial) -> Result<Rational> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial("resultant"));
    }
    let (cp, ip) = p.integer_primitive();
    let (cq, iq) = q.integer_primitive();
    let (dp, dq) = (p.deg() as u32, q.deg() as u32);
    let scale = num_traits::pow(cp, dq as usize) * num_traits::pow(cq, dp as usize);
    Ok(scale * Rational::from_integer(subresultant_integer(ip, iq)))
}

fn degree(a: &[BigInt]) -> usize {
    a.len() - 1
}

fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) · a mod b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = degree(b);
    let lc = &b[db];
    let mut r = a.to_vec();
    let mut k = degree(a) as isize - db as isize + 1;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lc;
        }
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &c * bj;
        }
        r = trim(r);
        k -= 1;
    }
    if k > 0 {
        let f = num_traits::pow(lc.clone(), k as usize);
        for x in r.iter_mut() {
            *x *= &f;
        }
    }
    r
}

fn subresultant_integer(a: Vec<BigInt>, b: Vec<BigInt>) -> BigInt {
    let (mut a, mut b) = (a, b);
    let ca = content(&a);
    let cb = content(&b);
    let t = num_traits::pow(ca.clone(), degree(&b)) * num_traits::pow(cb.clone(), degree(&a));
    a.iter_mut().for_each(|x| *x /= &ca);
    b.iter_mut().for_each(|x| *x /= &cb);
    let mut s = BigInt::one();
    if degree(&a) < degree(&b) {
        if degree(&a) % 2 == 1 && degree(&b) % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    while degree(&b) > 0 {
        let delta = degree(&a) - degree(&b);
        if degree(&a) % 2 == 1 && degree(&b) % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        if r.is_empty() {
            return BigInt::zero();
        }
        let div = &g * num_traits::pow(h.clone(), delta);
        b = r.into_iter().map(|x| x / &div).collect();
        g = a[degree(&a)].clone();
        // h <- g^delta / h^(delta-1), exact in Z
        if delta > 0 {
            h = num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1);
        }
    }
    let da = degree(&a);
    let lb = b[0].clone();
    let h = if da == 0 { BigInt::one() } else { num_traits::pow(lb, da) / num_traits::pow(h, da - 1) };
    s * t * h
}
