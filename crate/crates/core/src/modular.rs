//! Irreducibility certificates from factor-degree patterns modulo primes.
//!
//! For a squarefree reduction modulo `p`, distinct-degree factorization
//! gives the multiset of degrees of the irreducible factors. A factor of
//! degree `k` over Q forces `k` to be a subset sum of that multiset for
//! every good prime; if no `0 < k < n` survives the intersection, the
//! polynomial is irreducible over Q.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    Proved,
    Unproved,
}

const PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109,
    113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn rem(a: &[u64], m: &[u64], p: u64) -> Fp {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let il = inv(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * il % p;
        if c != 0 {
            for (j, mj) in m.iter().enumerate() {
                let idx = top - dm + j;
                r[idx] = (r[idx] + p - c * mj % p) % p;
            }
        }
        r.pop();
        r = trim(r);
    }
    trim(r)
}

fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&trim(out), m, p)
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Fp {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn div_exact(a: &[u64], b: &[u64], p: u64) -> Fp {
    let db = b.len() - 1;
    let il = inv(b[db], p);
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len().saturating_sub(db)];
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top] * il % p;
        q[top - db] = c;
        for (j, bj) in b.iter().enumerate() {
            let idx = top - db + j;
            r[idx] = (r[idx] + p - c * bj % p) % p;
        }
        r.pop();
    }
    trim(q)
}

fn derivative(a: &[u64], p: u64) -> Fp {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| (i as u64 % p) * c % p).collect())
}

/// Degrees of the irreducible factors of a squarefree polynomial mod `p`.
fn distinct_degree_pattern(f: &[u64], p: u64) -> Vec<usize> {
    let mut f = f.to_vec();
    let mut degrees = Vec::new();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut i = 1;
    while f.len() > 1 && 2 * i < f.len() {
        // h <- h^p mod f
        let mut acc: Fp = vec![1];
        let mut base = rem(&h, &f, p);
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, &f, p);
            }
            base = mulmod(&base, &base, &f, p);
            e >>= 1;
        }
        h = acc;
        let mut hx = h.clone();
        hx.resize(hx.len().max(2), 0);
        hx[1] = (hx[1] + p - 1) % p;
        let g = gcd(&f, &trim(hx), p);
        if g.len() > 1 {
            let dg = g.len() - 1;
            degrees.extend(std::iter::repeat_n(i, dg / i));
            f = div_exact(&f, &g, p);
            h = rem(&h, &f, p);
        }
        i += 1;
    }
    if f.len() > 1 {
        degrees.push(f.len() - 1);
    }
    degrees
}

fn subset_sums(degrees: &[usize], n: usize) -> BTreeSet<usize> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    (1..n).filter(|&s| reach[s]).collect()
}

/// Factor-degree patterns modulo the first good primes; each inner vector
/// lists the degrees of the irreducible factors mod that prime.
pub fn degree_patterns(p: &Polynomial, max_primes: usize) -> Vec<(u64, Vec<usize>)> {
    let (_, ints) = p.integer_primitive();
    PRIMES
        .iter()
        .filter_map(|&q| squarefree_reduction(&ints, q).map(|f| (q, distinct_degree_pattern(&f, q))))
        .take(max_primes)
        .collect()
}

/// Monic reduction mod `q`, or `None` when `q` divides the leading
/// coefficient or the reduction is not squarefree.
fn squarefree_reduction(ints: &[BigInt], q: u64) -> Option<Fp> {
    let qb = BigInt::from(q);
    if ints.last().is_none_or(|lc| (lc % &qb).is_zero()) {
        return None;
    }
    let f: Fp = trim(ints.iter().map(|c| c.mod_floor(&qb).to_u64().unwrap_or(0)).collect());
    let lead_inv = inv(*f.last().unwrap_or(&1), q);
    let f: Fp = f.iter().map(|c| c * lead_inv % q).collect();
    (gcd(&f, &derivative(&f, q), q).len() <= 1).then_some(f)
}

/// `true` when some prime not dividing the leading coefficient gives a
/// squarefree reduction, which forces `p` to be squarefree over Q.
/// `false` is inconclusive.
pub fn squarefree_by_reduction(p: &Polynomial) -> bool {
    if p.deg() <= 1 {
        return !p.is_zero();
    }
    let (_, ints) = p.integer_primitive();
    PRIMES.iter().any(|&q| squarefree_reduction(&ints, q).is_some())
}

/// Attempts to certify irreducibility over Q of a squarefree polynomial.
pub fn irreducibility_by_patterns(p: &Polynomial) -> Irreducibility {
    let n = p.deg();
    if n <= 1 {
        return Irreducibility::Proved;
    }
    let mut possible: Option<BTreeSet<usize>> = None;
    for (_, pattern) in degree_patterns(p, PRIMES.len()) {
        let sums = subset_sums(&pattern, n);
        let next = match possible {
            None => sums,
            Some(prev) => prev.intersection(&sums).copied().collect(),
        };
        if next.is_empty() {
            return Irreducibility::Proved;
        }
        possible = Some(next);
    }
    Irreducibility::Unproved
}
