//! Factorization of small squarefree integer polynomials by numeric root
//! recombination with exact verification.
//!
//! Complex roots are approximated with the Aberth iteration; every subset
//! of roots closed under conjugation is a candidate factor, accepted only if
//! its rounded coefficients divide the polynomial exactly over Q. Subsets
//! are tried by increasing size, so each accepted factor is irreducible as
//! long as the root approximations are accurate enough to round correctly.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::to_f64;

/// Largest degree the subset search accepts.
pub const MAX_RECOMBINATION_DEGREE: usize = 24;

/// All complex roots of `p` (coefficients low-to-high, nonzero leading).
pub fn complex_roots(p: &Polynomial) -> Vec<Complex64> {
    let n = p.deg();
    if n == 0 {
        return Vec::new();
    }
    let lc = to_f64(&p.leading());
    let c: Vec<f64> = p.coeffs().iter().map(|x| to_f64(x) / lc).collect();
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(c[n], 0.0);
        let mut d = Complex64::zero();
        for k in (0..n).rev() {
            d = d * z + v;
            v = v * z + c[k];
        }
        (v, d)
    };
    let start = radius.clamp(1.0, 1e6) * 0.5;
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(start, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64)).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn conjugate_partners(roots: &[Complex64]) -> Vec<Option<usize>> {
    roots
        .iter()
        .enumerate()
        .map(|(i, r)| {
            if r.im.abs() <= 1e-9 * r.norm().max(1.0) {
                return None;
            }
            let target = r.conj();
            (0..roots.len()).filter(|&j| j != i).min_by(|&a, &b| {
                (roots[a] - target).norm().partial_cmp(&(roots[b] - target).norm()).unwrap_or(std::cmp::Ordering::Equal)
            })
        })
        .collect()
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn candidate(roots: &[Complex64], subset: &[usize], lead: f64) -> Option<Polynomial> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for &i in subset {
        let mut next = vec![Complex64::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * roots[i];
        }
        coeffs = next;
    }
    let mut ints = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        let v = c.re * lead;
        let r = v.round();
        if (v - r).abs() > 1e-4 * v.abs().max(1.0) || c.im.abs() * lead.abs() > 1e-4 * v.abs().max(1.0) {
            return None;
        }
        ints.push(BigInt::from_f64(r)?);
    }
    let poly = Polynomial::from_bigints(&ints);
    (poly.deg() == subset.len()).then(|| poly.primitive())
}

/// Irreducible factorization of a squarefree polynomial of degree at most
/// [`MAX_RECOMBINATION_DEGREE`]. Factors are primitive integer polynomials.
pub fn factor_squarefree(p: &Polynomial) -> Result<Vec<Polynomial>> {
    let n = p.deg();
    if n > MAX_RECOMBINATION_DEGREE {
        return Err(Error::FactorSelection(format!(
            "degree {n} exceeds the recombination limit {MAX_RECOMBINATION_DEGREE}"
        )));
    }
    let mut remaining = p.primitive();
    if n <= 1 {
        return Ok(vec![remaining]);
    }
    let mut roots = complex_roots(&remaining);
    let mut factors = Vec::new();
    let mut size = 1;
    while !roots.is_empty() {
        if 2 * size > roots.len() {
            factors.push(remaining);
            break;
        }
        let partners = conjugate_partners(&roots);
        let lead = to_f64(&remaining.leading());
        let mut idx: Vec<usize> = (0..size).collect();
        let mut found = None;
        loop {
            let closed = idx.iter().all(|&i| partners[i].is_none_or(|j| idx.contains(&j)));
            if closed {
                if let Some(f) = candidate(&roots, &idx, lead) {
                    let (q, r) = remaining.div_rem(&f)?;
                    if r.is_zero() {
                        found = Some((f, q));
                        break;
                    }
                }
            }
            if !next_combination(&mut idx, roots.len()) {
                break;
            }
        }
        match found {
            Some((f, q)) => {
                factors.push(f);
                remaining = q.primitive();
                roots = roots.into_iter().enumerate().filter(|(i, _)| !idx.contains(i)).map(|(_, r)| r).collect();
            }
            None => size += 1,
        }
    }
    factors.sort_by_key(|f| f.deg());
    Ok(factors)
}
