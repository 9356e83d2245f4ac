//! Totally real Galois fields with known defining polynomials.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::NumberField;
use crate::poly::Polynomial;
use crate::rational::int;

/// Catalog entries. All of them are abelian, hence Galois, and totally real.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogKind {
    /// `Q(√D)` for squarefree `D >= 2`.
    Quadratic(u64),
    /// `Q(ζ_n + ζ_n^{-1})`, generated by `2cos(2π/n)`.
    RealCyclotomic(u64),
    /// The degree-`degree` subfield of `Q(ζ_p)` for a prime `p ≡ 1 mod 2·degree`,
    /// generated by a Gaussian period.
    CyclicPeriod { conductor: u64, degree: u64 },
}

impl fmt::Display for CatalogKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogKind::Quadratic(d) => write!(f, "quadratic D={d}"),
            CatalogKind::RealCyclotomic(n) => write!(f, "real_cyclotomic n={n}"),
            CatalogKind::CyclicPeriod { conductor, degree } => {
                write!(f, "cyclic_period conductor={conductor} degree={degree}")
            }
        }
    }
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p))
}

fn is_squarefree(n: u64) -> bool {
    (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p * p))
}

/// `Φ_n` by exact division of `x^n - 1` by `Φ_d` for the proper divisors `d`.
pub fn cyclotomic_polynomial(n: u64) -> Polynomial {
    fn rec(n: u64, memo: &mut BTreeMap<u64, Polynomial>) -> Polynomial {
        if let Some(p) = memo.get(&n) {
            return p.clone();
        }
        let mut num = Polynomial::monomial(int(1), n as usize);
        num = &num - &Polynomial::one();
        for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
            let phi_d = rec(d, memo);
            num = num.exact_div(&phi_d).expect("cyclotomic factors divide x^n - 1");
        }
        memo.insert(n, num.clone());
        num
    }
    rec(n, &mut BTreeMap::new())
}

/// `ψ_n` with `Φ_n(x) = x^{φ(n)/2} ψ_n(x + 1/x)`: the minimal polynomial of
/// `2cos(2π/n)`.
pub fn real_cyclotomic_polynomial(n: u64) -> Polynomial {
    let phi = cyclotomic_polynomial(n);
    let k = phi.deg() / 2;
    // x^j + x^{-j} = D_j(y), D_0 = 2, D_1 = y, D_j = y D_{j-1} - D_{j-2}
    let y = Polynomial::x();
    let mut dickson = vec![Polynomial::constant(int(2)), y.clone()];
    for j in 2..=k {
        let next = &(&y * &dickson[j - 1]) - &dickson[j - 2];
        dickson.push(next);
    }
    let mut psi = Polynomial::constant(phi.coeff(k));
    for (j, d) in dickson.iter().enumerate().take(k + 1).skip(1) {
        psi = &psi + &d.scale(&phi.coeff(k + j));
    }
    psi
}

fn primitive_root(p: u64) -> u64 {
    let order = p - 1;
    let mut factors = Vec::new();
    let mut m = order;
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            factors.push(q);
            while m.is_multiple_of(q) {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    let powmod = |mut b: u64, mut e: u64| {
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
    };
    (2..p).find(|&g| factors.iter().all(|&f| powmod(g, order / f) != 1)).expect("primes have primitive roots")
}

/// Minimal polynomial of the Gaussian period generating the degree-`degree`
/// subfield of `Q(ζ_p)`.
pub fn gaussian_period_polynomial(p: u64, degree: u64) -> Polynomial {
    let cyclo = NumberField::quotient(cyclotomic_polynomial(p));
    let g = primitive_root(p);
    let step = {
        let mut s = 1u64;
        for _ in 0..degree {
            s = s * g % p;
        }
        s
    };
    let coset_size = (p - 1) / degree;
    let mut exps = Vec::with_capacity(coset_size as usize);
    let mut h = 1u64;
    for _ in 0..coset_size {
        exps.push(h);
        h = h * step % p;
    }
    let mut period = Polynomial::zero();
    for e in exps {
        period = &period + &Polynomial::monomial(int(1), e as usize);
    }
    cyclo.from_poly(&period).min_poly()
}

pub fn catalog_field(kind: CatalogKind) -> Result<NumberField> {
    let poly = match kind {
        CatalogKind::Quadratic(d) => {
            if d < 2 || !is_squarefree(d) {
                return Err(Error::InvalidParameter(format!("quadratic D={d} must be squarefree and >= 2")));
            }
            Polynomial::from_i64s(&[-(d as i64), 0, 1])
        }
        CatalogKind::RealCyclotomic(n) => {
            if n < 5 || n == 6 {
                return Err(Error::InvalidParameter(format!("real_cyclotomic n={n} needs n >= 5, n != 6")));
            }
            real_cyclotomic_polynomial(n)
        }
        CatalogKind::CyclicPeriod { conductor, degree } => {
            if !is_prime(conductor) || degree == 0 || (conductor - 1) % (2 * degree) != 0 {
                return Err(Error::InvalidParameter(format!(
                    "cyclic_period needs a prime conductor = 1 mod 2*degree (got {conductor}, {degree})"
                )));
            }
            gaussian_period_polynomial(conductor, degree)
        }
    };
    Ok(NumberField::trusted(poly, true, kind.to_string()))
}

/// The catalog field of degree `degree` with the smallest conductor: a
/// maximal real cyclotomic field when one has that degree, otherwise a
/// Gaussian-period field of prime conductor.
pub fn smallest_field_of_degree(degree: u64) -> Result<(CatalogKind, NumberField)> {
    if degree == 0 {
        return Err(Error::NoCatalogField("degree 0".into()));
    }
    // φ(n) >= sqrt(n/2), so φ(n) = 2·degree forces n <= 8·degree².
    let bound = 8 * degree * degree + 8;
    if let Some(n) = (5..=bound).filter(|&n| n != 6).find(|&n| euler_phi(n) == 2 * degree) {
        let kind = CatalogKind::RealCyclotomic(n);
        return Ok((kind, catalog_field(kind)?));
    }
    let conductor = (1..)
        .map(|j| 2 * degree * j + 1)
        .find(|&p| is_prime(p))
        .ok_or_else(|| Error::NoCatalogField(format!("degree {degree}")))?;
    let kind = CatalogKind::CyclicPeriod { conductor, degree };
    Ok((kind, catalog_field(kind)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic_polynomial(1), p("x-1"));
        assert_eq!(cyclotomic_polynomial(6), p("x^2-x+1"));
        assert_eq!(cyclotomic_polynomial(15).deg(), 8);
    }

    #[test]
    fn catalog_examples() {
        let q2 = catalog_field(CatalogKind::Quadratic(2)).unwrap();
        assert_eq!(q2.defining_poly(), &p("x^2-2"));
        let k7 = catalog_field(CatalogKind::RealCyclotomic(7)).unwrap();
        assert_eq!(k7.defining_poly(), &p("x^3+x^2-2*x-1"));
        let k15 = catalog_field(CatalogKind::RealCyclotomic(15)).unwrap();
        assert_eq!(k15.defining_poly(), &p("x^4-x^3-4*x^2+4*x+1"));
        for k in [&q2, &k7, &k15] {
            assert!(k.is_totally_real() && k.galois_attested());
        }
    }

    #[test]
    fn heptagon_root_numerically() {
        let c = 2.0 * (2.0 * std::f64::consts::PI / 7.0).cos();
        assert!(p("x^3+x^2-2*x-1").eval_f64(c).abs() < 1e-12);
        let c15 = 2.0 * (2.0 * std::f64::consts::PI / 15.0).cos();
        assert!(real_cyclotomic_polynomial(15).eval_f64(c15).abs() < 1e-12);
    }

    #[test]
    fn invalid_parameters() {
        assert!(catalog_field(CatalogKind::Quadratic(4)).is_err());
        assert!(catalog_field(CatalogKind::Quadratic(1)).is_err());
        assert!(catalog_field(CatalogKind::RealCyclotomic(6)).is_err());
        assert!(catalog_field(CatalogKind::RealCyclotomic(4)).is_err());
        assert!(catalog_field(CatalogKind::CyclicPeriod { conductor: 31, degree: 7 }).is_err());
    }

    #[test]
    fn smallest_fields() {
        let (k3, _) = smallest_field_of_degree(3).unwrap();
        assert_eq!(k3, CatalogKind::RealCyclotomic(7));
        let (k5, _) = smallest_field_of_degree(5).unwrap();
        assert_eq!(k5, CatalogKind::RealCyclotomic(11));
        // 14 is not a totient value, so degree 7 comes from Q(ζ_29).
        let (k7, f7) = smallest_field_of_degree(7).unwrap();
        assert_eq!(k7, CatalogKind::CyclicPeriod { conductor: 29, degree: 7 });
        assert_eq!(f7.degree(), 7);
        assert!(f7.is_totally_real());
    }

    #[test]
    fn degrees_match_totient() {
        for n in [5u64, 7, 8, 9, 11, 12, 13, 15, 16, 20, 21] {
            let k = catalog_field(CatalogKind::RealCyclotomic(n)).unwrap();
            assert_eq!(k.degree() as u64, euler_phi(n) / 2, "n={n}");
            assert_eq!(k.sturm().total_real_roots(), k.degree());
        }
    }
}
