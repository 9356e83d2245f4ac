//! Real algebraic numbers as (minimal polynomial, isolating interval) pairs
//! and their exact sums and products.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::descartes::certified_root_count;
use crate::error::{Error, Result};
use crate::factor::factor_squarefree;
use crate::interval::Interval;
use crate::linalg::first_linear_dependence;
use crate::modular::{irreducibility_by_patterns, Irreducibility};
use crate::poly::Polynomial;
use crate::rational::{rat, to_decimal_string, to_f64, to_fraction_string, Rational};
use crate::resultant::resultant;
use crate::sturm::SturmChain;

/// A real algebraic number: the unique root of `min_poly` inside
/// `isolating`. `min_poly` has coprime integer coefficients and a positive
/// leading coefficient.
#[derive(Clone)]
pub struct AlgebraicNumber {
    min_poly: Polynomial,
    isolating: Interval,
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraicNumber({} in {:?})", self.min_poly, self.isolating)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (root of {})", self.decimal(12), self.min_poly)
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.same_value(other)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CombineOp {
    Product,
    Sum,
}

impl AlgebraicNumber {
    /// Validates that `isolating` holds exactly one root of the squarefree
    /// polynomial `poly`. Minimality of `poly` is the caller's contract.
    pub fn new(poly: &Polynomial, isolating: Interval) -> Result<Self> {
        if poly.deg() == 0 {
            return Err(Error::InvalidParameter("minimal polynomial must have degree >= 1".into()));
        }
        if !poly.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let min_poly = poly.primitive();
        let count = match certified_root_count(&min_poly, &isolating) {
            Some(c) => c,
            None => SturmChain::new(&min_poly)?.count_closed(&isolating),
        };
        if count != 1 {
            return Err(Error::NotIsolating {
                lo: to_fraction_string(&isolating.lo),
                hi: to_fraction_string(&isolating.hi),
                count,
            });
        }
        Ok(AlgebraicNumber { min_poly, isolating })
    }

    pub(crate) fn new_unchecked(poly: Polynomial, isolating: Interval) -> Self {
        AlgebraicNumber { min_poly: poly.primitive(), isolating }
    }

    pub fn from_rational(q: Rational) -> Self {
        let poly = Polynomial::new(vec![
            Rational::from_integer(-q.numer().clone()),
            Rational::from_integer(q.denom().clone()),
        ]);
        AlgebraicNumber { min_poly: poly.primitive(), isolating: Interval::point(q) }
    }

    pub fn min_poly(&self) -> &Polynomial {
        &self.min_poly
    }

    pub fn isolating(&self) -> &Interval {
        &self.isolating
    }

    pub fn degree(&self) -> usize {
        self.min_poly.deg()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (self.degree() == 1).then(|| -self.min_poly.coeff(0) / self.min_poly.coeff(1))
    }

    pub fn sturm(&self) -> SturmChain {
        SturmChain::new(&self.min_poly).expect("nonzero minimal polynomial")
    }

    /// Same number with an isolating interval of width `<= width`.
    pub fn refined(&self, width: &Rational) -> AlgebraicNumber {
        if let Some(q) = self.as_rational() {
            return AlgebraicNumber { min_poly: self.min_poly.clone(), isolating: Interval::point(q) };
        }
        let mut iv = self.isolating.clone();
        while &iv.width() > width {
            iv = self.halve(&iv);
        }
        AlgebraicNumber { min_poly: self.min_poly.clone(), isolating: iv }
    }

    /// One bisection step by signs: the root is simple and the interval
    /// isolates it, so the sign of `min_poly` changes across it. Exact
    /// rational roots collapse to a point interval.
    fn halve(&self, iv: &Interval) -> Interval {
        let p = &self.min_poly;
        let at_lo = p.eval(&iv.lo);
        if at_lo.is_zero() {
            return Interval::point(iv.lo.clone());
        }
        if p.eval(&iv.hi).is_zero() {
            return Interval::point(iv.hi.clone());
        }
        let m = iv.midpoint();
        let at_m = p.eval(&m);
        if at_m.is_zero() {
            Interval::point(m)
        } else if at_m.is_positive() == at_lo.is_positive() {
            Interval::new(m, iv.hi.clone())
        } else {
            Interval::new(iv.lo.clone(), m)
        }
    }

    /// Exact equality: identical minimal polynomials and a common root in
    /// the intersection of the isolating intervals.
    pub fn same_value(&self, other: &AlgebraicNumber) -> bool {
        if self.min_poly != other.min_poly {
            return false;
        }
        match self.isolating.intersect(&other.isolating) {
            None => false,
            Some(iv) => match certified_root_count(&self.min_poly, &iv) {
                Some(c) => c >= 1,
                None => self.sturm().count_closed(&iv) >= 1,
            },
        }
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        if let Some(r) = self.as_rational() {
            return r.cmp(q);
        }
        let mut iv = self.isolating.clone();
        loop {
            if q < &iv.lo {
                return Ordering::Greater;
            }
            if q > &iv.hi {
                return Ordering::Less;
            }
            // irrational root, so q is never the root itself
            iv = self.halve(&iv);
        }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.refined(&rat(1, 1 << 60)).isolating.midpoint())
    }

    /// Decimal rendering correct to `digits` places (refine until the
    /// interval is narrower than `10^{-digits-1}`, round the midpoint half
    /// away from zero).
    pub fn decimal(&self, digits: usize) -> String {
        let w = Rational::new(1.into(), num_traits::pow(10.into(), digits + 1));
        let r = self.refined(&w);
        to_decimal_string(&r.isolating.midpoint(), digits)
    }

    /// `k · self` for rational `k`.
    pub fn scale(&self, k: &Rational) -> AlgebraicNumber {
        if k.is_zero() {
            return AlgebraicNumber::from_rational(Rational::zero());
        }
        // p(x/k) · k^n
        let n = self.degree();
        let coeffs =
            self.min_poly.coeffs().iter().enumerate().map(|(i, c)| c * num_traits::pow(k.clone(), n - i)).collect();
        AlgebraicNumber::new_unchecked(Polynomial::new(coeffs), self.isolating.scale(k))
    }
}

/// Picks the root of the squarefree `poly` lying in the shrinking
/// enclosures produced by `enclose(step)`: the first enclosure holding
/// exactly one root becomes its isolating interval.
pub(crate) fn select_root<F>(poly: &Polynomial, mut enclose: F, max_steps: u32) -> Result<AlgebraicNumber>
where
    F: FnMut(u32) -> Interval,
{
    for step in 0..max_steps {
        let enc = enclose(step);
        match certified_root_count(poly, &enc) {
            Some(0) => return Err(Error::Inconsistent(format!("no root of {poly} inside the enclosure {enc:?}"))),
            Some(1) => return Ok(AlgebraicNumber::new_unchecked(poly.clone(), enc)),
            _ => {}
        }
    }
    Err(Error::FactorSelection(format!("enclosure still holds several roots of {poly} after {max_steps} refinements")))
}

pub(crate) const SELECTION_STEPS: u32 = 400;

fn enclosure_width(step: u32) -> Rational {
    Rational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(2), 8 + step as usize))
}

/// Applies `op` to interval enclosures of `a` and `b` at refinement `step`.
fn combined_enclosure(a: &AlgebraicNumber, b: &AlgebraicNumber, op: CombineOp, step: u32) -> Interval {
    let w = enclosure_width(step);
    let (ia, ib) = (a.refined(&w).isolating, b.refined(&w).isolating);
    match op {
        CombineOp::Product => ia.mul(&ib),
        CombineOp::Sum => ia.add(&ib),
    }
}

/// Power sums `p_1, …, p_count` of the roots of a monic polynomial.
pub fn power_sums(f: &Polynomial, count: usize) -> Vec<Rational> {
    let m = f.deg();
    // c[i] is the coefficient of x^{m-i}
    let c: Vec<Rational> = (0..=m).map(|i| f.coeff(m - i)).collect();
    let mut p = vec![Rational::from_integer(m.into())];
    for k in 1..=count {
        // p_k = -(Σ_{i<k, i<=m} c_i p_{k-i} + k·c_k), the last term only for k <= m
        let mut acc = if k <= m { &c[k] * Rational::from_integer(k.into()) } else { Rational::zero() };
        for i in 1..k.min(m + 1) {
            acc += &c[i] * &p[k - i];
        }
        p.push(-acc);
    }
    p
}

/// Monic polynomial with the given power sums `p_1, …, p_n` (Newton's
/// identities).
pub fn from_power_sums(p: &[Rational], n: usize) -> Polynomial {
    let mut e = vec![Rational::one()];
    for k in 1..=n {
        let mut acc = Rational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / Rational::from_integer(k.into()));
    }
    let coeffs = (0..=n)
        .map(|j| {
            // coefficient of x^j is (-1)^{n-j} e_{n-j}
            let k = n - j;
            if k.is_multiple_of(2) {
                e[k].clone()
            } else {
                -e[k].clone()
            }
        })
        .collect();
    Polynomial::new(coeffs)
}

fn binomial_row(k: usize) -> Vec<Rational> {
    let mut row = vec![Rational::one()];
    for j in 1..=k {
        let next = &row[j - 1] * Rational::new((k + 1 - j).into(), j.into());
        row.push(next);
    }
    row
}

/// `∏_{i,j} (x − a_i ∘ b_j)` over all conjugates, from power sums:
/// `p_k(ab) = p_k(a)·p_k(b)` and `p_k(a+b) = Σ_j C(k,j) p_j(a) p_{k−j}(b)`.
pub fn combined_characteristic(f: &Polynomial, g: &Polynomial, op: CombineOp) -> Polynomial {
    let (f, g) = (f.monic(), g.monic());
    let n = f.deg() * g.deg();
    let pf = power_sums(&f, n);
    let pg = power_sums(&g, n);
    let sums: Vec<Rational> = (0..=n)
        .map(|k| match op {
            CombineOp::Product => &pf[k] * &pg[k],
            CombineOp::Sum => binomial_row(k).iter().enumerate().map(|(j, c)| c * &pf[j] * &pg[k - j]).sum(),
        })
        .collect();
    from_power_sums(&sums, n)
}

/// Element of `Q[x,y]/(f(x), g(y))`, index `i·n + j` holding `x^i y^j`.
struct CompositeAlgebra {
    f: Polynomial,
    g: Polynomial,
}

impl CompositeAlgebra {
    fn dims(&self) -> (usize, usize) {
        (self.f.deg(), self.g.deg())
    }

    fn mul_x(&self, v: &[Rational]) -> Vec<Rational> {
        let (m, n) = self.dims();
        let mut out = vec![Rational::zero(); m * n];
        for i in 0..m {
            for j in 0..n {
                let c = &v[i * n + j];
                if c.is_zero() {
                    continue;
                }
                if i + 1 < m {
                    out[(i + 1) * n + j] += c;
                } else {
                    // x^m = -Σ f_k x^k for monic f
                    for k in 0..m {
                        out[k * n + j] -= c * self.f.coeff(k);
                    }
                }
            }
        }
        out
    }

    fn mul_y(&self, v: &[Rational]) -> Vec<Rational> {
        let (m, n) = self.dims();
        let mut out = vec![Rational::zero(); m * n];
        for i in 0..m {
            for j in 0..n {
                let c = &v[i * n + j];
                if c.is_zero() {
                    continue;
                }
                if j + 1 < n {
                    out[i * n + j + 1] += c;
                } else {
                    for k in 0..n {
                        out[i * n + k] -= c * self.g.coeff(k);
                    }
                }
            }
        }
        out
    }

    fn min_poly(&self, op: CombineOp) -> Polynomial {
        let (m, n) = self.dims();
        let mut v = vec![Rational::zero(); m * n];
        v[0] = Rational::one();
        let step = |v: &[Rational]| match op {
            CombineOp::Product => self.mul_y(&self.mul_x(v)),
            CombineOp::Sum => {
                let a = self.mul_x(v);
                let b = self.mul_y(v);
                a.iter().zip(&b).map(|(p, q)| p + q).collect()
            }
        };
        let powers = (0..=m * n).map(|_| {
            let cur = v.clone();
            v = step(&v);
            cur
        });
        Polynomial::new(first_linear_dependence(powers).expect("dimension m·n"))
    }
}

/// Minimal polynomial of `x·y` (resp. `x+y`) in `Q[x,y]/(m_a(x), m_b(y))`:
/// the first linear dependence among its powers. Monic.
pub fn composite_min_poly(a: &AlgebraicNumber, b: &AlgebraicNumber, op: CombineOp) -> Polynomial {
    CompositeAlgebra { f: a.min_poly.monic(), g: b.min_poly.monic() }.min_poly(op)
}

/// Minimal polynomial and isolating interval of `a·b` or `a+b`.
///
/// The squarefree part of [`combined_characteristic`] is the minimal
/// polynomial of `x·y` (resp. `x+y`) in the reduced algebra
/// `Q[x,y]/(m_a(x), m_b(y))`. That algebra is a field when the degrees are
/// coprime, making the polynomial irreducible; otherwise the factor
/// carrying the value is split off.
pub fn min_poly_combine(a: &AlgebraicNumber, b: &AlgebraicNumber, op: CombineOp) -> Result<AlgebraicNumber> {
    let p = combined_characteristic(a.min_poly(), b.min_poly(), op).squarefree_part()?;
    let (da, db) = (a.degree(), b.degree());
    let enclose = |step| combined_enclosure(a, b, op, step);
    let selected = select_root(&p, enclose, SELECTION_STEPS)?;
    if p.deg() == 1 || da.gcd(&db) == 1 || irreducibility_by_patterns(&p) == Irreducibility::Proved {
        return Ok(selected);
    }
    let factors = factor_squarefree(&p)?;
    let factor = factors
        .into_iter()
        .find(|f| SturmChain::new(f).map(|c| c.count_closed(&selected.isolating) == 1).unwrap_or(false))
        .ok_or_else(|| Error::FactorSelection(format!("no factor of {p} vanishes at the selected root")))?;
    Ok(AlgebraicNumber::new_unchecked(factor, selected.isolating))
}

/// Newton interpolation through `(x_i, y_i)`.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Polynomial {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut out = Polynomial::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = Polynomial::new(vec![-xs[i].clone(), Rational::one()]);
        out = &(&out * &lin) + &Polynomial::constant(coef[i].clone());
    }
    out
}

/// `R(x) = Res_y(g(y), h_x(y))` for a family `h_x` whose leading
/// coefficient in `y` does not depend on `x`, by evaluation at
/// `degree + 1` integer points and interpolation.
pub fn resultant_in_x<H>(g: &Polynomial, h: H, degree: usize) -> Result<Polynomial>
where
    H: Fn(&Rational) -> Polynomial,
{
    let xs: Vec<Rational> = (0..=degree as i64).map(|k| Rational::from_integer(k.into())).collect();
    let ys = xs.iter().map(|x| resultant(g, &h(x))).collect::<Result<Vec<_>>>()?;
    Ok(interpolate(&xs, &ys))
}

/// The classical resultant route for `a·b` / `a+b`: the squarefree part of
/// `Res_y(m_b(y), y^{deg a} m_a(x/y))` resp. `Res_y(m_b(y), m_a(x-y))`.
/// Its roots include every product (sum) of conjugates.
pub fn min_poly_combine_resultant(a: &AlgebraicNumber, b: &AlgebraicNumber, op: CombineOp) -> Result<Polynomial> {
    let f = a.min_poly();
    let g = b.min_poly();
    let (m, n) = (f.deg(), g.deg());
    let r = match op {
        CombineOp::Product => {
            if f.coeff(0).is_zero() {
                return Ok(Polynomial::x());
            }
            resultant_in_x(
                g,
                |x| {
                    let coeffs = (0..=m)
                        .map(|k| {
                            // coefficient of y^k is f_{m-k} x^{m-k}
                            f.coeff(m - k) * num_traits::pow(x.clone(), m - k)
                        })
                        .collect();
                    Polynomial::new(coeffs)
                },
                m * n,
            )?
        }
        CombineOp::Sum => resultant_in_x(g, |x| f.compose(&Polynomial::new(vec![x.clone(), -Rational::one()])), m * n)?,
    };
    r.squarefree_part()
}

/// Sign of an algebraic number.
pub fn signum(a: &AlgebraicNumber) -> i8 {
    match a.cmp_rational(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

pub fn is_negative(a: &AlgebraicNumber) -> bool {
    signum(a) < 0
}

pub fn abs_interval_width(a: &AlgebraicNumber) -> Rational {
    a.isolating.width().abs()
}
