//! Number fields `Q[x]/(m)` and their elements in the power basis.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::factor::{factor_squarefree, MAX_RECOMBINATION_DEGREE};
use crate::interval::Interval;
use crate::linalg::{determinant, first_linear_dependence};
use crate::modular::{irreducibility_by_patterns, Irreducibility};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::sturm::SturmChain;

struct FieldData {
    defining: Polynomial,
    totally_real: bool,
    galois_attested: bool,
    irreducibility: Irreducibility,
    label: String,
    sturm: OnceLock<SturmChain>,
    real_roots: OnceLock<Vec<Interval>>,
}

/// A number field `K = Q[x]/(m)` with monic squarefree defining polynomial.
///
/// Cheap to clone; clones share the same immutable data.
#[derive(Clone)]
pub struct NumberField(Arc<FieldData>);

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.defining == other.0.defining
    }
}

impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField")
            .field("defining", &self.0.defining.to_string())
            .field("totally_real", &self.0.totally_real)
            .field("galois_attested", &self.0.galois_attested)
            .field("irreducibility", &self.0.irreducibility)
            .finish()
    }
}

/// Validates `m` and builds `Q[x]/(m)`.
///
/// Irreducibility is certified by modular degree patterns; when those are
/// inconclusive, root recombination either exhibits a factor (an error) or
/// the field is accepted with irreducibility left `Unproved`.
pub fn make_field(m: &Polynomial, require_totally_real: bool) -> Result<NumberField> {
    let d = m.degree().ok_or(Error::ZeroPolynomial("defining polynomial"))?;
    if d == 0 {
        return Err(Error::InvalidParameter("defining polynomial must have degree >= 1".into()));
    }
    if !m.is_monic() {
        return Err(Error::NotMonic);
    }
    if !m.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let mut irreducibility = irreducibility_by_patterns(m);
    if irreducibility == Irreducibility::Unproved && d <= MAX_RECOMBINATION_DEGREE {
        let factors = factor_squarefree(m)?;
        if factors.len() > 1 {
            return Err(Error::Reducible(factors[0].to_string()));
        }
    }
    let chain = SturmChain::new(m)?;
    let real = chain.total_real_roots();
    if require_totally_real && real < d {
        return Err(Error::NotTotallyReal { real, degree: d });
    }
    // Fields of degree <= 2 are normal as soon as the polynomial is irreducible.
    let galois = d <= 2 && irreducibility == Irreducibility::Proved;
    if d == 1 {
        irreducibility = Irreducibility::Proved;
    }
    Ok(NumberField::build(m.clone(), real == d, galois, irreducibility, format!("minpoly {m}"), Some(chain)))
}

impl NumberField {
    fn build(
        defining: Polynomial,
        totally_real: bool,
        galois_attested: bool,
        irreducibility: Irreducibility,
        label: String,
        chain: Option<SturmChain>,
    ) -> Self {
        let sturm = OnceLock::new();
        if let Some(c) = chain {
            let _ = sturm.set(c);
        }
        NumberField(Arc::new(FieldData {
            defining,
            totally_real,
            galois_attested,
            irreducibility,
            label,
            sturm,
            real_roots: OnceLock::new(),
        }))
    }

    /// Field whose defining polynomial is known to be irreducible (catalog
    /// entries, minimal polynomials of elements).
    pub(crate) fn trusted(defining: Polynomial, galois_attested: bool, label: String) -> Self {
        let chain = SturmChain::new(&defining).expect("nonzero defining polynomial");
        let totally_real = chain.total_real_roots() == defining.deg();
        Self::build(defining, totally_real, galois_attested, Irreducibility::Proved, label, Some(chain))
    }

    /// `Q[y]/(m)` for an irreducible monic `m`, without the totally-real
    /// bookkeeping.
    pub(crate) fn quotient(m: Polynomial) -> Self {
        Self::build(m, false, false, Irreducibility::Proved, "quotient".into(), None)
    }

    pub fn defining_poly(&self) -> &Polynomial {
        &self.0.defining
    }

    pub fn degree(&self) -> usize {
        self.0.defining.deg()
    }

    pub fn is_totally_real(&self) -> bool {
        self.0.totally_real
    }

    pub fn galois_attested(&self) -> bool {
        self.0.galois_attested
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.0.irreducibility
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn sturm(&self) -> &SturmChain {
        self.0.sturm.get_or_init(|| SturmChain::new(&self.0.defining).expect("nonzero defining polynomial"))
    }

    /// Isolating intervals of the real roots of the defining polynomial,
    /// ascending. This order indexes the real embeddings.
    pub fn real_roots(&self) -> &[Interval] {
        self.0.real_roots.get_or_init(|| self.sturm().isolate())
    }

    pub fn element(&self, coords: Vec<Rational>) -> Result<FieldElement> {
        if coords.len() != self.degree() {
            return Err(Error::InvalidParameter(format!(
                "expected {} coordinates, got {}",
                self.degree(),
                coords.len()
            )));
        }
        Ok(FieldElement { field: self.clone(), coords })
    }

    /// Reduces a polynomial in the generator modulo the defining polynomial.
    pub fn from_poly(&self, p: &Polynomial) -> FieldElement {
        let r = p.rem(&self.0.defining).expect("defining polynomial is nonzero");
        let mut coords = r.coeffs().to_vec();
        coords.resize(self.degree(), Rational::zero());
        FieldElement { field: self.clone(), coords }
    }

    pub fn from_rational(&self, q: Rational) -> FieldElement {
        self.from_poly(&Polynomial::constant(q))
    }

    pub fn zero(&self) -> FieldElement {
        self.from_poly(&Polynomial::zero())
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    /// The class of `x`.
    pub fn generator(&self) -> FieldElement {
        self.from_poly(&Polynomial::x())
    }
}

/// An element of a number field, stored as power-basis coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<Rational>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({} mod {})", self.as_poly(), self.field.defining_poly())
    }
}

/// Matrix whose `n`-th column holds the coordinates of `M_α(α)^n` in the
/// basis `1, α, …, α^{d-1}`, with its determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateMatrix {
    pub columns: Vec<Vec<Rational>>,
    pub det: Rational,
}

#[allow(clippy::should_implement_trait)]
impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn as_poly(&self) -> Polynomial {
        Polynomial::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the element is the rational `q`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| self.coords[0].clone())
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(FieldElement { field: self.field.clone(), coords })
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(FieldElement { field: self.field.clone(), coords })
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &Rational) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|c| c * k).collect() }
    }

    /// Product reduced modulo the defining polynomial.
    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.from_poly(&(&self.as_poly() * &other.as_poly())))
    }

    pub fn pow(&self, exp: u32) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            e >>= 1;
        }
        acc
    }

    /// `p(self)` by Horner's rule inside the field.
    pub fn eval_poly(&self, p: &Polynomial) -> FieldElement {
        let mut acc = self.field.zero();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).expect("same field");
            acc.coords[0] += c;
        }
        acc
    }

    /// Monic minimal polynomial over Q: the first linear dependence among
    /// `1, a, a², …`.
    pub fn min_poly(&self) -> Polynomial {
        let d = self.field.degree();
        let mut power = self.field.one();
        let powers = (0..=d).map(|_| {
            let v = power.coords.clone();
            power = power.mul(self).expect("same field");
            v
        });
        let dep = first_linear_dependence(powers).expect("d + 1 vectors in dimension d are dependent");
        Polynomial::new(dep)
    }

    pub fn is_primitive(&self) -> bool {
        self.min_poly().deg() == self.field.degree()
    }

    /// Exact trace `Σ σ_i(a)`, read off the minimal polynomial.
    pub fn trace(&self) -> Rational {
        let m = self.min_poly();
        let k = m.deg();
        let mult = Rational::from_integer((self.field.degree() / k).into());
        -m.coeff(k - 1) * mult
    }

    /// Certificate matrix for the primitivity of `M_α(α)`, where `M_α` is
    /// the antiderivative of the minimal polynomial vanishing at zero.
    pub fn certificate(&self) -> Result<CertificateMatrix> {
        let d = self.field.degree();
        let m = self.min_poly();
        if m.deg() != d {
            return Err(Error::NotPrimitive { found: m.deg(), expected: d });
        }
        let big_m = m.antiderivative_zero();
        // coordinates w.r.t. 1, α, …: work in Q[y]/(m_α)
        let aux = NumberField::quotient(m);
        let e = aux.from_poly(&big_m);
        let mut power = aux.one();
        let mut columns = Vec::with_capacity(d);
        for _ in 0..d {
            columns.push(power.coords.clone());
            power = power.mul(&e)?;
        }
        let rows: Vec<Vec<Rational>> = (0..d).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        let det = determinant(&rows);
        Ok(CertificateMatrix { columns, det })
    }

    /// Enclosures of the real embeddings of `a`, one per real root of the
    /// defining polynomial in ascending order, each of width `<= precision`.
    pub fn numeric_embeddings(&self, precision: &Rational) -> Result<Vec<Interval>> {
        if !self.field.is_totally_real() {
            return Err(Error::NotTotallyReal { real: self.field.real_roots().len(), degree: self.field.degree() });
        }
        let p = self.as_poly();
        let chain = self.field.sturm();
        let mut out = Vec::with_capacity(self.field.degree());
        for root in self.field.real_roots() {
            let mut r = root.clone();
            loop {
                let enc = r.eval_poly(&p);
                if &enc.width() <= precision {
                    out.push(enc);
                    break;
                }
                r = chain.bisect(&r);
            }
        }
        Ok(out)
    }
}

/// Minimal polynomial of an element (free-function form).
pub fn min_poly_of_element(a: &FieldElement) -> Polynomial {
    a.min_poly()
}

pub fn is_primitive(a: &FieldElement) -> bool {
    a.is_primitive()
}

pub fn certificate_det(alpha: &FieldElement) -> Result<CertificateMatrix> {
    alpha.certificate()
}

pub fn numeric_embeddings(a: &FieldElement, precision: &Rational) -> Result<Vec<Interval>> {
    a.numeric_embeddings(precision)
}
