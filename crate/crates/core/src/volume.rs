//! Exact volumes on the projective-bundle construction over an abelian
//! variety with real multiplication by a totally real field `K`.
//!
//! On the slice `t·L0 − L` the volume function of the base is a rational
//! multiple of `m_α(t)` past the nef threshold `β` (the largest root of
//! `m_α`) and zero before it, so the bundle volume is a rational multiple of
//! `∫_β^{t0} m_α(t) dt = M_α(t0) − M_α(β)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebraic::{min_poly_combine, resultant_in_x, select_root, AlgebraicNumber, CombineOp, SELECTION_STEPS};
use crate::catalog::{is_prime, smallest_field_of_degree, CatalogKind};
use crate::descartes::certified_root_count;
use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::interval::Interval;
use crate::modular::Irreducibility;
use crate::poly::Polynomial;
use crate::rational::{parse_rational, to_decimal_string, Rational};

/// Default number of decimal places in reports.
pub const DEFAULT_DIGITS: usize = 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `c = 1`: the bare integral `∫_β^{t0} m_α`.
    #[default]
    RawIntegral,
    /// `c = (d+1)!·d0/(2·t0)`: the volume of `O_X(1)` itself.
    Geometric,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::RawIntegral => "raw_integral",
            Normalization::Geometric => "geometric",
        })
    }
}

impl FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw_integral" | "raw" => Ok(Normalization::RawIntegral),
            "geometric" => Ok(Normalization::Geometric),
            other => Err(Error::Parse(format!("unknown normalization {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConstructionInput {
    pub alpha: FieldElement,
    pub t0: Option<u64>,
    pub d0: u64,
    pub normalization: Normalization,
}

impl ConstructionInput {
    pub fn new(alpha: FieldElement) -> Self {
        ConstructionInput { alpha, t0: None, d0: 1, normalization: Normalization::RawIntegral }
    }

    pub fn field(&self) -> &NumberField {
        self.alpha.field()
    }

    pub fn with_t0(mut self, t0: u64) -> Self {
        self.t0 = Some(t0);
        self
    }

    pub fn with_d0(mut self, d0: u64) -> Self {
        self.d0 = d0;
        self
    }

    pub fn with_normalization(mut self, normalization: Normalization) -> Self {
        self.normalization = normalization;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VolumeFlags {
    pub degree_equals_field_degree: bool,
    pub galois_attested: bool,
}

/// A decimal rendering together with an exact-interval error bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Numeric {
    pub value: String,
    pub error_bound: Rational,
}

#[derive(Clone, Debug)]
pub struct VolumeReport {
    pub field_label: String,
    pub defining_poly: Polynomial,
    pub field_irreducibility: Irreducibility,
    pub alpha: Vec<Rational>,
    pub t0: u64,
    pub d0: u64,
    pub normalization: Normalization,
    pub beta: AlgebraicNumber,
    pub m_alpha: Polynomial,
    pub big_m_alpha: Polynomial,
    pub volume: AlgebraicNumber,
    pub volume_degree: usize,
    pub ambient_dimension: usize,
    pub normalization_constant: Rational,
    pub numeric: Numeric,
    pub flags: VolumeFlags,
}

/// A volume together with the dimension of the variety carrying it.
#[derive(Clone, Debug)]
pub struct Operand {
    pub label: String,
    pub volume: AlgebraicNumber,
    pub ambient_dimension: usize,
}

impl Operand {
    pub fn new(label: impl Into<String>, volume: AlgebraicNumber, ambient_dimension: usize) -> Self {
        Operand { label: label.into(), volume, ambient_dimension }
    }

    pub fn rational(q: Rational, ambient_dimension: usize) -> Self {
        let label = crate::rational::to_fraction_string(&q);
        Operand::new(label, AlgebraicNumber::from_rational(q), ambient_dimension)
    }
}

impl From<&VolumeReport> for Operand {
    fn from(r: &VolumeReport) -> Self {
        Operand::new(r.field_label.clone(), r.volume.clone(), r.ambient_dimension)
    }
}

#[derive(Clone, Debug)]
pub struct ProductReport {
    pub operands: Vec<Operand>,
    /// Full reports of the operands when they were computed in this run.
    pub operand_reports: Vec<VolumeReport>,
    pub volume: AlgebraicNumber,
    pub volume_degree: usize,
    pub ambient_dimension: usize,
    pub numeric: Numeric,
}

fn require_totally_real(field: &NumberField) -> Result<()> {
    if field.is_totally_real() {
        Ok(())
    } else {
        Err(Error::NotTotallyReal { real: field.real_roots().len(), degree: field.degree() })
    }
}

fn require_primitive(alpha: &FieldElement) -> Result<Polynomial> {
    let m = alpha.min_poly();
    let d = alpha.field().degree();
    if m.deg() != d {
        return Err(Error::NotPrimitive { found: m.deg(), expected: d });
    }
    Ok(m)
}

/// `m_α`, the monic minimal polynomial of a primitive `α`.
pub fn volume_polynomial(alpha: &FieldElement) -> Result<Polynomial> {
    require_totally_real(alpha.field())?;
    require_primitive(alpha)
}

fn extreme_roots(m: &Polynomial) -> Result<(Interval, Interval)> {
    let roots = crate::sturm::isolate_real_roots(m)?;
    match (roots.first(), roots.last()) {
        (Some(lo), Some(hi)) => Ok((lo.clone(), hi.clone())),
        _ => Err(Error::NotTotallyReal { real: 0, degree: m.deg() }),
    }
}

/// The largest root `β` of `m_α`.
pub fn nef_threshold(alpha: &FieldElement) -> Result<AlgebraicNumber> {
    let m = volume_polynomial(alpha)?;
    let (_, top) = extreme_roots(&m)?;
    Ok(AlgebraicNumber::new_unchecked(m, top).refined(&Rational::new(1.into(), 64.into())))
}

/// `t > every real root of m` and `m(t) > 0`, decided exactly.
fn exceeds_all_roots(m: &Polynomial, t: &Rational) -> Result<bool> {
    let chain = crate::sturm::SturmChain::new(m)?;
    Ok(chain.count_above(t) == 0 && m.eval(t).is_positive())
}

/// `t < every real root of m`.
fn below_all_roots(m: &Polynomial, t: &Rational) -> Result<bool> {
    let chain = crate::sturm::SturmChain::new(m)?;
    Ok(chain.count_below(t) == 0 && !m.eval(t).is_zero())
}

/// Smallest positive integer `t0` with `−t0 < (smallest root) ≤ β < t0`.
pub fn choose_t0(alpha: &FieldElement) -> Result<u64> {
    let m = volume_polynomial(alpha)?;
    let (low, top) = extreme_roots(&m)?;
    let start = top.lo.floor().to_integer().max((-low.hi).floor().to_integer()).max(BigInt::one());
    let mut t = start;
    loop {
        let tq = Rational::from_integer(t.clone());
        if exceeds_all_roots(&m, &tq)? && below_all_roots(&m, &-tq)? {
            return u64::try_from(&t).map_err(|_| Error::InvalidParameter(format!("t0 = {t} exceeds u64")));
        }
        t += 1;
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `c` for the chosen normalization on a field of degree `d`.
pub fn normalization_constant(normalization: Normalization, d: usize, d0: u64, t0: u64) -> Rational {
    match normalization {
        Normalization::RawIntegral => Rational::one(),
        Normalization::Geometric => {
            Rational::new(factorial(d + 1) * BigInt::from(d0), BigInt::from(2u64) * BigInt::from(t0))
        }
    }
}

/// Decimal value to `digits` places plus an isolating interval that
/// contains that decimal.
pub fn numeric_with_interval(a: &AlgebraicNumber, digits: usize) -> (AlgebraicNumber, Numeric) {
    let mut places = digits;
    loop {
        let w = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), places + 1));
        let r = a.refined(&w);
        let text = to_decimal_string(&r.isolating().midpoint(), places);
        let q = parse_rational(&text).expect("decimal rendering parses");
        let iv = r.isolating();
        let hull = Interval::new(iv.lo.clone().min(q.clone()), iv.hi.clone().max(q));
        if certified_root_count(a.min_poly(), &hull) == Some(1) {
            let width = hull.width();
            let out = AlgebraicNumber::new_unchecked(a.min_poly().clone(), hull);
            return (out, Numeric { value: text, error_bound: width });
        }
        places += 1;
    }
}

/// Exact volume `V = c·(M_α(t0) − M_α(β))`.
///
/// The minimal polynomial of `V` is that of `c·(M_α(t0) − M_α(y))` in
/// `Q[y]/(m_α)`, which is irreducible by construction. The resultant
/// `Res_y(m_α(y), x − c·(M_α(t0) − M_α(y)))` is recomputed independently and
/// its squarefree part must agree. The root is then selected by interval
/// enclosures of `V` from refinements of `β`.
pub fn cutkosky_volume(input: &ConstructionInput) -> Result<VolumeReport> {
    cutkosky_volume_with_digits(input, DEFAULT_DIGITS)
}

pub fn cutkosky_volume_with_digits(input: &ConstructionInput, digits: usize) -> Result<VolumeReport> {
    let field = input.field();
    let m = volume_polynomial(&input.alpha)?;
    if input.d0 == 0 {
        return Err(Error::InvalidParameter("d0 must be positive".into()));
    }
    let t0 = match input.t0 {
        Some(t0) => {
            if t0 == 0 || !exceeds_all_roots(&m, &Rational::from_integer(t0.into()))? {
                return Err(Error::InvalidT0(t0));
            }
            t0
        }
        None => choose_t0(&input.alpha)?,
    };
    let d = field.degree();
    let beta = nef_threshold(&input.alpha)?;
    let big_m = m.antiderivative_zero();
    let c = normalization_constant(input.normalization, d, input.d0, t0);
    let t0q = Rational::from_integer(t0.into());
    let top_value = &c * big_m.eval(&t0q);

    // V as an element of Q[y]/(m_α) with y ↦ β
    let aux = NumberField::quotient(m.clone());
    let element = aux.from_rational(top_value.clone()).sub(&aux.from_poly(&big_m).scale(&c))?;
    let p = element.min_poly();

    let shifted = big_m.scale(&c);
    let res = resultant_in_x(
        &m,
        |x| {
            let mut h = shifted.clone();
            h = &h + &Polynomial::constant(x - &top_value);
            h
        },
        d,
    )?;
    let res_sqf = res.squarefree_part()?;
    if res_sqf != p {
        return Err(Error::Inconsistent(format!(
            "resultant squarefree part {res_sqf} differs from the minimal polynomial {p}"
        )));
    }

    let enclose = |step: u32| {
        let w = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(2), 8 + step as usize));
        let b = beta.refined(&w);
        let mb = b.isolating().eval_poly(&big_m);
        Interval::point(top_value.clone()).sub(&mb.scale(&c))
    };
    let selected = select_root(&p, enclose, SELECTION_STEPS)?;
    let (volume, numeric) = numeric_with_interval(&selected, digits);

    let volume_degree = volume.degree();
    Ok(VolumeReport {
        field_label: field.label().to_string(),
        defining_poly: field.defining_poly().clone(),
        field_irreducibility: field.irreducibility(),
        alpha: input.alpha.coords().to_vec(),
        t0,
        d0: input.d0,
        normalization: input.normalization,
        beta,
        m_alpha: m,
        big_m_alpha: big_m,
        volume,
        volume_degree,
        ambient_dimension: d + 1,
        normalization_constant: c,
        numeric,
        flags: VolumeFlags { degree_equals_field_degree: volume_degree == d, galois_attested: field.galois_attested() },
    })
}

/// Outcome of comparing the raw volumes of `α` and `kα`.
#[derive(Clone, Debug)]
pub struct ScalingCheck {
    pub k: u64,
    pub t0: u64,
    pub base: AlgebraicNumber,
    pub scaled: AlgebraicNumber,
    /// `k^{d+1}`: the substitution `t = k·s` maps `∫_β^{t0} m_α` onto
    /// `k^{-(d+1)}·∫_{kβ}^{k·t0} m_{kα}`.
    pub factor: Rational,
    pub holds: bool,
    /// Whether the two raw volumes coincide without the factor.
    pub literally_equal: bool,
}

pub fn scaling_check(alpha: &FieldElement, k: u64) -> Result<ScalingCheck> {
    if k == 0 {
        return Err(Error::InvalidParameter("scaling factor k must be positive".into()));
    }
    let t0 = choose_t0(alpha)?;
    let base = cutkosky_volume(&ConstructionInput::new(alpha.clone()).with_t0(t0))?;
    let kq = Rational::from_integer(k.into());
    let scaled_alpha = alpha.scale(&kq);
    let scaled = cutkosky_volume(&ConstructionInput::new(scaled_alpha).with_t0(k * t0))?;
    let d = alpha.field().degree();
    let factor = num_traits::pow(kq, d + 1);
    let expected = base.volume.scale(&factor);
    Ok(ScalingCheck {
        k,
        t0,
        holds: expected.same_value(&scaled.volume),
        literally_equal: base.volume.same_value(&scaled.volume),
        base: base.volume,
        scaled: scaled.volume,
        factor,
    })
}

/// `true` iff the raw volume of `(kα, k·t0)` equals `k^{d+1}` times that of
/// `(α, t0)` as algebraic numbers.
pub fn verify_scaling(alpha: &FieldElement, k: u64) -> Result<bool> {
    Ok(scaling_check(alpha, k)?.holds)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub examined: usize,
    pub skipped_content: usize,
    pub rejected_not_primitive: usize,
    pub rejected_certificate: usize,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub element: FieldElement,
    pub lambda: Vec<i64>,
    pub certificate_det: Rational,
    pub stats: SearchStats,
}

/// `0, 1, −1, 2, −2, …` up to `±bound`.
fn value_order(bound: i64) -> Vec<i64> {
    let mut out = vec![0];
    for v in 1..=bound {
        out.push(v);
        out.push(-v);
    }
    out
}

fn content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, x| g.gcd(x))
}

/// Coordinate vectors of max-norm exactly `shell`, in lexicographic order
/// with respect to `0, 1, −1, 2, −2, …`.
pub fn shell_vectors(dim: usize, shell: i64) -> impl Iterator<Item = Vec<i64>> {
    let order = value_order(shell);
    let base = order.len();
    let total = base.checked_pow(dim as u32).expect("search space fits in usize");
    (0..total).filter_map(move |mut idx| {
        let mut v = vec![0i64; dim];
        for slot in v.iter_mut().rev() {
            *slot = order[idx % base];
            idx /= base;
        }
        (v.iter().map(|x| x.abs()).max() == Some(shell)).then_some(v)
    })
}

/// First `α = Σ λ_i·θ^i` (θ the generator) in max-norm shells up to
/// `max_norm_bound` with `α` primitive and a nonzero certificate
/// determinant. Vectors with content > 1 are skipped.
pub fn primitive_search(field: &NumberField, max_norm_bound: u64) -> Result<SearchOutcome> {
    require_totally_real(field)?;
    if max_norm_bound == 0 {
        return Err(Error::InvalidParameter("search bound must be positive".into()));
    }
    let d = field.degree();
    let mut stats = SearchStats::default();
    for shell in 1..=max_norm_bound as i64 {
        for lambda in shell_vectors(d, shell) {
            stats.examined += 1;
            if content(&lambda) > 1 {
                stats.skipped_content += 1;
                continue;
            }
            let coords = lambda.iter().map(|&x| Rational::from_integer(x.into())).collect();
            let alpha = field.element(coords)?;
            if !alpha.is_primitive() {
                stats.rejected_not_primitive += 1;
                continue;
            }
            let cert = alpha.certificate()?;
            if cert.det.is_zero() {
                stats.rejected_certificate += 1;
                continue;
            }
            return Ok(SearchOutcome { element: alpha, lambda, certificate_det: cert.det, stats });
        }
    }
    Err(Error::SearchExhausted(format!(
        "bound {max_norm_bound}: {} examined, {} skipped for content, {} not primitive, {} with zero certificate",
        stats.examined, stats.skipped_content, stats.rejected_not_primitive, stats.rejected_certificate
    )))
}

/// Product of two volumes on the product variety.
pub fn kunneth_product(a: &Operand, b: &Operand) -> Result<ProductReport> {
    let volume = min_poly_combine(&a.volume, &b.volume, CombineOp::Product)?;
    let (volume, numeric) = numeric_with_interval(&volume, DEFAULT_DIGITS);
    Ok(ProductReport {
        operands: vec![a.clone(), b.clone()],
        operand_reports: Vec::new(),
        volume_degree: volume.degree(),
        volume,
        ambient_dimension: a.ambient_dimension + b.ambient_dimension,
        numeric,
    })
}

/// Search bound used for each factor of the degree-`pq` construction.
pub const PQ_SEARCH_BOUND: u64 = 3;

/// A volume of degree `p·q` on a variety of dimension `p + q + 2`, from
/// totally real Galois fields of degrees `p` and `q`.
pub fn pq_demo(p: u64, q: u64) -> Result<ProductReport> {
    if !(is_prime(p) && is_prime(q) && p % 2 == 1 && q % 2 == 1 && p < q) {
        return Err(Error::InvalidParameter(format!("need odd primes p < q, got ({p}, {q})")));
    }
    if (q - 1).is_multiple_of(p) {
        return Err(Error::InvalidParameter(format!("p = {p} divides q - 1 = {}", q - 1)));
    }
    let side = |deg: u64| -> Result<(CatalogKind, VolumeReport)> {
        let (kind, field) = smallest_field_of_degree(deg)?;
        let found = primitive_search(&field, PQ_SEARCH_BOUND)?;
        Ok((kind, cutkosky_volume(&ConstructionInput::new(found.element))?))
    };
    let (_, left) = side(p)?;
    let (_, right) = side(q)?;
    let mut report = kunneth_product(&Operand::from(&left), &Operand::from(&right))?;
    report.operand_reports = vec![left, right];
    if report.volume_degree as u64 != p * q || report.ambient_dimension as u64 != p + q + 2 {
        return Err(Error::Inconsistent(format!(
            "expected degree {} and dimension {}, got {} and {}",
            p * q,
            p + q + 2,
            report.volume_degree,
            report.ambient_dimension
        )));
    }
    Ok(report)
}

/// Compares the volume with a rational, exactly.
pub fn compare_volume(report: &VolumeReport, q: &Rational) -> Ordering {
    report.volume.cmp_rational(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_field;
    use crate::field::make_field;
    use crate::rational::{int, rat};

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn q2() -> NumberField {
        catalog_field(CatalogKind::Quadratic(2)).unwrap()
    }

    fn heptagon() -> NumberField {
        catalog_field(CatalogKind::RealCyclotomic(7)).unwrap()
    }

    #[test]
    fn volume_polynomials() {
        assert_eq!(volume_polynomial(&q2().generator()).unwrap(), p("x^2-2"));
        assert_eq!(volume_polynomial(&heptagon().generator()).unwrap(), p("x^3+x^2-2*x-1"));
        let three = heptagon().generator().scale(&int(3));
        assert_eq!(volume_polynomial(&three).unwrap(), p("x^3+3*x^2-18*x-27"));
        assert!(matches!(volume_polynomial(&q2().one()), Err(Error::NotPrimitive { .. })));
    }

    #[test]
    fn thresholds_and_t0() {
        let k = q2();
        let beta = nef_threshold(&k.generator()).unwrap();
        assert!(Interval::new(int(1), int(2)).contains_interval(beta.isolating()));
        assert_eq!(beta, nef_threshold(&k.generator().neg()).unwrap());
        assert_eq!(choose_t0(&k.generator()).unwrap(), 2);
        assert_eq!(choose_t0(&k.generator().scale(&int(3))).unwrap(), 5);
        let h = heptagon();
        assert_eq!(choose_t0(&h.generator()).unwrap(), 2);
        assert_eq!(nef_threshold(&h.generator()).unwrap().decimal(5), "1.24698");
    }

    #[test]
    fn quadratic_volume() {
        let r = cutkosky_volume(&ConstructionInput::new(q2().generator())).unwrap();
        assert_eq!(r.t0, 2);
        assert_eq!(r.volume.min_poly(), &p("9*x^2+24*x-16"));
        assert_eq!(r.volume.decimal(6), "0.552285");
        assert_eq!(r.ambient_dimension, 3);
        assert!(r.flags.degree_equals_field_degree && r.flags.galois_attested);
        let q = parse_rational(&r.numeric.value).unwrap();
        assert!(r.volume.isolating().contains(&q));
    }

    #[test]
    fn rational_volume() {
        let k = make_field(&p("x-2"), true).unwrap();
        let alpha = k.from_rational(int(2));
        let r = cutkosky_volume(&ConstructionInput::new(alpha).with_t0(3)).unwrap();
        assert_eq!(r.volume.as_rational(), Some(rat(1, 2)));
        assert_eq!(r.volume.min_poly(), &p("2*x-1"));
    }

    #[test]
    fn invalid_t0_rejected() {
        let input = ConstructionInput::new(q2().generator()).with_t0(1);
        assert_eq!(cutkosky_volume(&input).unwrap_err(), Error::InvalidT0(1));
    }

    #[test]
    fn geometric_normalization() {
        let raw = cutkosky_volume(&ConstructionInput::new(q2().generator())).unwrap();
        let geo = cutkosky_volume(
            &ConstructionInput::new(q2().generator()).with_normalization(Normalization::Geometric).with_d0(2),
        )
        .unwrap();
        // (d+1)!·d0/(2·t0) = 6·2/4 = 3
        assert_eq!(geo.normalization_constant, int(3));
        assert_eq!(geo.volume, raw.volume.scale(&int(3)));
    }

    #[test]
    fn scaling_uses_the_homogeneity_factor() {
        let c = scaling_check(&q2().generator(), 2).unwrap();
        assert!(c.holds);
        assert!(!c.literally_equal);
        assert_eq!(c.factor, int(8));
        assert_eq!(c.scaled.min_poly(), &p("9*x^2+192*x-1024"));
        assert!(verify_scaling(&q2().generator(), 1).unwrap());
        assert!(verify_scaling(&heptagon().generator(), 3).unwrap());
    }

    #[test]
    fn search_order() {
        let found = primitive_search(&q2(), 1).unwrap();
        assert_eq!(found.lambda, vec![0, 1]);
        assert_eq!(found.certificate_det, rat(-4, 3));
        let rationals = make_field(&p("x"), true).unwrap();
        assert_eq!(primitive_search(&rationals, 1).unwrap().lambda, vec![1]);
        let shell: Vec<_> = shell_vectors(2, 1).collect();
        assert_eq!(shell[0], vec![0, 1]);
        assert_eq!(shell.len(), 8);
    }

    #[test]
    fn products() {
        let r = kunneth_product(&Operand::rational(rat(1, 2), 1), &Operand::rational(int(3), 2)).unwrap();
        assert_eq!(r.volume.as_rational(), Some(rat(3, 2)));
        assert_eq!(r.ambient_dimension, 3);
        assert!(matches!(pq_demo(3, 7), Err(Error::InvalidParameter(_))));
    }
}
