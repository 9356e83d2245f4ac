//! JSON documents for every computed object.
//!
//! Rationals are `"num/den"` strings, polynomials are integer coefficient
//! lists (low to high) with a separate rational content, algebraic numbers
//! are a minimal polynomial plus an exact isolating interval. Object keys
//! are emitted in sorted order so identical inputs give identical bytes.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebraic::AlgebraicNumber;
use crate::error::{Error, Result};
use crate::field::NumberField;
use crate::interval::Interval;
use crate::oracle::{ConvergenceSummary, OracleReport, PiDemoReport, QuadratureResult};
use crate::poly::Polynomial;
use crate::rational::{parse_rational, to_f64, to_fraction_string, Rational};
use crate::volume::{Numeric, Operand, ProductReport, ScalingCheck, SearchOutcome, VolumeReport};

pub const SCHEMA_VERSION: &str = "1.0";

pub fn rational(q: &Rational) -> Value {
    Value::String(to_fraction_string(q))
}

pub fn rationals(qs: &[Rational]) -> Value {
    Value::Array(qs.iter().map(rational).collect())
}

fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn polynomial(p: &Polynomial) -> Value {
    let (content, coeffs) = p.integer_primitive();
    json!({ "coefficients": ints(&coeffs), "content": rational(&content), "text": p.to_string() })
}

pub fn interval(iv: &Interval) -> Value {
    json!([rational(&iv.lo), rational(&iv.hi)])
}

pub fn algebraic(a: &AlgebraicNumber) -> Value {
    json!({
        "min_poly": ints(&a.min_poly().integer_primitive().1),
        "isolating": interval(a.isolating()),
    })
}

fn numeric(n: &Numeric) -> Value {
    json!({
        "value": n.value,
        "error_bound": rational(&n.error_bound),
        "error_bound_decimal": format!("{:.3e}", to_f64(&n.error_bound)),
    })
}

pub fn field(k: &NumberField) -> Value {
    json!({
        "label": k.label(),
        "defining_poly": polynomial(k.defining_poly()),
        "degree": k.degree(),
        "totally_real": k.is_totally_real(),
        "galois_attested": k.galois_attested(),
        "irreducibility": k.irreducibility(),
        "real_roots": Value::Array(k.real_roots().iter().map(interval).collect()),
    })
}

pub fn volume_report(r: &VolumeReport) -> Value {
    json!({
        "input": {
            "field": r.field_label,
            "defining_poly": polynomial(&r.defining_poly),
            "alpha": rationals(&r.alpha),
            "t0": r.t0,
            "d0": r.d0,
            "normalization": r.normalization,
        },
        "beta": algebraic(&r.beta),
        "m_alpha": polynomial(&r.m_alpha),
        "M_alpha": polynomial(&r.big_m_alpha),
        "volume": algebraic(&r.volume),
        "volume_degree": r.volume_degree,
        "ambient_dimension": r.ambient_dimension,
        "normalization_constant": rational(&r.normalization_constant),
        "numeric_value": r.numeric.value,
        "numeric": numeric(&r.numeric),
        "flags": {
            "degree_equals_field_degree": r.flags.degree_equals_field_degree,
            "galois_attested": r.flags.galois_attested,
        },
    })
}

fn operand(o: &Operand) -> Value {
    json!({
        "label": o.label,
        "volume": algebraic(&o.volume),
        "volume_degree": o.volume.degree(),
        "ambient_dimension": o.ambient_dimension,
    })
}

pub fn product_report(r: &ProductReport) -> Value {
    json!({
        "operands": Value::Array(r.operands.iter().map(operand).collect()),
        "operand_reports": Value::Array(r.operand_reports.iter().map(volume_report).collect()),
        "volume": algebraic(&r.volume),
        "volume_degree": r.volume_degree,
        "ambient_dimension": r.ambient_dimension,
        "numeric_value": r.numeric.value,
        "numeric": numeric(&r.numeric),
    })
}

pub fn search_outcome(s: &SearchOutcome) -> Value {
    json!({
        "lambda": s.lambda,
        "alpha": rationals(s.element.coords()),
        "certificate_det": rational(&s.certificate_det),
        "examined": s.stats.examined,
        "skipped_content": s.stats.skipped_content,
        "rejected_not_primitive": s.stats.rejected_not_primitive,
        "rejected_certificate": s.stats.rejected_certificate,
    })
}

pub fn scaling(c: &ScalingCheck) -> Value {
    json!({
        "k": c.k,
        "t0": c.t0,
        "scaled_t0": c.k * c.t0,
        "base_volume": algebraic(&c.base),
        "scaled_volume": algebraic(&c.scaled),
        "factor": rational(&c.factor),
        "holds": c.holds,
        "literally_equal": c.literally_equal,
    })
}

pub fn oracle_report(r: &OracleReport) -> Value {
    json!({
        "exact_reference": r.exact_reference,
        "values": Value::Array(r.entries.iter().map(|e| json!({
            "k": e.k,
            "sum": rational(&e.sum),
            "approximation": e.approximation,
            "residual": e.residual,
        })).collect()),
    })
}

pub fn convergence(s: &ConvergenceSummary) -> Value {
    json!({
        "tail_start": s.tail_start,
        "non_increasing_tail": s.non_increasing_tail,
        "final_residual": s.final_residual,
        "threshold": s.threshold,
        "empirical_order": s.empirical_order,
        "verdict": if s.passed { "pass" } else { "fail" },
    })
}

fn quadrature(q: &QuadratureResult) -> Value {
    json!({
        "value": q.approx.value,
        "error_bound": q.approx.error_bound,
        "cells": q.cells,
        "converged": q.converged,
    })
}

pub fn pi_demo(r: &PiDemoReport) -> Value {
    json!({
        "N": r.n,
        "tolerance": r.tolerance,
        "pi_reference": r.pi_reference,
        "simplex": quadrature(&r.simplex),
        "value": r.simplex.approx.value,
        "value_over_3N": r.simplex_over_3n,
        "residual_vs_pi": r.simplex_residual,
        "disk_form": {
            "quadrature": quadrature(&r.disk),
            "value_over_3N": r.disk_over_3n,
            "residual_vs_pi": r.disk_residual,
        },
    })
}

/// Wraps a result in the common envelope.
pub fn document(command: Value, result: Value, warnings: &[String]) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "result": result,
        "warnings": warnings,
    })
}

/// Pretty JSON with a trailing newline.
pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn malformed(what: &str) -> Error {
    Error::Parse(format!("malformed document: {what}"))
}

fn parse_str_rational(v: &Value) -> Result<Rational> {
    parse_rational(v.as_str().ok_or_else(|| malformed("expected a rational string"))?)
}

pub fn parse_algebraic(v: &Value) -> Result<AlgebraicNumber> {
    let coeffs = v
        .get("min_poly")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("volume.min_poly"))?
        .iter()
        .map(|c| c.as_str().and_then(|s| s.parse::<BigInt>().ok()).ok_or_else(|| malformed("integer coefficient")))
        .collect::<Result<Vec<_>>>()?;
    let iv = v
        .get("isolating")
        .and_then(Value::as_array)
        .filter(|a| a.len() == 2)
        .ok_or_else(|| malformed("volume.isolating"))?;
    let iv = Interval::new(parse_str_rational(&iv[0])?, parse_str_rational(&iv[1])?);
    AlgebraicNumber::new(&Polynomial::from_bigints(&coeffs), iv)
}

/// Reads the volume and ambient dimension from a volume or product
/// document (with or without the envelope).
pub fn parse_operand(doc: &Value, label: &str) -> Result<Operand> {
    let body = doc.get("result").unwrap_or(doc);
    let volume = parse_algebraic(body.get("volume").ok_or_else(|| malformed("missing volume"))?)?;
    let dim =
        body.get("ambient_dimension").and_then(Value::as_u64).ok_or_else(|| malformed("missing ambient_dimension"))?;
    Ok(Operand::new(label, volume, dim as usize))
}
