//! `algvol`: exact algebraic volumes from the command line.
//!
//! Every run prints one JSON document on stdout and a one-line summary on
//! stderr. Exit codes: 0 success, 2 invalid input, 3 failed computation.

use std::fs;
use std::process::ExitCode;

use algvol_core::oracle::{convergence_report, pi_demo, riemann_volume_r1, RiemannSchedule};
use algvol_core::rational::{parse_rational, to_f64};
use algvol_core::report;
use algvol_core::volume::{cutkosky_volume_with_digits, scaling_check, SearchOutcome};
use algvol_core::{
    catalog_field, make_field, pq_demo, primitive_search, CatalogKind, ConstructionInput, Error, FieldElement,
    Irreducibility, Normalization, NumberField, Operand, Polynomial, Rational, VolumeReport,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

const EXIT_VALIDATION: u8 = 2;
const EXIT_COMPUTATION: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "algvol", version, about = "Divisor volumes as exact algebraic numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe a number field.
    Field {
        #[command(flatten)]
        field: FieldSpec,
        /// Reject fields with non-real embeddings.
        #[arg(long)]
        require_totally_real: bool,
    },
    /// Exact volume for a primitive element.
    Volume(VolumeArgs),
    /// Primitive-element search followed by the volume computation.
    Search {
        #[command(flatten)]
        field: FieldSpec,
        /// Max-norm bound on the coordinate vectors.
        #[arg(long, default_value_t = 3)]
        bound: u64,
        #[command(flatten)]
        options: VolumeOptions,
    },
    /// Exact volume plus the Riemann-sum oracle and optional scaling check.
    Verify {
        #[command(flatten)]
        volume: VolumeArgs,
        #[arg(long, default_value_t = 16)]
        kmin: u64,
        #[arg(long, default_value_t = 4096)]
        kmax: u64,
        /// Largest acceptable final residual.
        #[arg(long, default_value = "1e-4")]
        threshold: String,
        /// Also compare the volumes of alpha and k*alpha.
        #[arg(long, value_name = "K")]
        scale_check: Option<u64>,
    },
    /// Simplex quadrature of the disk example.
    PiDemo {
        #[arg(long = "N", value_name = "N")]
        n: u64,
        #[arg(long, default_value = "1e-8")]
        tol: String,
    },
    /// Product of two volumes: stored documents or the degree-pq construction.
    Kunneth {
        /// Two volume documents written by `volume`, `search` or `kunneth`.
        #[arg(conflicts_with = "pq")]
        files: Vec<String>,
        #[arg(long, num_args = 2, value_names = ["P", "Q"])]
        pq: Option<Vec<u64>>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct FieldSpec {
    /// Q(sqrt(D)) for squarefree D >= 2.
    #[arg(long, value_name = "D")]
    quadratic: Option<u64>,
    /// Q(zeta_n + zeta_n^-1).
    #[arg(long, value_name = "N")]
    cyclotomic: Option<u64>,
    /// Degree-DEGREE subfield of Q(zeta_p), given as "p,degree".
    #[arg(long, value_name = "P,DEGREE")]
    period: Option<String>,
    /// Monic defining polynomial, e.g. "x^3+x^2-2*x-1".
    #[arg(long, value_name = "POLY", allow_hyphen_values = true)]
    minpoly: Option<String>,
}

#[derive(Args, Debug)]
struct VolumeOptions {
    /// Upper integration limit; defaults to the smallest integer above the nef threshold
    #[arg(long)]
    t0: Option<u64>,
    /// Degree of the polarization, used by the geometric normalization
    #[arg(long, default_value_t = 1)]
    d0: u64,
    /// raw_integral or geometric.
    #[arg(long, default_value = "raw_integral")]
    normalization: String,
    /// Decimal places of the numeric value.
    #[arg(long, default_value_t = 20)]
    digits: usize,
}

#[derive(Args, Debug)]
#[group(id = "element", required = true, multiple = false)]
struct ElementSpec {
    /// Power-basis coordinates of alpha, e.g. "0,1".
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Search for alpha up to this max-norm bound.
    #[arg(long, value_name = "BOUND")]
    auto_search: Option<u64>,
}

#[derive(Args, Debug)]
struct VolumeArgs {
    #[command(flatten)]
    field: FieldSpec,
    #[command(flatten)]
    element: ElementSpec,
    #[command(flatten)]
    options: VolumeOptions,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_validation() { EXIT_VALIDATION } else { EXIT_COMPUTATION };
        Failure { code, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_VALIDATION, message: message.into() }
}

fn computation(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_COMPUTATION, message: message.into() }
}

struct Outcome {
    result: Value,
    warnings: Vec<String>,
    summary: String,
    /// Set when the document is complete but a check inside it failed.
    failure: Option<Failure>,
}

impl Outcome {
    fn ok(result: Value, warnings: Vec<String>, summary: String) -> Self {
        Outcome { result, warnings, summary, failure: None }
    }
}

fn build_field(spec: &FieldSpec, require_totally_real: bool) -> Result<NumberField, Failure> {
    let field = if let Some(d) = spec.quadratic {
        catalog_field(CatalogKind::Quadratic(d))?
    } else if let Some(n) = spec.cyclotomic {
        catalog_field(CatalogKind::RealCyclotomic(n))?
    } else if let Some(text) = &spec.period {
        let parts: Vec<u64> = text
            .split(',')
            .map(|s| s.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|_| invalid(format!("--period expects \"p,degree\", got {text:?}")))?;
        match parts.as_slice() {
            [conductor, degree] => catalog_field(CatalogKind::CyclicPeriod { conductor: *conductor, degree: *degree })?,
            _ => return Err(invalid(format!("--period expects \"p,degree\", got {text:?}"))),
        }
    } else if let Some(text) = &spec.minpoly {
        make_field(&text.parse::<Polynomial>()?, require_totally_real)?
    } else {
        return Err(invalid("no field given"));
    };
    if require_totally_real && !field.is_totally_real() {
        return Err(Error::NotTotallyReal { real: field.real_roots().len(), degree: field.degree() }.into());
    }
    Ok(field)
}

fn field_warnings(field: &NumberField) -> Vec<String> {
    let mut out = Vec::new();
    if field.irreducibility() == Irreducibility::Unproved {
        out.push("irreducibility of the defining polynomial is unproved".to_string());
    }
    if !field.galois_attested() {
        out.push("field is not attested Galois; the volume degree may fall below the field degree".to_string());
    }
    out
}

fn parse_alpha(field: &NumberField, text: &str) -> Result<FieldElement, Failure> {
    let mut coords = text.split(',').map(|s| parse_rational(s.trim())).collect::<Result<Vec<Rational>, _>>()?;
    if coords.len() > field.degree() {
        return Err(invalid(format!(
            "alpha has {} coordinates but the field has degree {}",
            coords.len(),
            field.degree()
        )));
    }
    coords.resize(field.degree(), Rational::from_integer(0.into()));
    Ok(field.element(coords)?)
}

fn construction(
    field: &NumberField,
    alpha: FieldElement,
    options: &VolumeOptions,
) -> Result<ConstructionInput, Failure> {
    let normalization: Normalization = options.normalization.parse()?;
    let mut input = ConstructionInput::new(alpha).with_d0(options.d0).with_normalization(normalization);
    if let Some(t0) = options.t0 {
        input = input.with_t0(t0);
    }
    debug_assert_eq!(input.field(), field);
    Ok(input)
}

/// Field, alpha (given or searched) and the finished volume report.
fn run_volume(args: &VolumeArgs) -> Result<(NumberField, Option<SearchOutcome>, VolumeReport), Failure> {
    let field = build_field(&args.field, true)?;
    let (alpha, search) = match (&args.element.alpha, args.element.auto_search) {
        (Some(text), _) => (parse_alpha(&field, text)?, None),
        (None, Some(bound)) => {
            let found = primitive_search(&field, bound)?;
            (found.element.clone(), Some(found))
        }
        (None, None) => return Err(invalid("give --alpha or --auto-search")),
    };
    let input = construction(&field, alpha, &args.options)?;
    let report = cutkosky_volume_with_digits(&input, args.options.digits)?;
    Ok((field, search, report))
}

fn volume_result(search: Option<&SearchOutcome>, r: &VolumeReport) -> Value {
    let mut v = report::volume_report(r);
    if let Some(s) = search {
        v["search"] = report::search_outcome(s);
    }
    v
}

fn volume_summary(r: &VolumeReport) -> String {
    format!(
        "volume of degree {} in dimension {}: {} (root of {})",
        r.volume_degree,
        r.ambient_dimension,
        r.numeric.value,
        r.volume.min_poly()
    )
}

fn cmd_field(spec: &FieldSpec, require_totally_real: bool) -> Result<Outcome, Failure> {
    let field = build_field(spec, require_totally_real)?;
    let summary =
        format!("{}: degree {}, totally real {}", field.defining_poly(), field.degree(), field.is_totally_real());
    Ok(Outcome::ok(report::field(&field), field_warnings(&field), summary))
}

fn cmd_volume(args: &VolumeArgs) -> Result<Outcome, Failure> {
    let (field, search, r) = run_volume(args)?;
    Ok(Outcome::ok(volume_result(search.as_ref(), &r), field_warnings(&field), volume_summary(&r)))
}

fn cmd_search(spec: &FieldSpec, bound: u64, options: &VolumeOptions) -> Result<Outcome, Failure> {
    let field = build_field(spec, true)?;
    let found = primitive_search(&field, bound)?;
    let input = construction(&field, found.element.clone(), options)?;
    let r = cutkosky_volume_with_digits(&input, options.digits)?;
    let summary =
        format!("alpha = {:?} after {} candidates; {}", found.lambda, found.stats.examined, volume_summary(&r));
    Ok(Outcome::ok(volume_result(Some(&found), &r), field_warnings(&field), summary))
}

fn positive_float(text: &str, flag: &str) -> Result<f64, Failure> {
    let q = parse_rational(text)?;
    let v = to_f64(&q);
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(format!("{flag} must be positive, got {text}")))
    }
}

fn cmd_verify(
    args: &VolumeArgs,
    kmin: u64,
    kmax: u64,
    threshold: &str,
    scale_check: Option<u64>,
) -> Result<Outcome, Failure> {
    let threshold = positive_float(threshold, "--threshold")?;
    let schedule = RiemannSchedule::new(kmin, kmax)?;
    if schedule.steps().len() < 3 {
        return Err(invalid("the doubling schedule needs at least three steps"));
    }
    let (field, search, r) = run_volume(args)?;
    // The oracle integrates m_alpha itself, so compare against c = 1.
    let raw = if r.normalization_constant == Rational::from_integer(1.into()) {
        r.volume.clone()
    } else {
        r.volume.scale(&(Rational::from_integer(1.into()) / &r.normalization_constant))
    };
    let oracle = riemann_volume_r1(&r.m_alpha, Some(&r.beta), r.t0, schedule, Some(&raw))?;
    let summary_check = convergence_report(&oracle, threshold)?;
    let mut result = json!({
        "exact": volume_result(search.as_ref(), &r),
        "oracle": report::oracle_report(&oracle),
        "convergence": report::convergence(&summary_check),
    });
    let mut failure = None;
    if !summary_check.passed {
        failure = Some(computation(format!(
            "Riemann sums did not converge: final residual {:.3e}",
            summary_check.final_residual
        )));
    }
    if let Some(k) = scale_check {
        let alpha = search.as_ref().map(|s| s.element.clone());
        let alpha = match alpha {
            Some(a) => a,
            None => parse_alpha(&field, args.element.alpha.as_deref().unwrap_or_default())?,
        };
        let check = scaling_check(&alpha, k)?;
        if !check.holds {
            failure = Some(computation(format!("scaling identity failed for k = {k}")));
        }
        result["scaling"] = report::scaling(&check);
    }
    let summary = format!(
        "{}; oracle final residual {:.3e} ({})",
        volume_summary(&r),
        summary_check.final_residual,
        if summary_check.passed { "pass" } else { "fail" }
    );
    Ok(Outcome { result, warnings: field_warnings(&field), summary, failure })
}

/// Largest accepted gap between the simplex value over 3N and π.
const PI_AGREEMENT: f64 = 1e-6;

fn cmd_pi_demo(n: u64, tol: &str) -> Result<Outcome, Failure> {
    let tol = positive_float(tol, "--tol")?;
    let r = pi_demo(n, tol)?;
    let mut warnings = Vec::new();
    if r.simplex_residual > PI_AGREEMENT {
        warnings.push(format!(
            "simplex value / 3N = {} differs from pi by {:.3e}; the disk form gives {}",
            r.simplex_over_3n, r.simplex_residual, r.disk_over_3n
        ));
    }
    let failure = (!r.simplex.converged || !r.disk.converged)
        .then(|| computation(format!("quadrature did not reach tolerance {tol}")));
    let summary = format!(
        "simplex value {} (value/3N = {}), disk form value/3N = {}",
        r.simplex.approx.value, r.simplex_over_3n, r.disk_over_3n
    );
    Ok(Outcome { result: report::pi_demo(&r), warnings, summary, failure })
}

fn read_operand(path: &str) -> Result<Operand, Failure> {
    let text = fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {path}: {e}")))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| invalid(format!("{path} is not JSON: {e}")))?;
    Ok(report::parse_operand(&doc, path)?)
}

fn cmd_kunneth(files: &[String], pq: Option<&[u64]>) -> Result<Outcome, Failure> {
    let r = match (files, pq) {
        (_, Some([p, q])) => pq_demo(*p, *q)?,
        ([a, b], None) => algvol_core::kunneth_product(&read_operand(a)?, &read_operand(b)?)?,
        _ => return Err(invalid("give two volume documents or --pq P Q")),
    };
    let summary = format!(
        "product volume of degree {} in dimension {}: {}",
        r.volume_degree, r.ambient_dimension, r.numeric.value
    );
    Ok(Outcome::ok(report::product_report(&r), Vec::new(), summary))
}

fn dispatch(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Field { field, require_totally_real } => cmd_field(field, *require_totally_real),
        Command::Volume(args) => cmd_volume(args),
        Command::Search { field, bound, options } => cmd_search(field, *bound, options),
        Command::Verify { volume, kmin, kmax, threshold, scale_check } => {
            cmd_verify(volume, *kmin, *kmax, threshold, *scale_check)
        }
        Command::PiDemo { n, tol } => cmd_pi_demo(*n, tol),
        Command::Kunneth { files, pq } => cmd_kunneth(files, pq.as_deref()),
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Field { .. } => "field",
        Command::Volume(_) => "volume",
        Command::Search { .. } => "search",
        Command::Verify { .. } => "verify",
        Command::PiDemo { .. } => "pi-demo",
        Command::Kunneth { .. } => "kunneth",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = json!({
        "name": command_name(&cli.command),
        "args": std::env::args().skip(1).collect::<Vec<_>>(),
    });
    let (doc, code) = match dispatch(&cli.command) {
        Ok(outcome) => {
            eprintln!("{}", outcome.summary);
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            let code = match &outcome.failure {
                Some(f) => {
                    eprintln!("error: {}", f.message);
                    f.code
                }
                None => 0,
            };
            let mut doc = report::document(echo, outcome.result, &outcome.warnings);
            if let Some(f) = outcome.failure {
                doc["error"] = json!({ "exit_code": f.code, "message": f.message });
            }
            (doc, code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            let mut doc = report::document(echo, Value::Null, &[]);
            doc["error"] = json!({ "exit_code": f.code, "message": f.message });
            (doc, f.code)
        }
    };
    print!("{}", report::render(&doc));
    ExitCode::from(code)
}
