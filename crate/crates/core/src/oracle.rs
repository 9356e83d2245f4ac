//! Floating-point cross-checks that share nothing with the exact pipeline
//! beyond its final answer: midpoint Riemann sums for the one-parameter
//! volume integral and adaptive triangle quadrature for the disk example.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_traits::Zero;

use crate::algebraic::AlgebraicNumber;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{to_f64, Rational};

/// π to 30 significant digits.
pub const PI_30: &str = "3.14159265358979323846264338328";

pub fn pi() -> f64 {
    PI_30.parse().expect("valid float literal")
}

#[derive(Clone, Debug, PartialEq)]
pub struct FloatApprox {
    pub value: f64,
    pub error_bound: f64,
}

/// Doubling schedule `k_min, 2·k_min, …, k_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RiemannSchedule {
    pub k_min: u64,
    pub k_max: u64,
}

impl Default for RiemannSchedule {
    fn default() -> Self {
        RiemannSchedule { k_min: 16, k_max: 4096 }
    }
}

impl RiemannSchedule {
    pub fn new(k_min: u64, k_max: u64) -> Result<Self> {
        if k_min == 0 || k_max < k_min {
            return Err(Error::InvalidParameter(format!("invalid schedule k = {k_min}..{k_max}")));
        }
        Ok(RiemannSchedule { k_min, k_max })
    }

    pub fn steps(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut k = self.k_min;
        while k <= self.k_max {
            out.push(k);
            k = match k.checked_mul(2) {
                Some(next) => next,
                None => break,
            };
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct OracleEntry {
    pub k: u64,
    /// The exact Riemann sum.
    pub sum: Rational,
    pub approximation: f64,
    pub residual: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub entries: Vec<OracleEntry>,
    /// Decimal rendering of the exact value the residuals refer to.
    pub exact_reference: Option<String>,
}

impl OracleReport {
    pub fn residuals(&self) -> Vec<f64> {
        self.entries.iter().filter_map(|e| e.residual).collect()
    }
}

/// Midpoint sums `S_k = (2t0/k)·Σ f(t_j)`, `t_j = −t0 + 2t0(j+½)/k`, of
/// `f(t) = m(t)` for `t > β` and `0` otherwise. `beta = None` integrates
/// over the whole range `[−t0, t0]`. Comparisons with `β` are exact, so
/// each `S_k` is an exact rational.
pub fn riemann_volume_r1(
    m: &Polynomial,
    beta: Option<&AlgebraicNumber>,
    t0: u64,
    schedule: RiemannSchedule,
    exact: Option<&AlgebraicNumber>,
) -> Result<OracleReport> {
    if t0 == 0 {
        return Err(Error::InvalidT0(t0));
    }
    let t0q = Rational::from_integer(t0.into());
    if let Some(b) = beta {
        if b.min_poly() != &m.primitive() {
            return Err(Error::InvalidParameter(format!("threshold is a root of {}, not of {m}", b.min_poly())));
        }
        if b.cmp_rational(&t0q) != Ordering::Less {
            return Err(Error::InvalidT0(t0));
        }
    }
    let exact_f64 = exact.map(|v| v.to_f64());
    let mut entries = Vec::new();
    for k in schedule.steps() {
        let h = Rational::new((2 * t0).into(), k.into());
        let mut total = Rational::zero();
        for j in 0..k {
            let t = -&t0q + &h * Rational::new((2 * j + 1).into(), 2.into());
            let active = beta.is_none_or(|b| b.cmp_rational(&t) == Ordering::Less);
            if active {
                total += m.eval(&t);
            }
        }
        let sum = total * &h;
        let approximation = to_f64(&sum);
        let residual = exact_f64.map(|v| (approximation - v).abs());
        entries.push(OracleEntry { k, sum, approximation, residual });
    }
    Ok(OracleReport { entries, exact_reference: exact.map(|v| v.decimal(12)) })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceSummary {
    /// First index from which residuals never increase.
    pub tail_start: usize,
    pub non_increasing_tail: bool,
    pub final_residual: f64,
    pub threshold: f64,
    /// Mean of `log2(r_i / r_{i+1})` over the tail.
    pub empirical_order: Option<f64>,
    pub passed: bool,
}

/// Checks that residuals settle into a non-increasing tail of at least
/// three entries and end below `threshold`.
pub fn convergence_report(report: &OracleReport, threshold: f64) -> Result<ConvergenceSummary> {
    let r = report.residuals();
    if r.len() < 3 {
        return Err(Error::InvalidParameter("convergence check needs at least three residuals".into()));
    }
    let mut tail_start = r.len() - 1;
    while tail_start > 0 && r[tail_start - 1] >= r[tail_start] {
        tail_start -= 1;
    }
    let non_increasing_tail = r.len() - tail_start >= 3;
    let orders: Vec<f64> =
        r[tail_start..].windows(2).filter(|w| w[0] > 0.0 && w[1] > 0.0).map(|w| (w[0] / w[1]).log2()).collect();
    let empirical_order = (!orders.is_empty()).then(|| orders.iter().sum::<f64>() / orders.len() as f64);
    let final_residual = *r.last().expect("nonempty");
    Ok(ConvergenceSummary {
        tail_start,
        non_increasing_tail,
        final_residual,
        threshold,
        empirical_order,
        passed: non_increasing_tail && final_residual < threshold,
    })
}

/// Decimal rendering of `a` to `digits` places.
pub fn numeric_value(a: &AlgebraicNumber, digits: usize) -> String {
    a.decimal(digits)
}

type Point = (f64, f64);

#[derive(Clone, Copy, Debug)]
struct Triangle([Point; 3]);

impl Triangle {
    fn area(&self) -> f64 {
        let [a, b, c] = self.0;
        0.5 * ((b.0 - a.0) * (c.1 - a.1) - (c.0 - a.0) * (b.1 - a.1)).abs()
    }

    fn at(&self, u: f64, v: f64) -> Point {
        let [a, b, c] = self.0;
        (a.0 + u * (b.0 - a.0) + v * (c.0 - a.0), a.1 + u * (b.1 - a.1) + v * (c.1 - a.1))
    }

    fn children(&self) -> [Triangle; 4] {
        let [a, b, c] = self.0;
        let mid = |p: Point, q: Point| ((p.0 + q.0) / 2.0, (p.1 + q.1) / 2.0);
        let (ab, bc, ca) = (mid(a, b), mid(b, c), mid(c, a));
        [Triangle([a, ab, ca]), Triangle([ab, b, bc]), Triangle([ca, bc, c]), Triangle([ab, bc, ca])]
    }
}

/// Seven-point degree-5 rule on a triangle (barycentric weights sum to 1).
fn radon7<F: Fn(f64, f64) -> f64>(t: &Triangle, f: &F) -> f64 {
    let s15 = 15f64.sqrt();
    let a = (6.0 - s15) / 21.0;
    let b = (6.0 + s15) / 21.0;
    let wa = (155.0 - s15) / 1200.0;
    let wb = (155.0 + s15) / 1200.0;
    let eval = |u: f64, v: f64| {
        let p = t.at(u, v);
        f(p.0, p.1)
    };
    let centre = 9.0 / 40.0 * eval(1.0 / 3.0, 1.0 / 3.0);
    let sa = eval(a, a) + eval(1.0 - 2.0 * a, a) + eval(a, 1.0 - 2.0 * a);
    let sb = eval(b, b) + eval(1.0 - 2.0 * b, b) + eval(b, 1.0 - 2.0 * b);
    t.area() * (centre + wa * sa + wb * sb)
}

struct Cell {
    id: u64,
    tri: Triangle,
    value: f64,
    error: f64,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Cell {}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then_with(|| other.id.cmp(&self.id))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureResult {
    pub approx: FloatApprox,
    pub cells: usize,
    pub converged: bool,
}

/// Default cap on the number of cells.
pub const MAX_CELLS: usize = 4_000_000;

/// Globally adaptive quadrature over a union of triangles: the cell with
/// the largest error estimate `|Q(T) − Σ Q(children)|` is split until the
/// total estimate drops below `tol` or `max_cells` is reached.
pub fn adaptive_triangles<F>(domain: &[[Point; 3]], f: F, tol: f64, max_cells: usize) -> QuadratureResult
where
    F: Fn(f64, f64) -> f64,
{
    let mut next_id = 0u64;
    let mut make = |tri: Triangle, coarse: f64| {
        let fine: f64 = tri.children().iter().map(|c| radon7(c, &f)).sum();
        let cell = Cell { id: next_id, tri, value: fine, error: (fine - coarse).abs() };
        next_id += 1;
        cell
    };
    let mut heap = BinaryHeap::new();
    for corners in domain {
        let tri = Triangle(*corners);
        let coarse = radon7(&tri, &f);
        heap.push(make(tri, coarse));
    }
    let mut total_error: f64 = heap.iter().map(|c| c.error).sum();
    while total_error > tol && heap.len() < max_cells {
        let worst = heap.pop().expect("nonempty heap");
        total_error -= worst.error;
        for child in worst.tri.children() {
            let coarse = radon7(&child, &f);
            let cell = make(child, coarse);
            total_error += cell.error;
            heap.push(cell);
        }
        if total_error < 0.0 {
            total_error = heap.iter().map(|c| c.error).sum();
        }
    }
    let mut cells = heap.into_vec();
    cells.sort_by_key(|c| c.id);
    let value = cells.iter().map(|c| c.value).sum();
    let error_bound: f64 = cells.iter().map(|c| c.error).sum();
    QuadratureResult { approx: FloatApprox { value, error_bound }, cells: cells.len(), converged: error_bound <= tol }
}

/// Barycentric-to-plane map of the simplex classes `M0 = A − 2D1 − 2D2`,
/// `M1 = A + 2D1 − 2D2`, `M2 = A + 4D1`: the class `Σ λ_i M_i` equals
/// `A + x·D1 + y·D2`.
pub fn simplex_to_plane(l1: f64, l2: f64) -> (f64, f64) {
    let l0 = 1.0 - l1 - l2;
    (-2.0 * l0 + 2.0 * l1 + 4.0 * l2, -2.0 * l0 - 2.0 * l1)
}

/// Volume function `N·max(0, 1 − x² − y²)` of `A + x·D1 + y·D2` on a surface
/// with `A² = −D1² = −D2² = N` and all mixed products zero.
pub fn surface_volume(n: u64, x: f64, y: f64) -> f64 {
    n as f64 * (1.0 - x * x - y * y).max(0.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PiDemoReport {
    pub n: u64,
    pub tolerance: f64,
    /// `12·∫_Δ vol(λ0 M0 + λ1 M1 + λ2 M2) dλ1 dλ2` over the standard simplex.
    pub simplex: QuadratureResult,
    pub simplex_over_3n: f64,
    pub simplex_residual: f64,
    /// `6N·∫_{x²+y²≤1} (1 − x² − y²)`, integrated in polar coordinates.
    pub disk: QuadratureResult,
    pub disk_over_3n: f64,
    pub disk_residual: f64,
    pub pi_reference: String,
}

pub fn pi_demo(n: u64, tol: f64) -> Result<PiDemoReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let simplex_domain = [[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]];
    let simplex = adaptive_triangles(
        &simplex_domain,
        |l1, l2| {
            let (x, y) = simplex_to_plane(l1, l2);
            12.0 * surface_volume(n, x, y)
        },
        tol,
        MAX_CELLS,
    );
    let two_pi = 2.0 * pi();
    let polar = [[(0.0, 0.0), (1.0, 0.0), (1.0, two_pi)], [(0.0, 0.0), (1.0, two_pi), (0.0, two_pi)]];
    let disk = adaptive_triangles(&polar, |r, _theta| 6.0 * surface_volume(n, r, 0.0) * r, tol, MAX_CELLS);
    let three_n = 3.0 * n as f64;
    let simplex_over_3n = simplex.approx.value / three_n;
    let disk_over_3n = disk.approx.value / three_n;
    Ok(PiDemoReport {
        n,
        tolerance: tol,
        simplex_residual: (simplex_over_3n - pi()).abs(),
        simplex_over_3n,
        simplex,
        disk_residual: (disk_over_3n - pi()).abs(),
        disk_over_3n,
        disk,
        pi_reference: PI_30.to_string(),
    })
}
