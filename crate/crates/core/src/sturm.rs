//! Real-root counting with Sturm sequences, root isolation by bisection
//! from the Cauchy bound, and refinement of isolating intervals.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::poly::Polynomial;
use crate::rational::{rat, to_fraction_string, Rational};

/// Signed remainder chain `[s, s', -rem(s, s'), ...]` of the squarefree
/// part `s` of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain {
    chain: Vec<Polynomial>,
}

fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Divides out the absolute rational content; signs at every point are
/// unchanged, so Sturm counts are too.
fn shrink(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let (content, _) = p.integer_primitive();
    p.scale(&(Rational::one() / content.abs()))
}

/// `1 + max |a_i / a_n|`; every complex root lies strictly inside.
pub fn cauchy_bound(p: &Polynomial) -> Rational {
    let lc = p.leading().abs();
    let max = p.coeffs()[..p.deg()].iter().map(|c| c.abs() / &lc).max().unwrap_or_else(Rational::zero);
    max + rat(1, 1)
}

impl SturmChain {
    pub fn new(p: &Polynomial) -> Result<Self> {
        let s = p.squarefree_part()?;
        let mut chain = vec![s.clone()];
        if s.deg() > 0 {
            let mut a = s;
            let mut b = a.derivative();
            while !b.is_zero() {
                chain.push(b.clone());
                let r = a.rem(&b)?;
                a = b;
                b = -shrink(&r);
            }
        }
        Ok(SturmChain { chain })
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.chain
    }

    /// The squarefree polynomial the chain counts roots of.
    pub fn base(&self) -> &Polynomial {
        &self.chain[0]
    }

    pub fn variations_at(&self, t: &Rational) -> usize {
        variations(self.chain.iter().map(|p| sign(&p.eval(t))))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        variations(self.chain.iter().map(|p| sign(&p.leading())))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        variations(self.chain.iter().map(|p| {
            let s = sign(&p.leading());
            if p.deg() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations_at(a) - self.variations_at(b)
    }

    /// Distinct real roots in the closed interval.
    pub fn count_closed(&self, iv: &Interval) -> usize {
        let at_lo = usize::from(self.is_root(&iv.lo));
        if iv.lo == iv.hi {
            return at_lo;
        }
        self.count_half_open(&iv.lo, &iv.hi) + at_lo
    }

    /// Distinct real roots in `(t, ∞)`.
    pub fn count_above(&self, t: &Rational) -> usize {
        self.variations_at(t) - self.variations_at_pos_inf()
    }

    /// Distinct real roots in `(-∞, t)`.
    pub fn count_below(&self, t: &Rational) -> usize {
        self.variations_at_neg_inf() - self.variations_at(t) - usize::from(self.is_root(t))
    }

    pub fn total_real_roots(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }

    pub fn is_root(&self, t: &Rational) -> bool {
        self.base().eval(t).is_zero()
    }

    /// A point strictly inside `(a, b)` that is not a root, close to the
    /// midpoint. At most `deg` candidates can be roots.
    fn split_point(&self, a: &Rational, b: &Rational) -> Rational {
        let w = b - a;
        let mut offsets = vec![rat(1, 2)];
        for j in 1..=self.base().deg() as i64 + 1 {
            let step = rat(j, 4 * (self.base().deg() as i64 + 2));
            offsets.push(rat(1, 2) + &step);
            offsets.push(rat(1, 2) - step);
        }
        offsets
            .into_iter()
            .map(|o| a + &w * o)
            .find(|m| !self.is_root(m))
            .expect("a polynomial of degree n has at most n roots")
    }

    /// One isolating interval per distinct real root, sorted ascending,
    /// pairwise disjoint, endpoints never roots.
    pub fn isolate(&self) -> Vec<Interval> {
        let base = self.base();
        if base.deg() == 0 {
            return Vec::new();
        }
        let b = cauchy_bound(base);
        let mut out = Vec::new();
        self.isolate_rec(-b.clone(), b, &mut out);
        for i in 1..out.len() {
            while out[i - 1].hi == out[i].lo {
                out[i - 1] = self.bisect_open(&out[i - 1]);
                if out[i - 1].hi == out[i].lo {
                    out[i] = self.bisect_open(&out[i]);
                }
            }
        }
        out
    }

    fn isolate_rec(&self, a: Rational, b: Rational, out: &mut Vec<Interval>) {
        match self.count_half_open(&a, &b) {
            0 => {}
            1 => out.push(Interval::new(a, b)),
            _ => {
                let m = self.split_point(&a, &b);
                self.isolate_rec(a, m.clone(), out);
                self.isolate_rec(m, b, out);
            }
        }
    }

    /// One bisection step on an interval with non-root endpoints holding
    /// exactly one root.
    fn bisect_open(&self, iv: &Interval) -> Interval {
        let m = self.split_point(&iv.lo, &iv.hi);
        if self.count_half_open(&iv.lo, &m) == 1 {
            Interval::new(iv.lo.clone(), m)
        } else {
            Interval::new(m, iv.hi.clone())
        }
    }

    /// Shrinks an isolating interval to width at most `width`. A rational
    /// root hit exactly by a bisection point is returned as a point interval.
    pub fn refine(&self, iv: &Interval, width: &Rational) -> Result<Interval> {
        let count = self.count_closed(iv);
        if count != 1 {
            return Err(Error::NotIsolating { lo: to_fraction_string(&iv.lo), hi: to_fraction_string(&iv.hi), count });
        }
        if self.is_root(&iv.lo) {
            return Ok(Interval::point(iv.lo.clone()));
        }
        if self.is_root(&iv.hi) {
            return Ok(Interval::point(iv.hi.clone()));
        }
        let mut cur = iv.clone();
        while &cur.width() > width {
            let m = cur.midpoint();
            if self.is_root(&m) {
                return Ok(Interval::point(m));
            }
            cur = if self.count_half_open(&cur.lo, &m) == 1 {
                Interval::new(cur.lo, m)
            } else {
                Interval::new(m, cur.hi)
            };
        }
        Ok(cur)
    }

    /// Halves an isolating interval once (or collapses it onto an exact
    /// rational root).
    pub fn bisect(&self, iv: &Interval) -> Interval {
        if iv.lo == iv.hi {
            return iv.clone();
        }
        self.refine(iv, &(iv.width() / Rational::from_integer(2.into()))).unwrap_or_else(|_| iv.clone())
    }
}

/// Isolating intervals for the distinct real roots of `p`, ascending.
pub fn isolate_real_roots(p: &Polynomial) -> Result<Vec<Interval>> {
    Ok(SturmChain::new(p)?.isolate())
}

/// Refines an isolating interval of a root of `p` to width `<= width`.
pub fn refine_root(p: &Polynomial, iv: &Interval, width: &Rational) -> Result<Interval> {
    SturmChain::new(p)?.refine(iv, width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn chain_shape() {
        let c = SturmChain::new(&p("x^2-2")).unwrap();
        assert_eq!(c.polys()[0], p("x^2-2"));
        assert_eq!(c.polys()[1], p("2*x"));
        assert_eq!(c.polys().last().unwrap().deg(), 0);
    }

    #[test]
    fn isolates_sqrt2() {
        let ivs = isolate_real_roots(&p("x^2-2")).unwrap();
        assert_eq!(ivs.len(), 2);
        assert!(Interval::new(int(-2), int(-1)).contains_interval(&ivs[0]) || ivs[0].hi < int(0));
        let r0 = refine_root(&p("x^2-2"), &ivs[0], &rat(1, 1000)).unwrap();
        let r1 = refine_root(&p("x^2-2"), &ivs[1], &rat(1, 1000)).unwrap();
        assert!(Interval::new(int(-2), int(-1)).contains_interval(&r0));
        assert!(Interval::new(int(1), int(2)).contains_interval(&r1));
    }

    #[test]
    fn heptagon_polynomial_is_totally_real() {
        let q = p("x^3+x^2-2*x-1");
        let ivs = isolate_real_roots(&q).unwrap();
        assert_eq!(ivs.len(), 3);
        for w in ivs.windows(2) {
            assert!(w[0].hi < w[1].lo);
        }
        assert_eq!(SturmChain::new(&q).unwrap().total_real_roots(), 3);
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&p("x^2+1")).unwrap().is_empty());
    }

    #[test]
    fn refine_examples() {
        let w = rat(1, 1_000_000);
        let iv = refine_root(&p("x^2-2"), &Interval::new(int(1), int(2)), &w).unwrap();
        assert!(iv.width() <= w);
        assert!(iv.lo < rat(1414214, 1_000_000) && iv.hi > rat(1414213, 1_000_000));
        let iv = refine_root(&p("x-3"), &Interval::new(int(0), int(5)), &w).unwrap();
        assert!(iv.contains(&int(3)) && iv.width() <= w);
        assert!(matches!(
            refine_root(&p("x^2-2"), &Interval::new(int(3), int(4)), &w),
            Err(Error::NotIsolating { count: 0, .. })
        ));
    }

    #[test]
    fn rational_roots_on_bisection_points() {
        // x-3 from the Cauchy bound (-4, 4) hits 0, 2, 3 as midpoints.
        let ivs = isolate_real_roots(&p("x^3-9*x")).unwrap();
        assert_eq!(ivs.len(), 3);
        for (iv, r) in ivs.iter().zip([-3, 0, 3]) {
            assert!(iv.contains(&int(r)));
            assert!(iv.lo != int(r) || iv.lo == iv.hi);
        }
        for w in ivs.windows(2) {
            assert!(w[0].hi < w[1].lo);
        }
    }

    #[test]
    fn counts_with_multiplicity_collapsed() {
        let c = SturmChain::new(&p("x^3-x^2")).unwrap();
        assert_eq!(c.total_real_roots(), 2);
        assert_eq!(c.count_closed(&Interval::new(int(0), int(1))), 2);
        assert_eq!(c.count_closed(&Interval::point(int(1))), 1);
        assert_eq!(c.count_above(&int(0)), 1);
        assert_eq!(c.count_below(&int(1)), 1);
    }
}
