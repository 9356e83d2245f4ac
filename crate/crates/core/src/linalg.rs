//! Small dense linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Incremental row-echelon basis that records, for each stored row, the
/// combination of input vectors that produced it.
#[derive(Debug, Default)]
pub struct DependenceFinder {
    rows: Vec<(usize, Vec<Rational>, Vec<Rational>)>,
    pushed: usize,
}

impl DependenceFinder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds the next vector. Returns `Some(c)` with `c.len() == k + 1`,
    /// `c[k] = 1` and `Σ c_i v_i = 0` when the `k`-th vector (0-based) lies
    /// in the span of its predecessors.
    pub fn push(&mut self, v: Vec<Rational>) -> Option<Vec<Rational>> {
        let k = self.pushed;
        self.pushed += 1;
        let mut vec = v;
        let mut comb = vec![Rational::zero(); k + 1];
        comb[k] = Rational::one();
        for (pivot, row, rcomb) in &self.rows {
            let f = vec[*pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (x, r) in vec.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
            for (c, r) in comb.iter_mut().zip(rcomb) {
                if !r.is_zero() {
                    *c -= &f * r;
                }
            }
        }
        match vec.iter().position(|x| !x.is_zero()) {
            None => Some(comb),
            Some(pivot) => {
                let inv = vec[pivot].recip();
                vec.iter_mut().for_each(|x| *x *= &inv);
                comb.iter_mut().for_each(|x| *x *= &inv);
                self.rows.push((pivot, vec, comb));
                None
            }
        }
    }
}

/// Coefficients of the first linear dependence `v_k = -Σ_{i<k} c_i v_i`
/// in the sequence, normalised with `c_k = 1`. `None` if the iterator ends
/// before any dependence appears.
pub fn first_linear_dependence<I>(vectors: I) -> Option<Vec<Rational>>
where
    I: IntoIterator<Item = Vec<Rational>>,
{
    let mut finder = DependenceFinder::new();
    vectors.into_iter().find_map(|v| finder.push(v))
}

/// Determinant by Gaussian elimination with exact pivoting.
pub fn determinant(matrix: &[Vec<Rational>]) -> Rational {
    let n = matrix.len();
    let mut m: Vec<Vec<Rational>> = matrix.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot = &top[col];
        for row in rest {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &p;
            for (x, v) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x -= &f * v;
            }
        }
    }
    det
}
