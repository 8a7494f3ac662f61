//! Dense matrices over ℚ(i) with fraction-free elimination.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

/// Row echelon form produced by Bareiss elimination, kept for kernel and
/// solve computations.
struct Echelon {
    m: ExactMatrix,
    pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<ExactScalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![ExactScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ExactScalar::one();
        }
        m
    }

    /// Builds from row vectors; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend(r);
        }
        Ok(ExactMatrix { rows: n, cols, data })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| ExactScalar::from_int(x)).collect()).collect())
    }

    /// Builds a matrix whose j-th column is `cols[j]`.
    pub fn from_columns(rows: usize, cols: &[Vec<ExactScalar>]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, got: c.len() });
            }
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[ExactScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<ExactScalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ExactScalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: rhs.rows });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, got: rhs.rows * rhs.cols });
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Each row multiplied by the lcm of its denominators, so all entries
    /// are Gaussian integers.
    fn integral_rows(&self) -> Self {
        let mut m = self.clone();
        for i in 0..m.rows {
            let l = m.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_lcm()));
            if !l.is_one() {
                let s = ExactScalar::from_bigint(l);
                for j in 0..m.cols {
                    m[(i, j)] = &m[(i, j)] * &s;
                }
            }
        }
        m
    }

    /// Bareiss elimination over ℤ[i]. Every division is exact, so entries
    /// stay Gaussian integers and grow only like minors of the input.
    fn bareiss(&self) -> Echelon {
        let mut m = self.integral_rows();
        let mut pivots = Vec::new();
        let mut prev = ExactScalar::one();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let piv = m[(r, c)].clone();
            let prev_inv = prev.inv().expect("Bareiss divisor is a nonzero pivot");
            for i in r + 1..m.rows {
                let f = m[(i, c)].clone();
                for j in c + 1..m.cols {
                    let v = &(&(&piv * &m[(i, j)]) - &(&f * &m[(r, j)])) * &prev_inv;
                    m[(i, j)] = v;
                }
                m[(i, c)] = ExactScalar::zero();
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        Echelon { m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.bareiss().pivots.len()
    }

    /// Rank and a kernel basis (one vector per non-pivot column, with a 1 in
    /// that column and 0 in the other free columns).
    pub fn rank_and_kernel(&self) -> (usize, Vec<Vec<ExactScalar>>) {
        let e = self.bareiss();
        let rank = e.pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        let kernel = free
            .iter()
            .map(|&f| {
                let mut v = vec![ExactScalar::zero(); self.cols];
                v[f] = ExactScalar::one();
                for (r, &p) in e.pivots.iter().enumerate().rev() {
                    let s: ExactScalar = (p + 1..self.cols)
                        .filter(|&j| !v[j].is_zero() && !e.m[(r, j)].is_zero())
                        .map(|j| &e.m[(r, j)] * &v[j])
                        .sum();
                    v[p] = -&(&s / &e.m[(r, p)]);
                }
                v
            })
            .collect();
        (rank, kernel)
    }

    pub fn kernel(&self) -> Vec<Vec<ExactScalar>> {
        self.rank_and_kernel().1
    }

    /// Inverse by Gauss–Jordan elimination; `None` if singular or not square.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&i| !a[(i, c)].is_zero())?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let pinv = a[(c, c)].inv()?;
            for j in 0..n {
                a[(c, j)] = &a[(c, j)] * &pinv;
                inv[(c, j)] = &inv[(c, j)] * &pinv;
            }
            for i in (0..n).filter(|&i| i != c) {
                let f = a[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let da = &f * &a[(c, j)];
                    let di = &f * &inv[(c, j)];
                    a[(i, j)] -= &da;
                    inv[(i, j)] -= &di;
                }
            }
        }
        Some(inv)
    }

    /// Some solution `x` of `self · x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = -&b[i];
        }
        // A kernel vector of [A | −b] with last coordinate 1 solves A x = b.
        let (_, ker) = aug.rank_and_kernel();
        let v = ker.into_iter().find(|v| !v[self.cols].is_zero())?;
        let t = v[self.cols].inv()?;
        Some(v[..self.cols].iter().map(|x| x * &t).collect())
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = ExactScalar;
    fn index(&self, (i, j): (usize, usize)) -> &ExactScalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ExactScalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_mul(rhs).expect("matrix dimensions agree")
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;
    use itertools::Itertools;

    fn s(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    /// Leibniz determinant, independent of the elimination code.
    fn leibniz(m: &ExactMatrix, rows: &[usize], cols: &[usize]) -> ExactScalar {
        let k = rows.len();
        (0..k)
            .permutations(k)
            .map(|p| {
                let inversions = (0..k).tuple_combinations().filter(|&(a, b)| p[a] > p[b]).count();
                let prod = (0..k).fold(ExactScalar::one(), |acc, i| &acc * &m[(rows[i], cols[p[i]])]);
                if inversions % 2 == 0 { prod } else { -prod }
            })
            .sum()
    }

    /// Largest k ≤ `max_k` with a nonzero k×k minor.
    fn minor_rank(m: &ExactMatrix, max_k: usize) -> usize {
        let mut best = 0;
        for k in 1..=max_k.min(m.rows()).min(m.cols()) {
            let found = (0..m.rows())
                .combinations(k)
                .any(|r| (0..m.cols()).combinations(k).any(|c| !leibniz(m, &r, &c).is_zero()));
            if !found {
                break;
            }
            best = k;
        }
        best
    }

    fn random_matrix(smp: &mut Sampler, rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix::new(rows, cols, (0..rows * cols).map(|_| smp.scalar()).collect()).unwrap()
    }

    fn check_kernel(m: &ExactMatrix) {
        let (rank, ker) = m.rank_and_kernel();
        assert_eq!(rank + ker.len(), m.cols());
        for v in &ker {
            assert!(m.mul_vec(v).unwrap().iter().all(ExactScalar::is_zero));
        }
        if !ker.is_empty() {
            assert_eq!(ExactMatrix::from_columns(m.cols(), &ker).unwrap().rank(), ker.len());
        }
    }

    #[test]
    fn small_examples() {
        assert_eq!(ExactMatrix::identity(2).rank_and_kernel(), (2, vec![]));
        let m = ExactMatrix::from_ints(&[&[1, 1], &[2, 2]]).unwrap();
        assert_eq!(m.rank_and_kernel(), (1, vec![vec![s(-1), s(1)]]));
        assert_eq!(ExactMatrix::zeros(0, 0).rank_and_kernel(), (0, vec![]));
        assert_eq!(ExactMatrix::zeros(0, 2).rank_and_kernel().1.len(), 2);
    }

    #[test]
    fn rank_matches_minor_oracle_on_small_random() {
        let mut smp = Sampler::new(11, 5);
        for trial in 0..40 {
            let (r, c) = (2 + trial % 5, 2 + (trial / 5) % 5);
            let mut m = random_matrix(&mut smp, r, c);
            if trial % 3 == 0 && r > 1 {
                // force a dependent row
                for j in 0..c {
                    m[(r - 1, j)] = &(&m[(0, j)] * &s(2)) - &m[(1 % r, j)];
                }
            }
            assert_eq!(m.rank(), minor_rank(&m, 6), "{m:?}");
            check_kernel(&m);
        }
    }

    #[test]
    fn low_rank_ten_by_ten_against_minor_oracle() {
        let mut smp = Sampler::new(12, 3);
        for k in 1..=3 {
            let a = random_matrix(&mut smp, 10, k);
            let b = random_matrix(&mut smp, k, 10);
            let m = &a * &b;
            assert_eq!(m.rank(), k);
            assert_eq!(minor_rank(&m, 4), k);
            check_kernel(&m);
        }
        let full = random_matrix(&mut smp, 10, 10);
        assert_eq!(minor_rank(&full, 4), 4);
        assert_eq!(full.rank(), 10);
    }

    #[test]
    fn inverse_and_solve() {
        let mut smp = Sampler::with_seed(13);
        let m = random_matrix(&mut smp, 5, 5);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, ExactMatrix::identity(5));
        let b: Vec<ExactScalar> = (0..5).map(|_| smp.scalar()).collect();
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), b);
        let sing = ExactMatrix::from_ints(&[&[1, 2], &[2, 4]]).unwrap();
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&[s(1), s(0)]).is_none());
        assert_eq!(sing.solve(&[s(1), s(2)]).map(|x| sing.mul_vec(&x).unwrap()), Some(vec![s(1), s(2)]));
    }
}
