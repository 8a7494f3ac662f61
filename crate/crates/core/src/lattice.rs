//! Integer matrices and lattice algorithms: Hermite and Smith normal forms,
//! saturated kernels, lattice equality and membership.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    /// Shorthand for literal matrices; all rows must have equal length.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(cols, &owned).expect("rows of equal length")
    }

    /// Matrix whose j-th column is `cols[j]`.
    pub fn from_columns(rows: usize, cols: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, &v) in c.iter().enumerate() {
                m[(i, j)] = v.into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_i64(&self, i: usize) -> Vec<i64> {
        self.row(i).iter().map(|x| x.to_i64().expect("entry fits in i64")).collect()
    }

    pub fn column_i64(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)].to_i64().expect("entry fits in i64")).collect()
    }

    pub fn to_rows_i64(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row_i64(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
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
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += &self[(i, k)] * &rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let s: BigInt = self.row(i).iter().zip(v).map(|(a, &b)| a * b).sum();
                s.to_i64().expect("product fits in i64")
            })
            .collect()
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// `row[dst] -= q · row[src]`.
    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * q;
            self[(dst, j)] -= v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }

    /// Row-style Hermite normal form `H = U·self` with `U` unimodular.
    /// Zero rows are kept at the bottom; pivots are positive and the entries
    /// above each pivot are reduced into `[0, pivot)`.
    pub fn hermite_with_transform(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut r = 0;
        for c in 0..h.cols {
            if r == h.rows {
                break;
            }
            while let Some(p) = (r..h.rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()))
            {
                h.swap_rows(r, p);
                u.swap_rows(r, p);
                let mut done = true;
                for i in r + 1..h.rows {
                    if !h[(i, c)].is_zero() {
                        let q = h[(i, c)].div_floor(&h[(r, c)]);
                        h.sub_row_multiple(i, r, &q);
                        u.sub_row_multiple(i, r, &q);
                        done &= h[(i, c)].is_zero();
                    }
                }
                if done {
                    break;
                }
            }
            if h[(r, c)].is_zero() {
                continue;
            }
            if h[(r, c)].is_negative() {
                h.negate_row(r);
                u.negate_row(r);
            }
            for i in 0..r {
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                h.sub_row_multiple(i, r, &q);
                u.sub_row_multiple(i, r, &q);
            }
            r += 1;
        }
        (h, u)
    }

    pub fn hermite_normal_form(&self) -> IntMatrix {
        self.hermite_with_transform().0
    }

    pub fn rank(&self) -> usize {
        let h = self.hermite_normal_form();
        (0..h.rows).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).count()
    }

    /// Nonzero rows of the HNF: the canonical basis of the lattice spanned by
    /// the rows.
    pub fn row_lattice_basis(&self) -> IntMatrix {
        let h = self.hermite_normal_form();
        let keep: Vec<Vec<BigInt>> =
            (0..h.rows).map(|i| h.row(i).to_vec()).filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        IntMatrix { rows: keep.len(), cols: self.cols, data: keep.into_iter().flatten().collect() }
    }

    /// Diagonal of the Smith normal form (nonzero invariant factors, each
    /// dividing the next).
    pub fn smith_invariants(&self) -> Vec<BigInt> {
        let mut a = self.clone();
        let (m, n) = (a.rows, a.cols);
        let mut diag = Vec::new();
        for t in 0..m.min(n) {
            let Some((pi, pj)) = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[(i, j)].is_zero())
                .min_by(|&x, &y| a[x].abs().cmp(&a[y].abs()))
            else {
                break;
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            loop {
                let mut changed = false;
                for i in t + 1..m {
                    if !a[(i, t)].is_zero() {
                        let q = a[(i, t)].div_floor(&a[(t, t)]);
                        a.sub_row_multiple(i, t, &q);
                        if !a[(i, t)].is_zero() {
                            a.swap_rows(t, i);
                            changed = true;
                        }
                    }
                }
                for j in t + 1..n {
                    if !a[(t, j)].is_zero() {
                        let q = a[(t, j)].div_floor(&a[(t, t)]);
                        a.sub_col_multiple(j, t, &q);
                        if !a[(t, j)].is_zero() {
                            a.swap_cols(t, j);
                            changed = true;
                        }
                    }
                }
                if changed {
                    continue;
                }
                // The pivot must divide every remaining entry; otherwise fold
                // an offending row into row t and repeat.
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&a[(i, j)] % &a[(t, t)]).is_zero()));
                match bad {
                    Some(i) => {
                        let minus_one = BigInt::from(-1);
                        a.sub_row_multiple(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            diag.push(a[(t, t)].abs());
        }
        diag
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn sub_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * q;
            self[(i, dst)] -= v;
        }
    }

    /// A ℤ-basis of `{v ∈ ℤⁿ : self·v = 0}`, returned as the rows of a matrix
    /// in Hermite normal form. The basis comes from a unimodular transform,
    /// so the lattice it spans is saturated.
    pub fn integer_kernel(&self) -> IntMatrix {
        let (h, u) = self.transpose().hermite_with_transform();
        let zero_rows: Vec<usize> = (0..h.rows).filter(|&i| h.row(i).iter().all(Zero::is_zero)).collect();
        let basis = IntMatrix {
            rows: zero_rows.len(),
            cols: self.cols,
            data: zero_rows.iter().flat_map(|&i| u.row(i).to_vec()).collect(),
        };
        basis.row_lattice_basis()
    }

    /// True iff the rows span a saturated sublattice (all Smith invariants 1).
    pub fn is_saturated(&self) -> bool {
        self.smith_invariants().iter().all(One::is_one)
    }

    /// True iff `v` lies in the ℤ-span of the rows.
    pub fn row_span_contains(&self, v: &[i64]) -> bool {
        let extra = IntMatrix::from_rows(self.cols, &[v.to_vec()]).expect("vector length matches");
        self.row_lattice_basis() == self.vstack(&extra).row_lattice_basis()
    }

    /// Integer coefficients `c` with `c · rows = v`, if any.
    pub fn row_span_coefficients(&self, v: &[i64]) -> Option<Vec<i64>> {
        let (h, u) = self.hermite_with_transform();
        // Reduce v against the echelon rows of h, recording multiples.
        let mut rest: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let mut coeff = vec![BigInt::zero(); self.rows];
        for i in 0..h.rows {
            let Some(c) = (0..h.cols).find(|&j| !h[(i, j)].is_zero()) else { break };
            let (q, r) = rest[c].div_rem(&h[(i, c)]);
            if !r.is_zero() {
                return None;
            }
            for j in 0..h.cols {
                rest[j] -= &q * &h[(i, j)];
            }
            coeff[i] = q;
        }
        if rest.iter().any(|x| !x.is_zero()) {
            return None;
        }
        // v = coeff · h = coeff · u · self
        let out: Vec<i64> = (0..self.rows)
            .map(|k| {
                let s: BigInt = (0..self.rows).map(|i| &coeff[i] * &u[(i, k)]).sum();
                s.to_i64().expect("coefficient fits in i64")
            })
            .collect();
        Some(out)
    }
}

/// True iff the two row sets span the same lattice.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.cols == b.cols && a.row_lattice_basis() == b.row_lattice_basis()
}

/// Primitive part of an integer vector (divide by the gcd of its entries).
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_mul(rhs).expect("matrix dimensions agree")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "IntMatrix{rows:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn kernel_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
        m.integer_kernel().to_rows_i64()
    }

    /// All kernel vectors with coordinates in `[-b, b]`, by enumeration.
    fn small_kernel_vectors(m: &IntMatrix, b: i64) -> Vec<Vec<i64>> {
        (0..m.cols())
            .map(|_| -b..=b)
            .multi_cartesian_product()
            .filter(|v| m.mul_vec(v).iter().all(|&x| x == 0))
            .collect()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_rows(&IntMatrix::from_i64(&[&[1, 1]])), vec![vec![1, -1]]);
        assert_eq!(IntMatrix::zeros(2, 3).integer_kernel().rows(), 3);
        let k = kernel_rows(&IntMatrix::from_i64(&[&[2, -2]]));
        assert_eq!(k, vec![vec![1, 1]]);
    }

    #[test]
    fn saturation_against_enumeration() {
        let m = IntMatrix::from_i64(&[&[2, -2]]);
        let k = m.integer_kernel();
        for v in small_kernel_vectors(&m, 3) {
            assert!(k.row_span_contains(&v), "{v:?}");
        }
        let m = IntMatrix::from_i64(&[&[2, 4, 6], &[0, 3, 9]]);
        let k = m.integer_kernel();
        assert_eq!(k.rows(), 1);
        for v in small_kernel_vectors(&m, 4) {
            assert!(k.row_span_contains(&v), "{v:?}");
        }
        assert!(k.is_saturated());
    }

    #[test]
    fn hnf_and_smith() {
        let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let inv: Vec<i64> = m.smith_invariants().iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(inv, vec![2, 6, 12]);
        let (h, u) = m.hermite_with_transform();
        assert_eq!(&u * &m, h);
        assert_eq!(u.smith_invariants().len(), 3);
        assert!(u.is_saturated());
        assert!(same_lattice(&m, &h));
        assert!(!same_lattice(&m, &IntMatrix::identity(3)));
    }

    #[test]
    fn coefficients_reconstruct_vector() {
        let m = IntMatrix::from_i64(&[&[1, 1, 0], &[0, 2, 1]]);
        let c = m.row_span_coefficients(&[3, 7, 2]).unwrap();
        assert_eq!(c, vec![3, 2]);
        assert!(m.row_span_coefficients(&[0, 1, 0]).is_none());
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..4, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..7, c), r))
    }

    proptest! {
        #[test]
        fn kernel_is_exact_and_saturated(rows in arb_matrix()) {
            let m = IntMatrix::from_rows(rows[0].len(), &rows).unwrap();
            let k = m.integer_kernel();
            prop_assert_eq!(k.rows() + m.rank(), m.cols());
            for v in k.to_rows_i64() {
                prop_assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
            }
            if k.rows() > 0 {
                prop_assert!(k.is_saturated());
            }
        }

        #[test]
        fn hnf_transform_is_unimodular(rows in arb_matrix()) {
            let m = IntMatrix::from_rows(rows[0].len(), &rows).unwrap();
            let (h, u) = m.hermite_with_transform();
            prop_assert_eq!(&u * &m, h);
            let inv = u.smith_invariants();
            prop_assert_eq!(inv.len(), u.rows());
            prop_assert!(inv.iter().all(One::is_one));
        }
    }
}
