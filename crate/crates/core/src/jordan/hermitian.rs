//! Hermitian 3×3 matrices over a composition algebra and their Jordan
//! calculus: trace forms, determinant, comatrix, Freudenthal cross product
//! and the symmetric trilinear form.
//!
//! A matrix is stored as
//!
//! ```text
//! ⎛ r1  x̄3  x̄2 ⎞
//! ⎜ x3  r2  x̄1 ⎟
//! ⎝ x2  x1  r3 ⎠
//! ```
//!
//! and its coordinate vector is `(r1, r2, r3, x1…, x2…, x3…)`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::algebra::{AlgElement, AlgebraTag};
use crate::error::{Error, Result};
use crate::sample::Sampler;
use crate::scalar::ExactScalar;

use super::Permutation;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HermitianMatrix {
    tag: AlgebraTag,
    r: [ExactScalar; 3],
    x: [AlgElement; 3],
}

/// A general 3×3 matrix over the algebra. Only used as a workspace: results
/// are read back into [`HermitianMatrix`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgMatrix3 {
    tag: AlgebraTag,
    entries: [[AlgElement; 3]; 3],
}

impl AlgMatrix3 {
    pub fn entry(&self, i: usize, j: usize) -> &AlgElement {
        &self.entries[i][j]
    }

    /// Permutation matrix `P` with `P e_j = e_{p(j)}` (scalar entries).
    pub fn permutation(tag: AlgebraTag, p: Permutation) -> Self {
        let entries = std::array::from_fn(|i| {
            std::array::from_fn(|j| if p.apply(j) == i { AlgElement::one(tag) } else { AlgElement::zero(tag) })
        });
        AlgMatrix3 { tag, entries }
    }

    pub fn transpose(&self) -> Self {
        AlgMatrix3 { tag: self.tag, entries: std::array::from_fn(|i| std::array::from_fn(|j| self.entries[j][i].clone())) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let entries = std::array::from_fn(|i| std::array::from_fn(|j| self.entry_of_product(other, i, j)));
        AlgMatrix3 { tag: self.tag, entries }
    }

    fn entry_of_product(&self, other: &Self, i: usize, j: usize) -> AlgElement {
        let mut acc = self.entries[i][0].mul_unchecked(&other.entries[0][j]);
        for k in 1..3 {
            acc = &acc + &self.entries[i][k].mul_unchecked(&other.entries[k][j]);
        }
        acc
    }

    /// Reads the matrix back as Hermitian, checking both the diagonal and the
    /// conjugate symmetry.
    pub fn to_hermitian(&self) -> Result<HermitianMatrix> {
        let mut r: [ExactScalar; 3] = Default::default();
        for (i, ri) in r.iter_mut().enumerate() {
            let d = &self.entries[i][i];
            if !d.is_scalar() {
                return Err(Error::HermiticityBroken(format!("diagonal entry {i} is not a scalar")));
            }
            *ri = d.scalar_part().clone();
        }
        let x = [self.entries[2][1].clone(), self.entries[2][0].clone(), self.entries[1][0].clone()];
        for (i, j) in [(1, 2), (0, 2), (0, 1)] {
            if self.entries[i][j] != self.entries[j][i].conjugate() {
                return Err(Error::HermiticityBroken(format!("entry ({i},{j}) is not the conjugate of ({j},{i})")));
            }
        }
        Ok(HermitianMatrix { tag: self.tag, r, x })
    }
}

impl HermitianMatrix {
    pub fn new(tag: AlgebraTag, r: [ExactScalar; 3], x: [AlgElement; 3]) -> Result<Self> {
        for xi in &x {
            if xi.tag() != tag {
                return Err(Error::TagMismatch(tag, xi.tag()));
            }
        }
        Ok(HermitianMatrix { tag, r, x })
    }

    pub fn zero(tag: AlgebraTag) -> Self {
        Self::diag(tag, [ExactScalar::zero(), ExactScalar::zero(), ExactScalar::zero()])
    }

    pub fn identity(tag: AlgebraTag) -> Self {
        Self::diag(tag, [ExactScalar::one(), ExactScalar::one(), ExactScalar::one()])
    }

    pub fn diag(tag: AlgebraTag, r: [ExactScalar; 3]) -> Self {
        HermitianMatrix { tag, r, x: std::array::from_fn(|_| AlgElement::zero(tag)) }
    }

    pub fn diag_ints(tag: AlgebraTag, r: [i64; 3]) -> Self {
        Self::diag(tag, r.map(ExactScalar::from_int))
    }

    /// Random element whose coordinates share one denominator drawn from
    /// `[1, height]`, with Gaussian-integer numerators of height at most
    /// `height` in each part.
    pub fn random(tag: AlgebraTag, s: &mut Sampler) -> Self {
        let den = s.int(1, s.height());
        let c: Vec<ExactScalar> = (0..Self::space_dim(tag)).map(|_| s.scalar_over(den)).collect();
        Self::from_coords(tag, &c).expect("sampled coordinates have the right length")
    }

    /// Random element with trace zero.
    pub fn random_traceless(tag: AlgebraTag, s: &mut Sampler) -> Self {
        let mut a = Self::random(tag, s);
        a.r[2] = -&(&a.r[0] + &a.r[1]);
        a
    }

    /// Dimension of the ambient vector space, `3 + 3·dim 𝔸`.
    pub fn space_dim(tag: AlgebraTag) -> usize {
        3 + 3 * tag.dim()
    }

    /// The k-th canonical basis vector: `E_11, E_22, E_33`, then the
    /// off-diagonal basis elements for `x1`, `x2`, `x3`.
    pub fn basis(tag: AlgebraTag, k: usize) -> Self {
        let mut c = vec![ExactScalar::zero(); Self::space_dim(tag)];
        c[k] = ExactScalar::one();
        Self::from_coords(tag, &c).expect("basis coordinates have the right length")
    }

    pub fn from_coords(tag: AlgebraTag, c: &[ExactScalar]) -> Result<Self> {
        let d = Self::space_dim(tag);
        if c.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: c.len() });
        }
        let n = tag.dim();
        let x = std::array::from_fn(|i| AlgElement::new(tag, c[3 + i * n..3 + (i + 1) * n].to_vec()).unwrap());
        Ok(HermitianMatrix { tag, r: [c[0].clone(), c[1].clone(), c[2].clone()], x })
    }

    pub fn coords(&self) -> Vec<ExactScalar> {
        let mut out: Vec<ExactScalar> = self.r.to_vec();
        for xi in &self.x {
            out.extend(xi.coeffs().iter().cloned());
        }
        out
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn r(&self) -> &[ExactScalar; 3] {
        &self.r
    }

    pub fn x(&self) -> &[AlgElement; 3] {
        &self.x
    }

    pub fn is_zero(&self) -> bool {
        self.r.iter().all(ExactScalar::is_zero) && self.x.iter().all(AlgElement::is_zero)
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        HermitianMatrix { tag: self.tag, r: std::array::from_fn(|i| &self.r[i] * s), x: std::array::from_fn(|i| self.x[i].scale(s)) }
    }

    pub fn to_full(&self) -> AlgMatrix3 {
        let t = self.tag;
        let s = |v: &ExactScalar| AlgElement::from_scalar(t, v.clone());
        let [x1, x2, x3] = &self.x;
        AlgMatrix3 {
            tag: t,
            entries: [
                [s(&self.r[0]), x3.conjugate(), x2.conjugate()],
                [x3.clone(), s(&self.r[1]), x1.conjugate()],
                [x2.clone(), x1.clone(), s(&self.r[2])],
            ],
        }
    }

    fn check_tag(&self, other: &Self) -> Result<()> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch(self.tag, other.tag));
        }
        Ok(())
    }

    /// `A∘B = ½(AB + BA)`. Only the diagonal and the lower triangle of the
    /// symmetrized product are formed; the diagonal must land in span(1).
    pub fn jordan(&self, other: &Self) -> Result<Self> {
        self.check_tag(other)?;
        let a = self.to_full();
        let b = other.to_full();
        let half = ExactScalar::from_ratio(1, 2);
        let sym = |i: usize, j: usize| (&a.entry_of_product(&b, i, j) + &b.entry_of_product(&a, i, j)).scale(&half);
        let mut r: [ExactScalar; 3] = Default::default();
        for (i, ri) in r.iter_mut().enumerate() {
            let d = sym(i, i);
            if !d.is_scalar() {
                return Err(Error::HermiticityBroken(format!("diagonal entry {i} of A∘B is not a scalar")));
            }
            *ri = d.scalar_part().clone();
        }
        Ok(HermitianMatrix { tag: self.tag, r, x: [sym(2, 1), sym(2, 0), sym(1, 0)] })
    }

    /// `tr(A∘B) = Σ r_i s_i + Σ (x_i ȳ_i + y_i x̄_i)`. The Cayley–Dickson basis
    /// is orthonormal for the norm, so the second sum is `2 Σ` of coordinate
    /// products.
    pub fn trace_form(&self, other: &Self) -> ExactScalar {
        let two = ExactScalar::from_int(2);
        let mut acc: ExactScalar = (0..3).map(|i| &self.r[i] * &other.r[i]).sum();
        for i in 0..3 {
            let dot: ExactScalar = self.x[i]
                .coeffs()
                .iter()
                .zip(other.x[i].coeffs())
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a * b)
                .sum();
            acc += &(&two * &dot);
        }
        acc
    }

    /// `A∘A`.
    pub fn square(&self) -> Self {
        self.jordan(self).expect("Jordan square of a Hermitian matrix")
    }

    pub fn trace(&self) -> ExactScalar {
        &(&self.r[0] + &self.r[1]) + &self.r[2]
    }

    /// `tr(A²) = Σ (r_i² + 2 x_i x̄_i)`.
    pub fn trace_sq(&self) -> ExactScalar {
        let two = ExactScalar::from_int(2);
        (0..3).map(|i| &(&self.r[i] * &self.r[i]) + &(&two * &self.norm_of(i))).sum()
    }

    fn norm_of(&self, i: usize) -> ExactScalar {
        self.x[i].norm().expect("composition algebra norm is scalar")
    }

    /// The six-term cyclic sum `x1x3x̄2 + x̄2x1x3 + x3x̄2x1 + x2x̄3x̄1 + x̄3x̄1x2 + x̄1x2x̄3`.
    ///
    /// The terms pair up into conjugates, so the sum is a scalar; for 𝕆_ℂ the
    /// individual products depend on parenthesization only through their
    /// imaginary parts, which cancel. We therefore add the scalar parts of the
    /// left-parenthesized products.
    pub fn cyclic_triple_sum(&self) -> ExactScalar {
        let [x1, x2, x3] = &self.x;
        let (c1, c2, c3) = (x1.conjugate(), x2.conjugate(), x3.conjugate());
        let triples: [[&AlgElement; 3]; 6] = [
            [x1, x3, &c2],
            [&c2, x1, x3],
            [x3, &c2, x1],
            [x2, &c3, &c1],
            [&c3, &c1, x2],
            [&c1, x2, &c3],
        ];
        triples
            .iter()
            .map(|[a, b, c]| a.mul_unchecked(b).mul_unchecked(c).scalar_part().clone())
            .sum()
    }

    /// `tr(A³) = Σ_i (r_i³ + 3 Σ_{j≠i} r_i x_j x̄_j) + (cyclic triple sum)`.
    pub fn trace_cube(&self) -> ExactScalar {
        let three = ExactScalar::from_int(3);
        let mut acc = self.cyclic_triple_sum();
        for i in 0..3 {
            acc += &self.r[i].pow(3);
            for j in (0..3).filter(|&j| j != i) {
                acc += &(&three * &(&self.r[i] * &self.norm_of(j)));
            }
        }
        acc
    }

    /// The expanded determinant
    /// `r1r2r3 − r1 x1x̄1 − r2 x2x̄2 − r3 x3x̄3 + ⅓(cyclic triple sum)`.
    pub fn determinant(&self) -> ExactScalar {
        let [r1, r2, r3] = &self.r;
        let mut d = &(r1 * r2) * r3;
        for i in 0..3 {
            d -= &(&self.r[i] * &self.norm_of(i));
        }
        d += &(&self.cyclic_triple_sum() * &ExactScalar::from_ratio(1, 3));
        d
    }

    /// `⅓tr(A³) − ½tr(A)tr(A²) + ⅙(tr A)³`, from the closed trace formulas.
    pub fn determinant_from_traces(&self) -> ExactScalar {
        let t = self.trace();
        let a = &self.trace_cube() * &ExactScalar::from_ratio(1, 3);
        let b = &(&t * &self.trace_sq()) * &ExactScalar::from_ratio(1, 2);
        let c = &t.pow(3) * &ExactScalar::from_ratio(1, 6);
        &(&a - &b) + &c
    }

    /// `com(A) = A² − tr(A)A + ½((tr A)² − tr(A²)) Id`.
    pub fn comatrix(&self) -> Self {
        let t = self.trace();
        let c = &(&(&t * &t) - &self.trace_sq()) * &ExactScalar::from_ratio(1, 2);
        &(&self.square() - &self.scale(&t)) + &Self::identity(self.tag).scale(&c)
    }

    /// `A×B = ½(2A∘B − tr(A)B − tr(B)A + (tr(A)tr(B) − tr(A∘B)) Id)`.
    pub fn cross(&self, other: &Self) -> Result<Self> {
        let ab = self.jordan(other)?;
        let (ta, tb) = (self.trace(), other.trace());
        let c = &(&ta * &tb) - &ab.trace();
        let two_ab = ab.scale(&ExactScalar::from_int(2));
        let sum = &(&(&two_ab - &other.scale(&ta)) - &self.scale(&tb)) + &Self::identity(self.tag).scale(&c);
        Ok(sum.scale(&ExactScalar::from_ratio(1, 2)))
    }

    /// `(A, B, C) = tr(A∘(B×C))`.
    pub fn triple(&self, b: &Self, c: &Self) -> Result<ExactScalar> {
        Ok(self.jordan(&b.cross(c)?)?.trace())
    }

    /// `A ↦ Pᵀ A P` with `P e_j = e_{p(j)}`; entrywise this is
    /// `(i, j) ↦ A(p(i), p(j))`, so `diag(r1, r2, r3) ↦ diag(r_p(1), r_p(2), r_p(3))`.
    ///
    /// `p` is decomposed into the stored transpositions `(12)`, `(23)` and the
    /// product of their permutation matrices is applied, rightmost factor of
    /// the word acting first on indices.
    pub fn sigma_action(&self, p: Permutation) -> Self {
        let mut m = AlgMatrix3::permutation(self.tag, Permutation::identity());
        for t in p.transposition_word() {
            m = m.mul(&AlgMatrix3::permutation(self.tag, t));
        }
        let full = m.transpose().mul(&self.to_full()).mul(&m);
        full.to_hermitian().expect("permutation conjugation preserves hermiticity")
    }

    /// Direct index form of [`Self::sigma_action`], used as an independent check.
    pub fn permute_indices(&self, p: Permutation) -> Self {
        let full = self.to_full();
        let entries = std::array::from_fn(|i| std::array::from_fn(|j| full.entry(p.apply(i), p.apply(j)).clone()));
        AlgMatrix3 { tag: self.tag, entries }.to_hermitian().expect("index permutation preserves hermiticity")
    }
}

impl Add for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn add(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(self.tag, rhs.tag, "algebra tag mismatch");
        HermitianMatrix {
            tag: self.tag,
            r: std::array::from_fn(|i| &self.r[i] + &rhs.r[i]),
            x: std::array::from_fn(|i| &self.x[i] + &rhs.x[i]),
        }
    }
}

impl Sub for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn sub(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(self.tag, rhs.tag, "algebra tag mismatch");
        HermitianMatrix {
            tag: self.tag,
            r: std::array::from_fn(|i| &self.r[i] - &rhs.r[i]),
            x: std::array::from_fn(|i| &self.x[i] - &rhs.x[i]),
        }
    }
}

impl Neg for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn neg(self) -> HermitianMatrix {
        self.scale(&ExactScalar::from_int(-1))
    }
}

impl fmt::Debug for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HermitianMatrix").field("tag", &self.tag).field("r", &self.r).field("x", &self.x).finish()
    }
}
