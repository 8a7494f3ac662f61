//! The four complex composition algebras ℂ, ℂ⊕ℂ, ℍ_ℂ and 𝕆_ℂ.
//!
//! All four are produced by Cayley–Dickson doubling over the base field with
//! doubling parameter −1 at every level. An element of level `n` is a pair
//! `(a, b)` of level `n − 1` elements, stored as the concatenation of their
//! coordinate vectors, with
//!
//! ```text
//! (a, b)(c, d) = (ac − d̄b, da + bc̄),     conj(a, b) = (ā, −b).
//! ```
//!
//! The base field itself carries the trivial conjugation: conjugation is
//! ℂ-linear and fixes exactly the multiples of 1. With this rule `e1·e2 = e3`
//! in ℍ_ℂ, i.e. the familiar `i·j = k`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::Sampler;
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraTag {
    C,
    CxC,
    HC,
    OC,
}

impl AlgebraTag {
    pub const ALL: [AlgebraTag; 4] = [AlgebraTag::C, AlgebraTag::CxC, AlgebraTag::HC, AlgebraTag::OC];

    /// Number of doublings applied to the base field.
    pub fn level(self) -> u32 {
        match self {
            AlgebraTag::C => 0,
            AlgebraTag::CxC => 1,
            AlgebraTag::HC => 2,
            AlgebraTag::OC => 3,
        }
    }

    pub fn dim(self) -> usize {
        1 << self.level()
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgebraTag::C => "C",
            AlgebraTag::CxC => "CxC",
            AlgebraTag::HC => "HC",
            AlgebraTag::OC => "OC",
        }
    }

    /// Product table: `table[i * dim + j] = (k, s)` means `e_i e_j = s·e_k`.
    pub fn mult_table(self) -> &'static [(usize, i8)] {
        static TABLES: [OnceLock<Vec<(usize, i8)>>; 4] =
            [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
        TABLES[self.level() as usize].get_or_init(|| build_table(self.dim()))
    }
}

impl fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgebraTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AlgebraTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown algebra {s:?} (expected C, CxC, HC or OC)"))
    }
}

/// Recursive doubling on integer coordinates; only used to build the tables.
pub(crate) fn cd_multiply_int(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len();
    if n == 1 {
        return vec![a[0] * b[0]];
    }
    let h = n / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let ac = cd_multiply_int(a0, b0);
    let db = cd_multiply_int(&cd_conj_int(b1), a1);
    let da = cd_multiply_int(b1, a0);
    let bc = cd_multiply_int(a1, &cd_conj_int(b0));
    let mut out: Vec<i64> = ac.iter().zip(&db).map(|(x, y)| x - y).collect();
    out.extend(da.iter().zip(&bc).map(|(x, y)| x + y));
    out
}

pub(crate) fn cd_conj_int(a: &[i64]) -> Vec<i64> {
    let n = a.len();
    if n == 1 {
        return a.to_vec();
    }
    let h = n / 2;
    let mut out = cd_conj_int(&a[..h]);
    out.extend(a[h..].iter().map(|x| -x));
    out
}

fn build_table(dim: usize) -> Vec<(usize, i8)> {
    let unit = |k: usize| {
        let mut v = vec![0i64; dim];
        v[k] = 1;
        v
    };
    let mut table = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let p = cd_multiply_int(&unit(i), &unit(j));
            let nz: Vec<(usize, i64)> = p.iter().copied().enumerate().filter(|(_, c)| *c != 0).collect();
            assert!(nz.len() == 1 && nz[0].1.abs() == 1, "basis product e{i}e{j} is not a signed basis vector");
            table.push((nz[0].0, nz[0].1 as i8));
        }
    }
    table
}

/// An element of a composition algebra in Cayley–Dickson coordinates
/// `e0 = 1, e1, …`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgElement {
    tag: AlgebraTag,
    coeffs: Vec<ExactScalar>,
}

impl AlgElement {
    pub fn new(tag: AlgebraTag, coeffs: Vec<ExactScalar>) -> Result<Self> {
        if coeffs.len() != tag.dim() {
            return Err(Error::DimensionMismatch { expected: tag.dim(), got: coeffs.len() });
        }
        Ok(AlgElement { tag, coeffs })
    }

    pub fn zero(tag: AlgebraTag) -> Self {
        AlgElement { tag, coeffs: vec![ExactScalar::zero(); tag.dim()] }
    }

    pub fn one(tag: AlgebraTag) -> Self {
        Self::from_scalar(tag, ExactScalar::one())
    }

    pub fn from_scalar(tag: AlgebraTag, s: ExactScalar) -> Self {
        let mut e = Self::zero(tag);
        e.coeffs[0] = s;
        e
    }

    pub fn basis(tag: AlgebraTag, k: usize) -> Self {
        let mut e = Self::zero(tag);
        e.coeffs[k] = ExactScalar::one();
        e
    }

    pub fn from_ints(tag: AlgebraTag, xs: &[i64]) -> Result<Self> {
        Self::new(tag, xs.iter().map(|&x| ExactScalar::from_int(x)).collect())
    }

    pub fn random(tag: AlgebraTag, s: &mut Sampler) -> Self {
        AlgElement { tag, coeffs: (0..tag.dim()).map(|_| s.scalar()).collect() }
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactScalar> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ExactScalar::is_zero)
    }

    /// True when the element lies in the span of 1.
    pub fn is_scalar(&self) -> bool {
        self.coeffs[1..].iter().all(ExactScalar::is_zero)
    }

    pub fn scalar_part(&self) -> &ExactScalar {
        &self.coeffs[0]
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        AlgElement { tag: self.tag, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    fn check_tag(&self, other: &Self) -> Result<()> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch(self.tag, other.tag));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_tag(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let dim = self.tag.dim();
        if dim == 1 {
            return AlgElement { tag: self.tag, coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] };
        }
        let table = self.tag.mult_table();
        let mut out = vec![ExactScalar::zero(); dim];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (k, s) = table[i * dim + j];
                let p = a * b;
                if s > 0 {
                    out[k] += &p;
                } else {
                    out[k] -= &p;
                }
            }
        }
        AlgElement { tag: self.tag, coeffs: out }
    }

    /// Algebra conjugation: fixes `e0`, negates every other basis vector.
    pub fn conjugate(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for c in coeffs.iter_mut().skip(1) {
            *c = -&*c;
        }
        AlgElement { tag: self.tag, coeffs }
    }

    /// `a·ā`, read back as a scalar.
    pub fn norm(&self) -> Result<ExactScalar> {
        let p = self.mul_unchecked(&self.conjugate());
        if !p.is_scalar() {
            return Err(Error::Internal(format!("a*conj(a) has a non-scalar part in {}", self.tag)));
        }
        Ok(p.coeffs[0].clone())
    }

    /// `a + ā`, read back as a scalar.
    pub fn trace_alg(&self) -> Result<ExactScalar> {
        let s = self + &self.conjugate();
        if !s.is_scalar() {
            return Err(Error::Internal(format!("a+conj(a) has a non-scalar part in {}", self.tag)));
        }
        Ok(s.coeffs[0].clone())
    }
}

/// Panics on a tag mismatch; use [`AlgElement::try_mul`] for the fallible form.
impl std::ops::Mul for &AlgElement {
    type Output = AlgElement;
    fn mul(self, rhs: &AlgElement) -> AlgElement {
        self.try_mul(rhs).expect("algebra tag mismatch")
    }
}

impl Add for &AlgElement {
    type Output = AlgElement;
    fn add(self, rhs: &AlgElement) -> AlgElement {
        assert_eq!(self.tag, rhs.tag, "algebra tag mismatch");
        AlgElement { tag: self.tag, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &AlgElement {
    type Output = AlgElement;
    fn sub(self, rhs: &AlgElement) -> AlgElement {
        assert_eq!(self.tag, rhs.tag, "algebra tag mismatch");
        AlgElement { tag: self.tag, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &AlgElement {
    type Output = AlgElement;
    fn neg(self) -> AlgElement {
        AlgElement { tag: self.tag, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.tag, self.coeffs)
    }
}

/// A stored non-associative triple in 𝕆_ℂ: `(e1 e2) e4 ≠ e1 (e2 e4)`.
pub fn octonion_nonassociative_witness() -> [AlgElement; 3] {
    let t = AlgebraTag::OC;
    [AlgElement::basis(t, 1), AlgElement::basis(t, 2), AlgElement::basis(t, 4)]
}

/// A nonzero element of ℂ⊕ℂ with zero norm: `1 + i·e1`, where `i` is the
/// base-field imaginary unit. It solves `x² = −1` coordinatewise.
pub fn split_zero_divisor() -> AlgElement {
    AlgElement::new(AlgebraTag::CxC, vec![ExactScalar::one(), ExactScalar::i()]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(tag: AlgebraTag, xs: &[i64]) -> AlgElement {
        AlgElement::from_ints(tag, xs).unwrap()
    }

    #[test]
    fn quaternion_units() {
        let t = AlgebraTag::HC;
        let (i, j, k) = (AlgElement::basis(t, 1), AlgElement::basis(t, 2), AlgElement::basis(t, 3));
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &i, -&k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        let minus_one = ints(t, &[-1, 0, 0, 0]);
        for u in [&i, &j, &k] {
            assert_eq!(u * u, minus_one);
        }
    }

    #[test]
    fn identity_and_tag_mismatch() {
        let mut s = Sampler::with_seed(1);
        let x = AlgElement::random(AlgebraTag::OC, &mut s);
        let one = AlgElement::one(AlgebraTag::OC);
        assert_eq!(&one * &x, x);
        assert_eq!(&x * &one, x);
        let y = AlgElement::one(AlgebraTag::HC);
        assert_eq!(x.try_mul(&y), Err(Error::TagMismatch(AlgebraTag::OC, AlgebraTag::HC)));
    }

    #[test]
    fn base_field_multiplication_is_scalar_multiplication() {
        let a = AlgElement::from_scalar(AlgebraTag::C, ExactScalar::gaussian(1, 2, 3, 1));
        let b = AlgElement::from_scalar(AlgebraTag::C, ExactScalar::gaussian(-2, 1, 1, 5));
        assert_eq!((&a * &b).scalar_part(), &(a.scalar_part() * b.scalar_part()));
        assert_eq!(a.conjugate(), a);
    }

    #[test]
    fn conjugation_signs() {
        for tag in AlgebraTag::ALL {
            assert_eq!(AlgElement::one(tag).conjugate(), AlgElement::one(tag));
            for k in 1..tag.dim() {
                assert_eq!(AlgElement::basis(tag, k).conjugate(), -&AlgElement::basis(tag, k));
            }
        }
    }

    #[test]
    fn table_matches_recursive_rule_on_integer_elements() {
        let mut s = Sampler::new(11, 9);
        for tag in AlgebraTag::ALL {
            for _ in 0..50 {
                let a: Vec<i64> = (0..tag.dim()).map(|_| s.int(-9, 9)).collect();
                let b: Vec<i64> = (0..tag.dim()).map(|_| s.int(-9, 9)).collect();
                assert_eq!(&ints(tag, &a) * &ints(tag, &b), ints(tag, &cd_multiply_int(&a, &b)));
            }
        }
    }

    #[test]
    fn octonion_witness_is_nonassociative_and_found_by_search() {
        let [x, y, z] = octonion_nonassociative_witness();
        assert_ne!(&(&x * &y) * &z, &x * &(&y * &z));
        // every basis triple search: count non-associative triples
        let t = AlgebraTag::OC;
        let mut found = 0;
        for i in 1..8 {
            for j in 1..8 {
                for k in 1..8 {
                    let (a, b, c) = (AlgElement::basis(t, i), AlgElement::basis(t, j), AlgElement::basis(t, k));
                    if &(&a * &b) * &c != &a * &(&b * &c) {
                        found += 1;
                    }
                }
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn split_algebra_zero_divisor() {
        let z = split_zero_divisor();
        assert!(!z.is_zero());
        assert!(z.norm().unwrap().is_zero());
        let w = z.conjugate();
        assert!((&z * &w).is_zero());
    }

    #[test]
    fn norm_is_sum_of_squares() {
        let mut s = Sampler::with_seed(3);
        for tag in AlgebraTag::ALL {
            let x = AlgElement::random(tag, &mut s);
            let squares: ExactScalar = x.coeffs().iter().map(|c| c * c).sum();
            assert_eq!(x.norm().unwrap(), squares);
            assert_eq!(AlgElement::one(tag).norm().unwrap(), ExactScalar::one());
            assert_eq!(x.trace_alg().unwrap(), x.scalar_part() + x.scalar_part());
        }
    }

    #[test]
    fn seeded_identities_in_all_algebras() {
        let mut s = Sampler::with_seed(5);
        for tag in AlgebraTag::ALL {
            for _ in 0..60 {
                let x = AlgElement::random(tag, &mut s);
                let y = AlgElement::random(tag, &mut s);
                let z = AlgElement::random(tag, &mut s);
                let xy = &x * &y;
                assert_eq!(xy.conjugate(), &y.conjugate() * &x.conjugate());
                assert_eq!(xy.norm().unwrap(), &x.norm().unwrap() * &y.norm().unwrap());
                assert_eq!(xy.trace_alg().unwrap(), (&y * &x).trace_alg().unwrap());
                let xx = &x * &x;
                assert_eq!(&x * &xy, &xx * &y);
                assert_eq!(&(&y * &x) * &x, &y * &xx);
                assert!((&x + &x.conjugate()).is_scalar());
                assert!((&x * &x.conjugate()).is_scalar());
                if tag != AlgebraTag::OC {
                    assert_eq!(&xy * &z, &x * &(&y * &z));
                }
            }
        }
    }
}
