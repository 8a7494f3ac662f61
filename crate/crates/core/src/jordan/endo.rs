//! Linear endomorphisms of `J₃(𝔸)` and the Lie-algebra tests built on them.
//!
//! Matrices act on coordinate vectors in the basis of
//! [`HermitianMatrix::basis`]; column `j` holds the image of the j-th basis
//! vector.

use std::sync::OnceLock;

use crate::algebra::AlgebraTag;
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::ExactScalar;
use crate::sparse::{collect_row, ModularEliminator, SparseEliminator, SparseRow};

use super::{HermitianMatrix, Permutation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    tag: AlgebraTag,
    matrix: ExactMatrix,
}

/// `diag(λ1, λ2, λ3)` with `λ1λ2λ3 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalTorusElement {
    l: [ExactScalar; 3],
}

impl DiagonalTorusElement {
    pub fn new(l: [ExactScalar; 3]) -> Result<Self> {
        if l.iter().any(ExactScalar::is_zero) || !(&(&l[0] * &l[1]) * &l[2]).is_one() {
            return Err(Error::TorusConstraint);
        }
        Ok(DiagonalTorusElement { l })
    }

    pub fn identity() -> Self {
        DiagonalTorusElement { l: [ExactScalar::one(), ExactScalar::one(), ExactScalar::one()] }
    }

    /// `diag(a, b, (ab)⁻¹)` for nonzero `a`, `b`.
    pub fn from_two(a: ExactScalar, b: ExactScalar) -> Result<Self> {
        let c = (&a * &b).inv().ok_or(Error::TorusConstraint)?;
        Self::new([a, b, c])
    }

    pub fn lambdas(&self) -> &[ExactScalar; 3] {
        &self.l
    }

    pub fn mul(&self, other: &Self) -> Self {
        DiagonalTorusElement { l: std::array::from_fn(|i| &self.l[i] * &other.l[i]) }
    }

    /// `diag(λ_p(1), λ_p(2), λ_p(3))`.
    pub fn permute(&self, p: Permutation) -> Self {
        DiagonalTorusElement { l: std::array::from_fn(|i| self.l[p.apply(i)].clone()) }
    }

    pub fn as_matrix(&self, tag: AlgebraTag) -> HermitianMatrix {
        HermitianMatrix::diag(tag, self.l.clone())
    }
}

fn cache_slot(tag: AlgebraTag) -> usize {
    tag.level() as usize
}

/// Jordan structure constants: `jordan(B_b, B_c)` as sparse coordinates,
/// indexed by `b * d + c`.
struct Structure {
    d: usize,
    products: Vec<SparseRow>,
    /// `by_target[c * d + m]` lists `(i, (B_i∘B_c)_m)` with nonzero value.
    by_target: Vec<Vec<(usize, ExactScalar)>>,
}

fn structure(tag: AlgebraTag) -> &'static Structure {
    static CACHE: [OnceLock<Structure>; 4] = [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CACHE[cache_slot(tag)].get_or_init(|| {
        let d = HermitianMatrix::space_dim(tag);
        let basis: Vec<HermitianMatrix> = (0..d).map(|k| HermitianMatrix::basis(tag, k)).collect();
        let mut products = vec![Vec::new(); d * d];
        for b in 0..d {
            for c in b..d {
                let p = basis[b].jordan(&basis[c]).expect("same tag");
                let row = collect_row(p.coords().into_iter().enumerate());
                products[c * d + b] = row.clone();
                products[b * d + c] = row;
            }
        }
        let mut by_target = vec![Vec::new(); d * d];
        for i in 0..d {
            for c in 0..d {
                for (m, v) in &products[i * d + c] {
                    by_target[c * d + m].push((i, v.clone()));
                }
            }
        }
        Structure { d, products, by_target }
    })
}

/// `T[(j, k)] = ((B_m, B_j, B_k))_m` as a sparse vector over `m`, for `j ≤ k`.
fn triple_tensor(tag: AlgebraTag) -> &'static Vec<SparseRow> {
    static CACHE: [OnceLock<Vec<SparseRow>>; 4] = [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CACHE[cache_slot(tag)].get_or_init(|| {
        let d = HermitianMatrix::space_dim(tag);
        let basis: Vec<HermitianMatrix> = (0..d).map(|k| HermitianMatrix::basis(tag, k)).collect();
        let mut out = vec![Vec::new(); d * d];
        for j in 0..d {
            for k in j..d {
                let c = basis[j].cross(&basis[k]).expect("same tag");
                // (B_m, C) = tr(B_m ∘ C) picks coordinate m with weight 1 on
                // the diagonal and 2 off it.
                let row = collect_row(c.coords().into_iter().enumerate().map(|(m, v)| {
                    let w = if m < 3 { v } else { &v * &ExactScalar::from_int(2) };
                    (m, w)
                }));
                out[j * d + k] = row.clone();
                out[k * d + j] = row;
            }
        }
        out
    })
}

impl Endomorphism {
    pub fn new(tag: AlgebraTag, matrix: ExactMatrix) -> Result<Self> {
        let d = HermitianMatrix::space_dim(tag);
        if matrix.rows() != d || matrix.cols() != d {
            return Err(Error::DimensionMismatch { expected: d, got: matrix.rows().max(matrix.cols()) });
        }
        Ok(Endomorphism { tag, matrix })
    }

    pub fn identity(tag: AlgebraTag) -> Self {
        Endomorphism { tag, matrix: ExactMatrix::identity(HermitianMatrix::space_dim(tag)) }
    }

    pub fn zero(tag: AlgebraTag) -> Self {
        let d = HermitianMatrix::space_dim(tag);
        Endomorphism { tag, matrix: ExactMatrix::zeros(d, d) }
    }

    /// The linear map determined by its values on the basis.
    pub fn from_basis_images(tag: AlgebraTag, f: impl Fn(&HermitianMatrix) -> HermitianMatrix) -> Self {
        let d = HermitianMatrix::space_dim(tag);
        let cols: Vec<Vec<ExactScalar>> = (0..d).map(|k| f(&HermitianMatrix::basis(tag, k)).coords()).collect();
        Endomorphism { tag, matrix: ExactMatrix::from_columns(d, &cols).expect("square") }
    }

    /// Builds from a coordinate vector of length `d²` laid out row-major.
    pub fn from_flat(tag: AlgebraTag, flat: Vec<ExactScalar>) -> Result<Self> {
        let d = HermitianMatrix::space_dim(tag);
        Self::new(tag, ExactMatrix::new(d, d, flat)?)
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, a: &HermitianMatrix) -> Result<HermitianMatrix> {
        if a.tag() != self.tag {
            return Err(Error::TagMismatch(self.tag, a.tag()));
        }
        HermitianMatrix::from_coords(self.tag, &self.matrix.mul_vec(&a.coords())?)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch(self.tag, other.tag));
        }
        Ok(Endomorphism { tag: self.tag, matrix: &self.matrix * &other.matrix })
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        Ok(Endomorphism { tag: self.tag, matrix: ab.matrix.sub(&ba.matrix)? })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let neg = other.matrix.scale(&ExactScalar::from_int(-1));
        Ok(Endomorphism { tag: self.tag, matrix: self.matrix.sub(&neg)? })
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        Endomorphism { tag: self.tag, matrix: self.matrix.scale(s) }
    }

    /// `μ(A) = [B ↦ 2A∘B]` for traceless `A`.
    pub fn mu(a: &HermitianMatrix) -> Result<Self> {
        if !a.trace().is_zero() {
            return Err(Error::NotTraceless);
        }
        let two = ExactScalar::from_int(2);
        Ok(Self::from_basis_images(a.tag(), |b| a.jordan(b).expect("same tag").scale(&two)))
    }

    /// `ν(t) = [B ↦ ABA]` with `A = diag(λ1, λ2, λ3)`. The general 3×3 product
    /// is formed as `(AB)A`; with scalar `A` no parenthesization issue arises.
    pub fn nu(tag: AlgebraTag, t: &DiagonalTorusElement) -> Self {
        let a = t.as_matrix(tag).to_full();
        Self::from_basis_images(tag, |b| {
            a.mul(&b.to_full()).mul(&a).to_hermitian().expect("ABA is Hermitian for diagonal A")
        })
    }

    /// The linear map `A ↦ σ_p(A)`.
    pub fn sigma(tag: AlgebraTag, p: Permutation) -> Self {
        Self::from_basis_images(tag, |b| b.sigma_action(p))
    }

    /// Decides `(φ(B), B, B) = 0 for all B` through the polarized trilinear
    /// form on basis triples `i ≤ j ≤ k`.
    pub fn is_in_sl3(&self) -> bool {
        let d = HermitianMatrix::space_dim(self.tag);
        let t = triple_tensor(self.tag);
        let m = &self.matrix;
        // (φ(B_i), B_j, B_k) = Σ_m φ[m][i] T[m][j][k]
        let term = |i: usize, j: usize, k: usize| -> ExactScalar {
            t[j * d + k].iter().filter(|(r, _)| !m[(*r, i)].is_zero()).map(|(r, v)| &m[(*r, i)] * v).sum()
        };
        (0..d).all(|i| {
            (i..d).all(|j| (j..d).all(|k| (&(&term(i, j, k) + &term(j, i, k)) + &term(k, i, j)).is_zero()))
        })
    }

    /// Decides `det(φ(B)) = det(B) for all B`, i.e. that `φ` preserves the
    /// cubic norm, through `(φB_i, φB_j, φB_k) = (B_i, B_j, B_k)` on basis
    /// triples. This is the group-level counterpart of [`Self::is_in_sl3`].
    pub fn preserves_determinant(&self) -> bool {
        let d = HermitianMatrix::space_dim(self.tag);
        let t = triple_tensor(self.tag);
        let images: Vec<HermitianMatrix> =
            (0..d).map(|k| HermitianMatrix::from_coords(self.tag, &self.matrix.column(k)).expect("square")).collect();
        let base = |i: usize, j: usize, k: usize| -> ExactScalar {
            t[j * d + k].iter().find(|(r, _)| *r == i).map(|(_, v)| v.clone()).unwrap_or_default()
        };
        (0..d).all(|j| {
            (j..d).all(|k| {
                let c = images[j].cross(&images[k]).expect("same tag");
                (0..=j).all(|i| images[i].trace_form(&c) == base(i, j, k))
            })
        })
    }

    /// Decides `ψ(B∘C) = ψ(B)∘C + B∘ψ(C)` on all basis pairs.
    pub fn is_derivation(&self) -> bool {
        let d = HermitianMatrix::space_dim(self.tag);
        let flat: Vec<ExactScalar> = (0..d).flat_map(|i| self.matrix.row(i).to_vec()).collect();
        derivation_equations(self.tag).all(|row| {
            let v: ExactScalar = row.iter().filter(|(c, _)| !flat[*c].is_zero()).map(|(c, a)| a * &flat[*c]).sum();
            v.is_zero()
        })
    }
}

/// The linear conditions on an unknown `d × d` matrix `X` (unknown `X[i][j]`
/// at index `i·d + j`) expressing that `X` is a derivation, one per basis
/// pair `b ≤ c` and output coordinate `m`.
pub fn derivation_equations(tag: AlgebraTag) -> impl Iterator<Item = SparseRow> {
    let s = structure(tag);
    let d = s.d;
    (0..d).flat_map(move |b| (b..d).flat_map(move |c| (0..d).map(move |m| (b, c, m)))).map(move |(b, c, m)| {
        // ψ(B_b∘B_c)_m = Σ_k S[b][c][k] X[m][k]
        let lhs = s.products[b * d + c].iter().map(|(k, v)| (m * d + k, v.clone()));
        // (ψ(B_b)∘B_c)_m = Σ_i X[i][b] S[i][c][m], and symmetrically for c
        let r1 = s.by_target[c * d + m].iter().map(|(i, v)| (i * d + b, -v));
        let r2 = s.by_target[b * d + m].iter().map(|(i, v)| (i * d + c, -v));
        collect_row(lhs.chain(r1).chain(r2))
    })
}

/// Number of derivation equations, `d(d+1)/2 · d`.
pub fn derivation_equation_count(tag: AlgebraTag) -> usize {
    let d = HermitianMatrix::space_dim(tag);
    d * (d + 1) / 2 * d
}

/// `dim so₃(𝔸)`, the kernel dimension of the derivation system, by exact
/// streaming elimination. `progress` is called with the number of equations
/// processed so far.
pub fn derivation_algebra_dim_with(tag: AlgebraTag, mut progress: impl FnMut(usize)) -> usize {
    derivation_eliminator(tag, &mut progress).nullity()
}

pub fn derivation_algebra_dim(tag: AlgebraTag) -> usize {
    derivation_algebra_dim_with(tag, |_| {})
}

fn derivation_eliminator(tag: AlgebraTag, progress: &mut impl FnMut(usize)) -> SparseEliminator {
    let d = HermitianMatrix::space_dim(tag);
    let mut e = SparseEliminator::new(d * d);
    for (n, row) in derivation_equations(tag).enumerate() {
        e.insert(row);
        if (n + 1) % 1000 == 0 {
            progress(n + 1);
        }
    }
    e
}

/// The same kernel dimension computed over 𝔽_p.
pub fn derivation_algebra_dim_mod(tag: AlgebraTag, p: u64) -> usize {
    let d = HermitianMatrix::space_dim(tag);
    let mut e = ModularEliminator::new(d * d, p);
    for row in derivation_equations(tag) {
        e.insert_exact(&row).expect("structure constants have denominators 1 or 2");
    }
    e.nullity()
}

/// A basis of the derivation algebra.
pub fn derivation_basis(tag: AlgebraTag) -> Vec<Endomorphism> {
    derivation_eliminator(tag, &mut |_| {})
        .kernel_basis()
        .into_iter()
        .map(|v| Endomorphism::from_flat(tag, v).expect("d² coordinates"))
        .collect()
}

/// The traceless diagonal matrices `diag(1, −1, 0)` and `diag(0, 1, −1)`.
pub fn cartan_basis(tag: AlgebraTag) -> [HermitianMatrix; 2] {
    [HermitianMatrix::diag_ints(tag, [1, -1, 0]), HermitianMatrix::diag_ints(tag, [0, 1, -1])]
}

/// `{A ∈ J₃(𝔸)₀ : [μ(A), μ(H)] = 0 for H ∈ 𝔥₀}` as a kernel basis.
///
/// `[μ(A), μ(H)](C) = 4(A∘(H∘C) − H∘(A∘C))` is linear in `A`; the system has
/// one equation per `(H, C = B_j, output coordinate)` plus `tr A = 0`.
pub fn centralizer_in_j0(tag: AlgebraTag) -> Vec<HermitianMatrix> {
    let d = HermitianMatrix::space_dim(tag);
    let basis: Vec<HermitianMatrix> = (0..d).map(|k| HermitianMatrix::basis(tag, k)).collect();
    let mut e = SparseEliminator::new(d);
    e.insert(collect_row((0..3).map(|i| (i, ExactScalar::one()))));
    for h in cartan_basis(tag) {
        for c in &basis {
            let hc = h.jordan(c).expect("same tag");
            // column b: B_b∘(H∘C) − H∘(B_b∘C)
            let cols: Vec<Vec<ExactScalar>> = basis
                .iter()
                .map(|bb| {
                    let x = bb.jordan(&hc).expect("same tag");
                    let y = h.jordan(&bb.jordan(c).expect("same tag")).expect("same tag");
                    (&x - &y).coords()
                })
                .collect();
            for m in 0..d {
                e.insert(collect_row((0..d).map(|b| (b, cols[b][m].clone()))));
            }
        }
    }
    e.kernel_basis().into_iter().map(|v| HermitianMatrix::from_coords(tag, &v).expect("d coordinates")).collect()
}

pub fn centralizer_dim_in_j0(tag: AlgebraTag) -> usize {
    centralizer_in_j0(tag).len()
}

/// The 𝔖₃ action on matrices: `p ↦ Mat(σ_{p⁻¹})` is a homomorphism, since
/// `σ_p ∘ σ_q = σ_{q∘p}` for the index action `(i, j) ↦ A(p(i), p(j))`.
pub fn s3_representation(tag: AlgebraTag, p: Permutation) -> Endomorphism {
    Endomorphism::sigma(tag, p.inverse())
}
