//! The map `Φ(t, A) = [t³ : t²A : t·com(A) : det A]`.

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

use super::HermitianMatrix;

/// Homogeneous coordinates `(t³, t²A, t·com(A), det A)` with `d`-coordinate
/// middle blocks. Equality is up to a nonzero scalar.
#[derive(Clone, Debug)]
pub struct ProjectivePoint {
    d: usize,
    coords: Vec<ExactScalar>,
}

impl ProjectivePoint {
    pub fn new(d: usize, coords: Vec<ExactScalar>) -> Result<Self> {
        if coords.len() != 2 * d + 2 {
            return Err(Error::DimensionMismatch { expected: 2 * d + 2, got: coords.len() });
        }
        if coords.iter().all(ExactScalar::is_zero) {
            return Err(Error::ZeroInput);
        }
        Ok(ProjectivePoint { d, coords })
    }

    pub fn phi_map(t: &ExactScalar, a: &HermitianMatrix) -> Result<Self> {
        if t.is_zero() && a.is_zero() {
            return Err(Error::ZeroInput);
        }
        let d = HermitianMatrix::space_dim(a.tag());
        let t2 = t * t;
        let mut coords = Vec::with_capacity(2 * d + 2);
        coords.push(&t2 * t);
        coords.extend(a.coords().iter().map(|x| &t2 * x));
        coords.extend(a.comatrix().coords().iter().map(|x| t * x));
        coords.push(a.determinant());
        Self::new(d, coords)
    }

    pub fn coords(&self) -> &[ExactScalar] {
        &self.coords
    }

    pub fn t_cubed(&self) -> &ExactScalar {
        &self.coords[0]
    }

    pub fn a_slot(&self) -> &[ExactScalar] {
        &self.coords[1..1 + self.d]
    }

    pub fn com_slot(&self) -> &[ExactScalar] {
        &self.coords[1 + self.d..1 + 2 * self.d]
    }

    pub fn det_slot(&self) -> &ExactScalar {
        &self.coords[1 + 2 * self.d]
    }

    /// The same point scaled so that its first nonzero coordinate is 1.
    pub fn normalized(&self) -> Vec<ExactScalar> {
        let lead = self.coords.iter().find(|x| !x.is_zero()).expect("nonzero point");
        let inv = lead.inv().expect("nonzero");
        self.coords.iter().map(|x| x * &inv).collect()
    }
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.normalized() == other.normalized()
    }
}

impl Eq for ProjectivePoint {}

/// Whether `(t, A)` lies on the cubic `t³ = det A`.
pub fn on_cubic(t: &ExactScalar, a: &HermitianMatrix) -> bool {
    t.pow(3) == a.determinant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraTag;

    #[test]
    fn base_point() {
        let tag = AlgebraTag::OC;
        let id = HermitianMatrix::identity(tag);
        let p = ProjectivePoint::phi_map(&ExactScalar::one(), &id).unwrap();
        assert!(p.t_cubed().is_one() && p.det_slot().is_one());
        assert_eq!(p.a_slot(), id.coords().as_slice());
        assert_eq!(p.com_slot(), id.coords().as_slice());
        assert!(on_cubic(&ExactScalar::one(), &id));
        assert_eq!(
            ProjectivePoint::phi_map(&ExactScalar::zero(), &HermitianMatrix::zero(tag)).unwrap_err(),
            Error::ZeroInput
        );
    }

    #[test]
    fn equality_is_projective() {
        let tag = AlgebraTag::C;
        let a = HermitianMatrix::diag_ints(tag, [1, 2, 3]);
        let p = ProjectivePoint::phi_map(&ExactScalar::from_int(2), &a).unwrap();
        let q = ProjectivePoint::phi_map(&ExactScalar::from_int(4), &a.scale(&ExactScalar::from_int(2))).unwrap();
        assert_eq!(p, q);
        assert_ne!(p, ProjectivePoint::phi_map(&ExactScalar::one(), &a).unwrap());
    }
}
