//! Polyhedral cones of small rank given by integer generators.
//!
//! Ranks are at most six, so membership is decided by Carathéodory's theorem
//! (a point of a cone is a nonnegative combination of linearly independent
//! generators) and faces by enumerating facets directly.

use std::cmp::Ordering;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::primitive;
use crate::matrix::ExactMatrix;
use crate::scalar::ExactScalar;

pub const MAX_RANK: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCone {
    rank: usize,
    generators: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FacePosition {
    OnExtremalRay { generator: Vec<i64> },
    RelativeInteriorOfFace { dim: usize, generators: Vec<Vec<i64>> },
    Interior,
    Outside,
}

fn to_scalars(v: &[i64]) -> Vec<ExactScalar> {
    v.iter().map(|&x| ExactScalar::from_int(x)).collect()
}

fn rank_of(vs: &[&Vec<i64>], n: usize) -> usize {
    if vs.is_empty() {
        return 0;
    }
    ExactMatrix::from_rows(n, vs.iter().map(|v| to_scalars(v)).collect()).expect("uniform length").rank()
}

fn is_nonneg(x: &ExactScalar) -> bool {
    matches!(x.real_sign(), Some(Ordering::Greater | Ordering::Equal))
}

/// Whether `v` is a nonnegative rational combination of `gens`.
fn in_cone_of(v: &[i64], gens: &[&Vec<i64>], n: usize) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    let target = to_scalars(v);
    (1..=gens.len().min(n)).any(|k| {
        gens.iter().combinations(k).any(|sub| {
            if rank_of(&sub.iter().map(|g| **g).collect::<Vec<_>>(), n) < k {
                return false;
            }
            let cols: Vec<Vec<ExactScalar>> = sub.iter().map(|g| to_scalars(g)).collect();
            let m = ExactMatrix::from_columns(n, &cols).expect("uniform length");
            m.solve(&target).is_some_and(|l| l.iter().all(is_nonneg))
        })
    })
}

impl RationalCone {
    /// Generators are made primitive and deduplicated in input order; zero
    /// vectors are dropped.
    pub fn new(rank: usize, generators: Vec<Vec<i64>>) -> Result<Self> {
        if rank > MAX_RANK {
            return Err(Error::DimensionMismatch { expected: MAX_RANK, got: rank });
        }
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for g in generators {
            if g.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, got: g.len() });
            }
            let p = primitive(&g);
            if p.iter().any(|&x| x != 0) && !gens.contains(&p) {
                gens.push(p);
            }
        }
        Ok(RationalCone { rank, generators: gens })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        in_cone_of(v, &self.generators.iter().collect::<Vec<_>>(), self.rank)
    }

    /// Generators that are not nonnegative combinations of the others, in
    /// input order.
    pub fn extremal_rays(&self) -> Vec<Vec<i64>> {
        (0..self.generators.len())
            .filter(|&i| {
                let others: Vec<&Vec<i64>> =
                    self.generators.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g).collect();
                !in_cone_of(&self.generators[i], &others, self.rank)
            })
            .map(|i| self.generators[i].clone())
            .collect()
    }

    /// The cone generated by the extremal rays only.
    pub fn reduced(&self) -> RationalCone {
        RationalCone { rank: self.rank, generators: self.extremal_rays() }
    }

    /// Locates `v` by the unique minimal face containing it. The cone is
    /// assumed pointed. The zero vector is the relative interior of the
    /// 0-dimensional face.
    pub fn face_position(&self, v: &[i64]) -> FacePosition {
        assert_eq!(v.len(), self.rank, "vector length");
        if v.iter().all(|&x| x == 0) {
            return FacePosition::RelativeInteriorOfFace { dim: 0, generators: vec![] };
        }
        let rays = self.extremal_rays();
        let Some(local) = Span::new(&rays, self.rank).and_then(|s| s.coordinates(v).map(|c| (s, c))) else {
            return FacePosition::Outside;
        };
        let (span, w) = local;
        let k = span.dim();
        let ray_coords: Vec<Vec<ExactScalar>> = rays.iter().map(|r| span.coordinates(r).expect("ray in span")).collect();
        if k == 1 {
            // A single ray; v is in the span, so it is on the ray or opposite.
            return if is_nonneg(&w[0]) && is_nonneg(&ray_coords[0][0]) == is_nonneg(&w[0]) {
                FacePosition::OnExtremalRay { generator: rays[0].clone() }
            } else {
                FacePosition::Outside
            };
        }
        let facets = facets(&ray_coords, k);
        let dot = |n: &[ExactScalar], x: &[ExactScalar]| -> ExactScalar { n.iter().zip(x).map(|(a, b)| a * b).sum() };
        if facets.iter().any(|(n, _)| dot(n, &w).real_sign() == Some(Ordering::Less)) {
            return FacePosition::Outside;
        }
        let mut on_face: Vec<bool> = vec![true; rays.len()];
        let mut any = false;
        for (n, members) in &facets {
            if dot(n, &w).is_zero() {
                any = true;
                for (i, f) in on_face.iter_mut().enumerate() {
                    *f &= members.contains(&i);
                }
            }
        }
        if !any {
            return FacePosition::Interior;
        }
        let gens: Vec<Vec<i64>> = rays.iter().zip(&on_face).filter(|(_, &f)| f).map(|(r, _)| r.clone()).collect();
        let dim = rank_of(&gens.iter().collect::<Vec<_>>(), self.rank);
        if dim == 1 {
            FacePosition::OnExtremalRay { generator: gens[0].clone() }
        } else {
            FacePosition::RelativeInteriorOfFace { dim, generators: gens }
        }
    }
}

/// Coordinates on the linear span of a set of integer vectors.
struct Span {
    basis: ExactMatrix,
    n: usize,
}

impl Span {
    fn new(vs: &[Vec<i64>], n: usize) -> Option<Self> {
        let mut chosen: Vec<&Vec<i64>> = Vec::new();
        for v in vs {
            chosen.push(v);
            if rank_of(&chosen, n) < chosen.len() {
                chosen.pop();
            }
        }
        if chosen.is_empty() {
            return None;
        }
        let cols: Vec<Vec<ExactScalar>> = chosen.iter().map(|v| to_scalars(v)).collect();
        Some(Span { basis: ExactMatrix::from_columns(n, &cols).ok()?, n })
    }

    fn dim(&self) -> usize {
        self.basis.cols()
    }

    fn coordinates(&self, v: &[i64]) -> Option<Vec<ExactScalar>> {
        debug_assert_eq!(v.len(), self.n);
        self.basis.solve(&to_scalars(v))
    }
}

/// Facets of a full-dimensional pointed cone in ℚᵏ, as inward normals with
/// the indices of the rays lying on them.
fn facets(rays: &[Vec<ExactScalar>], k: usize) -> Vec<(Vec<ExactScalar>, Vec<usize>)> {
    let mut out: Vec<(Vec<ExactScalar>, Vec<usize>)> = Vec::new();
    for sub in (0..rays.len()).combinations(k - 1) {
        let m = ExactMatrix::from_rows(k, sub.iter().map(|&i| rays[i].clone()).collect()).expect("uniform length");
        let (r, ker) = m.rank_and_kernel();
        if r != k - 1 {
            continue;
        }
        let mut normal = ker.into_iter().next().expect("one-dimensional kernel");
        let vals: Vec<ExactScalar> = rays.iter().map(|x| normal.iter().zip(x).map(|(a, b)| a * b).sum()).collect();
        let signs: Vec<Ordering> = vals.iter().map(|v| v.real_sign().expect("real cone")).collect();
        let has_pos = signs.contains(&Ordering::Greater);
        let has_neg = signs.contains(&Ordering::Less);
        if has_pos && has_neg {
            continue;
        }
        if has_neg {
            normal = normal.iter().map(|x| -x).collect();
        }
        let members: Vec<usize> = (0..rays.len()).filter(|&i| signs[i] == Ordering::Equal).collect();
        if !out.iter().any(|(_, m)| *m == members) {
            out.push((normal, members));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(rank: usize, gens: &[&[i64]]) -> RationalCone {
        RationalCone::new(rank, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    /// Nonnegative combinations with coefficients `k/den` for `k ≤ max`, by
    /// brute force.
    fn small_combination_exists(v: &[i64], gens: &[Vec<i64>], den: i64, max: i64) -> bool {
        (0..gens.len())
            .map(|_| 0..=max)
            .multi_cartesian_product()
            .any(|c| (0..v.len()).all(|j| gens.iter().zip(&c).map(|(g, k)| g[j] * k).sum::<i64>() == v[j] * den))
    }

    #[test]
    fn redundant_sum_is_dropped() {
        let c = cone(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(c.extremal_rays(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(c.reduced().extremal_rays(), c.extremal_rays());
    }

    #[test]
    fn generators_are_normalized() {
        let c = cone(2, &[&[2, 0], &[1, 0], &[0, 0], &[0, 3]]);
        assert_eq!(c.generators(), &[vec![1, 0], vec![0, 1]]);
        assert!(RationalCone::new(7, vec![]).is_err());
    }

    #[test]
    fn simplicial_faces() {
        let c = cone(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(c.face_position(&[3, 0, 0, 0]), FacePosition::OnExtremalRay { generator: vec![1, 0, 0, 0] });
        assert_eq!(
            c.face_position(&[1, 1, 0, 0]),
            FacePosition::RelativeInteriorOfFace { dim: 2, generators: vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]] }
        );
        assert_eq!(c.face_position(&[1, 1, 1, 1]), FacePosition::Interior);
        assert_eq!(c.face_position(&[-1, 0, 0, 0]), FacePosition::Outside);
        assert_eq!(c.face_position(&[0, 0, 0, 0]), FacePosition::RelativeInteriorOfFace { dim: 0, generators: vec![] });
    }

    #[test]
    fn non_simplicial_square_cone() {
        // Cone over a square: four rays in rank 3, faces are edges.
        let c = cone(3, &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
        assert_eq!(c.extremal_rays().len(), 4);
        assert_eq!(c.face_position(&[0, 0, 1]), FacePosition::Interior);
        assert!(matches!(c.face_position(&[1, 1, 2]), FacePosition::RelativeInteriorOfFace { dim: 2, .. }));
        assert_eq!(c.face_position(&[0, 0, -1]), FacePosition::Outside);
        assert_eq!(c.face_position(&[2, 0, 1]), FacePosition::Outside);
    }

    #[test]
    fn lower_dimensional_cone() {
        let c = cone(3, &[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(c.face_position(&[1, 1, 0]), FacePosition::Interior);
        assert_eq!(c.face_position(&[1, 1, 1]), FacePosition::Outside);
        let ray = cone(3, &[&[1, 2, 0]]);
        assert_eq!(ray.face_position(&[2, 4, 0]), FacePosition::OnExtremalRay { generator: vec![1, 2, 0] });
        assert_eq!(ray.face_position(&[-1, -2, 0]), FacePosition::Outside);
    }

    #[test]
    fn membership_matches_brute_force() {
        let gens = vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 2], vec![0, 0, 1]];
        let c = RationalCone::new(3, gens.clone()).unwrap();
        for v in (0..3).map(|_| -2i64..=2).multi_cartesian_product() {
            let brute = small_combination_exists(&v, &gens, 2, 4);
            if brute {
                assert!(c.contains(&v), "{v:?}");
            }
            if !c.contains(&v) {
                assert!(!brute);
            }
            let on_ray = c.extremal_rays().iter().any(|r| {
                let k = v.iter().zip(r).find(|(_, &b)| b != 0).map(|(&a, &b)| a / b).unwrap_or(0);
                k > 0 && r.iter().map(|x| x * k).collect::<Vec<_>>() == v
            });
            assert_eq!(matches!(c.face_position(&v), FacePosition::OnExtremalRay { .. }), on_ray, "{v:?}");
        }
    }
}
