//! Smooth projective rational surfaces: complete toric surfaces given by fans
//! in ℤ², and blowups of ℙ² in three points recorded only through their
//! collinearity. Picard lattices carry the intersection form, and finite
//! group actions are integer matrices on them.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::RationalCone;
use crate::error::{Error, Result};
use crate::jordan::Permutation;
use crate::lattice::{same_lattice, IntMatrix};
use crate::polygon::{affine_lattice_coordinates, angle_cmp, lattice_polygon_normal_fan, minkowski_sum};

fn det2(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// A smooth complete fan, rays in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan2D {
    rays: Vec<[i64; 2]>,
}

impl Fan2D {
    pub fn new(rays: Vec<[i64; 2]>) -> Result<Self> {
        let n = rays.len();
        if n < 3 {
            return Err(Error::NotSmooth(format!("{n} rays cannot give a complete fan")));
        }
        for i in 0..n {
            let (a, b) = (rays[i], rays[(i + 1) % n]);
            if det2(a, b) != 1 {
                return Err(Error::NotSmooth(format!("cone {a:?}, {b:?} has determinant {}", det2(a, b))));
            }
        }
        // Positive consecutive determinants still allow winding twice.
        let descents = (0..n).filter(|&i| angle_cmp(rays[i], rays[(i + 1) % n]).is_ge()).count();
        if descents != 1 {
            return Err(Error::NotSmooth("rays wind around the origin more than once".into()));
        }
        Ok(Fan2D { rays })
    }

    pub fn rays(&self) -> &[[i64; 2]] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn picard_rank(&self) -> usize {
        self.rays.len() - 2
    }

    /// `D_i²` for each ray, from `v_{i−1} + v_{i+1} = b_i·v_i` and `D_i² = −b_i`.
    pub fn self_intersections(&self) -> Vec<i64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let v = self.rays[i];
                let (p, q) = (self.rays[(i + n - 1) % n], self.rays[(i + 1) % n]);
                let s = [p[0] + q[0], p[1] + q[1]];
                let b = if v[0] != 0 { s[0] / v[0] } else { s[1] / v[1] };
                debug_assert_eq!([b * v[0], b * v[1]], s);
                -b
            })
            .collect()
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        let n = self.len();
        i != j && ((i + 1) % n == j || (j + 1) % n == i)
    }
}

pub fn fan_p2() -> Fan2D {
    Fan2D::new(vec![[1, 0], [0, 1], [-1, -1]]).expect("smooth")
}

/// `𝔽_n` with rays `(1,0), (0,1), (−1,n), (0,−1)`; the ray `(0,1)` gives the
/// negative section.
pub fn fan_hirzebruch(n: i64) -> Fan2D {
    Fan2D::new(vec![[1, 0], [0, 1], [-1, n], [0, -1]]).expect("smooth")
}

/// Star subdivision of the cone between rays `corner` and `corner + 1`.
pub fn toric_blowup(fan: &Fan2D, corner: usize) -> Result<Fan2D> {
    let n = fan.len();
    if corner >= n {
        return Err(Error::InvalidCorner { index: corner, len: n });
    }
    let (a, b) = (fan.rays[corner], fan.rays[(corner + 1) % n]);
    let mut rays = fan.rays.clone();
    rays.insert(corner + 1, [a[0] + b[0], a[1] + b[1]]);
    Fan2D::new(rays)
}

/// A matrix `g ∈ GL₂(ℤ)` carrying the ray set of `a` onto that of `b`.
///
/// Any isomorphism sends the basis `(v₀, v₁)` of `a` to a consecutive pair of
/// `b` in one of the two directions, so there are at most `2·len` candidates.
pub fn fan_isomorphism(a: &Fan2D, b: &Fan2D) -> Option<[[i64; 2]; 2]> {
    if a.len() != b.len() {
        return None;
    }
    let n = b.len();
    let (v0, v1) = (a.rays[0], a.rays[1]);
    // inverse of the unimodular matrix with columns v0, v1
    let inv = [[v1[1], -v1[0]], [-v0[1], v0[0]]];
    let mut target: Vec<[i64; 2]> = b.rays.clone();
    target.sort();
    for j in 0..n {
        for w1 in [b.rays[(j + 1) % n], b.rays[(j + n - 1) % n]] {
            let w0 = b.rays[j];
            let g = [
                [w0[0] * inv[0][0] + w1[0] * inv[1][0], w0[0] * inv[0][1] + w1[0] * inv[1][1]],
                [w0[1] * inv[0][0] + w1[1] * inv[1][0], w0[1] * inv[0][1] + w1[1] * inv[1][1]],
            ];
            let mut image: Vec<[i64; 2]> =
                a.rays.iter().map(|v| [g[0][0] * v[0] + g[0][1] * v[1], g[1][0] * v[0] + g[1][1] * v[1]]).collect();
            image.sort();
            if image == target {
                return Some(g);
            }
        }
    }
    None
}

pub fn fans_isomorphic(a: &Fan2D, b: &Fan2D) -> bool {
    fan_isomorphism(a, b).is_some()
}

/// Exponents of the two monomial triples cut out on each ℙ² factor by a torus
/// element `diag(λ₁, λ₂, λ₃)`, written in the characters `λ₁, λ₂` (using
/// `λ₃ = (λ₁λ₂)⁻¹`).
pub const FIRST_FACTOR_EXPONENTS: [[i64; 2]; 3] = [[2, 0], [0, 2], [-2, -2]];
pub const SECOND_FACTOR_EXPONENTS: [[i64; 2]; 3] = [[-2, 0], [0, -2], [2, 2]];

/// Normal fan of the Minkowski sum of the given exponent sets, computed in
/// the lattice the exponents actually generate.
pub fn orbit_closure_fan(factors: &[&[[i64; 2]]]) -> Result<Fan2D> {
    let Some((first, rest)) = factors.split_first() else { return Err(Error::Degenerate) };
    let points = rest.iter().fold(first.to_vec(), |acc, f| minkowski_sum(&acc, f));
    let coords = affine_lattice_coordinates(&points)?;
    Fan2D::new(lattice_polygon_normal_fan(&coords)?)
}

/// The torus-orbit closure in `ℙ² × ℙ²`.
pub fn orbit_closure_surface() -> Fan2D {
    orbit_closure_fan(&[&FIRST_FACTOR_EXPONENTS, &SECOND_FACTOR_EXPONENTS]).expect("hexagon")
}

/// ℙ² blown up at its three coordinate points: corners 0, 2, 4 in turn.
pub fn y_fan() -> Fan2D {
    let f = toric_blowup(&fan_p2(), 0).expect("corner exists");
    let f = toric_blowup(&f, 2).expect("corner exists");
    toric_blowup(&f, 4).expect("corner exists")
}

/// Labels of the hexagon rays of [`y_fan`] in counterclockwise order.
pub const Y_LABELS: [&str; 6] = ["D1", "E3", "D2", "E1", "D3", "E2"];

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass(pub Vec<i64>);

impl DivisorClass {
    pub fn zero(rank: usize) -> Self {
        DivisorClass(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn scale(&self, k: i64) -> Self {
        DivisorClass(self.0.iter().map(|x| x * k).collect())
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceOrigin {
    Toric(Fan2D),
    /// ℙ² blown up at three points; only their collinearity is recorded.
    Blowup { collinear: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSurface {
    origin: SurfaceOrigin,
    basis_labels: Vec<String>,
    gram: Vec<Vec<i64>>,
    named: Vec<(String, DivisorClass)>,
    anticanonical: DivisorClass,
}

fn unit(rank: usize, k: usize) -> DivisorClass {
    let mut v = vec![0; rank];
    v[k] = 1;
    DivisorClass(v)
}

impl RationalSurface {
    /// A toric surface whose Picard basis is the boundary divisors at the
    /// indices in `basis`. The two remaining rays must form a ℤ-basis of ℤ²;
    /// their divisors are rewritten through the principal divisors
    /// `Σ ⟨m, v_ρ⟩ D_ρ`.
    pub fn toric(fan: Fan2D, labels: &[&str], basis: &[usize]) -> Result<Self> {
        let n = fan.len();
        if labels.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: labels.len() });
        }
        if basis.len() != n - 2 || basis.iter().any(|&i| i >= n) {
            return Err(Error::DimensionMismatch { expected: n - 2, got: basis.len() });
        }
        let rest: Vec<usize> = (0..n).filter(|i| !basis.contains(i)).collect();
        let [a, b] = rest[..] else { return Err(Error::DimensionMismatch { expected: 2, got: rest.len() }) };
        let (va, vb) = (fan.rays[a], fan.rays[b]);
        let d = det2(va, vb);
        if d.abs() != 1 {
            return Err(Error::NotSmooth(format!("rays {va:?}, {vb:?} do not form a basis")));
        }
        // Rows of the inverse of [va vb]ᵀ: ⟨m_a, va⟩ = 1, ⟨m_a, vb⟩ = 0 and vice versa.
        let m_a = [vb[1] * d, -vb[0] * d];
        let m_b = [-va[1] * d, va[0] * d];
        let r = basis.len();
        let mut classes = vec![DivisorClass::zero(r); n];
        for (k, &i) in basis.iter().enumerate() {
            classes[i] = unit(r, k);
        }
        for (idx, m) in [(a, m_a), (b, m_b)] {
            classes[idx] = DivisorClass(basis.iter().map(|&i| -(m[0] * fan.rays[i][0] + m[1] * fan.rays[i][1])).collect());
        }
        let selfs = fan.self_intersections();
        let gram: Vec<Vec<i64>> = basis
            .iter()
            .map(|&i| {
                basis
                    .iter()
                    .map(|&j| {
                        if i == j {
                            selfs[i]
                        } else if fan.adjacent(i, j) {
                            1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        let anticanonical = classes.iter().fold(DivisorClass::zero(r), |acc, c| &acc + c);
        Ok(RationalSurface {
            origin: SurfaceOrigin::Toric(fan),
            basis_labels: basis.iter().map(|&i| labels[i].to_string()).collect(),
            gram,
            named: labels.iter().map(|l| l.to_string()).zip(classes).collect(),
            anticanonical,
        })
    }

    pub fn origin(&self) -> &SurfaceOrigin {
        &self.origin
    }

    pub fn picard_rank(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn picard_basis(&self) -> (usize, Vec<String>) {
        (self.picard_rank(), self.basis_labels.clone())
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Named classes: the boundary divisors of a toric surface, or the curve
    /// classes of a blowup.
    pub fn named_classes(&self) -> &[(String, DivisorClass)] {
        &self.named
    }

    pub fn boundary_class(&self, label: &str) -> Result<DivisorClass> {
        if let Some((_, c)) = self.named.iter().find(|(l, _)| l == label) {
            return Ok(c.clone());
        }
        match self.basis_labels.iter().position(|l| l == label) {
            Some(k) => Ok(unit(self.picard_rank(), k)),
            None => Err(Error::UnknownLabel(label.to_string())),
        }
    }

    /// `Σ cᵢ·[labelᵢ]`.
    pub fn class_of(&self, terms: &[(&str, i64)]) -> Result<DivisorClass> {
        terms.iter().try_fold(DivisorClass::zero(self.picard_rank()), |acc, &(l, c)| Ok(&acc + &self.boundary_class(l)?.scale(c)))
    }

    pub fn intersection(&self, c1: &DivisorClass, c2: &DivisorClass) -> i64 {
        let n = self.picard_rank();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| c1.0[i] * self.gram[i][j] * c2.0[j]).sum()
    }

    pub fn self_intersection(&self, c: &DivisorClass) -> i64 {
        self.intersection(c, c)
    }

    /// Classes in Pic are lattice vectors, so linear equivalence is equality.
    pub fn linear_equivalent(&self, c1: &DivisorClass, c2: &DivisorClass) -> bool {
        c1 == c2
    }

    pub fn anticanonical(&self) -> &DivisorClass {
        &self.anticanonical
    }

    pub fn collinear(&self) -> Option<bool> {
        match self.origin {
            SurfaceOrigin::Blowup { collinear } => Some(collinear),
            SurfaceOrigin::Toric(_) => None,
        }
    }
}

/// `Y(𝔸)`: the hexagon surface with Pic basis `{D1, E1, E2, E3}`.
pub fn y_surface() -> RationalSurface {
    // D1, E1, E2, E3 sit at hexagon positions 0, 3, 5, 1.
    RationalSurface::toric(y_fan(), &Y_LABELS, &[0, 3, 5, 1]).expect("D2, D3 rays form a basis")
}

/// ℙ² blown up at three points, Pic basis `{L, E1, E2, E3}`.
///
/// Collinear points get the classes `F0 = L − E1 − E2 − E3` and `Fi = Ei`;
/// points in general position get `Ei` and the lines `Ljk = L − Ej − Ek`.
pub fn blowup_p2_config(collinear: bool) -> RationalSurface {
    let gram: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| if i != j { 0 } else if i == 0 { 1 } else { -1 }).collect()).collect();
    let c = |v: [i64; 4]| DivisorClass(v.to_vec());
    let named: Vec<(String, DivisorClass)> = if collinear {
        vec![
            ("F0".into(), c([1, -1, -1, -1])),
            ("F1".into(), c([0, 1, 0, 0])),
            ("F2".into(), c([0, 0, 1, 0])),
            ("F3".into(), c([0, 0, 0, 1])),
        ]
    } else {
        vec![
            ("L23".into(), c([1, 0, -1, -1])),
            ("L13".into(), c([1, -1, 0, -1])),
            ("L12".into(), c([1, -1, -1, 0])),
        ]
    };
    RationalSurface {
        origin: SurfaceOrigin::Blowup { collinear },
        basis_labels: ["L", "E1", "E2", "E3"].map(String::from).to_vec(),
        gram,
        named,
        anticanonical: c([3, -1, -1, -1]),
    }
}

/// Irreducible curves of negative self-intersection.
///
/// For a blowup of three points the candidates are `Ei`, `L − Ei − Ej` and
/// `L − E1 − E2 − E3`; a line class through two points is irreducible exactly
/// when the third point is off that line, and the class through all three is
/// effective exactly when they are collinear. For a toric surface these are
/// the boundary divisors of negative square.
pub fn negative_curves(s: &RationalSurface) -> Vec<(String, DivisorClass)> {
    match s.origin {
        SurfaceOrigin::Toric(_) => s.named.iter().filter(|(_, c)| s.self_intersection(c) < 0).cloned().collect(),
        SurfaceOrigin::Blowup { collinear } => {
            let c = |v: [i64; 4]| DivisorClass(v.to_vec());
            let mut out: Vec<(String, DivisorClass)> = (1..=3).map(|i| (format!("E{i}"), unit(4, i))).collect();
            if collinear {
                out.push(("F0".into(), c([1, -1, -1, -1])));
            } else {
                out.push(("L23".into(), c([1, 0, -1, -1])));
                out.push(("L13".into(), c([1, -1, 0, -1])));
                out.push(("L12".into(), c([1, -1, -1, 0])));
            }
            debug_assert!(out.iter().all(|(_, d)| s.self_intersection(d) < 0));
            out
        }
    }
}

/// The cone of curves. For the blowups considered here it is spanned by the
/// negative curves; for a complete toric surface by the boundary divisors.
pub fn mori_cone(s: &RationalSurface) -> RationalCone {
    let gens: Vec<Vec<i64>> = match s.origin {
        SurfaceOrigin::Toric(_) => s.named.iter().map(|(_, c)| c.0.clone()).collect(),
        SurfaceOrigin::Blowup { .. } => negative_curves(s).into_iter().map(|(_, c)| c.0).collect(),
    };
    RationalCone::new(s.picard_rank(), gens).expect("rank at most six")
}

/// `(positive, negative, zero)` counts of a symmetric integer matrix, by
/// rational congruence diagonalization.
pub fn signature(gram: &[Vec<i64>]) -> (usize, usize, usize) {
    let mut a: Vec<Vec<Rational64>> = gram.iter().map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect()).collect();
    let n = a.len();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // Replace e_k by e_k + e_j; the new diagonal is 2·a_kj ≠ 0.
                for i in 0..n {
                    let v = a[j][i];
                    a[k][i] += v;
                }
                for i in 0..n {
                    let v = a[i][j];
                    a[i][k] += v;
                }
            }
        }
        let p = a[k][k];
        if p.is_zero() {
            continue;
        }
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            let f = a[i][k] / p;
            for j in k..n {
                let v = a[k][j];
                a[i][j] -= f * v;
            }
        }
        for i in k + 1..n {
            a[k][i] = Rational64::zero();
            a[i][k] = Rational64::zero();
        }
    }
    (pos, neg, n - pos - neg)
}

/// An integer matrix acting on Pic; column `k` is the image of basis vector `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicAction {
    pub label: String,
    matrix: Vec<Vec<i64>>,
}

impl PicAction {
    pub fn new(label: impl Into<String>, matrix: Vec<Vec<i64>>) -> Self {
        PicAction { label: label.into(), matrix }
    }

    pub fn identity(label: impl Into<String>, rank: usize) -> Self {
        PicAction::new(label, (0..rank).map(|i| unit(rank, i).0).collect())
    }

    pub fn from_images(label: impl Into<String>, images: &[DivisorClass]) -> Self {
        let n = images.len();
        PicAction::new(label, (0..n).map(|i| images.iter().map(|c| c.0[i]).collect()).collect())
    }

    /// The action induced by a relabeling of the named classes. Fails if the
    /// relabeling is incompatible with linear equivalence.
    pub fn from_relabeling(s: &RationalSurface, label: impl Into<String>, f: impl Fn(&str) -> String) -> Result<Self> {
        let label = label.into();
        let images: Vec<DivisorClass> = s.basis_labels.iter().map(|l| s.boundary_class(&f(l))).collect::<Result<_>>()?;
        let act = PicAction::from_images(label.clone(), &images);
        for (l, c) in &s.named {
            if act.apply(c) != s.boundary_class(&f(l))? {
                return Err(Error::Inconsistent(format!("{label} on {l}")));
            }
        }
        Ok(act)
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, c: &DivisorClass) -> DivisorClass {
        DivisorClass(self.matrix.iter().map(|row| row.iter().zip(&c.0).map(|(a, b)| a * b).sum()).collect())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PicAction) -> PicAction {
        let n = self.rank();
        let m = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum()).collect()).collect();
        PicAction::new(format!("{}*{}", self.label, other.label), m)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
    }

    pub fn is_unimodular(&self) -> bool {
        let m = IntMatrix::from_rows(self.rank(), &self.matrix).expect("square");
        m.rank() == self.rank() && m.is_saturated()
    }

    /// `Mᵀ·Q·M = Q` and `M` invertible over ℤ.
    pub fn is_isometry(&self, gram: &[Vec<i64>]) -> bool {
        let n = self.rank();
        let m = &self.matrix;
        let preserves = (0..n).all(|i| {
            (0..n).all(|j| {
                let v: i64 = (0..n).flat_map(|k| (0..n).map(move |l| (k, l))).map(|(k, l)| m[k][i] * gram[k][l] * m[l][j]).sum();
                v == gram[i][j]
            })
        });
        preserves && self.is_unimodular()
    }

    pub fn check_isometry(&self, s: &RationalSurface) -> Result<()> {
        if self.rank() == s.picard_rank() && self.is_isometry(s.gram()) {
            Ok(())
        } else {
            Err(Error::NotIsometry(self.label.clone()))
        }
    }
}

/// Names a permutation of `{1,2,3}` as `id`, `s12`, `s13`, `s23`, `s123`
/// (`1→2→3→1`) or `s321`.
pub fn permutation_label(p: Permutation) -> &'static str {
    match p.images() {
        [0, 1, 2] => "id",
        [1, 0, 2] => "s12",
        [2, 1, 0] => "s13",
        [0, 2, 1] => "s23",
        [1, 2, 0] => "s123",
        _ => "s321",
    }
}

fn relabel_index(l: &str, f: impl Fn(usize) -> usize) -> String {
    let (head, idx) = l.split_at(1);
    let i: usize = idx.parse().expect("labels end in an index");
    format!("{head}{}", f(i - 1) + 1)
}

/// `σ(D_i) = D_{σ(i)}`, `σ(E_j) = E_{σ(j)}` on `Pic Y(𝔸)`.
pub fn s3_pic_action(p: Permutation) -> PicAction {
    PicAction::from_relabeling(&y_surface(), permutation_label(p), |l| relabel_index(l, |i| p.apply(i)))
        .expect("the symmetric group acts on the hexagon")
}

pub fn s3_pic_actions() -> Vec<PicAction> {
    Permutation::all().into_iter().map(s3_pic_action).collect()
}

/// `θ(D_i) = E_i`, `θ(E_i) = D_i`.
pub fn theta_pic_action() -> PicAction {
    PicAction::from_relabeling(&y_surface(), "theta", |l| {
        let (head, idx) = l.split_at(1);
        format!("{}{idx}", if head == "D" { "E" } else { "D" })
    })
    .expect("v -> -v is an automorphism of the hexagon fan")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantLattice {
    pub rank: usize,
    /// Rows in Hermite normal form.
    pub basis: IntMatrix,
}

impl InvariantLattice {
    pub fn basis_classes(&self) -> Vec<DivisorClass> {
        self.basis.to_rows_i64().into_iter().map(DivisorClass).collect()
    }

    pub fn is_spanned_by(&self, classes: &[DivisorClass]) -> bool {
        let rows: Vec<Vec<i64>> = classes.iter().map(|c| c.0.clone()).collect();
        match IntMatrix::from_rows(self.basis.cols(), &rows) {
            Ok(m) => same_lattice(&self.basis, &m),
            Err(_) => false,
        }
    }
}

/// `⋂ ker(g − id)` over the given actions; saturated by construction.
pub fn invariant_sublattice(rank: usize, actions: &[PicAction]) -> InvariantLattice {
    if actions.is_empty() {
        return InvariantLattice { rank, basis: IntMatrix::identity(rank) };
    }
    let rows: Vec<Vec<i64>> = actions
        .iter()
        .flat_map(|g| g.matrix.iter().enumerate().map(|(i, row)| row.iter().enumerate().map(|(j, &x)| x - i64::from(i == j)).collect()))
        .collect();
    let basis = IntMatrix::from_rows(rank, &rows).expect("square actions").integer_kernel();
    InvariantLattice { rank: basis.rows(), basis }
}

/// The map `Pic Y(𝔸) → Pic Bl₃ℙ²` with `D_i ↦ L − E_j − E_k`, `E_i ↦ E_i`,
/// checked to be an isometry carrying the six boundary classes onto the six
/// negative curves of the general-position blowup.
pub fn identify_y_with_general_blowup() -> Result<Vec<Vec<i64>>> {
    let y = y_surface();
    let b = blowup_p2_config(false);
    let line = |i: usize| -> Result<DivisorClass> {
        let others: Vec<usize> = (1..=3).filter(|&j| j != i).collect();
        b.boundary_class(&format!("L{}{}", others[0], others[1]))
    };
    let image = |l: &str| -> Result<DivisorClass> {
        let i: usize = l[1..].parse().expect("indexed label");
        if l.starts_with('D') {
            line(i)
        } else {
            b.boundary_class(l)
        }
    };
    let images: Vec<DivisorClass> = y.basis_labels.iter().map(|l| image(l)).collect::<Result<_>>()?;
    let m = PicAction::from_images("Y->Bl", &images);
    let q_src = y.gram();
    let q_dst = b.gram();
    let n = 4;
    for i in 0..n {
        for j in 0..n {
            let v: i64 = (0..n).flat_map(|k| (0..n).map(move |l| (k, l))).map(|(k, l)| m.matrix[k][i] * q_dst[k][l] * m.matrix[l][j]).sum();
            if v != q_src[i][j] {
                return Err(Error::NotIsometry(m.label));
            }
        }
    }
    let mut mapped: Vec<DivisorClass> = y.named.iter().map(|(_, c)| m.apply(c)).collect();
    let mut negs: Vec<DivisorClass> = negative_curves(&b).into_iter().map(|(_, c)| c).collect();
    mapped.sort();
    negs.sort();
    for (l, c) in &y.named {
        if m.apply(c) != image(l)? {
            return Err(Error::Inconsistent(format!("boundary class {l}")));
        }
    }
    if mapped != negs {
        return Err(Error::Inconsistent("boundary classes do not match the negative curves".into()));
    }
    Ok(m.matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::FacePosition;

    fn cls(s: &RationalSurface, terms: &[(&str, i64)]) -> DivisorClass {
        s.class_of(terms).unwrap()
    }

    #[test]
    fn standard_fans() {
        assert_eq!(fan_p2().rays(), &[[1, 0], [0, 1], [-1, -1]]);
        assert_eq!(fan_p2().self_intersections(), vec![1, 1, 1]);
        assert_eq!(fan_hirzebruch(3).self_intersections(), vec![0, -3, 0, 3]);
        assert!(Fan2D::new(vec![[1, 0], [0, 1], [-1, 0], [0, -1], [1, 0], [0, 1], [-1, 0], [0, -1]]).is_err());
        assert!(Fan2D::new(vec![[1, 0], [1, 2], [-1, -1]]).is_err());
    }

    #[test]
    fn blowups_of_p2() {
        let y = y_fan();
        assert_eq!(y.rays(), &[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]]);
        assert_eq!(y.self_intersections(), vec![-1; 6]);
        assert_eq!(y.picard_rank(), 4);
        assert_eq!(toric_blowup(&fan_p2(), 3), Err(Error::InvalidCorner { index: 3, len: 3 }));
        for c in 0..3 {
            assert!(fans_isomorphic(&toric_blowup(&fan_p2(), c).unwrap(), &fan_hirzebruch(1)));
        }
        assert!(!fans_isomorphic(&fan_hirzebruch(0), &fan_hirzebruch(1)));
        assert!(!fans_isomorphic(&fan_hirzebruch(2), &fan_hirzebruch(3)));
    }

    #[test]
    fn blowups_add_one_to_picard_rank() {
        let mut f = fan_hirzebruch(2);
        for k in 0..4 {
            let g = toric_blowup(&f, k % f.len()).unwrap();
            assert_eq!(g.picard_rank(), f.picard_rank() + 1);
            f = g;
        }
    }

    #[test]
    fn orbit_closure_is_the_hexagon() {
        let f = orbit_closure_surface();
        assert_eq!(f.len(), 6);
        assert_eq!(f.picard_rank(), 4);
        assert!(fans_isomorphic(&f, &y_fan()));
        let half = orbit_closure_fan(&[&FIRST_FACTOR_EXPONENTS]).unwrap();
        assert!(fans_isomorphic(&half, &fan_p2()));
    }

    #[test]
    fn y_intersection_numbers() {
        let y = y_surface();
        assert_eq!(y.picard_basis(), (4, ["D1", "E1", "E2", "E3"].map(String::from).to_vec()));
        for l in Y_LABELS {
            let c = y.boundary_class(l).unwrap();
            assert_eq!(y.self_intersection(&c), -1, "{l}");
        }
        // hexagon neighbours meet once, others not at all
        for i in 0..6 {
            for j in 0..6 {
                if i == j {
                    continue;
                }
                let a = y.boundary_class(Y_LABELS[i]).unwrap();
                let b = y.boundary_class(Y_LABELS[j]).unwrap();
                let expected = i64::from((i + 1) % 6 == j || (j + 1) % 6 == i);
                assert_eq!(y.intersection(&a, &b), expected, "{} {}", Y_LABELS[i], Y_LABELS[j]);
            }
        }
        assert_eq!(y.boundary_class("D4"), Err(Error::UnknownLabel("D4".into())));
        assert_eq!(y.self_intersection(y.anticanonical()), 6);
        assert_eq!(signature(y.gram()), (1, 3, 0));
    }

    #[test]
    fn y_linear_equivalences() {
        let y = y_surface();
        let d1e1 = cls(&y, &[("D1", 1), ("E1", -1)]);
        let d2e2 = cls(&y, &[("D2", 1), ("E2", -1)]);
        let d3e3 = cls(&y, &[("D3", 1), ("E3", -1)]);
        assert!(y.linear_equivalent(&d1e1, &d2e2) && y.linear_equivalent(&d2e2, &d3e3));
        assert!(y.linear_equivalent(&cls(&y, &[("E1", 1), ("E2", 1), ("D3", 1)]), &cls(&y, &[("E1", 1), ("E3", 1), ("D2", 1)])));
        assert!(!y.linear_equivalent(&cls(&y, &[("D1", 1)]), &cls(&y, &[("E1", 1)])));
        assert_eq!(y.boundary_class("D2").unwrap(), DivisorClass(vec![1, -1, 1, 0]));
    }

    #[test]
    fn collinear_blowup_numbers() {
        let s = blowup_p2_config(true);
        let f0 = s.boundary_class("F0").unwrap();
        assert_eq!(s.self_intersection(&f0), -2);
        for i in 1..=3 {
            assert_eq!(s.intersection(&f0, &s.boundary_class(&format!("F{i}")).unwrap()), 1);
        }
        let k = cls(&s, &[("F0", 3), ("F1", 2), ("F2", 2), ("F3", 2)]);
        assert_eq!(&k, s.anticanonical());
        assert_eq!(signature(s.gram()), (1, 3, 0));
    }

    #[test]
    fn mori_cones_of_the_blowups() {
        let general = blowup_p2_config(false);
        assert_eq!(mori_cone(&general).extremal_rays().len(), 6);
        let s = blowup_p2_config(true);
        let cone = mori_cone(&s);
        assert_eq!(cone.extremal_rays().len(), 4);
        let f0 = s.boundary_class("F0").unwrap();
        for i in 1..=3 {
            let v = &f0 + &s.boundary_class(&format!("F{i}")).unwrap();
            assert!(matches!(cone.face_position(&v.0), FacePosition::RelativeInteriorOfFace { dim: 2, .. }));
        }
    }

    #[test]
    fn general_blowup_matches_y() {
        assert!(identify_y_with_general_blowup().is_ok());
    }

    #[test]
    fn s3_actions_on_y() {
        let y = y_surface();
        let acts = s3_pic_actions();
        let s12 = s3_pic_action(Permutation::S12);
        assert_eq!(s12.apply(&y.boundary_class("D1").unwrap()), DivisorClass(vec![1, -1, 1, 0]));
        for a in acts.iter().chain([&theta_pic_action()]) {
            assert!(a.is_isometry(y.gram()), "{}", a.label);
            assert_eq!(&a.apply(y.anticanonical()), y.anticanonical());
        }
        assert!(theta_pic_action().compose(&theta_pic_action()).is_identity());
        for p in Permutation::all() {
            for q in Permutation::all() {
                assert_eq!(s3_pic_action(p).compose(&s3_pic_action(q)).matrix(), s3_pic_action(p.compose(q)).matrix());
            }
        }
    }

    #[test]
    fn invariant_lattices() {
        let y = y_surface();
        let c = |t: &[(&str, i64)]| cls(&y, t);
        let s12 = invariant_sublattice(4, &[s3_pic_action(Permutation::S12)]);
        assert_eq!(s12.rank, 3);
        assert!(s12.is_spanned_by(&[c(&[("D1", 1), ("E2", 1)]), c(&[("E1", 1), ("E2", 1)]), c(&[("E3", 1)])]));
        let s23 = invariant_sublattice(4, &[s3_pic_action(Permutation::S23)]);
        assert!(s23.is_spanned_by(&[c(&[("D1", 1)]), c(&[("E1", 1)]), c(&[("E2", 1), ("E3", 1)])]));
        let all = invariant_sublattice(4, &s3_pic_actions());
        assert_eq!(all.rank, 2);
        assert!(all.is_spanned_by(&[c(&[("D1", 1), ("E2", 1), ("E3", 1)]), c(&[("E1", 1), ("E2", 1), ("E3", 1)])]));
        // the rank-2 lattice is not spanned by a proper multiple
        assert!(!all.is_spanned_by(&[c(&[("D1", 2), ("E2", 2), ("E3", 2)]), c(&[("E1", 1), ("E2", 1), ("E3", 1)])]));
    }

    #[test]
    fn signature_of_indefinite_forms() {
        assert_eq!(signature(&[vec![0, 1], vec![1, 0]]), (1, 1, 0));
        assert_eq!(signature(&[vec![0, 0], vec![0, 0]]), (0, 0, 2));
        assert_eq!(signature(&[vec![1, 2], vec![2, 4]]), (1, 0, 1));
    }
}
