//! Root systems of types A₁, A₂, C₃, F₄, the Weyl dimension formula and
//! Freudenthal's multiplicity recursion.
//!
//! Roots are realized in orthonormal coordinates with the form scaled so that
//! long roots have squared length 2. Weights are stored by their Dynkin labels
//! (coordinates in the fundamental-weight basis).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraTag;
use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    A1,
    A2,
    C3,
    F4,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl RootType {
    /// Cartan matrix `A_ij = 2⟨α_i, α_j⟩ / ⟨α_j, α_j⟩` in Bourbaki numbering.
    pub fn expected_cartan(self) -> Vec<Vec<i64>> {
        match self {
            RootType::A1 => vec![vec![2]],
            RootType::A2 => vec![vec![2, -1], vec![-1, 2]],
            RootType::C3 => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
            RootType::F4 => vec![vec![2, -1, 0, 0], vec![-1, 2, -2, 0], vec![0, -1, 2, -1], vec![0, 0, -1, 2]],
        }
    }

    pub fn expected_positive_roots(self) -> usize {
        match self {
            RootType::A1 => 1,
            RootType::A2 => 3,
            RootType::C3 => 9,
            RootType::F4 => 24,
        }
    }

    /// Type of the derivation algebra of `J₃(𝔸)`.
    pub fn for_tag(tag: AlgebraTag) -> Self {
        match tag {
            AlgebraTag::C => RootType::A1,
            AlgebraTag::CxC => RootType::A2,
            AlgebraTag::HC => RootType::C3,
            AlgebraTag::OC => RootType::F4,
        }
    }
}

/// Dynkin labels of a weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| if c == 1 { format!("w{}", i + 1) } else { format!("{c}w{}", i + 1) })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    kind: RootType,
    simple: Vec<Vec<Rational64>>,
    /// The form is `scale · (x · y)` on the ambient space.
    scale: Rational64,
    /// `⟨ω_i, ω_j⟩`.
    weight_gram: Vec<Vec<Rational64>>,
    cartan: Vec<Vec<i64>>,
}

fn r(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn half(n: i64) -> Rational64 {
    Rational64::new(n, 2)
}

fn solve_rational(mut a: Vec<Vec<Rational64>>, mut b: Vec<Vec<Rational64>>) -> Vec<Vec<Rational64>> {
    // Gauss–Jordan on a square invertible system with several right-hand sides.
    let n = a.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).expect("invertible");
        a.swap(c, p);
        b.swap(c, p);
        let inv = a[c][c].recip();
        a[c].iter_mut().for_each(|x| *x *= inv);
        b[c].iter_mut().for_each(|x| *x *= inv);
        for i in (0..n).filter(|&i| i != c) {
            let f = a[i][c];
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = a[c][j];
                a[i][j] -= f * v;
            }
            for j in 0..b[i].len() {
                let v = b[c][j];
                b[i][j] -= f * v;
            }
        }
    }
    b
}

impl RootSystem {
    pub fn new(kind: RootType) -> Self {
        let (simple, scale): (Vec<Vec<Rational64>>, Rational64) = match kind {
            RootType::A1 => (vec![vec![r(1), r(-1)]], r(1)),
            RootType::A2 => (vec![vec![r(1), r(-1), r(0)], vec![r(0), r(1), r(-1)]], r(1)),
            RootType::C3 => (
                vec![vec![r(1), r(-1), r(0)], vec![r(0), r(1), r(-1)], vec![r(0), r(0), r(2)]],
                half(1),
            ),
            RootType::F4 => (
                vec![
                    vec![r(0), r(1), r(-1), r(0)],
                    vec![r(0), r(0), r(1), r(-1)],
                    vec![r(0), r(0), r(0), r(1)],
                    vec![half(1), half(-1), half(-1), half(-1)],
                ],
                r(1),
            ),
        };
        let n = simple.len();
        let dot = |x: &[Rational64], y: &[Rational64]| -> Rational64 {
            x.iter().zip(y).map(|(a, b)| a * b).sum::<Rational64>() * scale
        };
        let gram: Vec<Vec<Rational64>> = (0..n).map(|i| (0..n).map(|j| dot(&simple[i], &simple[j])).collect()).collect();
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = r(2) * gram[i][j] / gram[j][j];
                        assert!(v.is_integer(), "Cartan entries are integers");
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        // ω_i = Σ_k c_ik α_k with ⟨ω_i, α_j^∨⟩ = δ_ij, i.e. C · (2G/diag) = I.
        let coroot_pairing: Vec<Vec<Rational64>> =
            (0..n).map(|k| (0..n).map(|j| r(2) * gram[k][j] / gram[j][j]).collect()).collect();
        // Solve Cᵀ-system: for each i, Σ_k c_ik P[k][j] = δ_ij, so c = P⁻¹.
        let ident: Vec<Vec<Rational64>> = (0..n).map(|i| (0..n).map(|j| if i == j { r(1) } else { r(0) }).collect()).collect();
        let pt: Vec<Vec<Rational64>> = (0..n).map(|j| (0..n).map(|k| coroot_pairing[k][j]).collect()).collect();
        let ct = solve_rational(pt, ident);
        let c: Vec<Vec<Rational64>> = (0..n).map(|i| (0..n).map(|k| ct[k][i]).collect()).collect();
        let weight_gram: Vec<Vec<Rational64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).flat_map(|k| (0..n).map(move |l| (k, l))).map(|(k, l)| c[i][k] * c[j][l] * gram[k][l]).sum())
                    .collect()
            })
            .collect();
        RootSystem { kind, simple, scale, weight_gram, cartan }
    }

    pub fn kind(&self) -> RootType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots_ambient(&self) -> &[Vec<Rational64>] {
        &self.simple
    }

    pub fn form_scale(&self) -> Rational64 {
        self.scale
    }

    /// Simple root `α_i` in Dynkin labels (row i of the Cartan matrix).
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight(self.cartan[i].clone())
    }

    pub fn inner(&self, a: &Weight, b: &Weight) -> Rational64 {
        let n = self.rank();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| a.0[i] != 0 && b.0[j] != 0)
            .map(|(i, j)| r(a.0[i] * b.0[j]) * self.weight_gram[i][j])
            .sum()
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// `s_i(μ) = μ − ⟨μ, α_i^∨⟩ α_i`; the pairing is the i-th Dynkin label.
    pub fn reflect(&self, mu: &Weight, i: usize) -> Weight {
        mu.sub(&self.simple_root(i).scaled(mu.0[i]))
    }

    /// Positive roots in Dynkin labels, found by closing the simple roots
    /// under simple reflections and keeping those with nonnegative simple-root
    /// coordinates.
    pub fn positive_roots(&self) -> Vec<Weight> {
        let mut roots: BTreeSet<Weight> = (0..self.rank()).map(|i| self.simple_root(i)).collect();
        let mut frontier: Vec<Weight> = roots.iter().cloned().collect();
        while let Some(a) = frontier.pop() {
            for i in 0..self.rank() {
                let b = self.reflect(&a, i);
                if roots.insert(b.clone()) {
                    frontier.push(b);
                }
            }
        }
        let mut pos: Vec<Weight> = roots
            .into_iter()
            .filter(|a| self.root_coordinates(a).expect("roots lie in the root lattice").iter().all(|&c| c >= 0))
            .collect();
        pos.sort_by_key(|a| (self.height(a), a.clone()));
        pos
    }

    /// Integer coordinates in the simple-root basis, if `w` is in the root
    /// lattice.
    pub fn root_coordinates(&self, w: &Weight) -> Option<Vec<i64>> {
        let rows: Vec<Vec<i64>> = self.cartan.clone();
        IntMatrix::from_rows(self.rank(), &rows).expect("square").row_span_coefficients(&w.0)
    }

    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.root_coordinates(w).is_some()
    }

    fn height(&self, a: &Weight) -> i64 {
        self.root_coordinates(a).map_or(i64::MAX, |c| c.iter().sum())
    }

    pub fn squared_length(&self, a: &Weight) -> Rational64 {
        self.inner(a, a)
    }

    pub fn weyl_dim(&self, lambda: &Weight) -> Result<u64> {
        if lambda.0.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: lambda.0.len() });
        }
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.0.clone()));
        }
        let rho = self.rho();
        let lr = lambda.add(&rho);
        let d = self
            .positive_roots()
            .iter()
            .fold(Rational64::one(), |acc, a| acc * self.inner(&lr, a) / self.inner(&rho, a));
        if !d.is_integer() {
            return Err(Error::Internal(format!("Weyl dimension {d} is not an integer")));
        }
        Ok(d.to_integer() as u64)
    }

    /// Weight multiplicities of the irreducible module with highest weight
    /// `λ`, by Freudenthal's recursion
    /// `(|λ+ρ|² − |μ+ρ|²) m(μ) = 2 Σ_{α>0} Σ_{k≥1} m(μ+kα) ⟨μ+kα, α⟩`,
    /// processing weights by increasing depth below `λ`.
    pub fn freudenthal_multiplicities(&self, lambda: &Weight) -> Result<WeightDiagram> {
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.0.clone()));
        }
        let pos = self.positive_roots();
        let rho = self.rho();
        let lr = lambda.add(&rho);
        let top = self.inner(&lr, &lr);
        let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
        mult.insert(lambda.clone(), 1);
        let mut level: BTreeSet<Weight> = [lambda.clone()].into();
        loop {
            let candidates: BTreeSet<Weight> = level
                .iter()
                .flat_map(|nu| (0..self.rank()).map(move |i| nu.sub(&self.simple_root(i))))
                .filter(|mu| !mult.contains_key(mu))
                .collect();
            let mut next = BTreeSet::new();
            for mu in candidates {
                let mut rhs = Rational64::zero();
                for a in &pos {
                    let mut k = 1;
                    loop {
                        let w = mu.add(&a.scaled(k));
                        let Some(&m) = mult.get(&w) else { break };
                        rhs += r(2) * r(m as i64) * self.inner(&w, a);
                        k += 1;
                    }
                }
                let mr = mu.add(&rho);
                let denom = top - self.inner(&mr, &mr);
                if denom.is_zero() {
                    if !rhs.is_zero() {
                        return Err(Error::Internal(format!("zero Freudenthal denominator at {mu}")));
                    }
                    continue;
                }
                let m = rhs / denom;
                if !m.is_integer() || m < Rational64::zero() {
                    return Err(Error::Internal(format!("non-integral multiplicity {m} at {mu}")));
                }
                if !m.is_zero() {
                    mult.insert(mu.clone(), m.to_integer() as u64);
                    next.insert(mu);
                }
            }
            if next.is_empty() {
                break;
            }
            level = next;
        }
        Ok(WeightDiagram { mult })
    }

    /// Dominant weights with all labels in `0..=max_label`.
    pub fn small_dominant_weights(&self, max_label: i64) -> Vec<Weight> {
        let mut out = vec![Weight(vec![])];
        for _ in 0..self.rank() {
            out = out.into_iter().flat_map(|w| (0..=max_label).map(move |c| Weight([w.0.clone(), vec![c]].concat()))).collect();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDiagram {
    mult: BTreeMap<Weight, u64>,
}

impl WeightDiagram {
    pub fn multiplicity(&self, mu: &Weight) -> u64 {
        self.mult.get(mu).copied().unwrap_or(0)
    }

    pub fn dimension(&self) -> u64 {
        self.mult.values().sum()
    }

    pub fn weights(&self) -> impl Iterator<Item = (&Weight, &u64)> {
        self.mult.iter()
    }

    pub fn zero_multiplicity(&self) -> u64 {
        let rank = self.mult.keys().next().map_or(0, |w| w.0.len());
        self.multiplicity(&Weight::zero(rank))
    }

    /// Whether every simple reflection preserves the multiplicities.
    pub fn is_weyl_invariant(&self, rs: &RootSystem) -> bool {
        self.mult.iter().all(|(mu, &m)| (0..rs.rank()).all(|i| self.multiplicity(&rs.reflect(mu, i)) == m))
    }
}

/// Target dimension `dim J₃(𝔸)₀ = 3 + 3·dim 𝔸 − 1`.
pub fn traceless_dim(tag: AlgebraTag) -> u64 {
    (3 + 3 * tag.dim() - 1) as u64
}

/// Largest Dynkin label considered when searching for the module.
pub const SEARCH_LABEL_BOUND: i64 = 4;

/// All small dominant weights whose Weyl dimension equals `dim J₃(𝔸)₀`.
pub fn dimension_matches(tag: AlgebraTag) -> Vec<Weight> {
    let rs = RootSystem::new(RootType::for_tag(tag));
    let target = traceless_dim(tag);
    rs.small_dominant_weights(SEARCH_LABEL_BOUND)
        .into_iter()
        .filter(|w| rs.weyl_dim(w).is_ok_and(|d| d == target))
        .collect()
}

/// Identifies `J₃(𝔸)₀` as an `so₃(𝔸)`-module by dimension. Ties are broken by
/// requiring the highest weight to lie in the root lattice, which holds
/// because the Cartan part `𝔥₀ ⊂ J₃(𝔸)₀` is a nonzero zero-weight space.
pub fn select_module(tag: AlgebraTag) -> Result<(RootSystem, Weight)> {
    let rs = RootSystem::new(RootType::for_tag(tag));
    let matches: Vec<Weight> = dimension_matches(tag).into_iter().filter(|w| rs.in_root_lattice(w)).collect();
    match matches.len() {
        0 => Err(Error::NoCandidate(traceless_dim(tag) as usize)),
        1 => Ok((rs, matches.into_iter().next().expect("one match"))),
        n => Err(Error::Ambiguous(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [RootType; 4] = [RootType::A1, RootType::A2, RootType::C3, RootType::F4];

    #[test]
    fn cartan_matrices_and_root_counts() {
        for t in ALL {
            let rs = RootSystem::new(t);
            assert_eq!(rs.cartan_matrix(), t.expected_cartan().as_slice(), "{t}");
            assert_eq!(rs.positive_roots().len(), t.expected_positive_roots(), "{t}");
        }
    }

    #[test]
    fn long_roots_have_length_two() {
        for t in ALL {
            let rs = RootSystem::new(t);
            let max = rs.positive_roots().iter().map(|a| rs.squared_length(a)).max().unwrap();
            assert_eq!(max, r(2), "{t}");
        }
    }

    #[test]
    fn f4_short_and_long_roots() {
        let rs = RootSystem::new(RootType::F4);
        let pos = rs.positive_roots();
        let short = pos.iter().filter(|a| rs.squared_length(a) == r(1)).count();
        let long = pos.iter().filter(|a| rs.squared_length(a) == r(2)).count();
        assert_eq!((short, long), (12, 12));
    }

    #[test]
    fn fundamental_weights_pair_dually() {
        for t in ALL {
            let rs = RootSystem::new(t);
            for i in 0..rs.rank() {
                let mut w = Weight::zero(rs.rank());
                w.0[i] = 1;
                for j in 0..rs.rank() {
                    let a = rs.simple_root(j);
                    let pairing = r(2) * rs.inner(&w, &a) / rs.inner(&a, &a);
                    assert_eq!(pairing, if i == j { r(1) } else { r(0) });
                }
            }
        }
    }

    #[test]
    fn weyl_dimensions() {
        let a1 = RootSystem::new(RootType::A1);
        assert_eq!(a1.weyl_dim(&Weight(vec![4])).unwrap(), 5);
        let a2 = RootSystem::new(RootType::A2);
        assert_eq!(a2.weyl_dim(&Weight(vec![1, 1])).unwrap(), 8);
        let c3 = RootSystem::new(RootType::C3);
        assert_eq!(c3.weyl_dim(&Weight(vec![0, 1, 0])).unwrap(), 14);
        assert_eq!(c3.weyl_dim(&Weight(vec![0, 0, 1])).unwrap(), 14);
        let f4 = RootSystem::new(RootType::F4);
        assert_eq!(f4.weyl_dim(&Weight(vec![0, 0, 0, 1])).unwrap(), 26);
        assert_eq!(f4.weyl_dim(&Weight(vec![1, 0, 0, 0])).unwrap(), 52);
        assert_eq!(a2.weyl_dim(&Weight(vec![-1, 1])), Err(Error::NotDominant(vec![-1, 1])));
    }

    #[test]
    fn a1_string() {
        let rs = RootSystem::new(RootType::A1);
        let d = rs.freudenthal_multiplicities(&Weight(vec![4])).unwrap();
        let ws: Vec<(i64, u64)> = d.weights().map(|(w, &m)| (w.0[0], m)).collect();
        assert_eq!(ws, vec![(-4, 1), (-2, 1), (0, 1), (2, 1), (4, 1)]);
    }

    #[test]
    fn adjoint_zero_weight_is_rank() {
        for (t, lambda) in [(RootType::A2, vec![1, 1]), (RootType::C3, vec![2, 0, 0]), (RootType::F4, vec![1, 0, 0, 0])] {
            let rs = RootSystem::new(t);
            let lambda = Weight(lambda);
            let d = rs.freudenthal_multiplicities(&lambda).unwrap();
            assert_eq!(d.zero_multiplicity(), rs.rank() as u64, "{t}");
            assert_eq!(d.dimension(), rs.weyl_dim(&lambda).unwrap(), "{t}");
            assert!(d.is_weyl_invariant(&rs));
        }
    }

    #[test]
    fn dimension_search_and_tie_break() {
        assert_eq!(dimension_matches(AlgebraTag::HC), vec![Weight(vec![0, 0, 1]), Weight(vec![0, 1, 0])]);
        let picks: Vec<Weight> = AlgebraTag::ALL.iter().map(|&t| select_module(t).unwrap().1).collect();
        assert_eq!(picks, vec![Weight(vec![4]), Weight(vec![1, 1]), Weight(vec![0, 1, 0]), Weight(vec![0, 0, 0, 1])]);
    }

    #[test]
    fn module_zero_weights() {
        let zs: Vec<u64> = AlgebraTag::ALL
            .iter()
            .map(|&t| {
                let (rs, w) = select_module(t).unwrap();
                rs.freudenthal_multiplicities(&w).unwrap().zero_multiplicity()
            })
            .collect();
        assert_eq!(zs, vec![1, 2, 2, 2]);
    }

    #[test]
    fn display_weights() {
        assert_eq!(Weight(vec![1, 1]).to_string(), "w1+w2");
        assert_eq!(Weight(vec![4]).to_string(), "4w1");
        assert_eq!(Weight(vec![0, 0]).to_string(), "0");
    }
}
