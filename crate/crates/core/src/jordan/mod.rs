//! The Jordan algebra `J₃(𝔸)` and linear maps on it.

mod endo;
mod hermitian;
mod projective;

pub use endo::{
    cartan_basis, centralizer_dim_in_j0, centralizer_in_j0, derivation_algebra_dim, derivation_algebra_dim_mod,
    derivation_algebra_dim_with, derivation_basis, derivation_equation_count, derivation_equations, s3_representation,
    DiagonalTorusElement, Endomorphism,
};
pub use hermitian::{AlgMatrix3, HermitianMatrix};
pub use projective::{on_cubic, ProjectivePoint};

use std::fmt;

/// A permutation of `{0, 1, 2}` stored by its images.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation([usize; 3]);

impl Permutation {
    pub const S12: Permutation = Permutation([1, 0, 2]);
    pub const S23: Permutation = Permutation([0, 2, 1]);

    pub fn identity() -> Self {
        Permutation([0, 1, 2])
    }

    /// Returns `None` unless `images` is a bijection of `{0, 1, 2}`.
    pub fn from_images(images: [usize; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for &i in &images {
            if i > 2 || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation(images))
    }

    /// All six permutations in lexicographic order of their image tuples.
    pub fn all() -> [Permutation; 6] {
        [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]].map(Permutation)
    }

    pub fn apply(self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(self) -> [usize; 3] {
        self.0
    }

    /// `self ∘ other`, i.e. `other` first.
    pub fn compose(self, other: Permutation) -> Permutation {
        Permutation(other.0.map(|i| self.0[i]))
    }

    pub fn inverse(self) -> Permutation {
        let mut inv = [0; 3];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Permutation(inv)
    }

    /// A shortest word `[t1, …, tk]` in `S12`, `S23` with `t1 ∘ … ∘ tk = self`.
    pub fn transposition_word(self) -> Vec<Permutation> {
        let gens = [Self::S12, Self::S23];
        let mut frontier = vec![(Self::identity(), Vec::new())];
        loop {
            if let Some((_, w)) = frontier.iter().find(|(p, _)| *p == self) {
                return w.clone();
            }
            frontier = frontier
                .into_iter()
                .flat_map(|(p, w)| {
                    gens.iter().map(move |&g| {
                        let mut w2 = w.clone();
                        w2.push(g);
                        (p.compose(g), w2)
                    })
                })
                .collect();
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {} {}]", self.0[0] + 1, self.0[1] + 1, self.0[2] + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_multiply_back() {
        for p in Permutation::all() {
            let w = p.transposition_word();
            assert!(w.len() <= 3);
            let prod = w.iter().fold(Permutation::identity(), |acc, &t| acc.compose(t));
            assert_eq!(prod, p);
            assert_eq!(p.compose(p.inverse()), Permutation::identity());
        }
        assert_eq!(Permutation::from_images([0, 0, 1]), None);
    }
}
