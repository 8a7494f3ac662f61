//! Incremental elimination of sparse linear systems.
//!
//! Equations are fed one at a time and reduced against the pivot rows found
//! so far, so the full system is never stored. [`ModularEliminator`] runs the
//! same procedure over 𝔽_p as an independent rank check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::scalar::ExactScalar;

/// A sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow = Vec<(usize, ExactScalar)>;

/// Builds a sparse row from possibly repeated, unsorted entries.
pub fn collect_row(entries: impl IntoIterator<Item = (usize, ExactScalar)>) -> SparseRow {
    let mut acc: BTreeMap<usize, ExactScalar> = BTreeMap::new();
    for (c, v) in entries {
        *acc.entry(c).or_default() += &v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// `a − f·b` for sorted sparse rows.
fn axpy(a: &[(usize, ExactScalar)], f: &ExactScalar, b: &[(usize, ExactScalar)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -&(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(f * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[derive(Clone, Debug, Default)]
pub struct SparseEliminator {
    ncols: usize,
    /// Pivot column → row whose leading entry is 1 in that column.
    pivots: BTreeMap<usize, SparseRow>,
    equations: usize,
}

impl SparseEliminator {
    pub fn new(ncols: usize) -> Self {
        SparseEliminator { ncols, pivots: BTreeMap::new(), equations: 0 }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn equations_seen(&self) -> usize {
        self.equations
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    /// Reduces `row` against the current pivots; returns true if it was
    /// independent and became a new pivot row.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0), "row must be sorted");
        debug_assert!(row.last().is_none_or(|e| e.0 < self.ncols), "column out of range");
        self.equations += 1;
        let mut row = row;
        loop {
            let Some((c, lead)) = row.first().cloned() else { return false };
            match self.pivots.get(&c) {
                Some(p) => row = axpy(&row, &lead, p),
                None => {
                    let inv = lead.inv().expect("leading entry is nonzero");
                    let normalized = row.into_iter().map(|(j, v)| (j, &v * &inv)).collect();
                    self.pivots.insert(c, normalized);
                    return true;
                }
            }
        }
    }

    /// A kernel basis: one vector per free column, by back-substitution.
    pub fn kernel_basis(&self) -> Vec<Vec<ExactScalar>> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![ExactScalar::zero(); self.ncols];
                v[f] = ExactScalar::one();
                for (&p, row) in self.pivots.iter().rev() {
                    let s: ExactScalar =
                        row.iter().skip(1).filter(|(j, _)| !v[*j].is_zero()).map(|(j, a)| a * &v[*j]).sum();
                    v[p] = -s;
                }
                v
            })
            .collect()
    }
}

/// Primes `p ≡ 1 (mod 4)` below 2³¹, so that `−1` has a square root and the
/// Gaussian rationals reduce modulo `p`.
pub const CHECK_PRIMES: [u64; 3] = [2_147_483_029, 2_147_482_949, 2_147_482_937];

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Elimination over 𝔽_p for a prime `p ≡ 1 (mod 4)`.
#[derive(Clone, Debug)]
pub struct ModularEliminator {
    p: u64,
    sqrt_minus_one: u64,
    ncols: usize,
    pivots: BTreeMap<usize, Vec<(usize, u64)>>,
}

impl ModularEliminator {
    pub fn new(ncols: usize, p: u64) -> Self {
        assert!(p % 4 == 1, "prime must be 1 mod 4");
        let sqrt_minus_one = (2..p)
            .map(|g| pow_mod(g, (p - 1) / 4, p))
            .find(|&r| (r as u128 * r as u128 % p as u128) as u64 == p - 1)
            .expect("p is a prime 1 mod 4");
        ModularEliminator { p, sqrt_minus_one, ncols, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    fn reduce_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }

    /// Image of a Gaussian rational, or `None` if a denominator vanishes mod p.
    pub fn reduce(&self, x: &ExactScalar) -> Option<u64> {
        let p = self.p;
        let part = |r: num_rational::BigRational| -> Option<u64> {
            let d = self.reduce_int(r.denom());
            if d.is_zero() {
                return None;
            }
            let n = self.reduce_int(r.numer());
            Some((n as u128 * pow_mod(d, p - 2, p) as u128 % p as u128) as u64)
        };
        let (re, im) = (part(x.re())?, part(x.im())?);
        Some(((re as u128 + im as u128 * self.sqrt_minus_one as u128) % p as u128) as u64)
    }

    /// Inserts an exact row; returns `None` if some entry is not defined mod p.
    pub fn insert_exact(&mut self, row: &[(usize, ExactScalar)]) -> Option<bool> {
        let reduced: Option<Vec<(usize, u64)>> = row.iter().map(|(c, v)| self.reduce(v).map(|r| (*c, r))).collect();
        Some(self.insert(reduced?.into_iter().filter(|&(_, v)| v != 0).collect()))
    }

    pub fn insert(&mut self, mut row: Vec<(usize, u64)>) -> bool {
        let p = self.p;
        loop {
            let Some(&(c, lead)) = row.first() else { return false };
            match self.pivots.get(&c) {
                Some(piv) => {
                    let mut acc: BTreeMap<usize, u64> = row.into_iter().collect();
                    for &(j, v) in piv {
                        let e = acc.entry(j).or_insert(0);
                        *e = ((*e as u128 + (p - lead) as u128 * v as u128) % p as u128) as u64;
                    }
                    row = acc.into_iter().filter(|&(_, v)| v != 0).collect();
                }
                None => {
                    let inv = pow_mod(lead, p - 2, p);
                    let normalized = row.into_iter().map(|(j, v)| (j, (v as u128 * inv as u128 % p as u128) as u64)).collect();
                    self.pivots.insert(c, normalized);
                    return true;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ExactMatrix;
    use crate::sample::Sampler;

    fn dense_to_sparse(m: &ExactMatrix) -> Vec<SparseRow> {
        (0..m.rows()).map(|i| collect_row(m.row(i).iter().cloned().enumerate())).collect()
    }

    #[test]
    fn agrees_with_dense_elimination() {
        let mut smp = Sampler::new(21, 4);
        for trial in 0..20 {
            let (r, c) = (3 + trial % 6, 4 + trial % 5);
            let mut m = ExactMatrix::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    if smp.index(3) == 0 {
                        m[(i, j)] = smp.scalar();
                    }
                }
            }
            let mut e = SparseEliminator::new(c);
            let mut q = ModularEliminator::new(c, CHECK_PRIMES[0]);
            for row in dense_to_sparse(&m) {
                q.insert_exact(&row).unwrap();
                e.insert(row);
            }
            let (rank, _) = m.rank_and_kernel();
            assert_eq!(e.rank(), rank);
            assert_eq!(q.rank(), rank);
            let ker = e.kernel_basis();
            assert_eq!(ker.len(), c - rank);
            for v in &ker {
                assert!(m.mul_vec(v).unwrap().iter().all(ExactScalar::is_zero));
            }
        }
    }

    #[test]
    fn gaussian_unit_reduces_to_square_root_of_minus_one() {
        let q = ModularEliminator::new(1, CHECK_PRIMES[1]);
        let i = q.reduce(&ExactScalar::i()).unwrap();
        assert_eq!((i as u128 * i as u128 % CHECK_PRIMES[1] as u128) as u64, CHECK_PRIMES[1] - 1);
        assert_eq!(q.reduce(&ExactScalar::from_ratio(1, 2)).map(|h| (h * 2) % CHECK_PRIMES[1]), Some(1));
    }

    #[test]
    fn check_primes_are_primes_one_mod_four() {
        for p in CHECK_PRIMES {
            assert_eq!(p % 4, 1);
            assert!((2..=46_341u64).take_while(|d| d * d <= p).all(|d| p % d != 0), "{p}");
        }
    }

    #[test]
    fn collect_row_merges_and_drops_zeros() {
        let r = collect_row([(3, ExactScalar::from_int(1)), (1, ExactScalar::from_int(2)), (3, ExactScalar::from_int(-1))]);
        assert_eq!(r, vec![(1, ExactScalar::from_int(2))]);
    }
}
