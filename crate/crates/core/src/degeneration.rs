//! The central-fiber analysis: the anticanonical coefficient system, the
//! search over boundary blowups of ℙ² and Hirzebruch surfaces, and the
//! Mori-cone test for an involution of Pic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cone::FacePosition;
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::ExactScalar;
use crate::surface::{blowup_p2_config, mori_cone, DivisorClass, PicAction, RationalSurface};

/// Coefficients of `D_{1,0} = d0·F0 + d1·F1 + d2·(F2 + F3)` and
/// `E_{1,0} = e0·F0 + e1·F1 + e2·(F2 + F3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoefficientSolution {
    pub d0: u32,
    pub d1: u32,
    pub d2: u32,
    pub e0: u32,
    pub e1: u32,
    pub e2: u32,
}

impl CoefficientSolution {
    pub fn from_array([d0, d1, d2, e0, e1, e2]: [u32; 6]) -> Self {
        CoefficientSolution { d0, d1, d2, e0, e1, e2 }
    }

    pub fn to_array(self) -> [u32; 6] {
        [self.d0, self.d1, self.d2, self.e0, self.e1, self.e2]
    }

    /// `d0 + e0 ≥ 1` and `d1 + e2 = d2 + e1 ≥ 1`.
    pub fn satisfies_support_constraints(self) -> bool {
        self.d0 + self.e0 >= 1 && self.d1 + self.e2 == self.d2 + self.e1 && self.d1 + self.e2 >= 1
    }

    /// Coefficients `(a, b)` in `−K = a·F0 + b·(F1 + F2 + F3)`.
    pub fn anticanonical_coefficients(self) -> (u32, u32) {
        (3 * (self.d0 + self.e0), self.d1 + 2 * self.d2 + self.e1 + 2 * self.e2)
    }
}

impl fmt::Display for CoefficientSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(d0,d1,d2,e0,e1,e2) = {:?}", self.to_array())
    }
}

/// All tuples with entries in `0..=bound` accepted by `pred`, in
/// lexicographic order.
pub fn enumerate_coefficients(bound: u32, pred: impl Fn(CoefficientSolution) -> bool) -> Vec<CoefficientSolution> {
    (0..6)
        .map(|_| 0..=bound)
        .multi_cartesian_product()
        .map(|v| CoefficientSolution::from_array([v[0], v[1], v[2], v[3], v[4], v[5]]))
        .filter(|&s| pred(s))
        .collect()
}

/// Largest coefficient tried; every equation bounds each unknown by 1.
pub const COEFFICIENT_BOUND: u32 = 3;

/// Nonnegative solutions of `d0+e0 = d1+e2 = d2+e1 = 1`, `d2+e2 = 0`.
pub fn solve_coefficient_system() -> Vec<CoefficientSolution> {
    enumerate_coefficients(COEFFICIENT_BOUND, |s| {
        s.d0 + s.e0 == 1 && s.d1 + s.e2 == 1 && s.d2 + s.e1 == 1 && s.d2 + s.e2 == 0
    })
}

/// Classes of `D_{i,0}` and `E_{j,0}` on the collinear blowup, keyed `D1`…`E3`.
pub fn divisor_assignments(sol: CoefficientSolution) -> Result<BTreeMap<String, DivisorClass>> {
    if !solve_coefficient_system().contains(&sol) {
        return Err(Error::InvalidSolution(sol.to_array()));
    }
    let s = blowup_p2_config(true);
    let f: Vec<DivisorClass> = (0..4).map(|i| s.boundary_class(&format!("F{i}")).expect("collinear labels")).collect();
    let pattern = |c0: u32, c1: u32, c2: u32, i: usize| -> DivisorClass {
        let mut acc = f[0].scale(c0 as i64);
        for j in 1..=3 {
            let c = if j == i { c1 } else { c2 };
            acc = &acc + &f[j].scale(c as i64);
        }
        acc
    };
    let mut out = BTreeMap::new();
    for i in 1..=3 {
        out.insert(format!("D{i}"), pattern(sol.d0, sol.d1, sol.d2, i));
        out.insert(format!("E{i}"), pattern(sol.e0, sol.e1, sol.e2, i));
    }
    Ok(out)
}

/// The linear map on Pic of the collinear blowup swapping `D_{i,0}` and
/// `E_{i,0}`. It is determined by four of the six conditions and then checked
/// against all six.
pub fn theta_zero(sol: CoefficientSolution) -> Result<PicAction> {
    let a = divisor_assignments(sol)?;
    let pairs: Vec<(DivisorClass, DivisorClass)> = (1..=3)
        .flat_map(|i| {
            let (d, e) = (a[&format!("D{i}")].clone(), a[&format!("E{i}")].clone());
            [(d.clone(), e.clone()), (e, d)]
        })
        .collect();
    linear_map_from_images("Theta0", 4, &pairs)
}

/// The unique integer matrix `M` with `M·src = dst` for every pair, if the
/// sources span ℚⁿ and the result is integral.
pub fn linear_map_from_images(label: &str, n: usize, pairs: &[(DivisorClass, DivisorClass)]) -> Result<PicAction> {
    let to_col = |c: &DivisorClass| c.0.iter().map(|&x| ExactScalar::from_int(x)).collect::<Vec<_>>();
    let chosen = (0..pairs.len())
        .combinations(n)
        .find(|idx| {
            let cols: Vec<Vec<ExactScalar>> = idx.iter().map(|&i| to_col(&pairs[i].0)).collect();
            ExactMatrix::from_columns(n, &cols).expect("uniform length").rank() == n
        })
        .ok_or_else(|| Error::Underdetermined(format!("{label}: sources span less than rank {n}")))?;
    let src: Vec<Vec<ExactScalar>> = chosen.iter().map(|&i| to_col(&pairs[i].0)).collect();
    let dst: Vec<Vec<ExactScalar>> = chosen.iter().map(|&i| to_col(&pairs[i].1)).collect();
    let s_inv = ExactMatrix::from_columns(n, &src)?.inverse().expect("full rank");
    let m = ExactMatrix::from_columns(n, &dst)?.try_mul(&s_inv)?;
    let mut rows = vec![vec![0i64; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = m[(i, j)].to_i64().ok_or_else(|| Error::Underdetermined(format!("{label}: non-integral entry {}", m[(i, j)])))?;
        }
    }
    let act = PicAction::new(label, rows);
    for (s, d) in pairs {
        if &act.apply(s) != d {
            return Err(Error::Inconsistent(format!("{label}: image of {s}")));
        }
    }
    Ok(act)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub source: DivisorClass,
    pub source_label: String,
    pub image: DivisorClass,
    pub position: FacePosition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    /// `witness` is the first extremal generator sent into the relative
    /// interior of a face (or, failing that, the first violation); all
    /// violations are listed.
    Contradiction { witness: Violation, violations: Vec<Violation> },
}

/// Whether `inv` maps every extremal ray of the Mori cone onto an extremal
/// ray, as an automorphism must.
pub fn contradiction_check(surface: &RationalSurface, inv: &PicAction) -> Result<Verdict> {
    inv.check_isometry(surface)?;
    let cone = mori_cone(surface);
    let labels: BTreeMap<Vec<i64>, String> = surface.named_classes().iter().map(|(l, c)| (c.0.clone(), l.clone())).collect();
    let violations: Vec<Violation> = cone
        .extremal_rays()
        .into_iter()
        .filter_map(|g| {
            let source = DivisorClass(g);
            let image = inv.apply(&source);
            let position = cone.face_position(&image.0);
            if matches!(position, FacePosition::OnExtremalRay { .. }) {
                return None;
            }
            let source_label = labels.get(&source.0).cloned().unwrap_or_else(|| source.to_string());
            Some(Violation { source, source_label, image, position })
        })
        .collect();
    let Some(first) = violations.first() else { return Ok(Verdict::Consistent) };
    let witness = violations
        .iter()
        .find(|v| matches!(v.position, FacePosition::RelativeInteriorOfFace { .. }))
        .unwrap_or(first)
        .clone();
    Ok(Verdict::Contradiction { witness, violations })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub label: String,
    /// Coefficient in `−K`.
    pub coeff: i64,
    pub self_int: i64,
}

/// Boundary curves of a surface with their coefficients in `−K`, meeting
/// transversally at most once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryModel {
    pub components: Vec<Component>,
    pub incidence: BTreeSet<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BlowupLocation {
    /// A point of one component lying on no other.
    Smooth(usize),
    /// The intersection point of two components.
    Node(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StartSurface {
    P2,
    /// `𝔽_n`; `F(0)` and `F(1)` are the admissible starts.
    F(u32),
}

impl fmt::Display for StartSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StartSurface::P2 => write!(f, "P2"),
            StartSurface::F(n) => write!(f, "F{n}"),
        }
    }
}

fn comp(label: &str, coeff: i64, self_int: i64) -> Component {
    Component { label: label.into(), coeff, self_int }
}

impl BoundaryModel {
    pub fn new(components: Vec<Component>, incidence: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = components.len();
        let mut inc = BTreeSet::new();
        for (a, b) in incidence {
            if a == b || a >= n || b >= n {
                return Err(Error::InvalidLocation(format!("incidence ({a}, {b})")));
            }
            inc.insert((a.min(b), a.max(b)));
        }
        Ok(BoundaryModel { components, incidence: inc })
    }

    /// The line at infinity, `−K = 3·l0`.
    pub fn p2() -> Self {
        BoundaryModel::new(vec![comp("l0", 3, 1)], []).expect("valid")
    }

    /// `−K = (n+2)·l1 + 2·l2` with `l1` a fiber and `l2` the section of
    /// square `−n`.
    pub fn hirzebruch(n: u32) -> Self {
        BoundaryModel::new(vec![comp("l1", n as i64 + 2, 0), comp("l2", 2, -(n as i64))], [(0, 1)]).expect("valid")
    }

    pub fn start(s: StartSurface) -> Self {
        match s {
            StartSurface::P2 => Self::p2(),
            StartSurface::F(n) => Self::hirzebruch(n),
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn meets(&self, a: usize, b: usize) -> bool {
        self.incidence.contains(&(a.min(b), a.max(b)))
    }

    pub fn degree(&self, a: usize) -> usize {
        self.incidence.iter().filter(|&&(x, y)| x == a || y == a).count()
    }

    /// `K² = Σ aᵢ aⱼ Cᵢ·Cⱼ`.
    pub fn k_squared(&self) -> i64 {
        let c = &self.components;
        let diag: i64 = c.iter().map(|x| x.coeff.pow(2) * x.self_int).sum();
        let off: i64 = self.incidence.iter().map(|&(a, b)| 2 * c[a].coeff * c[b].coeff).sum();
        diag + off
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for b in 0..self.len() {
                if !seen[b] && self.meets(a, b) {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    pub fn locations(&self) -> Vec<BlowupLocation> {
        (0..self.len()).map(BlowupLocation::Smooth).chain(self.incidence.iter().map(|&(a, b)| BlowupLocation::Node(a, b))).collect()
    }

    /// Blows up a boundary point. The exceptional curve `E` gets coefficient
    /// `(Σ coefficients through the point) − 1` and square `−1`.
    pub fn blowup(&self, at: BlowupLocation) -> Result<Self> {
        let through: Vec<usize> = match at {
            BlowupLocation::Smooth(a) if a < self.len() => vec![a],
            BlowupLocation::Node(a, b) if self.meets(a, b) => vec![a, b],
            _ => return Err(Error::InvalidLocation(format!("{at:?}"))),
        };
        let mut m = self.clone();
        let coeff = through.iter().map(|&i| self.components[i].coeff).sum::<i64>() - 1;
        let e = m.len();
        m.components.push(comp(&format!("e{e}"), coeff, -1));
        for &i in &through {
            m.components[i].self_int -= 1;
            m.incidence.insert((i, e));
        }
        if let [a, b] = through[..] {
            m.incidence.remove(&(a.min(b), a.max(b)));
        }
        Ok(m)
    }

    /// Sorted `(coefficient, self-intersection, degree)` triples.
    pub fn invariants(&self) -> Vec<(i64, i64, usize)> {
        let mut v: Vec<_> = (0..self.len()).map(|i| (self.components[i].coeff, self.components[i].self_int, self.degree(i))).collect();
        v.sort();
        v
    }

    /// Labels dropped; lexicographically least relabeling.
    pub fn canonical_form(&self) -> (Vec<(i64, i64)>, Vec<bool>) {
        let n = self.len();
        (0..n)
            .permutations(n)
            .map(|p| {
                let comps = p.iter().map(|&i| (self.components[i].coeff, self.components[i].self_int)).collect();
                let adj = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| i != j && self.meets(p[i], p[j])).collect();
                (comps, adj)
            })
            .min()
            .unwrap_or_default()
    }

    /// Four components with coefficients `{a, b, b, b}` where the `a`
    /// component meets the other three and those are pairwise disjoint.
    pub fn center_of_pattern(&self) -> Option<usize> {
        if self.len() != 4 {
            return None;
        }
        (0..4).find(|&c| {
            let others: Vec<usize> = (0..4).filter(|&i| i != c).collect();
            let b = self.components[others[0]].coeff;
            others.iter().all(|&i| self.components[i].coeff == b && self.meets(c, i))
                && others.iter().tuple_combinations().all(|(&i, &j)| !self.meets(i, j))
        })
    }

    /// Coefficients `(3, 2, 2, 2)`, `F0² = −2`, `Fi² = −1`: the boundary of
    /// ℙ² blown up at three points of a line.
    pub fn is_collinear_blowup(&self) -> bool {
        self.center_of_pattern().is_some_and(|c| {
            (0..4).all(|i| {
                let x = &self.components[i];
                if i == c {
                    x.coeff == 3 && x.self_int == -2
                } else {
                    x.coeff == 2 && x.self_int == -1
                }
            })
        })
    }
}

/// Smallest coefficient a boundary component of a vector-group
/// compactification can carry.
pub const MIN_COEFFICIENT: i64 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub start: StartSurface,
    pub depth: usize,
    /// One representative per canonical class, sorted by canonical form.
    pub terminals: Vec<BoundaryModel>,
    pub states_visited: usize,
}

/// Blowups of boundary points until Picard rank 4, keeping states whose
/// coefficients stay at least 2 and reporting the terminal states of the
/// pattern `a·F0 + b·(F1 + F2 + F3)`.
pub fn search_equivariant_models(start: StartSurface) -> SearchOutcome {
    let initial = BoundaryModel::start(start);
    let depth = match start {
        StartSurface::P2 => 3,
        StartSurface::F(_) => 2,
    };
    let mut layer: BTreeMap<_, BoundaryModel> = [(initial.canonical_form(), initial)].into();
    let mut visited = 1;
    for _ in 0..depth {
        let mut next = BTreeMap::new();
        for m in layer.values() {
            for at in m.locations() {
                let child = m.blowup(at).expect("location comes from the model");
                if child.components.iter().any(|c| c.coeff < MIN_COEFFICIENT) {
                    continue;
                }
                next.entry(child.canonical_form()).or_insert(child);
            }
        }
        visited += next.len();
        layer = next;
    }
    let terminals = layer.into_values().filter(|m| m.center_of_pattern().is_some()).collect();
    SearchOutcome { start, depth, terminals, states_visited: visited }
}
