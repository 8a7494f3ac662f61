//! The verification suites. Every check is deterministic in `(seed, samples)`;
//! randomized checks seed their own sampler from the run seed and the check
//! name, so adding or filtering checks never shifts another check's samples.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rigidity_core::algebra::{octonion_nonassociative_witness, AlgElement, AlgebraTag};
use rigidity_core::degeneration::{
    contradiction_check, divisor_assignments, enumerate_coefficients, search_equivariant_models, solve_coefficient_system, theta_zero,
    StartSurface, Verdict, COEFFICIENT_BOUND,
};
use rigidity_core::jordan::{
    centralizer_in_j0, derivation_algebra_dim_mod, derivation_algebra_dim_with, derivation_equation_count, on_cubic, s3_representation, ProjectivePoint,
    DiagonalTorusElement, Endomorphism, HermitianMatrix, Permutation,
};
use rigidity_core::lattice::IntMatrix;
use rigidity_core::sample::Sampler;
use rigidity_core::scalar::ExactScalar;
use rigidity_core::sparse::CHECK_PRIMES;
use rigidity_core::surface::{
    blowup_p2_config, fan_hirzebruch, fan_p2, fans_isomorphic, identify_y_with_general_blowup, invariant_sublattice, mori_cone,
    orbit_closure_surface, s3_pic_action, s3_pic_actions, signature, theta_pic_action, toric_blowup, y_fan, y_surface, DivisorClass,
    PicAction, RationalSurface, Y_LABELS,
};
use rigidity_core::weights::{select_module, traceless_dim, RootSystem, RootType};
use rigidity_core::{cone::FacePosition, surface::SurfaceOrigin};
use serde_json::{json, Value};

use crate::report::{CheckRecord, Status, SuiteReport, REPORT_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    All,
    Algebra,
    Jordan,
    Weights,
    Surfaces,
    Degeneration,
}

impl Suite {
    pub const NAMED: [Suite; 5] = [Suite::Algebra, Suite::Jordan, Suite::Weights, Suite::Surfaces, Suite::Degeneration];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Algebra => "algebra",
            Suite::Jordan => "jordan",
            Suite::Weights => "weights",
            Suite::Surfaces => "surfaces",
            Suite::Degeneration => "degeneration",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Suite::All].into_iter().chain(Suite::NAMED).find(|x| x.name() == s).ok_or_else(|| {
            format!("unknown suite {s:?} (expected all, algebra, jordan, weights, surfaces or degeneration)")
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub samples: usize,
    pub algebra: Option<AlgebraTag>,
    pub deep: bool,
    /// Record wall-clock durations; off by default so reports are
    /// byte-for-byte reproducible.
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 0, samples: 200, algebra: None, deep: false, timings: false }
    }
}

/// Pass with an optional informational witness, or fail with a witness.
type Outcome = Result<Option<Value>, Value>;

enum Body {
    Run(Box<dyn Fn(&Ctx) -> Outcome>),
    Skip(&'static str),
}

struct Check {
    name: String,
    body: Body,
}

struct Ctx {
    seed: u64,
    samples: usize,
}

impl Ctx {
    fn sampler(&self, name: &str) -> Sampler {
        Sampler::with_seed(self.seed ^ fnv1a(name))
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn run_check(name: impl Into<String>, f: impl Fn(&Ctx) -> Outcome + 'static) -> Check {
    Check { name: name.into(), body: Body::Run(Box::new(f)) }
}

fn ensure(cond: bool, witness: impl FnOnce() -> Value) -> Result<(), Value> {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

fn err_value(e: impl fmt::Display) -> Value {
    json!({ "error": e.to_string() })
}

fn scalars(v: &[ExactScalar]) -> Value {
    Value::from(v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn herm(a: &HermitianMatrix) -> Value {
    scalars(&a.coords())
}

fn alg(x: &AlgElement) -> Value {
    scalars(x.coeffs())
}

fn tags(opts: &Options) -> Vec<AlgebraTag> {
    match opts.algebra {
        Some(t) => vec![t],
        None => AlgebraTag::ALL.to_vec(),
    }
}

/// Runs `suite` and returns the report with checks ordered by name.
pub fn run(suite: Suite, opts: &Options, progress: &mut dyn FnMut(&str)) -> SuiteReport {
    let checks = build(suite, opts);
    let ctx = Ctx { seed: opts.seed, samples: opts.samples };
    let mut records: Vec<CheckRecord> = checks
        .into_iter()
        .map(|c| {
            progress(&c.name);
            let start = Instant::now();
            let (status, witness) = match &c.body {
                Body::Skip(why) => (Status::Skip, Some(json!({ "reason": why }))),
                Body::Run(f) => match f(&ctx) {
                    Ok(w) => (Status::Pass, w),
                    Err(w) => (Status::Fail, Some(w)),
                },
            };
            let duration_ms = if opts.timings { start.elapsed().as_millis() as u64 } else { 0 };
            CheckRecord { name: c.name, status, witness, duration_ms }
        })
        .collect();
    records.sort_by(|a, b| a.name.cmp(&b.name));
    SuiteReport { version: REPORT_VERSION, suite: suite.name().into(), seed: opts.seed, samples: opts.samples, checks: records }
}

/// Names of the checks `suite` would run.
pub fn check_names(suite: Suite, opts: &Options) -> Vec<String> {
    let mut v: Vec<String> = build(suite, opts).into_iter().map(|c| c.name).collect();
    v.sort();
    v
}

fn build(suite: Suite, opts: &Options) -> Vec<Check> {
    match suite {
        Suite::All => Suite::NAMED.into_iter().flat_map(|s| build(s, opts)).collect(),
        Suite::Algebra => tags(opts).into_iter().flat_map(algebra_checks).collect(),
        Suite::Jordan => tags(opts).into_iter().flat_map(|t| jordan_checks(t, opts.deep)).collect(),
        Suite::Weights => tags(opts).into_iter().flat_map(weight_checks).collect(),
        Suite::Surfaces => surface_checks(),
        Suite::Degeneration => degeneration_checks(),
    }
}

fn for_samples(
    ctx: &Ctx,
    name: &str,
    limit: Option<usize>,
    mut f: impl FnMut(&mut Sampler, usize) -> Result<(), Value>,
) -> Outcome {
    let mut s = ctx.sampler(name);
    let n = limit.map_or(ctx.samples, |l| ctx.samples.min(l));
    for i in 0..n {
        f(&mut s, i).map_err(|w| json!({ "sample": i, "detail": w }))?;
    }
    Ok(Some(json!({ "samples": n })))
}

fn algebra_checks(tag: AlgebraTag) -> Vec<Check> {
    let p = format!("algebra.{tag}");
    let mut v = vec![
        run_check(format!("{p}.norm_multiplicative"), {
            let name = format!("{p}.norm_multiplicative");
            move |ctx| {
                for_samples(ctx, &name, None, |s, _| {
                    let (x, y) = (AlgElement::random(tag, s), AlgElement::random(tag, s));
                    let xy = x.try_mul(&y).map_err(err_value)?;
                    let lhs = xy.norm().map_err(err_value)?;
                    let rhs = x.norm().map_err(err_value)? * y.norm().map_err(err_value)?;
                    ensure(lhs == rhs, || json!({ "x": alg(&x), "y": alg(&y), "lhs": lhs.to_string(), "rhs": rhs.to_string() }))
                })
            }
        }),
        run_check(format!("{p}.trace_symmetric"), {
            let name = format!("{p}.trace_symmetric");
            move |ctx| {
                for_samples(ctx, &name, None, |s, _| {
                    let (x, y) = (AlgElement::random(tag, s), AlgElement::random(tag, s));
                    let a = x.try_mul(&y).and_then(|z| z.trace_alg()).map_err(err_value)?;
                    let b = y.try_mul(&x).and_then(|z| z.trace_alg()).map_err(err_value)?;
                    ensure(a == b, || json!({ "x": alg(&x), "y": alg(&y) }))
                })
            }
        }),
        run_check(format!("{p}.conjugate_sums_scalar"), {
            let name = format!("{p}.conjugate_sums_scalar");
            move |ctx| {
                for_samples(ctx, &name, None, |s, _| {
                    let x = AlgElement::random(tag, s);
                    let sum = &x + &x.conjugate();
                    let prod = x.try_mul(&x.conjugate()).map_err(err_value)?;
                    ensure(sum.is_scalar() && prod.is_scalar(), || json!({ "x": alg(&x) }))
                })
            }
        }),
    ];
    if tag == AlgebraTag::OC {
        let name = format!("{p}.alternative");
        v.push(run_check(name.clone(), move |ctx| {
            for_samples(ctx, &name, None, |s, _| {
                let (x, y) = (AlgElement::random(tag, s), AlgElement::random(tag, s));
                let xx = x.try_mul(&x).map_err(err_value)?;
                let left = x.try_mul(&x.try_mul(&y).map_err(err_value)?).map_err(err_value)? == xx.try_mul(&y).map_err(err_value)?;
                let right = y.try_mul(&x).map_err(err_value)?.try_mul(&x).map_err(err_value)? == y.try_mul(&xx).map_err(err_value)?;
                ensure(left && right, || json!({ "x": alg(&x), "y": alg(&y) }))
            })
        }));
        v.push(run_check(format!("{p}.nonassociative_witness"), |_| {
            let [x, y, z] = octonion_nonassociative_witness();
            let l = x.try_mul(&y).and_then(|xy| xy.try_mul(&z)).map_err(err_value)?;
            let r = y.try_mul(&z).and_then(|yz| x.try_mul(&yz)).map_err(err_value)?;
            let w = json!({ "x": alg(&x), "y": alg(&y), "z": alg(&z), "(xy)z": alg(&l), "x(yz)": alg(&r) });
            if l != r {
                Ok(Some(w))
            } else {
                Err(w)
            }
        }));
    } else {
        let name = format!("{p}.associative");
        v.push(run_check(name.clone(), move |ctx| {
            for_samples(ctx, &name, None, |s, _| {
                let (x, y, z) = (AlgElement::random(tag, s), AlgElement::random(tag, s), AlgElement::random(tag, s));
                let l = x.try_mul(&y).and_then(|xy| xy.try_mul(&z)).map_err(err_value)?;
                let r = y.try_mul(&z).and_then(|yz| x.try_mul(&yz)).map_err(err_value)?;
                ensure(l == r, || json!({ "x": alg(&x), "y": alg(&y), "z": alg(&z) }))
            })
        }));
    }
    v
}

const EXPECTED_DERIVATION_DIMS: [usize; 4] = [3, 8, 21, 52];
const EXPECTED_SL3_DIMS: [usize; 4] = [8, 16, 35, 78];

fn tag_index(tag: AlgebraTag) -> usize {
    AlgebraTag::ALL.iter().position(|&t| t == tag).expect("known tag")
}

/// Samples used by the checks that decide membership in SL₃(𝔸) or the cubic.
const LIE_SAMPLE_CAP: usize = 50;
const EXPENSIVE_SAMPLE_CAP: usize = 20;

fn jordan_checks(tag: AlgebraTag, deep: bool) -> Vec<Check> {
    let p = format!("jordan.{tag}");
    let named = |suffix: &str| format!("{p}.{suffix}");
    let mut v = Vec::new();

    let name = named("freudenthal_identities");
    v.push(run_check(name.clone(), move |ctx| {
        for_samples(ctx, &name, None, |s, _| {
            let a = HermitianMatrix::random(tag, s);
            let det = a.determinant();
            let com = a.comatrix();
            let id = HermitianMatrix::identity(tag);
            let w = || json!({ "A": herm(&a), "det": det.to_string() });
            ensure(com.jordan(&a).map_err(err_value)? == id.scale(&det), || json!({ "identity": "com(A)∘A = det(A)·Id", "A": w() }))?;
            let third = ExactScalar::from_ratio(1, 3);
            ensure(a.triple(&a, &a).map_err(err_value)? * third == det, || json!({ "identity": "det(A) = (A,A,A)/3", "A": w() }))?;
            ensure(com.cross(&com).map_err(err_value)? == a.scale(&det), || json!({ "identity": "com(A)×com(A) = det(A)·A", "A": w() }))
        })
    }));

    let name = named("determinant_trace_formula");
    v.push(run_check(name.clone(), move |ctx| {
        for_samples(ctx, &name, None, |s, _| {
            let a = HermitianMatrix::random(tag, s);
            let (d1, d2) = (a.determinant(), a.determinant_from_traces());
            ensure(d1 == d2, || json!({ "A": herm(&a), "expanded": d1.to_string(), "traces": d2.to_string() }))
        })
    }));

    let name = named("trace_associative");
    v.push(run_check(name.clone(), move |ctx| {
        for_samples(ctx, &name, None, |s, _| {
            let (a, b, c) = (HermitianMatrix::random(tag, s), HermitianMatrix::random(tag, s), HermitianMatrix::random(tag, s));
            let l = a.jordan(&b).and_then(|ab| ab.jordan(&c)).map_err(err_value)?.trace();
            let r = b.jordan(&c).and_then(|bc| a.jordan(&bc)).map_err(err_value)?.trace();
            ensure(l == r, || json!({ "A": herm(&a), "B": herm(&b), "C": herm(&c) }))
        })
    }));

    let name = named("traceless_triple_vanishes");
    v.push(run_check(name.clone(), move |ctx| {
        for_samples(ctx, &name, None, |s, _| {
            let (a, b) = (HermitianMatrix::random_traceless(tag, s), HermitianMatrix::random(tag, s));
            let t = a.jordan(&b).and_then(|ab| ab.triple(&b, &b)).map_err(err_value)?;
            ensure(t.is_zero(), || json!({ "A": herm(&a), "B": herm(&b), "value": t.to_string() }))
        })
    }));

    let name = named("sigma_invariance");
    v.push(run_check(name.clone(), move |ctx| {
        for gen in [Permutation::S12, Permutation::S23] {
            if !Endomorphism::sigma(tag, gen).preserves_determinant() {
                return Err(json!({ "permutation": format!("{gen:?}"), "decision": "determinant form not preserved" }));
            }
        }
        for_samples(ctx, &name, None, |s, _| {
            let a = HermitianMatrix::random(tag, s);
            for gen in [Permutation::S12, Permutation::S23] {
                let b = a.sigma_action(gen);
                ensure(b.determinant() == a.determinant() && b.trace_sq() == a.trace_sq(), || {
                    json!({ "permutation": format!("{gen:?}"), "A": herm(&a) })
                })?;
            }
            Ok(())
        })
    }));

    v.push(run_check(named("s3_group"), move |_| {
        let gens = [Endomorphism::sigma(tag, Permutation::S12), Endomorphism::sigma(tag, Permutation::S23)];
        let mut group: Vec<Endomorphism> = vec![Endomorphism::identity(tag)];
        let mut i = 0;
        while i < group.len() {
            for g in &gens {
                let h = group[i].compose(g).map_err(err_value)?;
                if !group.contains(&h) {
                    group.push(h);
                }
            }
            i += 1;
            if group.len() > 6 {
                break;
            }
        }
        ensure(group.len() == 6, || json!({ "order": group.len() }))?;
        let perms = Permutation::all();
        let reps: Vec<Endomorphism> = perms.iter().map(|&q| s3_representation(tag, q)).collect();
        ensure(reps.iter().all(|r| group.contains(r)), || json!({ "error": "representation leaves the generated group" }))?;
        for (i, &a) in perms.iter().enumerate() {
            for (j, &b) in perms.iter().enumerate() {
                let k = perms.iter().position(|&c| c == a.compose(b)).expect("closed");
                let prod = reps[i].compose(&reps[j]).map_err(err_value)?;
                ensure(prod == reps[k], || json!({ "a": format!("{a:?}"), "b": format!("{b:?}") }))?;
            }
        }
        Ok(Some(json!({ "order": 6 })))
    }));

    v.push(run_check(named("traceless_dim"), move |_| {
        let d = HermitianMatrix::space_dim(tag) - 1;
        ensure(d == [5, 8, 14, 26][tag_index(tag)], || json!({ "dim": d }))?;
        Ok(Some(json!({ "dim": d })))
    }));

    if tag == AlgebraTag::OC && !deep {
        v.push(Check { name: named("derivation_dim"), body: Body::Skip("requires --deep") });
    } else {
        v.push(run_check(named("derivation_dim"), move |_| {
            let mut last = 0;
            let d = derivation_algebra_dim_with(tag, |k| {
                if tag == AlgebraTag::OC && k >= last + 1000 {
                    last = k;
                    eprintln!("  derivation equations processed: {k}");
                }
            });
            let modular: Vec<usize> = CHECK_PRIMES.iter().map(|&q| derivation_algebra_dim_mod(tag, q)).collect();
            let j0 = HermitianMatrix::space_dim(tag) - 1;
            let w = json!({ "dim": d, "equations": derivation_equation_count(tag), "modular": modular, "sl3_dim": d + j0 });
            ensure(
                d == EXPECTED_DERIVATION_DIMS[tag_index(tag)] && modular.iter().all(|&m| m == d) && d + j0 == EXPECTED_SL3_DIMS[tag_index(tag)],
                || w.clone(),
            )?;
            Ok(Some(w))
        }));
    }

    v.push(run_check(named("centralizer"), move |_| {
        let basis = centralizer_in_j0(tag);
        let diag_traceless = |a: &HermitianMatrix| a.x().iter().all(|x| x.is_zero()) && a.trace().is_zero();
        let w = json!({ "basis": basis.iter().map(herm).collect::<Vec<_>>() });
        ensure(basis.len() == 2 && basis.iter().all(diag_traceless), || w.clone())?;
        Ok(Some(json!({ "dim": basis.len() })))
    }));

    let name = named("torus_preserves_determinant");
    v.push(run_check(name.clone(), move |ctx| {
        for_samples(ctx, &name, Some(EXPENSIVE_SAMPLE_CAP), |s, _| {
            let t = DiagonalTorusElement::from_two(s.nonzero_scalar(), s.nonzero_scalar()).map_err(err_value)?;
            let nu = Endomorphism::nu(tag, &t);
            ensure(nu.preserves_determinant(), || json!({ "lambdas": scalars(t.lambdas()) }))
        })
    }));

    let name = named("mu_in_sl3");
    v.push(run_check(name.clone(), move |ctx| {
        for_samples(ctx, &name, Some(LIE_SAMPLE_CAP), |s, _| {
            let a = HermitianMatrix::random_traceless(tag, s);
            let mu = Endomorphism::mu(&a).map_err(err_value)?;
            ensure(mu.is_in_sl3() && !Endomorphism::identity(tag).is_in_sl3(), || json!({ "A": herm(&a) }))
        })
    }));

    let name = named("torus_orbit_on_cubic");
    v.push(run_check(name.clone(), move |ctx| {
        for_samples(ctx, &name, Some(EXPENSIVE_SAMPLE_CAP), |s, _| {
            let t = DiagonalTorusElement::from_two(s.nonzero_scalar(), s.nonzero_scalar()).map_err(err_value)?;
            let a = Endomorphism::nu(tag, &t).apply(&HermitianMatrix::identity(tag)).map_err(err_value)?;
            let one = ExactScalar::one();
            let point = ProjectivePoint::phi_map(&one, &a).map_err(err_value)?;
            let nonzero: Vec<ExactScalar> = point.coords().iter().filter(|x| !x.is_zero()).cloned().collect();
            let l = t.lambdas();
            let sq: Vec<ExactScalar> = l.iter().map(|x| x * x).collect();
            let inv_sq: Vec<ExactScalar> = sq.iter().map(|x| x.inv().expect("torus entries are nonzero")).collect();
            let expected: Vec<ExactScalar> = [vec![one.clone()], sq, inv_sq, vec![one.clone()]].concat();
            ensure(on_cubic(&one, &a) && nonzero == expected, || {
                json!({ "lambdas": scalars(l), "point": scalars(point.coords()) })
            })
        })
    }));

    v
}

fn weight_checks(tag: AlgebraTag) -> Vec<Check> {
    let kind = RootType::for_tag(tag);
    let p = format!("weights.{tag}");
    vec![
        run_check(format!("{p}.root_system"), move |_| {
            let rs = RootSystem::new(kind);
            let n = rs.positive_roots().len();
            let w = json!({ "type": kind.to_string(), "positive_roots": n, "cartan": rs.cartan_matrix() });
            ensure(rs.cartan_matrix() == kind.expected_cartan().as_slice() && n == kind.expected_positive_roots(), || w.clone())?;
            Ok(Some(w))
        }),
        run_check(format!("{p}.module_dimension"), move |_| {
            let (rs, lambda) = select_module(tag).map_err(err_value)?;
            let d = rs.weyl_dim(&lambda).map_err(err_value)?;
            let diagram = rs.freudenthal_multiplicities(&lambda).map_err(err_value)?;
            let w = json!({ "highest_weight": lambda.to_string(), "weyl_dim": d, "diagram_dim": diagram.dimension() });
            ensure(d == traceless_dim(tag) && diagram.dimension() == d && diagram.is_weyl_invariant(&rs), || w.clone())?;
            Ok(Some(w))
        }),
        run_check(format!("{p}.zero_weight_multiplicity"), move |_| {
            let (rs, lambda) = select_module(tag).map_err(err_value)?;
            let m = rs.freudenthal_multiplicities(&lambda).map_err(err_value)?.zero_multiplicity();
            let expected = [1, 2, 2, 2][tag_index(tag)];
            let w = json!({ "highest_weight": lambda.to_string(), "zero_multiplicity": m });
            ensure(m == expected, || w.clone())?;
            Ok(Some(w))
        }),
    ]
}

fn classes(s: &RationalSurface, list: &[&[(&str, i64)]]) -> Result<Vec<DivisorClass>, Value> {
    list.iter().map(|t| s.class_of(t).map_err(err_value)).collect()
}

fn lattice_value(l: &rigidity_core::surface::InvariantLattice) -> Value {
    json!({ "rank": l.rank, "hnf_basis": l.basis.to_rows_i64() })
}

fn invariant_check(name: &str, actions: fn() -> Vec<PicAction>, rank: usize, basis: &'static [&'static [(&'static str, i64)]]) -> Check {
    run_check(name, move |_| {
        let y = y_surface();
        let lat = invariant_sublattice(4, &actions());
        let expected = classes(&y, basis)?;
        let w = lattice_value(&lat);
        ensure(lat.rank == rank && lat.is_spanned_by(&expected), || w.clone())?;
        Ok(Some(w))
    })
}

fn orbit_count(p: Permutation) -> usize {
    // orbits of ⟨p⟩ on {D1, D2, D3, E1, E2, E3}: twice the cycles of p
    let mut seen = [false; 3];
    let mut cycles = 0;
    for i in 0..3 {
        if !seen[i] {
            cycles += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = p.apply(j);
            }
        }
    }
    2 * cycles
}

fn relabel(label: &str, p: Permutation) -> String {
    let (head, idx) = label.split_at(1);
    let i: usize = idx.parse().expect("indexed label");
    format!("{head}{}", p.apply(i - 1) + 1)
}

fn surface_checks() -> Vec<Check> {
    vec![
        run_check("surfaces.orbit_closure", |_| {
            let f = orbit_closure_surface();
            let w = json!({ "rays": f.rays(), "picard_rank": f.picard_rank() });
            ensure(f.len() == 6 && f.picard_rank() == 4 && fans_isomorphic(&f, &y_fan()), || w.clone())?;
            Ok(Some(w))
        }),
        run_check("surfaces.toric_blowups", |_| {
            let mut ok = (0..3).all(|c| toric_blowup(&fan_p2(), c).is_ok_and(|f| fans_isomorphic(&f, &fan_hirzebruch(1))));
            ok &= y_fan().self_intersections() == vec![-1; 6];
            ensure(ok, || json!({ "y_fan": y_fan().rays() }))?;
            Ok(None)
        }),
        run_check("surfaces.y_intersection_form", |_| {
            let y = y_surface();
            let selfs: Vec<i64> = Y_LABELS.iter().map(|l| y.boundary_class(l).map(|c| y.self_intersection(&c))).collect::<Result<_, _>>().map_err(err_value)?;
            let sig = signature(y.gram());
            let w = json!({ "self_intersections": selfs, "signature": [sig.0, sig.1], "gram": y.gram() });
            ensure(selfs.iter().all(|&x| x == -1) && sig == (1, 3, 0) && y.picard_rank() == 4, || w.clone())?;
            Ok(Some(w))
        }),
        run_check("surfaces.linear_equivalence", |_| {
            let y = y_surface();
            let c = classes(&y, &[&[("D1", 1), ("E1", -1)], &[("D2", 1), ("E2", -1)], &[("D3", 1), ("E3", -1)]])?;
            let pull = classes(&y, &[&[("E1", 1), ("E2", 1), ("D3", 1)], &[("E1", 1), ("E3", 1), ("D2", 1)]])?;
            let d1e1 = classes(&y, &[&[("D1", 1)], &[("E1", 1)]])?;
            let ok = y.linear_equivalent(&c[0], &c[1])
                && y.linear_equivalent(&c[1], &c[2])
                && y.linear_equivalent(&pull[0], &pull[1])
                && !y.linear_equivalent(&d1e1[0], &d1e1[1]);
            ensure(ok, || json!({ "D-E": c.iter().map(|x| x.0.clone()).collect::<Vec<_>>() }))?;
            Ok(Some(json!({ "D-E": c[0].0 })))
        }),
        run_check("surfaces.s3_actions", |_| {
            let y = y_surface();
            for a in s3_pic_actions() {
                ensure(a.is_isometry(y.gram()) && &a.apply(y.anticanonical()) == y.anticanonical(), || json!({ "action": a.label }))?;
            }
            for p in Permutation::all() {
                for q in Permutation::all() {
                    ensure(s3_pic_action(p).compose(&s3_pic_action(q)).matrix() == s3_pic_action(p.compose(q)).matrix(), || {
                        json!({ "p": format!("{p:?}"), "q": format!("{q:?}") })
                    })?;
                }
            }
            let s12 = s3_pic_action(Permutation::S12);
            let d1 = y.boundary_class("D1").map_err(err_value)?;
            let img = s12.apply(&d1);
            let expected = y.class_of(&[("D1", 1), ("E1", -1), ("E2", 1)]).map_err(err_value)?;
            ensure(img == expected, || json!({ "s12(D1)": img.0 }))?;
            Ok(Some(json!({ "s12": s12.matrix() })))
        }),
        run_check("surfaces.theta_action", |_| {
            let y = y_surface();
            let t = theta_pic_action();
            let ok = t.is_isometry(y.gram()) && t.compose(&t).is_identity() && &t.apply(y.anticanonical()) == y.anticanonical();
            ensure(ok, || json!({ "theta": t.matrix() }))?;
            Ok(Some(json!({ "theta": t.matrix() })))
        }),
        invariant_check("surfaces.invariant.trivial", Vec::new, 4, &[&[("D1", 1)], &[("E1", 1)], &[("E2", 1)], &[("E3", 1)]]),
        invariant_check(
            "surfaces.invariant.s12",
            || vec![s3_pic_action(Permutation::S12)],
            3,
            &[&[("D1", 1), ("E2", 1)], &[("E1", 1), ("E2", 1)], &[("E3", 1)]],
        ),
        invariant_check(
            "surfaces.invariant.s13",
            || vec![s3_pic_action(Permutation::from_images([2, 1, 0]).expect("bijection"))],
            3,
            &[&[("D1", 1), ("E3", 1)], &[("E1", 1), ("E3", 1)], &[("E2", 1)]],
        ),
        invariant_check(
            "surfaces.invariant.s23",
            || vec![s3_pic_action(Permutation::S23)],
            3,
            &[&[("D1", 1)], &[("E1", 1)], &[("E2", 1), ("E3", 1)]],
        ),
        invariant_check("surfaces.invariant.s3", s3_pic_actions, 2, &[&[("D1", 1), ("E2", 1), ("E3", 1)], &[("E1", 1), ("E2", 1), ("E3", 1)]]),
        invariant_check(
            "surfaces.invariant.s123",
            || vec![s3_pic_action(Permutation::from_images([1, 2, 0]).expect("bijection"))],
            2,
            &[&[("D1", 1), ("E2", 1), ("E3", 1)], &[("E1", 1), ("E2", 1), ("E3", 1)]],
        ),
        run_check("surfaces.invariant_rank_counts_orbits", |_| {
            // Pic = ℤ^{rays} / M, so rank Pic^σ = #orbits − rank M^σ.
            let rays = y_fan();
            for p in Permutation::all() {
                let r = invariant_sublattice(4, &[s3_pic_action(p)]).rank;
                let image = |i: usize| {
                    let l = relabel(Y_LABELS[i], p);
                    Y_LABELS.iter().position(|&x| x == l).expect("hexagon label")
                };
                let diffs: Vec<Vec<i64>> = (0..6)
                    .map(|i| {
                        let (a, b) = (rays.rays()[i], rays.rays()[image(i)]);
                        vec![a[0] - b[0], a[1] - b[1]]
                    })
                    .collect();
                let fixed_characters = 2 - IntMatrix::from_rows(2, &diffs).expect("two columns").rank();
                let w = json!({ "permutation": format!("{p:?}"), "rank": r, "orbits": orbit_count(p), "fixed_characters": fixed_characters });
                ensure(r + fixed_characters == orbit_count(p), || w.clone())?;
            }
            Ok(None)
        }),
        run_check("surfaces.collinear_blowup", |_| {
            let s = blowup_p2_config(true);
            let f = classes(&s, &[&[("F0", 1)], &[("F1", 1)], &[("F2", 1)], &[("F3", 1)]])?;
            let mut ok = s.self_intersection(&f[0]) == -2 && (1..4).all(|i| s.intersection(&f[0], &f[i]) == 1 && s.self_intersection(&f[i]) == -1);
            let k = s.class_of(&[("F0", 3), ("F1", 2), ("F2", 2), ("F3", 2)]).map_err(err_value)?;
            ok &= &k == s.anticanonical() && signature(s.gram()) == (1, 3, 0);
            ensure(ok, || json!({ "gram": s.gram() }))?;
            Ok(None)
        }),
        run_check("surfaces.mori_cones", |_| {
            let general = mori_cone(&blowup_p2_config(false));
            let s = blowup_p2_config(true);
            let cone = mori_cone(&s);
            let f0 = s.boundary_class("F0").map_err(err_value)?;
            let mut faces = Vec::new();
            for i in 1..=3 {
                let v = &f0 + &s.boundary_class(&format!("F{i}")).map_err(err_value)?;
                faces.push(cone.face_position(&v.0));
            }
            let ok = general.extremal_rays().len() == 6
                && cone.extremal_rays().len() == 4
                && faces.iter().all(|f| matches!(f, FacePosition::RelativeInteriorOfFace { dim: 2, .. }))
                && identify_y_with_general_blowup().is_ok();
            let w = json!({ "collinear_rays": cone.extremal_rays(), "F0+Fi": faces });
            ensure(ok, || w.clone())?;
            Ok(Some(w))
        }),
        run_check("surfaces.y_mori_cone", |_| {
            let y = y_surface();
            let n = mori_cone(&y).extremal_rays().len();
            ensure(matches!(y.origin(), SurfaceOrigin::Toric(_)) && n == 6, || json!({ "extremal_rays": n }))?;
            Ok(None)
        }),
    ]
}

fn verdict_value(v: &Verdict) -> Value {
    serde_json::to_value(v).expect("verdict serializes")
}

fn degeneration_checks() -> Vec<Check> {
    let mut v = vec![
        run_check("degeneration.coefficient_system", |_| {
            let sols = solve_coefficient_system();
            let arrays: Vec<[u32; 6]> = sols.iter().map(|s| s.to_array()).collect();
            let expected: BTreeSet<[u32; 6]> = [[1, 1, 0, 0, 1, 0], [0, 1, 0, 1, 1, 0]].into();
            // the same system with the combined coefficient equation and the support constraints
            let combined: BTreeSet<[u32; 6]> = enumerate_coefficients(COEFFICIENT_BOUND, |s| {
                s.anticanonical_coefficients() == (3, 2) && s.satisfies_support_constraints()
            })
            .into_iter()
            .map(|s| s.to_array())
            .collect();
            let w = json!({ "solutions": arrays });
            ensure(arrays.len() == 2 && arrays.iter().copied().collect::<BTreeSet<_>>() == expected && combined == expected, || w.clone())?;
            Ok(Some(w))
        }),
        run_check("degeneration.divisor_assignments", |_| {
            let s = blowup_p2_config(true);
            let mut out = Vec::new();
            for sol in solve_coefficient_system() {
                let a = divisor_assignments(sol).map_err(err_value)?;
                let total = a.values().fold(DivisorClass::zero(4), |acc, c| &acc + c);
                let w = json!({ "solution": sol.to_array(), "sum": total.0 });
                ensure(&total == s.anticanonical() && &a["D1"] - &a["E1"] == &a["D2"] - &a["E2"], || w.clone())?;
                out.push(w);
            }
            Ok(Some(Value::from(out)))
        }),
        run_check("degeneration.search.invariants_agree", |_| {
            let inv: Vec<_> = [StartSurface::P2, StartSurface::F(0), StartSurface::F(1)]
                .into_iter()
                .map(|s| search_equivariant_models(s).terminals.iter().map(|m| m.invariants()).collect::<Vec<_>>())
                .collect();
            ensure(inv.iter().all(|x| x.len() == 1 && x == &inv[0]), || json!({ "invariants": inv }))?;
            Ok(Some(json!({ "invariants": inv[0][0] })))
        }),
        run_check("degeneration.theta_y_consistent", |_| {
            let v = contradiction_check(&y_surface(), &theta_pic_action()).map_err(err_value)?;
            ensure(v == Verdict::Consistent, || verdict_value(&v))?;
            Ok(Some(verdict_value(&v)))
        }),
        run_check("degeneration.identity_consistent", |_| {
            let v = contradiction_check(&blowup_p2_config(true), &PicAction::identity("id", 4)).map_err(err_value)?;
            ensure(v == Verdict::Consistent, || verdict_value(&v))?;
            Ok(None)
        }),
    ];
    for (start, expected) in [
        (StartSurface::P2, 1),
        (StartSurface::F(0), 1),
        (StartSurface::F(1), 1),
        (StartSurface::F(2), 0),
        (StartSurface::F(3), 0),
        (StartSurface::F(4), 0),
    ] {
        v.push(run_check(format!("degeneration.search.{start}"), move |_| {
            let r = search_equivariant_models(start);
            let w = json!({
                "terminal_classes": r.terminals.len(),
                "states_visited": r.states_visited,
                "terminals": r.terminals.iter().map(|m| m.invariants()).collect::<Vec<_>>(),
            });
            ensure(r.terminals.len() == expected && r.terminals.iter().all(|m| m.is_collinear_blowup()), || w.clone())?;
            Ok(Some(w))
        }));
    }
    for (i, sol) in solve_coefficient_system().into_iter().enumerate() {
        v.push(run_check(format!("degeneration.theta0.solution{}", i + 1), move |_| {
            let s = blowup_p2_config(true);
            let t = theta_zero(sol).map_err(err_value)?;
            let verdict = contradiction_check(&s, &t).map_err(err_value)?;
            let w = json!({ "solution": sol.to_array(), "theta0": t.matrix(), "result": verdict_value(&verdict) });
            let Verdict::Contradiction { witness, .. } = &verdict else { return Err(w) };
            let f0 = s.boundary_class("F0").map_err(err_value)?;
            let ok = matches!(witness.position, FacePosition::RelativeInteriorOfFace { dim: 2, .. }) && witness.image == &witness.source + &f0;
            ensure(ok, || w.clone())?;
            Ok(Some(w))
        }));
    }
    v
}
