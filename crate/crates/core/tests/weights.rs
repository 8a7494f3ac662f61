use itertools::Itertools;
use num_rational::Rational64;
use rigidity_core::algebra::AlgebraTag;
use rigidity_core::weights::{select_module, RootSystem, RootType, Weight};

/// F4 roots in the standard ambient coordinates: ±e_i, ±e_i±e_j and ½(±1,±1,±1,±1).
fn f4_ambient_roots() -> Vec<[Rational64; 4]> {
    let half = Rational64::new(1, 2);
    let (one, zero) = (Rational64::from_integer(1), Rational64::from_integer(0));
    let mut out = Vec::new();
    for i in 0..4 {
        for s in [one, -one] {
            let mut v = [zero; 4];
            v[i] = s;
            out.push(v);
        }
    }
    for (i, j) in (0..4).tuple_combinations() {
        for (a, b) in [(one, one), (one, -one), (-one, one), (-one, -one)] {
            let mut v = [zero; 4];
            v[i] = a;
            v[j] = b;
            out.push(v);
        }
    }
    for signs in (0..4).map(|_| [half, -half]).multi_cartesian_product() {
        out.push([signs[0], signs[1], signs[2], signs[3]]);
    }
    out
}

#[test]
fn f4_minuscule_like_module_has_short_roots_as_weights() {
    let roots = f4_ambient_roots();
    assert_eq!(roots.len(), 48);
    let short = roots.iter().filter(|r| r.iter().map(|x| x * x).sum::<Rational64>() == Rational64::from_integer(1)).count();
    assert_eq!(short, 24);
    let (rs, lambda) = select_module(AlgebraTag::OC).unwrap();
    let d = rs.freudenthal_multiplicities(&lambda).unwrap();
    assert_eq!(d.dimension(), 26);
    assert_eq!(d.zero_multiplicity() as usize, 26 - short);
    assert!(d.weights().filter(|(w, _)| w.0.iter().any(|&x| x != 0)).all(|(_, &m)| m == 1));
}

#[test]
fn sl2_symmetric_powers() {
    let rs = RootSystem::new(RootType::A1);
    for n in 0..8 {
        let d = rs.freudenthal_multiplicities(&Weight(vec![n])).unwrap();
        assert_eq!(d.dimension(), n as u64 + 1);
        assert_eq!(d.zero_multiplicity(), u64::from(n % 2 == 0));
    }
}

#[test]
fn adjoint_zero_weight_is_rank() {
    for kind in [RootType::A1, RootType::A2, RootType::C3, RootType::F4] {
        let rs = RootSystem::new(kind);
        let highest = rs.positive_roots().into_iter().max_by_key(|r| rs.root_coordinates(r).unwrap().iter().sum::<i64>()).unwrap();
        let d = rs.freudenthal_multiplicities(&highest).unwrap();
        assert_eq!(d.dimension() as usize, 2 * rs.positive_roots().len() + rs.rank(), "{kind}");
        assert_eq!(d.zero_multiplicity() as usize, rs.rank(), "{kind}");
    }
}

#[test]
fn weyl_dimension_matches_multiplicity_sum() {
    for kind in [RootType::A2, RootType::C3] {
        let rs = RootSystem::new(kind);
        for w in rs.small_dominant_weights(2) {
            assert_eq!(rs.weyl_dim(&w).unwrap(), rs.freudenthal_multiplicities(&w).unwrap().dimension(), "{kind} {w}");
        }
    }
}

#[test]
fn selected_modules() {
    let got: Vec<(String, u64, u64)> = AlgebraTag::ALL
        .into_iter()
        .map(|t| {
            let (rs, l) = select_module(t).unwrap();
            (l.to_string(), rs.weyl_dim(&l).unwrap(), rs.freudenthal_multiplicities(&l).unwrap().zero_multiplicity())
        })
        .collect();
    let dims: Vec<u64> = got.iter().map(|g| g.1).collect();
    let zeros: Vec<u64> = got.iter().map(|g| g.2).collect();
    assert_eq!(dims, [5, 8, 14, 26]);
    assert_eq!(zeros, [1, 2, 2, 2]);
}
