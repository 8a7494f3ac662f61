use itertools::Itertools;
use rigidity_core::jordan::Permutation;
use rigidity_core::lattice::IntMatrix;
use rigidity_core::surface::{
    blowup_p2_config, fan_p2, fans_isomorphic, invariant_sublattice, mori_cone, negative_curves, orbit_closure_surface, s3_pic_action,
    s3_pic_actions, toric_blowup, y_surface, DivisorClass, PicAction, Y_LABELS,
};

/// Blow up corners 0, 2, 4 of the growing fan to get the hexagon from ℙ².
fn hexagon_by_blowups() -> rigidity_core::surface::Fan2D {
    let f1 = toric_blowup(&fan_p2(), 0).unwrap();
    let f2 = toric_blowup(&f1, 2).unwrap();
    toric_blowup(&f2, 4).unwrap()
}

#[test]
fn orbit_closure_is_the_triple_blowup() {
    let f = orbit_closure_surface();
    assert_eq!(f.len(), 6);
    assert_eq!(f.picard_rank(), 4);
    assert!(fans_isomorphic(&f, &hexagon_by_blowups()));
}

#[test]
fn self_intersections_from_ray_relations() {
    // v_{i-1} + v_{i+1} = b_i v_i and D_i² = -b_i.
    let f = orbit_closure_surface();
    let r = f.rays();
    let n = r.len();
    let expected: Vec<i64> = (0..n)
        .map(|i| {
            let (p, q, v) = (r[(i + n - 1) % n], r[(i + 1) % n], r[i]);
            let s = [p[0] + q[0], p[1] + q[1]];
            let b = if v[0] != 0 { s[0] / v[0] } else { s[1] / v[1] };
            assert_eq!([b * v[0], b * v[1]], s);
            -b
        })
        .collect();
    assert_eq!(f.self_intersections(), expected);
}

fn all_small(rank: usize, bound: i64) -> impl Iterator<Item = Vec<i64>> {
    (0..rank).map(|_| -bound..=bound).multi_cartesian_product()
}

/// Every invariant vector in a box lies in the computed lattice and every
/// basis vector is invariant.
fn check_lattice(actions: &[PicAction]) {
    let lat = invariant_sublattice(4, actions);
    let basis = lat.basis_classes();
    for b in &basis {
        assert!(actions.iter().all(|a| &a.apply(b) == b));
    }
    let mut found = Vec::new();
    for v in all_small(4, 2) {
        let c = DivisorClass(v.clone());
        if actions.iter().all(|a| a.apply(&c) == c) {
            assert!(lat.basis.row_span_contains(&v), "{v:?} missing");
            found.push(v);
        }
    }
    assert_eq!(IntMatrix::from_rows(4, &found).unwrap().rank(), lat.rank);
    assert!(lat.basis.is_saturated());
}

#[test]
fn invariant_lattices_by_enumeration() {
    check_lattice(&[]);
    for p in Permutation::all() {
        check_lattice(&[s3_pic_action(p)]);
    }
    check_lattice(&s3_pic_actions());
}

#[test]
fn linear_equivalences_on_y() {
    let y = y_surface();
    let diff = |i: usize| y.class_of(&[(&*format!("D{i}"), 1), (&*format!("E{i}"), -1)]).unwrap();
    assert_eq!(diff(1), diff(2));
    assert_eq!(diff(2), diff(3));
    let total: DivisorClass = Y_LABELS.iter().map(|l| y.boundary_class(l).unwrap()).fold(DivisorClass::zero(4), |a, c| &a + &c);
    assert_eq!(&total, y.anticanonical());
    assert_eq!(y.self_intersection(y.anticanonical()), 6);
}

#[test]
fn blowup_configurations() {
    for collinear in [false, true] {
        let s = blowup_p2_config(collinear);
        let negs = negative_curves(&s);
        assert_eq!(negs.len(), if collinear { 4 } else { 6 });
        assert!(negs.iter().all(|(_, c)| s.self_intersection(c) < 0));
        assert_eq!(mori_cone(&s).extremal_rays().len(), negs.len());
        assert_eq!(s.self_intersection(s.anticanonical()), 6);
    }
}
