use std::time::{Duration, Instant};

use rigidity_core::cone::FacePosition;
use rigidity_core::degeneration::{
    contradiction_check, divisor_assignments, enumerate_coefficients, search_equivariant_models, solve_coefficient_system, theta_zero,
    StartSurface, Verdict,
};
use rigidity_core::surface::{blowup_p2_config, y_surface, DivisorClass, PicAction};

/// Tuples whose six classes sum to −K and whose differences D_i − E_i agree
/// in Pic, found without the reduced linear system.
#[test]
fn coefficient_system_from_pic_conditions() {
    let s = blowup_p2_config(true);
    let f: Vec<DivisorClass> = (0..4).map(|i| s.boundary_class(&format!("F{i}")).unwrap()).collect();
    let class = |c: [u32; 3], i: usize| -> DivisorClass {
        (1..=3).fold(f[0].scale(c[0] as i64), |acc, j| &acc + &f[j].scale(if j == i { c[1] } else { c[2] } as i64))
    };
    let found: Vec<[u32; 6]> = enumerate_coefficients(3, |sol| {
        let [d0, d1, d2, e0, e1, e2] = sol.to_array();
        let d = |i| class([d0, d1, d2], i);
        let e = |i| class([e0, e1, e2], i);
        let total = (1..=3).fold(DivisorClass::zero(4), |acc, i| &(&acc + &d(i)) + &e(i));
        &total == s.anticanonical() && &d(1) - &e(1) == &d(2) - &e(2) && &d(2) - &e(2) == &d(3) - &e(3)
    })
    .into_iter()
    .map(|s| s.to_array())
    .collect();
    let solved: Vec<[u32; 6]> = solve_coefficient_system().into_iter().map(|s| s.to_array()).collect();
    assert_eq!(found, solved);
    assert_eq!(found.len(), 2);
    for sol in solve_coefficient_system() {
        let a = divisor_assignments(sol).unwrap();
        assert_eq!(a.len(), 6);
    }
}

#[test]
fn search_results() {
    let start = Instant::now();
    let collinear = blowup_p2_config(true);
    let mut expected_pattern: Vec<(i64, i64)> = (0..4)
        .map(|i| {
            let c = collinear.boundary_class(&format!("F{i}")).unwrap();
            (if i == 0 { 3 } else { 2 }, collinear.self_intersection(&c))
        })
        .collect();
    expected_pattern.sort();
    for (st, n) in [
        (StartSurface::P2, 1),
        (StartSurface::F(0), 1),
        (StartSurface::F(1), 1),
        (StartSurface::F(2), 0),
        (StartSurface::F(3), 0),
        (StartSurface::F(4), 0),
    ] {
        let r = search_equivariant_models(st);
        assert_eq!(r.terminals.len(), n, "{st}");
        for m in &r.terminals {
            assert_eq!(m.k_squared(), 6);
            assert!(m.is_connected());
            let mut pattern: Vec<(i64, i64)> = m.components.iter().map(|c| (c.coeff, c.self_int)).collect();
            pattern.sort();
            assert_eq!(pattern, expected_pattern, "{st}");
        }
    }
    assert!(start.elapsed() < Duration::from_secs(5));
}

#[test]
fn endgame_verdicts() {
    let s = blowup_p2_config(true);
    let f0 = s.boundary_class("F0").unwrap();
    for sol in solve_coefficient_system() {
        let t = theta_zero(sol).unwrap();
        for i in 1..=3 {
            let fi = s.boundary_class(&format!("F{i}")).unwrap();
            assert_eq!(t.apply(&fi), &f0 + &fi);
        }
        match contradiction_check(&s, &t).unwrap() {
            Verdict::Contradiction { witness, violations } => {
                assert!(matches!(witness.position, FacePosition::RelativeInteriorOfFace { dim: 2, .. }));
                // F0 ↦ −F0 leaves the cone; each F_i ↦ F0 + F_i lands inside a 2-face.
                assert_eq!(violations.len(), 4);
                let outside: Vec<_> = violations.iter().filter(|v| v.position == FacePosition::Outside).collect();
                assert_eq!(outside.len(), 1);
                assert_eq!(outside[0].source, f0);
            }
            v => panic!("expected a contradiction, got {v:?}"),
        }
    }
    assert_eq!(contradiction_check(&y_surface(), &rigidity_core::surface::theta_pic_action()).unwrap(), Verdict::Consistent);
    assert_eq!(contradiction_check(&s, &PicAction::identity("id", 4)).unwrap(), Verdict::Consistent);
}
