use proptest::prelude::*;
use rigidity_core::algebra::{AlgElement, AlgebraTag};
use rigidity_core::jordan::{HermitianMatrix, Permutation};
use rigidity_core::sample::Sampler;
use rigidity_core::scalar::ExactScalar;

fn tag_strategy() -> impl Strategy<Value = AlgebraTag> {
    prop::sample::select(AlgebraTag::ALL.to_vec())
}

/// Cofactor expansion of the full 3×3 matrix; only meaningful over ℂ, where
/// the algebra is commutative and associative.
fn cofactor_det(a: &HermitianMatrix) -> ExactScalar {
    let f = a.to_full();
    let m = |i: usize, j: usize| f.entry(i, j).scalar_part().clone();
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn determinant_agrees_with_cofactor_expansion_over_c(seed in any::<u64>()) {
        let a = HermitianMatrix::random(AlgebraTag::C, &mut Sampler::with_seed(seed));
        prop_assert_eq!(a.determinant(), cofactor_det(&a));
    }

    #[test]
    fn freudenthal_identities(tag in tag_strategy(), seed in any::<u64>()) {
        let mut s = Sampler::with_seed(seed);
        let a = HermitianMatrix::random(tag, &mut s);
        let det = a.determinant();
        let com = a.comatrix();
        prop_assert_eq!(com.jordan(&a).unwrap(), HermitianMatrix::identity(tag).scale(&det));
        prop_assert_eq!(a.triple(&a, &a).unwrap() * ExactScalar::from_ratio(1, 3), det.clone());
        prop_assert_eq!(com.cross(&com).unwrap(), a.scale(&det));
        prop_assert_eq!(a.determinant_from_traces(), det);
    }

    #[test]
    fn trace_formula_from_powers(tag in tag_strategy(), seed in any::<u64>()) {
        let a = HermitianMatrix::random(tag, &mut Sampler::with_seed(seed));
        let a2 = a.jordan(&a).unwrap();
        let a3 = a2.jordan(&a).unwrap();
        let (t1, t2, t3) = (a.trace(), a2.trace(), a3.trace());
        let expected = ExactScalar::from_ratio(1, 3) * t3 - ExactScalar::from_ratio(1, 2) * t1.clone() * t2
            + ExactScalar::from_ratio(1, 6) * t1.pow(3);
        prop_assert_eq!(a.determinant(), expected);
    }

    #[test]
    fn transpositions_preserve_norm_forms(tag in tag_strategy(), seed in any::<u64>()) {
        let a = HermitianMatrix::random(tag, &mut Sampler::with_seed(seed));
        for p in [Permutation::S12, Permutation::S23] {
            let b = a.sigma_action(p);
            prop_assert_eq!(b.determinant(), a.determinant());
            prop_assert_eq!(b.trace_sq(), a.trace_sq());
            prop_assert_eq!(b.sigma_action(p), a.clone());
        }
    }
}

#[test]
fn octonions_are_alternative_and_moufang() {
    let mut s = Sampler::with_seed(11);
    for _ in 0..50 {
        let [x, y, z] = [0; 3].map(|_| AlgElement::random(AlgebraTag::OC, &mut s));
        let m = |a: &AlgElement, b: &AlgElement| a.try_mul(b).unwrap();
        assert_eq!(m(&m(&x, &x), &y), m(&x, &m(&x, &y)));
        assert_eq!(m(&m(&y, &x), &x), m(&y, &m(&x, &x)));
        assert_eq!(m(&m(&x, &y), &m(&z, &x)), m(&m(&x, &m(&y, &z)), &x));
        assert_eq!(m(&x, &y).conjugate(), m(&y.conjugate(), &x.conjugate()));
    }
}
