use num_traits::Zero;
use proptest::prelude::*;

use chialg::bell::{complete_bell, incomplete_bell};
use chialg::closure::{Gen, PresentedAlgebra};
use chialg::loopalg::LoopAlgebra;
use chialg::{JetPolynomial, Rational};

fn algebra() -> impl Strategy<Value = PresentedAlgebra> {
    prop_oneof![
        Just(PresentedAlgebra::M0),
        Just(PresentedAlgebra::M2),
        Just(PresentedAlgebra::WPlus),
        Just(PresentedAlgebra::N2Cube),
        Just(PresentedAlgebra::M0Central(vec![5, 7])),
    ]
}

fn sorted(mut v: Vec<(Gen, Rational)>) -> Vec<(Gen, Rational)> {
    v.retain(|(_, c)| !c.is_zero());
    v.sort_by_key(|(g, _)| *g);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn presented_brackets_are_antisymmetric(alg in algebra(), i in 0usize..12, j in 0usize..12) {
        let basis = alg.basis(12);
        let (a, b) = (basis[i % basis.len()], basis[j % basis.len()]);
        let ab = sorted(alg.bracket(a, b));
        let ba = sorted(alg.bracket(b, a).into_iter().map(|(g, c)| (g, -c)).collect());
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn presented_jacobi_holds(alg in algebra(), bound in 3i64..14) {
        prop_assert!(alg.jacobi_check(bound).violations.is_empty());
    }

    #[test]
    fn partial_bell_sums_to_complete(n in 1usize..10) {
        let sum = (1..=n).fold(JetPolynomial::zero(), |acc, k| &acc + &incomplete_bell(n, k).unwrap());
        prop_assert_eq!(sum, complete_bell(n));
    }

    #[test]
    fn loop_constants_are_antisymmetric(q in 0i64..24, l in 0i64..24, twisted in any::<bool>()) {
        let alg = if twisted { LoopAlgebra::Sl3Twisted } else { LoopAlgebra::Sl2 };
        prop_assert_eq!(alg.constant(q, l), -alg.constant(l, q));
    }
}
