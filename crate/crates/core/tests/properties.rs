//! Randomized properties beyond the acceptance suites: the Killing form
//! against structure constants, the fundamental formula of Fox calculus, and
//! invariance of flexing and of dimensions under changes of choices.

mod support;

use proptest::prelude::*;

use projrigid::lie::ModuleKind;
use projrigid::rigidity::slope_is_flexing;
use projrigid::{Field, Presentation, Representation, TwistedComplex, Word};
use support::*;

fn kinds() -> impl Strategy<Value = ModuleKind> {
    prop_oneof![Just(ModuleKind::V), Just(ModuleKind::So31), Just(ModuleKind::Gl4)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn field_axioms_hold_over_gaussian_rationals(
        a in element(Field::gaussian()),
        b in element(Field::gaussian()),
        c in element(Field::gaussian()),
    ) {
        field_axioms(&a, &b, &c)?;
    }

    #[test]
    fn killing_form_is_trace_of_adjoint_product(
        x in module_element(ModuleKind::Sl4, fig8_field()),
        y in module_element(ModuleKind::Sl4, fig8_field()),
    ) {
        killing_matches_trace_of_ad(&x, &y)?;
    }

    #[test]
    fn fox_fundamental_identity_holds(w in word(2), kind in kinds()) {
        fox_fundamental_identity(&figure_eight().representation, &w, kind)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Flexing does not depend on the chosen basis of `H^1` or on the cocycle
    /// representatives.
    #[test]
    fn flexing_is_basis_independent(
        m in proptest::array::uniform4(rational(Field::gaussian())),
        a in module_element(ModuleKind::V, Field::gaussian()),
        slope in (-3i64..=3, -3i64..=3).prop_filter("coprime", |&(p, q)| num_integer::gcd(p, q) == 1),
    ) {
        let det = &m[0] * &m[3] - &m[1] * &m[2];
        prop_assume!(!det.is_zero());
        let c = whitehead_v();
        let h1 = whitehead_h1();
        let shift = c.coboundary(&a).unwrap();
        let changed = vec![
            combination(c, h1, &m[..2]).add(&shift),
            combination(c, h1, &m[2..]),
        ];
        let gamma = whitehead().presentation.cusps()[0].slope_word(slope.0, slope.1);
        let (reference, _) = slope_is_flexing(c, h1, &gamma).unwrap();
        let (flex, _) = slope_is_flexing(c, &changed, &gamma).unwrap();
        prop_assert_eq!(flex, reference);
        prop_assert_eq!(reference, slope != (0, 1) && slope != (0, -1));
    }

    /// Reordering generators, rotating relators cyclically or inverting them
    /// leaves every cohomology dimension unchanged.
    #[test]
    fn dimensions_are_presentation_invariant(
        which in 0usize..2,
        swap in any::<bool>(),
        rotation in 0usize..16,
        invert in any::<bool>(),
        kind in kinds(),
    ) {
        let ex = if which == 0 { figure_eight() } else { whitehead() };
        let p = &ex.presentation;
        let order: Vec<usize> = if swap { vec![1, 0] } else { vec![0, 1] };
        let permuted = p.permute_generators(&order);
        let relators: Vec<Word> = permuted
            .relators()
            .iter()
            .map(|r| {
                let mut letters: Vec<(usize, i64)> = r.letters().collect();
                let k = rotation % letters.len();
                letters.rotate_left(k);
                let w = Word::from_syllables(letters);
                if invert { w.inverse() } else { w }
            })
            .collect();
        let q = Presentation::new(permuted.generators().to_vec(), relators, permuted.cusps().to_vec()).unwrap();
        let inputs: Vec<_> = order.iter().map(|&i| ex.representation.inputs()[i].clone()).collect();
        let rep = Representation::from_sl2c(ex.representation.field(), inputs).unwrap();
        let original = TwistedComplex::new(p, &ex.representation, kind).unwrap().report(true, true);
        let moved = TwistedComplex::new(&q, &rep, kind).unwrap().report(true, true);
        prop_assert_eq!(
            (original.fox_rank, original.z1_dim, original.b1_dim, original.h0_dim, original.h1_dim),
            (moved.fox_rank, moved.z1_dim, moved.b1_dim, moved.h0_dim, moved.h1_dim)
        );
        prop_assert_eq!(original.h2.unwrap().dim, moved.h2.unwrap().dim);
    }
}
