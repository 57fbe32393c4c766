use knotslice::fourmanifold::{family_sum, AffineClass, ClassValue, HomologyClass};
use knotslice::obstructions::{
    arf_obstruction, derived_facts, exotic_precondition_check, genus_obstruction, signature_obstruction,
    AmbientData, Verdict,
};
use proptest::prelude::*;

const X: AmbientData = AmbientData::S2_X_S2;

fn prime_power() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(4), Just(5), Just(7), Just(8), Just(9)]
}

fn class() -> impl Strategy<Value = ClassValue> {
    prop_oneof![
        (-8i64..=8, -8i64..=8).prop_map(|(a, b)| ClassValue::Concrete(HomologyClass::new(a, b))),
        (-4i64..=4, -2i64..=2, -4i64..=4, -2i64..=2)
            .prop_map(|(p1, q1, p2, q2)| ClassValue::Family(AffineClass::new(p1, q1, p2, q2))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn signature_inequality_in_integers(
        sigma in -12i64..=12, square in -200i64..=200, g in 0u64..4, m in prime_power(), r in 1u32..9,
    ) {
        prop_assume!(r < m);
        let o = signature_obstruction(sigma, square, g, m, r, None, X).unwrap();
        let (m, r) = (m as i128, r as i128);
        let lhs = (m * m * sigma as i128 - 2 * r * (m - r) * square as i128).abs();
        let eliminated = lhs > m * m * (2 + 2 * g as i128);
        prop_assert_eq!(o.verdict == Verdict::Eliminated, eliminated);
    }

    #[test]
    fn signature_monotone_in_genus(sigma in -12i64..=12, square in -200i64..=200, g in 0u64..4, m in prime_power()) {
        let at = |g| signature_obstruction(sigma, square, g, m, 1, None, X).unwrap().verdict;
        if at(g) == Verdict::Survives {
            prop_assert_eq!(at(g + 1), Verdict::Survives);
        }
    }

    #[test]
    fn zero_data_survives(g in 0u64..4, m in prime_power(), r in 1u32..9) {
        prop_assume!(r < m);
        prop_assert_eq!(signature_obstruction(0, 0, g, m, r, None, X).unwrap().verdict, Verdict::Survives);
    }

    #[test]
    fn arf_depends_on_square_mod_16(a1 in -6i64..=6, a2 in -6i64..=6, b1 in -6i64..=6, b2 in -6i64..=6, arf in 0u8..2) {
        let (x, y) = (HomologyClass::new(2 * a1, 2 * a2), HomologyClass::new(2 * b1, 2 * b2));
        if x.square().rem_euclid(16) == y.square().rem_euclid(16) {
            let vx = arf_obstruction(arf, &ClassValue::Concrete(x), X).unwrap().verdict;
            let vy = arf_obstruction(arf, &ClassValue::Concrete(y), X).unwrap().verdict;
            prop_assert_eq!(vx, vy);
        }
    }

    #[test]
    fn derived_class_arithmetic(alpha in class(), beta in class(), n in -6i64..=6) {
        let facts = derived_facts(&alpha, &beta, n, beta.square());
        let sum = facts[0].class.affine();
        let diff = facts[1].class.affine();
        prop_assert_eq!(sum.combine(1, &diff, 1), alpha.affine().combine(2, &alpha.affine(), 0));
        if facts.len() == 5 {
            let cable = facts[3].class.affine();
            prop_assert_eq!(cable.combine(1, &sum, -1), beta.affine());
            prop_assert_eq!(family_sum(&alpha, &beta, 1, 2), facts[4].class);
        }
    }

    #[test]
    fn genus_rule_needs_a_concrete_class(alpha in class(), g4 in 0u64..3) {
        let o = genus_obstruction(g4, &alpha);
        if alpha.concrete().is_none() {
            prop_assert_eq!(o.verdict, Verdict::Inapplicable);
        }
    }

    #[test]
    fn determinant_parity_for_even_data(f_a in -5i64..=5, f_b in -5i64..=5, lk in -5i64..=5) {
        let r = exotic_precondition_check(2 * f_a, 2 * f_b, 2 * lk);
        prop_assert!(r.determinant_even);
        prop_assert!(r.framings_even && r.linking_even);
    }
}

#[test]
fn key_witnesses() {
    let o = signature_obstruction(4, 0, 0, 2, 1, None, X).unwrap();
    assert_eq!(o.witness, "|4 - 0| = 4 > 2");
    let c = ClassValue::Concrete(HomologyClass::new(2, -2));
    let o = signature_obstruction(2, -8, 0, 2, 1, Some(&c), X).unwrap();
    assert_eq!(o.witness, "|2 - (-8)/2| = 6 > 2");
}

#[test]
fn exotic_examples() {
    let r = exotic_precondition_check(0, 0, -4);
    assert!(r.pass && r.indefinite && r.rank_two && r.framings_even);
    assert_eq!(r.determinant, -16);
    let r = exotic_precondition_check(2, 2, -1);
    assert!(!r.pass);
    assert!(!r.indefinite);
}
