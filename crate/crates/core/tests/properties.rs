//! Randomized algebraic invariants.

use proptest::prelude::*;

use chekanov::algebra::{FreeGradedAlgebra, GeneratorSymbol, Polynomial};
use chekanov::obstruction::{verify_witness, Witness};
use chekanov::rewrite::{ideal_images, RewriteSystem};
use chekanov::shipped;

mod common;

use common::{k_poly, poly, random_automorphism, stack_normal_form, word, K_GENERATORS};

fn quotient() -> RewriteSystem {
    shipped::quotient_rules()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn addition_is_an_abelian_group_of_exponent_two(p in k_poly(), q in k_poly(), r in k_poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p + &Polynomial::zero(), p.clone());
        prop_assert!((&p + &p).is_zero());
    }

    #[test]
    fn multiplication_is_associative_unital_distributive(p in k_poly(), q in k_poly(), r in k_poly()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &Polynomial::one(), p.clone());
        prop_assert_eq!(&Polynomial::one() * &p, p.clone());
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&(&q + &r) * &p, &(&q * &p) + &(&r * &p));
    }

    #[test]
    fn degree_is_additive(u in word(K_GENERATORS, 5), v in word(K_GENERATORS, 5), m in 0u32..5) {
        let d = shipped::k6_2();
        let gens = d.algebra().generators().to_vec();
        let alg = FreeGradedAlgebra::new(gens, m).unwrap();
        let lhs = alg.degree_of(&u.concat(&v)).unwrap();
        let rhs = alg.reduce_degree(alg.degree_of(&u).unwrap() + alg.degree_of(&v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reverse_is_an_involutive_anti_automorphism(p in k_poly(), q in k_poly(), w in word(K_GENERATORS, 6)) {
        let alg = shipped::k6_2().algebra().clone();
        prop_assert_eq!(p.reverse().reverse(), p.clone());
        prop_assert_eq!((&p * &q).reverse(), &q.reverse() * &p.reverse());
        prop_assert_eq!(alg.degree_of(&w.reversed()).unwrap(), alg.degree_of(&w).unwrap());
    }

    #[test]
    fn differential_satisfies_leibniz(p in poly(K_GENERATORS, 4, 4), q in poly(K_GENERATORS, 4, 4)) {
        let d = shipped::k6_2();
        let dp = d.apply_differential(&p).unwrap();
        let dq = d.apply_differential(&q).unwrap();
        prop_assert_eq!(d.apply_differential(&(&p * &q)).unwrap(), &(&dp * &q) + &(&p * &dq));
        prop_assert_eq!(d.apply_differential(&(&p + &q)).unwrap(), &dp + &dq);
        // d^2 = 0 on the whole algebra, not just generators.
        prop_assert!(d.apply_differential(&dp).unwrap().is_zero());
    }

    #[test]
    fn mirror_commutes_with_reversal(p in k_poly()) {
        let d = shipped::k6_2();
        let m = d.mirror();
        prop_assert_eq!(
            m.apply_differential(&p.reverse()).unwrap(),
            d.apply_differential(&p).unwrap().reverse()
        );
        prop_assert!(m.apply_differential(&m.apply_differential(&p).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn mirror_preserves_axioms_after_random_changes(phis in prop::collection::vec(random_automorphism(&shipped::k6_2()), 1..3)) {
        let d = shipped::k6_2().apply_automorphisms(&phis).unwrap();
        prop_assert!(d.check_axioms().is_ok());
        let m = d.mirror();
        prop_assert!(m.check_axioms().is_ok());
        prop_assert_eq!(m.mirror(), d);
    }

    #[test]
    fn automorphisms_preserve_axioms_and_are_involutions(phi in random_automorphism(&shipped::k6_2())) {
        let d = shipped::k6_2();
        let after = d.apply_automorphism(&phi).unwrap();
        let report = after.check_axioms();
        prop_assert!(report.is_ok(), "{}", report);
        prop_assert_eq!(after.apply_automorphism(&phi).unwrap(), d);
    }

    #[test]
    fn normal_forms_are_unique_for_short_words(w in word(2, 6)) {
        let sys = quotient();
        let (al, be) = (0, 1);
        let p = Polynomial::from_word(w.clone());
        let nf = sys.normal_form(&p).unwrap();
        prop_assert_eq!(sys.normal_form(&nf).unwrap(), nf.clone());
        let all = sys.all_normal_forms(&p).unwrap();
        prop_assert_eq!(all.len(), 1);
        prop_assert_eq!(all.into_iter().next().unwrap(), nf.clone());
        prop_assert_eq!(nf, Polynomial::from_word(stack_normal_form(&w, al, be)));
    }

    #[test]
    fn rewriting_preserves_degree(w in word(2, 10)) {
        let sys = quotient();
        let alg = sys.algebra();
        let nf = sys.normal_form(&Polynomial::from_word(w.clone())).unwrap();
        let degree = alg.degree_of(&w).unwrap();
        for term in nf.terms() {
            prop_assert_eq!(alg.degree_of(term).unwrap(), degree);
        }
    }
}

proptest! {
    #[test]
    fn words_reduce_to_al_power_be_power(w in word(2, 10)) {
        let sys = quotient();
        let nf = sys.normal_form(&Polynomial::from_word(w.clone())).unwrap();
        prop_assert_eq!(nf.len(), 1);
        let factors = nf.terms().next().unwrap().factors().to_vec();
        let split = factors.iter().position(|&g| g == 1).unwrap_or(factors.len());
        prop_assert!(factors[..split].iter().all(|&g| g == 0));
        prop_assert!(factors[split..].iter().all(|&g| g == 1));
    }

    #[test]
    fn normal_form_is_additive(p in poly(2, 6, 8), q in poly(2, 6, 8)) {
        let sys = quotient();
        let lhs = sys.normal_form(&(&p + &q)).unwrap();
        let rhs = sys
            .normal_form(&(sys.normal_form(&p).unwrap() + sys.normal_form(&q).unwrap()))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn witness_validity_is_mirror_symmetric(
        x in poly(K_GENERATORS, 2, 2),
        y in poly(K_GENERATORS, 2, 2),
        z in poly(K_GENERATORS, 2, 1),
        p in -2i64..=2,
    ) {
        let d = shipped::k6_2();
        let w = Witness { x, y, z, p, q: -p };
        prop_assert_eq!(
            verify_witness(&d, &w).is_valid(),
            verify_witness(&d.mirror(), &w.reversed()).is_valid()
        );
    }

    #[test]
    fn projection_is_multiplicative_and_lands_in_the_ideal(p in k_poly(), q in k_poly()) {
        let d = shipped::k6_2();
        let plan = shipped::k6_2_plan();
        let sub = plan.prepare(&d).unwrap();
        let pi = &plan.projection;
        prop_assert_eq!(pi.project(&(&p * &q)), &pi.project(&p) * &pi.project(&q));
        prop_assert_eq!(pi.project(&(&p + &q)), &pi.project(&p) + &pi.project(&q));
        let relations = ideal_images(pi, &sub).unwrap();
        let sys = RewriteSystem::from_relations(pi.target().clone(), &relations).unwrap();
        let boundary = sub.apply_differential(&p).unwrap();
        prop_assert!(sys.normal_form(&pi.project(&boundary)).unwrap().is_zero());
    }

    #[test]
    fn rendered_polynomials_parse_back(p in k_poly()) {
        let alg = shipped::k6_2().algebra().clone();
        prop_assert_eq!(alg.parse(&alg.render(&p)).unwrap(), p);
    }

    #[test]
    fn stabilization_preserves_axioms(degree in -3i64..=3) {
        let d = shipped::k6_2().stabilize(degree, ("e1", "e2")).unwrap();
        prop_assert!(d.check_axioms().is_ok());
        prop_assert_eq!(d.algebra().generators()[12].clone(), GeneratorSymbol::new("e2", degree - 1));
    }
}
