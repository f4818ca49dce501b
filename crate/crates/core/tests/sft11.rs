use std::cmp::Ordering;

use num_traits::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superinv::algebra::SuperAlgebra;
use superinv::superscalar::OddSet;
use superinv::sft11::{
    all_generators, independence_check, independence_check_in, leading_term, leading_term_survey,
    membership_corpus, normal_form_membership, pi_evaluate, relation_polynomials, rewrite_to_standard,
    standard_products, BasisMonomial, InvariantPolynomial, Laurent, LaurentCtx, LaurentPi, MonomialOrder, YGen,
};

fn poly(text: &str) -> InvariantPolynomial {
    InvariantPolynomial::parse(text).unwrap()
}

#[test]
fn complementary_pair_is_in_the_ideal() {
    let f = poly("X[1|1]*Xs[1|1]-1");
    assert!(pi_evaluate(&f, 2, 2).unwrap().is_zero());
    let m = normal_form_membership(&f, 2, 2).unwrap();
    assert!(m.in_ideal && m.consistent());
}

#[test]
fn unit_maps_to_unit() {
    assert!(pi_evaluate(&InvariantPolynomial::one(), 2, 2).unwrap().is_one());
}

#[test]
fn a_standard_generator_is_its_own_normal_form() {
    let f = poly("X[1|1]");
    let m = normal_form_membership(&f, 2, 2).unwrap();
    assert!(!m.in_ideal);
    assert_eq!(m.normal_form, f);
}

#[test]
fn non_standard_minor_expands_in_two_terms() {
    let nf = rewrite_to_standard(&poly("X[2|2]")).unwrap();
    assert_eq!(nf.len(), 2);
    assert_eq!(nf, poly("Xs[1|1]*X[1|2]*X[2|1] - Xs[1|1]*X[^2|1]*X[1|2]^2*Xs[1|^2]"));
}

#[test]
fn standard_products_are_fixed_points() {
    for sp in standard_products(2, 2, 2) {
        let f = InvariantPolynomial::term(sp.monomial(), One::one());
        assert_eq!(rewrite_to_standard(&f).unwrap(), f, "{}", sp.to_text());
    }
}

#[test]
fn relations_rewrite_to_zero() {
    for (p, q) in [(2, 2), (3, 2), (2, 3)] {
        for f in relation_polynomials(p, q).unwrap() {
            assert!(rewrite_to_standard(&f).unwrap().is_zero(), "{}", f.to_text());
            assert!(normal_form_membership(&f, p, q).unwrap().in_ideal);
        }
    }
}

#[test]
fn pi_is_multiplicative() {
    let (p, q) = (2, 2);
    let pi = LaurentPi::new(p, q).unwrap();
    let gens = all_generators(p, q);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let word = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(1..=2);
        let picks: Vec<YGen> = (0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect();
        InvariantPolynomial::word(rng.gen_range(-3..=3), &picks)
            .add(&InvariantPolynomial::word(1, &[gens[rng.gen_range(0..gens.len())]]))
    };
    for _ in 0..100 {
        let f = word(&mut rng);
        let g = word(&mut rng);
        let lhs = pi.evaluate(&f.mul(&g)).unwrap();
        let rhs = pi.evaluate(&f).unwrap().times(&pi.evaluate(&g).unwrap());
        assert!(lhs.same_as(&rhs), "{} * {}", f.to_text(), g.to_text());
    }
}

#[test]
fn laurent_images_match_the_generic_fraction_field() {
    let (p, q) = (2, 2);
    let pi = LaurentPi::new(p, q).unwrap();
    let ring = pi_evaluate(&InvariantPolynomial::one(), p, q).unwrap().ring().clone();
    for g in all_generators(p, q) {
        let f = InvariantPolynomial::generator(g);
        let scalar = pi_evaluate(&f, p, q).unwrap();
        let laurent = pi.evaluate(&f).unwrap().to_scalar(&ring).unwrap();
        assert!(scalar.equals(&laurent), "{g}");
    }
}

#[test]
fn rewriting_preserves_images() {
    let (p, q) = (2, 2);
    let pi = LaurentPi::new(p, q).unwrap();
    for f in membership_corpus(p, q, 2).unwrap() {
        let nf = rewrite_to_standard(&f).unwrap();
        assert!(pi.evaluate(&f).unwrap().same_as(&pi.evaluate(&nf).unwrap()), "{}", f.to_text());
    }
}

#[test]
fn leading_term_of_a_variable_is_itself() {
    let ctx = LaurentCtx::new(2, 2).unwrap();
    let x = Laurent::even_var(&ctx, 0);
    let lt = leading_term(&x).unwrap();
    assert_eq!(lt.display_with(&ctx), "x[1,1]");
    assert!(leading_term(&Laurent::zero(&ctx)).is_err());
}

#[test]
fn degree_two_products_are_independent() {
    let products = standard_products(2, 2, 2);
    assert!(independence_check(&products, 2, 2).unwrap().verified());
}

#[test]
fn duplicated_product_is_rejected() {
    let mut products = standard_products(2, 2, 1);
    products.push(products[1].clone());
    assert!(!independence_check(&products, 2, 2).unwrap().verified());
}

#[test]
fn degree_three_products_at_two_three() {
    let products = standard_products(2, 3, 3);
    assert!(independence_check_in(MonomialOrder::InverseFirst, &products, 2, 3).unwrap().verified());
    let survey = leading_term_survey(MonomialOrder::InverseFirst, &products, 2, 3).unwrap();
    assert!(survey.table_mismatches.is_empty() && survey.non_multiplicative.is_empty());
    // The order read with positive exponents first merges some leading terms.
    assert!(!independence_check(&products, 2, 3).unwrap().verified());
}

fn monomial(exps: Vec<i32>, odd: u64) -> BasisMonomial {
    BasisMonomial { exps, odd: OddSet(odd) }
}

proptest! {
    #[test]
    fn order_is_total_and_antisymmetric(
        x in prop::collection::vec(-2i32..=2, 4), xo in 0u64..16,
        y in prop::collection::vec(-2i32..=2, 4), yo in 0u64..16,
        printed in any::<bool>(),
    ) {
        let order = if printed { MonomialOrder::Printed } else { MonomialOrder::InverseFirst };
        let (a, b) = (monomial(x, xo), monomial(y, yo));
        let ab = order.compare(&a, &b);
        prop_assert_eq!(ab, order.compare(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
    }

    #[test]
    fn order_is_transitive(
        x in prop::collection::vec(-1i32..=1, 3), y in prop::collection::vec(-1i32..=1, 3),
        z in prop::collection::vec(-1i32..=1, 3), odd in prop::collection::vec(0u64..8, 3),
    ) {
        let (a, b, c) = (monomial(x, odd[0]), monomial(y, odd[1]), monomial(z, odd[2]));
        for order in [MonomialOrder::Printed, MonomialOrder::InverseFirst] {
            if order.compare(&a, &b) != Ordering::Greater && order.compare(&b, &c) != Ordering::Greater {
                prop_assert!(order.compare(&a, &c) != Ordering::Greater);
            }
        }
    }
}
