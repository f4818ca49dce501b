use superinv::relations::{
    classical_plucker_relations, factored_generic_square, generic_square, jacobi_check, mutate,
    sl11_plucker_relations, super_jacobi_check, verify_all, verify_relation, Mode,
};
use superinv::superscalar::Scalar;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn classical_three_plane_relations_hold() {
    let mut rels = classical_plucker_relations(2, 5).unwrap();
    assert!(!rels.is_empty());
    verify_all(&mut rels, Mode::Symbolic, 0, 0).unwrap();
    assert!(rels.iter().all(|r| r.certificate.verified == Some(true)));
}

#[test]
fn sl11_relations_hold_numerically() {
    let mut rels = sl11_plucker_relations(2, 3).unwrap();
    verify_all(&mut rels, Mode::Numeric, 5, 11).unwrap();
    assert!(rels.iter().all(|r| r.certificate.verified == Some(true)));
}

#[test]
fn a_mutated_relation_is_caught() {
    let rels = classical_plucker_relations(2, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mutant, _) = mutate(&rels[0], &mut rng).unwrap();
    let cert = verify_relation(&mutant, Mode::Symbolic, 0, 0).unwrap();
    assert_eq!(cert.verified, Some(false));
}

#[test]
fn classical_jacobi_on_a_generic_grid() {
    let generic = generic_square(3, 0).unwrap();
    let (a, _, _, _) = generic.matrix().blocks();
    let ring = generic.matrix().ctx().clone();
    for r in 0..3 {
        assert!(jacobi_check::<Scalar>(&a, &ring, r).unwrap().holds);
    }
}

#[test]
fn super_jacobi_reduces_to_classical_without_odd_part() {
    let (ring, m) = factored_generic_square(2, 0).unwrap();
    let (a, _, _, _) = m.blocks();
    for r in 0..2 {
        let sup = super_jacobi_check(&m, r, 0).unwrap();
        let classical = jacobi_check::<Scalar>(&a, &ring, r).unwrap();
        assert!(sup.holds && classical.holds);
    }
    let (_, m) = factored_generic_square(2, 2).unwrap();
    assert!(super_jacobi_check(&m, 1, 1).unwrap().holds);
}
