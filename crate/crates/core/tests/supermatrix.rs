use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use superinv::acceptance::{random_grassmann, random_supermatrix};
use superinv::algebra::SuperAlgebra;
use superinv::grassmann::GrassmannCtx;
use superinv::superscalar::{generator, RingContext, Scalar};
use superinv::supermatrix::{MatrixKind, ParitySignature, SuperMatrix};

const CTX: GrassmannCtx = GrassmannCtx { generators: 6 };

fn shape(k: usize) -> ParitySignature {
    let shapes = [(1, 1), (2, 1), (1, 2), (2, 2), (0, 2), (2, 0)];
    let (r, s) = shapes[k % shapes.len()];
    ParitySignature::new(r, s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn berezinian_is_multiplicative(seed in any::<u64>(), k in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_supermatrix(&mut rng, CTX, shape(k));
        let n = random_supermatrix(&mut rng, CTX, shape(k));
        let lhs = m.multiply(&n).unwrap().berezinian().unwrap();
        prop_assert!(lhs.same_as(&m.berezinian().unwrap().times(&n.berezinian().unwrap())));
    }

    #[test]
    fn inverse_and_star(seed in any::<u64>(), k in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_supermatrix(&mut rng, CTX, shape(k));
        let inv = m.inverse().unwrap();
        prop_assert!(m.multiply(&inv).unwrap().same_as(&SuperMatrix::identity(&CTX, shape(k))));
        prop_assert!(m.berezinian_star().unwrap().same_as(&inv.berezinian().unwrap()));
        prop_assert!(m.berezinian().unwrap().times(&m.berezinian_star().unwrap()).same_as(&superinv::grassmann::Grassmann::one(&CTX)));
    }

    #[test]
    fn udl_factors_reassemble(seed in any::<u64>(), k in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_supermatrix(&mut rng, CTX, shape(k));
        let (plus, middle, minus) = m.udl_decompose().unwrap().factors(&CTX);
        prop_assert!(plus.multiply(&middle).unwrap().multiply(&minus).unwrap().same_as(&m));
    }

    #[test]
    fn odd_elements_anticommute(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_grassmann(&mut rng, CTX, true);
        let b = random_grassmann(&mut rng, CTX, true);
        prop_assert!(a.times(&b).same_as(&b.times(&a).negated()));
        prop_assert!(a.times(&a).is_zero());
    }
}

fn ring_1x1() -> (superinv::superscalar::Ring, [Scalar; 4]) {
    let ring = RingContext::declare(&["a", "d"], &["b", "c"]).unwrap();
    let g = |n| generator(&ring, n).unwrap();
    let entries = [g("a"), g("b"), g("c"), g("d")];
    (ring, entries)
}

#[test]
fn berezinian_of_a_generic_1x1() {
    let (ring, [a, b, c, d]) = ring_1x1();
    let sig = ParitySignature::new(1, 1);
    let m = SuperMatrix::new(&ring, sig, sig, vec![a.clone(), b.clone(), c.clone(), d.clone()]).unwrap();
    let dinv = d.invert_even_unit().unwrap();
    let expected = a.mul(&dinv).sub(&b.mul(&c).mul(&dinv).mul(&dinv));
    assert!(m.berezinian().unwrap().equals(&expected));
    let ainv = a.invert_even_unit().unwrap();
    let star = d.mul(&ainv).sub(&c.mul(&b).mul(&ainv).mul(&ainv));
    assert!(m.berezinian_star().unwrap().equals(&star));
}

#[test]
fn classification() {
    let (ring, [a, b, c, d]) = ring_1x1();
    let sig = ParitySignature::new(1, 1);
    let even = SuperMatrix::new(&ring, sig, sig, vec![a.clone(), b.clone(), c.clone(), d.clone()]).unwrap();
    assert_eq!(even.classify(), MatrixKind::Even);
    let odd = SuperMatrix::new(&ring, sig, sig, vec![b.clone(), a.clone(), d.clone(), c.clone()]).unwrap();
    assert_eq!(odd.classify(), MatrixKind::Odd);
    let single = ParitySignature::new(0, 1);
    let shifted = SuperMatrix::new(&ring, single, single, vec![b]).unwrap();
    assert_eq!(shifted.classify(), MatrixKind::FakeII);
    assert!(shifted.berezinian().is_err());
}
