use superinv::superscalar::{generator, RingContext};
use superinv::supermatrix::{ParitySignature, SuperMatrix};
use superinv::system::parse_system;

#[test]
fn one_by_one_closed_forms() {
    let ring = RingContext::declare(&["a", "b", "c"], &["alpha", "beta", "gamma"]).unwrap();
    let g = |n| generator(&ring, n).unwrap();
    let (a, b, c, alpha, beta, gamma) = (g("a"), g("b"), g("c"), g("alpha"), g("beta"), g("gamma"));
    let sig = ParitySignature::new(1, 1);
    let m = SuperMatrix::new(&ring, sig, sig, vec![a.clone(), alpha.clone(), beta.clone(), b.clone()]).unwrap();
    let sol = m.super_cramer_solve(&[c.clone(), gamma.clone()]).unwrap();
    let binv = b.invert_even_unit().unwrap();
    let ainv = a.invert_even_unit().unwrap();
    let x = c
        .sub(&alpha.mul(&binv).mul(&gamma))
        .mul(&a.sub(&alpha.mul(&binv).mul(&beta)).invert_even_unit().unwrap());
    let eta = gamma
        .sub(&beta.mul(&ainv).mul(&c))
        .mul(&b.sub(&beta.mul(&ainv).mul(&alpha)).invert_even_unit().unwrap());
    assert!(sol[0].equals(&x));
    assert!(sol[1].equals(&eta));
}

#[test]
fn solution_satisfies_a_larger_system() {
    let text = "\
matrix 2|1
row x[1,1], x[1,2] | al[1,1]
row x[2,1], x[2,2] | al[2,1]
row be[1,1], be[1,2] | y[1,1]
rhs x[1,3], x[2,3] | al[1,3]
";
    let sys = parse_system(text).unwrap();
    let rhs = sys.rhs.clone().unwrap();
    let sol = sys.matrix.super_cramer_solve(&rhs).unwrap();
    let back = sys.matrix.apply(&sol).unwrap();
    for (lhs, rhs) in back.iter().zip(&rhs) {
        assert!(lhs.equals(rhs));
    }
}
