use superinv::expr::parse_expression;
use superinv::sft11::{membership_corpus, InvariantPolynomial, YGen};

#[test]
fn sp1_test_polynomial() {
    let f = InvariantPolynomial::parse("X[1|1]*Xs[1|1]-1").unwrap();
    let expected = InvariantPolynomial::word(1, &[YGen::Minor { i: 1, mu: 1 }, YGen::Star { j: 1, nu: 1 }])
        .sub(&InvariantPolynomial::one());
    assert_eq!(f, expected);
}

#[test]
fn odd_square_is_rejected() {
    assert!(parse_expression("al[1,1]^2").is_err());
}

#[test]
fn fake_index_marks_an_odd_generator() {
    let f = InvariantPolynomial::parse("X[^2|1]").unwrap();
    assert_eq!(f, InvariantPolynomial::generator(YGen::Fake { eta: 2, nu: 1 }));
}

#[test]
fn errors_carry_positions() {
    let err = parse_expression("x[1,1] + qq").unwrap_err().to_string();
    assert!(err.starts_with("1:10:"), "{err}");
    assert!(parse_expression("(x[1,1]").is_err());
}

#[test]
fn whitespace_is_ignored() {
    let a = InvariantPolynomial::parse("X[1|1] * Xs[1|1] - 1").unwrap();
    let b = InvariantPolynomial::parse("X[1|1]*Xs[1|1]-1").unwrap();
    assert_eq!(a, b);
}

#[test]
fn text_round_trips() {
    for f in membership_corpus(2, 2, 2).unwrap() {
        let back = InvariantPolynomial::parse(&f.to_text()).unwrap();
        assert_eq!(back, f, "{}", f.to_text());
    }
}
