use superinv::minors::GenericMatrix;

fn check(r: usize, s: usize, p: usize, q: usize) {
    let generic = GenericMatrix::new(r, s, p, q).unwrap();
    let dec = generic.fft_decompose().unwrap();
    assert!(dec.a_tilde.multiply(&dec.b).unwrap().same_as(generic.matrix()), "A = A~ B at {r}|{s}x{p}|{q}");
    assert!(dec.a_tilde.berezinian().unwrap().is_one(), "Ber A~ = 1 at {r}|{s}x{p}|{q}");
    let report = generic.verify_fft_entries(&dec).unwrap();
    assert!(report.consistent(), "entries at {r}|{s}x{p}|{q}");
}

#[test]
fn purely_odd_rows() {
    check(0, 1, 1, 1);
    check(0, 2, 1, 2);
}

#[test]
fn purely_even_rows() {
    check(1, 0, 1, 1);
    check(2, 0, 3, 1);
}

#[test]
fn mixed_rows() {
    check(1, 1, 2, 2);
    check(2, 1, 2, 2);
}

#[test]
fn needs_a_row() {
    assert!(GenericMatrix::new(0, 0, 1, 1).and_then(|g| g.fft_decompose()).is_err());
}
