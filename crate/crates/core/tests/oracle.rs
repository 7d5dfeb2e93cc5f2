//! Checks of the exact partial-fraction oracle itself, and of the library
//! against it on hand-picked instances.

mod support;

use support::oracle::*;
use support::{c, close};
use wd_core::{partial_fraction_inverse, ComplexPoleSum};

#[test]
fn oracle_reproduces_mixed_sign_double_zero_identity() {
    // 1/(2z) − 4/(z+1) + 9/(2(z+2)) = (z−1)²/(z(z+1)(z+2)).
    let poles = vec![qr(0, 1), qr(-1, 1), qr(-2, 1)];
    let zeros = vec![(qr(1, 1), 2)];
    let weights = weights_for(&poles, &zeros, &qr(-1, 1));
    assert_eq!(weights, vec![qr(-1, 2), qr(4, 1), qr(-9, 2)]);

    let e = exact_expansion(&poles, &weights, &zeros);
    assert_eq!(e.alpha, qr(5, 1));
    assert_eq!(e.beta, qr(1, 1));
    assert_eq!(e.groups.len(), 1);
    assert_eq!(e.groups[0].coefficients, vec![qr(-11, 1), qr(6, 1)]);
    assert_eq!(closed_form_linear_part(&poles, &weights), (qr(5, 1), qr(1, 1)));
}

#[test]
fn oracle_two_term_fixture() {
    let poles = vec![qr(1, 1), qr(2, 1)];
    let weights = vec![qr(1, 1), qr(1, 1)];
    let e = exact_expansion(&poles, &weights, &[(qr(3, 2), 1)]);
    assert_eq!((e.alpha, e.beta), (qr(3, 4), qr(-1, 2)));
    assert_eq!(e.groups[0].coefficients, vec![qr(-1, 8)]);
}

#[test]
fn library_matches_oracle_on_complex_double_zero() {
    // Poles 0, 1, i and a double zero at (1+i)/4 with lead 3.
    let poles = vec![qr(0, 1), qr(1, 1), qc(rat(0, 1), rat(1, 1))];
    let zeros = vec![(qc(rat(1, 4), rat(1, 4)), 2)];
    let weights = weights_for(&poles, &zeros, &qr(3, 1));
    let exact = exact_expansion(&poles, &weights, &zeros);
    let sum = ComplexPoleSum::new(
        weights.iter().map(to_c64).collect(),
        poles.iter().map(to_c64).collect(),
    )
    .unwrap();
    let e = partial_fraction_inverse(&sum).unwrap();
    assert!(close(e.alpha, to_c64(&exact.alpha), 1e-12));
    assert!(close(e.beta, to_c64(&exact.beta), 1e-12));
    assert_eq!(e.groups.len(), 1);
    assert_eq!(e.groups[0].multiplicity, 2);
    assert!(close(e.groups[0].t, c(0.25, 0.25), 1e-9));
    for (x, y) in e.groups[0].coefficients.iter().zip(&exact.groups[0].coefficients) {
        assert!(close(*x, to_c64(y), 1e-9), "{x} vs {}", to_c64(y));
    }
}
