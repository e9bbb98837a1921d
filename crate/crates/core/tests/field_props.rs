use kturan::field::{is_prime_power, make_field, prime_power_decomposition};
use kturan::{Error, FieldSpec};
use proptest::prelude::*;

const SMALL_Q: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

fn elems(f: &FieldSpec) -> Vec<kturan::FieldElem> {
    f.enumerate_elements()
}

#[test]
fn axioms_hold_exhaustively_for_small_fields() {
    for q in SMALL_Q {
        let f = make_field(q).unwrap();
        let all = elems(&f);
        assert_eq!(all.len() as u64, q);
        let (zero, one) = (f.zero(), f.one());
        for a in &all {
            assert_eq!(f.add(a, &zero), *a);
            assert_eq!(f.mul(a, &one), *a);
            assert_eq!(f.add(a, &f.neg(a)), zero);
            if !a.is_zero() {
                assert_eq!(f.mul(a, &f.inv(a).unwrap()), one, "q={q}");
            }
            for b in &all {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.sub(&f.add(a, b), b), *a);
                for c in &all {
                    assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
                    assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                    assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                }
            }
        }
    }
}

#[test]
fn no_zero_divisors_and_fermat() {
    for q in SMALL_Q {
        let f = make_field(q).unwrap();
        for a in elems(&f).iter().filter(|a| !a.is_zero()) {
            assert_eq!(f.pow(a, q - 1), f.one(), "q={q}");
            for b in elems(&f).iter().filter(|b| !b.is_zero()) {
                assert!(!f.mul(a, b).is_zero());
            }
        }
    }
}

#[test]
fn frobenius_is_additive_in_all_characteristics() {
    for q in SMALL_Q {
        let f = make_field(q).unwrap();
        let p = f.p();
        for a in elems(&f) {
            for b in elems(&f) {
                assert_eq!(f.pow(&f.add(&a, &b), p), f.add(&f.pow(&a, p), &f.pow(&b, p)), "q={q}");
            }
        }
    }
}

#[test]
fn multiplicative_group_is_cyclic() {
    for q in SMALL_Q {
        let f = make_field(q).unwrap();
        let order = |a: &kturan::FieldElem| (1..q).find(|&e| f.pow(a, e) == f.one()).unwrap();
        assert!(elems(&f).iter().filter(|a| !a.is_zero()).any(|a| order(a) == q - 1), "q={q}");
    }
}

#[test]
fn inverse_of_zero_is_an_error() {
    let f = make_field(9).unwrap();
    assert!(matches!(f.inv(&f.zero()), Err(Error::DivisionByZero(9))));
}

#[test]
fn non_prime_powers_are_rejected() {
    for q in [0u64, 1, 6, 10, 12, 15, 18, 20, 100] {
        assert!(!is_prime_power(q));
        assert!(make_field(q).is_err());
    }
    assert!(matches!(make_field(6), Err(Error::NotAPrimePower(6))));
    assert_eq!(prime_power_decomposition(32).unwrap(), (2, 5));
    assert_eq!(prime_power_decomposition(27).unwrap(), (3, 3));
}

#[test]
fn larger_extension_fields_build() {
    for q in [32u64, 27, 25, 49, 64, 81, 125, 128, 243, 256] {
        let f = make_field(q).unwrap();
        let g = f.element(q - 1);
        assert_eq!(f.pow(&g, q - 1), f.one(), "q={q}");
    }
}

proptest! {
    #[test]
    fn index_round_trip(qi in 0usize..SMALL_Q.len(), idx in 0u64..256) {
        let q = SMALL_Q[qi];
        let f = make_field(q).unwrap();
        let i = idx % q;
        prop_assert_eq!(f.index_of(&f.element(i)), i);
    }

    #[test]
    fn power_laws(qi in 0usize..SMALL_Q.len(), i in 0u64..256, e1 in 0u64..50, e2 in 0u64..50) {
        let q = SMALL_Q[qi];
        let f = make_field(q).unwrap();
        let a = f.element(i % q);
        prop_assert_eq!(f.mul(&f.pow(&a, e1), &f.pow(&a, e2)), f.pow(&a, e1 + e2));
    }
}
