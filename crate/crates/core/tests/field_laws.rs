mod support {
    pub mod field_suite;
}

use axkin_core::efield::FieldElem;
use proptest::prelude::*;
use support::field_suite;

#[test]
fn randomized_suite() {
    let r = field_suite::run(2000, 17);
    assert_eq!(r.checks, 2000);
    assert!(r.failures.is_empty(), "{:#?}", r.failures);
    assert!(r.oracle_decided > 300);
    eprintln!("{} irrational, {} oracle-decided", r.irrational, r.oracle_decided);
    assert!(r.irrational > 1000);
}

fn small() -> impl Strategy<Value = FieldElem> {
    (-20i64..20, 1i64..9, 0u32..3, 1i64..30).prop_map(|(n, d, k, r)| {
        let q = FieldElem::ratio(n, d);
        let s = FieldElem::from_int(r).sqrt().unwrap();
        match k {
            0 => q,
            1 => q + s,
            _ => q * s,
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws(a in small(), b in small(), c in small()) {
        prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a - &a, FieldElem::zero());
    }

    #[test]
    fn inverses(a in small()) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(&a * &a.recip().unwrap(), FieldElem::one());
    }

    #[test]
    fn total_order(a in small(), b in small(), c in small()) {
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
        if a < b {
            prop_assert!(&a + &c < &b + &c);
        }
        prop_assert!(a.square() >= FieldElem::zero());
    }

    #[test]
    fn roots(a in small()) {
        let r = a.abs().sqrt().unwrap();
        prop_assert!(!r.is_negative());
        prop_assert_eq!(r.square(), a.abs());
    }

    #[test]
    fn display_round_trips(a in small()) {
        let s = a.to_string();
        prop_assert_eq!(s.parse::<FieldElem>().unwrap(), a);
    }
}
