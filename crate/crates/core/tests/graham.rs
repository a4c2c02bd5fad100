use num_bigint::BigUint;
use proptest::prelude::*;
use tetra_core::{check_eq2, check_theorem2, graham_last_digits, limit_digits, slog, GRAHAM_FACTS};

#[test]
fn last_digits_are_the_base_three_tail() {
    let g = graham_last_digits(14).unwrap();
    assert_eq!(g.to_string(), "27262464195387");
    assert_eq!(g, limit_digits(3, 14).unwrap().digits);
    let wide = graham_last_digits(300).unwrap();
    for k in [1, 14, 77, 299] {
        assert_eq!(wide.truncate(k).unwrap(), graham_last_digits(k).unwrap());
    }
}

#[test]
fn proxy_heights_follow_the_facts() {
    for n in (5..=61u64).step_by(2) {
        let report = check_theorem2(n, &[1, 2, 3, 7]).unwrap();
        assert!(report.passed(), "n={n}: {report:?}");
        assert_eq!(check_eq2(n).unwrap(), 10 - GRAHAM_FACTS.unstable_digit_diff);
    }
    assert!(check_theorem2(6, &[1]).is_err());
    assert!(check_theorem2(3, &[1]).is_err());
    assert!(check_eq2(8).is_err());
}

fn exact_tower(p: u64, k: u64) -> BigUint {
    let mut v = BigUint::from(1u32);
    for _ in 0..k {
        let e = u32::try_from(&v).expect("small tower");
        v = BigUint::from(p).pow(e);
    }
    v
}

proptest! {
    #[test]
    fn slog_inverts_small_towers(p in 2u64..=6, k in 1u64..=3) {
        let x = exact_tower(p, k);
        prop_assert_eq!(slog(p, &x).unwrap(), Some(k));
        prop_assert_eq!(slog(p, &(x + 1u32)).unwrap(), None);
    }
}
