// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

use bellchain::formats::fmt_num;
use proptest::prelude::*;

proptest! {
    #[test]
    fn printed_numbers_reparse_to_the_same_text(x in prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO) {
        let s = fmt_num(x);
        let back: f64 = s.parse().unwrap();
        prop_assert_eq!(fmt_num(back), s.clone());
        prop_assert!((back - x).abs() <= 1e-11 * x.abs(), "{} -> {}", x, s);
    }

    #[test]
    fn unit_interval_values_keep_twelve_digits(x in 0.0f64..1.0) {
        let back: f64 = fmt_num(x).parse().unwrap();
        prop_assert!((back - x).abs() <= 5e-12 * x.abs().max(1e-300));
    }
}
