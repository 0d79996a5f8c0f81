//! Hamming weight and the power sum `S(n) = sum_{i<n} 3^wt(i)`.
//!
//! `S` is evaluated two ways. [`weight_sum_naive`] adds the terms one by one
//! and exists as an oracle. [`weight_sum_fast`] uses the bit recurrences
//!
//! ```text
//! S(2n)     = 4 S(n)
//! S(2n + 1) = 4 S(n) + 3^wt(n)
//! ```
//!
//! applied from the most significant bit down, so it costs O(bit-length)
//! big-integer operations.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::{CellCount, Error, Index, Result};

/// Number of set bits in the binary expansion of `n`.
pub fn hamming_weight(n: &Index) -> u64 {
    n.count_ones()
}

/// `S(n)` summed term by term. Refuses `n` above `budget`.
pub fn weight_sum_naive(n: &Index, budget: u64) -> Result<CellCount> {
    let terms = check_naive_budget(n, budget)?;
    Ok(naive_prefix_sums(&[terms], budget)?
        .pop()
        .unwrap_or_default())
}

/// Term-by-term `S(p)` for every `p` in `points`, in one pass up to the
/// largest point. Results are returned in the order of `points`.
pub fn naive_prefix_sums(points: &[u64], budget: u64) -> Result<Vec<CellCount>> {
    let Some(&max) = points.iter().max() else {
        return Ok(Vec::new());
    };
    check_naive_budget(&BigUint::from(max), budget)?;

    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| points[i]);

    // wt(i) <= 64 for i < 2^64.
    let powers: Vec<BigUint> = (0..=64u32).map(|e| BigUint::from(3u8).pow(e)).collect();
    let mut out = vec![BigUint::zero(); points.len()];
    let mut acc = BigUint::zero();
    let mut i = 0u64;
    for idx in order {
        while i < points[idx] {
            acc += &powers[i.count_ones() as usize];
            i += 1;
        }
        out[idx] = acc.clone();
    }
    Ok(out)
}

fn check_naive_budget(n: &Index, budget: u64) -> Result<u64> {
    match n.to_u64() {
        Some(terms) if terms <= budget => Ok(terms),
        _ => Err(Error::BudgetExceeded {
            what: "naive weight sum",
            requested: n.to_string(),
            budget,
        }),
    }
}

/// `S(n)` in O(bit-length of `n`) operations.
pub fn weight_sum_fast(n: &Index) -> CellCount {
    if let Some(small) = n.to_u64() {
        return BigUint::from(weight_sum_u64(small));
    }
    let mut acc = BigUint::zero();
    let mut power = BigUint::one();
    for bit in (0..n.bits()).rev() {
        acc <<= 2u32;
        if n.bit(bit) {
            acc += &power;
            power *= 3u32;
        }
    }
    acc
}

/// Same recurrence in native integers. `S(n) < 4^64` for any `n < 2^64`, so
/// `u128` never overflows.
pub fn weight_sum_u64(n: u64) -> u128 {
    let mut acc = 0u128;
    let mut power = 1u128;
    for bit in (0..u64::BITS - n.leading_zeros()).rev() {
        acc <<= 2;
        if n >> bit & 1 == 1 {
            acc += power;
            power *= 3;
        }
    }
    acc
}

/// `a_m = S(m)`, OEIS A130665, indexed from `m = 1`.
pub fn series_a130665(m: &Index) -> Result<CellCount> {
    if m.is_zero() {
        return Err(Error::Domain("a_m is defined for m >= 1".into()));
    }
    Ok(weight_sum_fast(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    const BUDGET: u64 = 1 << 24;

    #[test]
    fn hamming_weight_examples() {
        assert_eq!(hamming_weight(&big(0)), 0);
        assert_eq!(hamming_weight(&big(7)), 3);
        for k in [0u32, 1, 17, 63, 64, 200] {
            assert_eq!(hamming_weight(&(BigUint::one() << k)), 1);
        }
    }

    #[test]
    fn naive_examples() {
        assert_eq!(weight_sum_naive(&big(0), BUDGET).unwrap(), big(0));
        assert_eq!(weight_sum_naive(&big(3), BUDGET).unwrap(), big(7));
        for k in 0..=12u32 {
            assert_eq!(
                weight_sum_naive(&big(1 << k), BUDGET).unwrap(),
                BigUint::from(4u8).pow(k)
            );
        }
    }

    #[test]
    fn naive_refuses_over_budget() {
        let err = weight_sum_naive(&big(101), 100).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 100, .. }));
        assert!(weight_sum_naive(&big(100), 100).is_ok());
        let huge = BigUint::one() << 80u32;
        assert!(weight_sum_naive(&huge, u64::MAX).is_err());
    }

    #[test]
    fn prefix_sums_keep_input_order() {
        let got = naive_prefix_sums(&[14, 3, 0, 12], BUDGET).unwrap();
        assert_eq!(got, vec![big(148), big(7), big(0), big(112)]);
        assert!(naive_prefix_sums(&[], 0).unwrap().is_empty());
    }

    #[test]
    fn fast_examples() {
        assert_eq!(weight_sum_fast(&big(14)), big(148));
        assert_eq!(weight_sum_fast(&big(12)), big(112));
        assert_eq!(weight_sum_fast(&big(0)), big(0));
        for k in [0u32, 5, 63, 64, 65, 300] {
            assert_eq!(
                weight_sum_fast(&(BigUint::one() << k)),
                BigUint::from(4u8).pow(k)
            );
        }
    }

    #[test]
    fn fast_u64_lane_handles_extremes() {
        // S(2^64 - 1) = 4^64 - 3^64: the last term is 3^64.
        let expected = BigUint::from(4u8).pow(64) - BigUint::from(3u8).pow(64);
        assert_eq!(BigUint::from(weight_sum_u64(u64::MAX)), expected);
    }

    #[test]
    fn fast_matches_naive_exhaustively() {
        let points: Vec<u64> = (0..=1 << 16).collect();
        let naive = naive_prefix_sums(&points, BUDGET).unwrap();
        for (n, expected) in points.iter().zip(naive) {
            assert_eq!(weight_sum_fast(&big(*n)), expected, "n = {n}");
            if *n >= 1 {
                assert_eq!(&expected % 3u8, BigUint::one(), "n = {n}");
            }
        }
    }

    #[test]
    fn a130665_examples() {
        assert_eq!(series_a130665(&big(1)).unwrap(), big(1));
        assert_eq!(series_a130665(&big(3)).unwrap(), big(7));
        assert_eq!(series_a130665(&big(7)).unwrap(), big(37));
        assert!(matches!(series_a130665(&big(0)), Err(Error::Domain(_))));
    }

    #[test]
    fn factorization_grid() {
        for m in 1..=64u64 {
            let a = series_a130665(&big(m)).unwrap();
            for k in 0..=16u32 {
                let lhs = weight_sum_fast(&(big(m) << k));
                assert_eq!(lhs, &a * BigUint::from(4u8).pow(k), "m={m} k={k}");
            }
        }
    }

    proptest! {
        #[test]
        fn weight_doubling(a in any::<u128>()) {
            let a = BigUint::from(a);
            let two_a: BigUint = &a << 1u32;
            prop_assert_eq!(hamming_weight(&two_a), hamming_weight(&a));
            prop_assert_eq!(hamming_weight(&(two_a + 1u32)), hamming_weight(&a) + 1);
        }

        #[test]
        fn wide_sums_are_one_mod_three(n in 1u128..) {
            prop_assert_eq!(weight_sum_fast(&BigUint::from(n)) % 3u8, BigUint::one());
        }

        #[test]
        fn successive_difference_is_a_power_of_three(n in any::<u128>()) {
            let n = BigUint::from(n);
            let next = weight_sum_fast(&(&n + 1u32));
            let diff = next - weight_sum_fast(&n);
            prop_assert_eq!(diff, BigUint::from(3u8).pow(hamming_weight(&n) as u32));
        }

        #[test]
        fn big_and_native_lanes_agree(n in any::<u64>()) {
            // Route through the wide path by adding and removing a high bit.
            let high = BigUint::one() << 64u32;
            let wide = weight_sum_fast(&(&high + n));
            // S(2^64 + n) = 4^64 + 3 S(n)
            let expected = BigUint::from(4u8).pow(64) + BigUint::from(weight_sum_u64(n)) * 3u8;
            prop_assert_eq!(wide, expected);
        }
    }
}
