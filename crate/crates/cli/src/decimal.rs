//! Decimal rendering of exact rationals. Nothing else in the workspace turns
//! a rational into digits.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// `numerator / denominator` to `digits` significant digits, rounding half
/// to even. `denominator` must be non-zero.
pub fn significant(numerator: &BigUint, denominator: &BigUint, digits: u32) -> String {
    assert!(!denominator.is_zero(), "zero denominator");
    assert!(digits > 0, "need at least one significant digit");
    if numerator.is_zero() {
        return "0".to_owned();
    }
    let ten = BigUint::from(10u8);

    // Decimal exponent e with 10^e <= n/d < 10^(e+1).
    let mut e = numerator.to_string().len() as i64 - denominator.to_string().len() as i64;
    let scale = |e: i64| -> (BigUint, BigUint) {
        if e >= 0 {
            (numerator.clone(), denominator * ten.pow(e as u32))
        } else {
            (numerator * ten.pow((-e) as u32), denominator.clone())
        }
    };
    loop {
        let (n, d) = scale(e);
        if n < d {
            e -= 1;
        } else if n >= &d * &ten {
            e += 1;
        } else {
            break;
        }
    }

    // Integer holding exactly `digits` digits after rounding.
    let shift = digits as i64 - 1 - e;
    let (n, d) = if shift >= 0 {
        (numerator * ten.pow(shift as u32), denominator.clone())
    } else {
        (numerator.clone(), denominator * ten.pow((-shift) as u32))
    };
    let (mut mantissa, remainder) = n.div_rem(&d);
    let twice: BigUint = remainder * 2u8;
    if twice > d || (twice == d && mantissa.is_odd()) {
        mantissa += 1u8;
    }
    if mantissa == ten.pow(digits) {
        mantissa /= 10u8;
        e += 1;
    }

    let text = mantissa.to_string();
    if e < 0 {
        format!("0.{}{}", "0".repeat((-e - 1) as usize), text)
    } else if (e as usize) + 1 >= text.len() {
        format!("{}{}", text, "0".repeat(e as usize + 1 - text.len()))
    } else {
        let (int, frac) = text.split_at(e as usize + 1);
        format!("{int}.{frac}")
    }
}

/// Signed variant for differences between rationals.
pub fn significant_signed(numerator: &BigInt, denominator: &BigInt, digits: u32) -> String {
    let negative = (numerator.sign() == Sign::Minus) != (denominator.sign() == Sign::Minus)
        && !numerator.is_zero();
    let body = significant(
        numerator.abs().magnitude(),
        denominator.abs().magnitude(),
        digits,
    );
    if negative {
        format!("-{body}")
    } else {
        body
    }
}
