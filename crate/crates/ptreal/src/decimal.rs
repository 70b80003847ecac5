//! Decimal rendering of dyadics, for display only.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use ptreal_core::Dyadic;

/// Fractional decimal digits kept by [`approx_decimal`].
pub const DIGITS: u32 = 30;

/// `d` rounded to `digits` fractional decimal digits (ties away from zero),
/// with trailing zeros dropped.
pub fn to_decimal(d: &Dyadic, digits: u32) -> String {
    let frac = d.frac_bits();
    // |d| = m / 2^frac
    let m = d.signed_mantissa().abs() << d.exponent().max(0) as usize;
    let scale = BigInt::from(10u32).pow(digits);
    let den = BigInt::from(1u8) << frac as usize;
    let scaled = (&m * &scale * 2u8 + &den) / (&den * 2u8);
    let int = &scaled / &scale;
    let rest = &scaled % &scale;
    let mut out = String::new();
    if d.is_negative() && !scaled.is_zero() {
        out.push('-');
    }
    out.push_str(&int.to_string());
    if !rest.is_zero() {
        let s = format!("{:0>width$}", rest.to_string(), width = digits as usize);
        out.push('.');
        out.push_str(s.trim_end_matches('0'));
    }
    out
}

/// The display form used by `--decimal`: `≈ ` and 30 digits.
pub fn approx_decimal(d: &Dyadic) -> String {
    format!("≈ {}", to_decimal(d, DIGITS))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn renders() {
        assert_eq!(to_decimal(&d("0.1001"), 30), "0.5625");
        assert_eq!(to_decimal(&d("-101.011"), 30), "-5.375");
        assert_eq!(to_decimal(&d("0"), 5), "0");
        assert_eq!(to_decimal(&d("1000"), 5), "8");
        // 1/1024 = 0.0009765625
        assert_eq!(to_decimal(&Dyadic::pow2(-10), 4), "0.001");
        assert_eq!(to_decimal(&Dyadic::pow2(-10), 3), "0.001");
        assert_eq!(to_decimal(&Dyadic::pow2(-10), 2), "0");
        assert_eq!(to_decimal(&-Dyadic::pow2(-10), 2), "0");
        assert_eq!(approx_decimal(&d("0.1")), "≈ 0.5");
    }
}
