#![allow(dead_code)]

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use ptreal_core::Dyadic;

/// Exact value of a dyadic as a rational, computed from its literal so it
/// does not share code with the dyadic arithmetic.
pub fn rat(x: &Dyadic) -> BigRational {
    let lit = x.to_string();
    let (neg, body) = match lit.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, lit.as_str()),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits = format!("{int}{frac}");
    let mut num = BigInt::zero();
    for c in digits.chars() {
        num = num * 2 + if c == '1' { 1 } else { 0 };
    }
    if neg {
        num = -num;
    }
    BigRational::new(num, BigInt::one() << frac.len())
}

/// Converts a rational with a power-of-two denominator back to a dyadic.
pub fn dyadic_of(r: &BigRational) -> Option<Dyadic> {
    let den = r.denom();
    if den.sign() != Sign::Plus || (den & (den - BigInt::one())) != BigInt::zero() {
        return None;
    }
    let shift = den.bits() as i64 - 1;
    Some(Dyadic::from_parts(r.numer().clone(), -shift))
}

pub fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

pub fn d(s: &str) -> Dyadic {
    s.parse().unwrap()
}

/// Dyadics with mantissas up to a few limbs and moderate exponents.
pub fn arb_dyadic() -> impl Strategy<Value = Dyadic> {
    (
        any::<bool>(),
        prop::collection::vec(any::<u32>(), 0..5),
        -80i64..80,
    )
        .prop_map(|(neg, limbs, e)| {
            let mag = BigInt::from_slice(Sign::Plus, &limbs);
            Dyadic::from_parts(if neg { -mag } else { mag }, e)
        })
}

/// Non-negative dyadics below `2^bound` with at most `frac` fractional bits.
pub fn arb_nonneg(bound: u32, frac: u32) -> impl Strategy<Value = Dyadic> {
    (0u64..(1u64 << (bound + frac))).prop_map(move |m| Dyadic::from_parts(m.into(), -(frac as i64)))
}
