//! Dyadic rationals in lowest form.
//!
//! A [`Dyadic`] is `sign * mantissa * 2^exponent` with an odd mantissa (or the
//! single zero value with mantissa 0 and exponent 0). The canonical text form
//! is a binary literal over the alphabet `{0, 1, -, .}`:
//!
//! ```text
//! literal  := ['-'] integer ['.' fraction]
//! integer  := '0' | '1' {'0' | '1'}
//! fraction := {'0' | '1'} '1'
//! ```
//!
//! `-0` is not a literal. Each value has exactly one literal, which makes the
//! two-bit [`TauString`] encoding and [`Dyadic::tau_len`] well defined.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact binary rational in lowest form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    negative: bool,
    mantissa: BigUint,
    exponent: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            negative: false,
            mantissa: BigUint::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    /// The value `1/2`.
    pub fn half() -> Self {
        Dyadic::pow2(-1)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic {
            negative: false,
            mantissa: BigUint::one(),
            exponent: e,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic::from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Dyadic::from_parts(v, 0)
    }

    pub fn from_biguint(v: BigUint) -> Self {
        Dyadic::new(false, v, 0)
    }

    /// `mantissa * 2^exponent`, normalized to lowest form.
    pub fn from_parts(mantissa: BigInt, exponent: i64) -> Self {
        let (sign, mag) = mantissa.into_parts();
        Dyadic::new(sign == Sign::Minus, mag, exponent)
    }

    fn new(negative: bool, mut mantissa: BigUint, mut exponent: i64) -> Self {
        match mantissa.trailing_zeros() {
            None => return Dyadic::zero(),
            Some(0) => {}
            Some(tz) => {
                mantissa >>= tz;
                exponent = exponent
                    .checked_add(i64::try_from(tz).expect("shift fits i64"))
                    .expect("dyadic exponent overflow");
            }
        }
        Dyadic {
            negative,
            mantissa,
            exponent,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// Odd magnitude of the mantissa (0 for zero).
    pub fn mantissa(&self) -> &BigUint {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// Signed mantissa.
    pub fn signed_mantissa(&self) -> BigInt {
        let sign = if self.is_zero() {
            Sign::NoSign
        } else if self.negative {
            Sign::Minus
        } else {
            Sign::Plus
        };
        BigInt::from_biguint(sign, self.mantissa.clone())
    }

    /// Number of bits after the binary point in the literal.
    pub fn frac_bits(&self) -> u64 {
        if self.exponent < 0 {
            self.exponent.unsigned_abs()
        } else {
            0
        }
    }

    /// Bit length of the mantissa.
    pub fn mantissa_bits(&self) -> u64 {
        self.mantissa.bits()
    }

    pub fn is_integer(&self) -> bool {
        self.exponent >= 0
    }

    /// True when the value is `2^e` for some integer `e`.
    pub fn is_power_of_two(&self) -> bool {
        !self.negative && self.mantissa.is_one()
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            negative: false,
            ..self.clone()
        }
    }

    /// Exact multiplication by `2^shift`.
    pub fn mul_pow2(&self, shift: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            negative: self.negative,
            mantissa: self.mantissa.clone(),
            exponent: self
                .exponent
                .checked_add(shift)
                .expect("dyadic exponent overflow"),
        }
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        floor_shift(&self.signed_mantissa(), self.exponent)
    }

    /// Smallest integer not below the value.
    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// `floor(2^n * self) / 2^n`.
    ///
    /// The result is at most `self` and within `2^-n` of it.
    pub fn round_to_precision(&self, n: u64) -> Dyadic {
        let n = i64::try_from(n).expect("precision fits i64");
        if self.exponent >= -n {
            return self.clone();
        }
        let scaled = floor_shift(&self.signed_mantissa(), self.exponent + n);
        Dyadic::from_parts(scaled, -n)
    }

    /// `ceil(log2 |self|)`; `None` for zero.
    pub fn ceil_log2(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let bits = bits_i64(&self.mantissa);
        Some(if self.mantissa.is_one() {
            self.exponent
        } else {
            self.exponent + bits
        })
    }

    /// `floor(log2 |self|)`; `None` for zero.
    pub fn floor_log2(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.exponent + bits_i64(&self.mantissa) - 1)
    }

    /// Number of symbols in the literal.
    pub fn symbol_count(&self) -> u64 {
        if self.is_zero() {
            return 1;
        }
        let sign = u64::from(self.negative);
        let total_bits = self.mantissa.bits();
        if self.exponent >= 0 {
            sign + total_bits + self.exponent.unsigned_abs()
        } else {
            let frac = self.exponent.unsigned_abs();
            let int_digits = if total_bits > frac {
                total_bits - frac
            } else {
                1
            };
            sign + int_digits + 1 + frac
        }
    }

    /// Length of the two-bit encoding: twice the literal's symbol count.
    pub fn tau_len(&self) -> u64 {
        2 * self.symbol_count()
    }

    /// The two-bit encoding of the literal.
    pub fn tau_encode(&self) -> TauString {
        let lit = self.to_string();
        let mut bits = String::with_capacity(lit.len() * 2);
        for c in lit.chars() {
            bits.push_str(match c {
                '0' => "00",
                '1' => "11",
                '-' => "01",
                '.' => "10",
                _ => unreachable!("literal alphabet"),
            });
        }
        TauString(bits)
    }

    /// Inverse of [`Dyadic::tau_encode`].
    pub fn tau_decode(bits: &TauString) -> Result<Dyadic> {
        let raw = bits.as_str().as_bytes();
        let mut lit = String::with_capacity(raw.len() / 2);
        for pair in raw.chunks(2) {
            lit.push(match pair {
                b"00" => '0',
                b"11" => '1',
                b"01" => '-',
                b"10" => '.',
                _ => unreachable!("validated tau string"),
            });
        }
        lit.parse::<Dyadic>().map_err(|e| match e {
            Error::NotLowestForm(s) => Error::MalformedLiteral(s),
            other => other,
        })
    }
}

fn bits_i64(m: &BigUint) -> i64 {
    i64::try_from(m.bits()).expect("bit length fits i64")
}

/// `floor(m * 2^e)` for a signed integer `m`.
fn floor_shift(m: &BigInt, e: i64) -> BigInt {
    if e >= 0 {
        m << e.unsigned_abs()
    } else {
        let d = BigInt::one() << e.unsigned_abs();
        m.div_floor(&d)
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Dyadic::from_int(v)
    }
}

impl From<BigInt> for Dyadic {
    fn from(v: BigInt) -> Self {
        Dyadic::from_bigint(v)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.signum(), other.signum()) {
            (a, b) if a != b => return a.cmp(&b),
            (0, 0) => return Ordering::Equal,
            _ => {}
        }
        let mag = cmp_magnitude(self, other);
        if self.negative {
            mag.reverse()
        } else {
            mag
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Dyadic {
    /// -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.negative {
            -1
        } else {
            1
        }
    }
}

fn cmp_magnitude(a: &Dyadic, b: &Dyadic) -> Ordering {
    // Compare positions of the leading bit first; only align when they tie.
    let lead_a = a.exponent + bits_i64(&a.mantissa);
    let lead_b = b.exponent + bits_i64(&b.mantissa);
    if lead_a != lead_b {
        return lead_a.cmp(&lead_b);
    }
    let e = a.exponent.min(b.exponent);
    let ma = &a.mantissa << (a.exponent - e).unsigned_abs();
    let mb = &b.mantissa << (b.exponent - e).unsigned_abs();
    ma.cmp(&mb)
}

fn add_impl(a: &Dyadic, b: &Dyadic) -> Dyadic {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let e = a.exponent.min(b.exponent);
    let ma = a.signed_mantissa() << (a.exponent - e).unsigned_abs();
    let mb = b.signed_mantissa() << (b.exponent - e).unsigned_abs();
    Dyadic::from_parts(ma + mb, e)
}

fn mul_impl(a: &Dyadic, b: &Dyadic) -> Dyadic {
    if a.is_zero() || b.is_zero() {
        return Dyadic::zero();
    }
    Dyadic {
        negative: a.negative != b.negative,
        mantissa: &a.mantissa * &b.mantissa,
        exponent: a
            .exponent
            .checked_add(b.exponent)
            .expect("dyadic exponent overflow"),
    }
}

fn neg_impl(a: &Dyadic) -> Dyadic {
    if a.is_zero() {
        return Dyadic::zero();
    }
    Dyadic {
        negative: !a.negative,
        ..a.clone()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Dyadic> for &Dyadic {
            type Output = Dyadic;
            fn $method(self, rhs: &Dyadic) -> Dyadic {
                $body(self, rhs)
            }
        }
        impl $tr<Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $method(self, rhs: Dyadic) -> Dyadic {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $method(self, rhs: &Dyadic) -> Dyadic {
                $body(&self, rhs)
            }
        }
        impl $tr<Dyadic> for &Dyadic {
            type Output = Dyadic;
            fn $method(self, rhs: Dyadic) -> Dyadic {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, |a: &Dyadic, b: &Dyadic| add_impl(a, &neg_impl(b)));
forward_binop!(Mul, mul, mul_impl);

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        neg_impl(&self)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        neg_impl(self)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.negative {
            f.write_str("-")?;
        }
        if self.exponent >= 0 {
            let int = &self.mantissa << self.exponent.unsigned_abs();
            return f.write_str(&int.to_str_radix(2));
        }
        let frac_len = self.exponent.unsigned_abs();
        let int = &self.mantissa >> frac_len;
        let frac = &self.mantissa - (&int << frac_len);
        f.write_str(&int.to_str_radix(2))?;
        f.write_str(".")?;
        let digits = if frac.is_zero() {
            String::new()
        } else {
            frac.to_str_radix(2)
        };
        let pad = usize::try_from(frac_len).expect("fraction fits memory") - digits.len();
        for _ in 0..pad {
            f.write_str("0")?;
        }
        f.write_str(&digits)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dyadic({})", self)
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Dyadic> {
        let malformed = || Error::MalformedLiteral(s.to_string());
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, Some(f)),
            None => (body, None),
        };
        let is_bits = |t: &str| !t.is_empty() && t.bytes().all(|b| b == b'0' || b == b'1');
        if !is_bits(int_part) {
            return Err(malformed());
        }
        if let Some(frac) = frac_part {
            if !is_bits(frac) {
                return Err(malformed());
            }
        }
        if int_part.len() > 1 && int_part.starts_with('0') {
            return Err(Error::NotLowestForm(s.to_string()));
        }
        if frac_part.is_some_and(|f| f.ends_with('0')) {
            return Err(Error::NotLowestForm(s.to_string()));
        }
        let frac = frac_part.unwrap_or("");
        let mut digits: Vec<u8> = Vec::with_capacity(int_part.len() + frac.len());
        digits.extend_from_slice(int_part.as_bytes());
        digits.extend_from_slice(frac.as_bytes());
        let mag = BigUint::parse_bytes(&digits, 2).ok_or_else(malformed)?;
        if negative && mag.is_zero() {
            return Err(Error::NotLowestForm(s.to_string()));
        }
        let exponent = -i64::try_from(frac.len()).map_err(|_| malformed())?;
        Ok(Dyadic::new(negative, mag, exponent))
    }
}

/// A bit string over `{0, 1}` of even length, one pair per literal symbol:
/// `0 -> 00`, `1 -> 11`, `- -> 01`, `. -> 10`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TauString(String);

impl TauString {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for TauString {
    type Err = Error;

    fn from_str(s: &str) -> Result<TauString> {
        if s.is_empty() || !s.len().is_multiple_of(2) || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::MalformedLiteral(s.to_string()));
        }
        Ok(TauString(s.to_string()))
    }
}

impl fmt::Display for TauString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Literal length measure: the length of the two-bit encoding of `d`.
pub fn len(d: &Dyadic) -> u64 {
    d.tau_len()
}

/// Bit length of a non-negative integer (0 for 0).
pub fn bit_length(v: &BigInt) -> u64 {
    v.magnitude().bits()
}

/// Exact value as a signed integer if it is one.
pub fn to_integer(d: &Dyadic) -> Option<BigInt> {
    d.is_integer().then(|| d.floor())
}

pub(crate) fn bigint_to_u64(v: &BigInt) -> Option<u64> {
    if v.is_negative() {
        None
    } else {
        v.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn parses_literals() {
        let x = d("1.1");
        assert_eq!(x.mantissa(), &BigUint::from(3u8));
        assert_eq!(x.exponent(), -1);
        assert_eq!(d("0"), Dyadic::zero());
        assert_eq!(d("-1.01"), Dyadic::from_parts(BigInt::from(-5), -2));
        assert_eq!(d("0.0101"), Dyadic::from_parts(BigInt::from(5), -4));
        assert_eq!(d("100"), Dyadic::from_int(4));
    }

    #[test]
    fn rejects_bad_literals() {
        for bad in ["0.10", "01", "-0", "0.0", "00", "-0.0", "10.10"] {
            assert!(
                matches!(bad.parse::<Dyadic>(), Err(Error::NotLowestForm(_))),
                "{bad}"
            );
        }
        for bad in ["", "-", ".1", "1.", "1.2", "--1", "1..1", " 1", "+1", "-.1"] {
            assert!(
                matches!(bad.parse::<Dyadic>(), Err(Error::MalformedLiteral(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "1", "-1", "0.1", "-0.0001", "101.011", "1000000"] {
            assert_eq!(d(s).to_string(), s);
        }
    }

    #[test]
    fn tau_examples() {
        assert_eq!(d("1.1").tau_encode().as_str(), "111011");
        assert_eq!(d("-1.01").tau_encode().as_str(), "0111100011");
        assert_eq!(Dyadic::zero().tau_encode().as_str(), "00");
        let t: TauString = "111011".parse().unwrap();
        assert_eq!(Dyadic::tau_decode(&t).unwrap(), d("1.1"));
        let t: TauString = "00".parse().unwrap();
        assert_eq!(Dyadic::tau_decode(&t).unwrap(), Dyadic::zero());
        let t: TauString = "1011".parse().unwrap();
        assert!(matches!(
            Dyadic::tau_decode(&t),
            Err(Error::MalformedLiteral(_))
        ));
        // "01" decodes to a literal that is not in lowest form
        let t: TauString = "0011".parse().unwrap();
        assert!(matches!(
            Dyadic::tau_decode(&t),
            Err(Error::MalformedLiteral(_))
        ));
        assert!("101".parse::<TauString>().is_err());
        assert!("1021".parse::<TauString>().is_err());
    }

    #[test]
    fn lengths() {
        assert_eq!(len(&d("1.1")), 6);
        assert_eq!(len(&Dyadic::zero()), 2);
        assert_eq!(len(&d("-1.01")), 10);
        assert_eq!(len(&d("0.0001")), 12);
        assert_eq!(len(&d("-100")), 8);
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(d("0.0101") + d("-0.01"), d("0.0001"));
        assert_eq!(d("1.1") * d("1.1"), d("10.01"));
        assert!(d("0.0101") < d("0.011"));
        assert!(d("-1") < d("-0.1"));
        assert!(d("-0.1") < Dyadic::zero());
        assert_eq!(d("-1.1").abs(), d("1.1"));
        assert_eq!(-Dyadic::zero(), Dyadic::zero());
        assert!(!(d("1") - d("1")).is_negative());
    }

    #[test]
    fn rounding_examples() {
        assert_eq!(d("0.011").round_to_precision(1), Dyadic::zero());
        assert_eq!(d("-0.011").round_to_precision(1), d("-0.1"));
        assert_eq!((d("0.010101") + d("11")).floor(), BigInt::from(3));
        assert_eq!(d("-0.011").floor(), BigInt::from(-1));
        assert_eq!(d("-0.011").ceil(), BigInt::from(0));
        assert_eq!(d("101").round_to_precision(0), d("101"));
    }

    #[test]
    fn logs() {
        assert_eq!(d("1000").ceil_log2(), Some(3));
        assert_eq!(d("1001").ceil_log2(), Some(4));
        assert_eq!(d("0.011").ceil_log2(), Some(-1));
        assert_eq!(d("0.011").floor_log2(), Some(-2));
        assert_eq!(Dyadic::zero().ceil_log2(), None);
    }
}
