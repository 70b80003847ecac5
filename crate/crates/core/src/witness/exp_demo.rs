use alloc::format;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::cost::OpMeter;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};

/// Result of [`exp_digit_demo`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpRun {
    /// A dyadic within `2^-n` of `e^x`, never above it.
    pub value: Dyadic,
    /// Index of the last series term used.
    pub last_term: u64,
    /// Fractional bits kept per term.
    pub term_bits: u64,
}

fn limbs(v: &BigUint) -> u64 {
    v.bits().div_ceil(64).max(1)
}

/// `e^x` to within `2^-n` for dyadic `x >= 0` by the truncated series
/// `sum_{i<=N} x^i / i!`, each term cut to a fixed number of bits.
///
/// `N` is the least index at or above `2x` whose next term is at most
/// `2^-(n+2)`; the tail is then below `2^-(n+1)`. Terms keep
/// `n + ceil(log2(N+1)) + 2` fractional bits, so the cut errors add up to
/// less than `2^-(n+2)`.
pub fn exp_digit_demo(x: &Dyadic, n: u64, meter: &mut OpMeter) -> Result<ExpRun> {
    if x.is_negative() {
        return Err(Error::Domain(format!("exp-demo needs x >= 0, got {x}")));
    }
    meter.read(x);
    let (base, shift) = if x.exponent() >= 0 {
        (x.mantissa() << x.exponent() as usize, 0u64)
    } else {
        (x.mantissa().clone(), x.exponent().unsigned_abs())
    };
    let min_terms = BigUint::try_from(x.mul_pow2(1).ceil())
        .map_err(|_| Error::Domain(format!("{x}")))?;
    let shift_n = usize::try_from(n + 2).map_err(|_| Error::Overflow(format!("n = {n}")))?;

    // term_i = num_i / den_i with num_i = base^i, den_i = i! 2^(shift i)
    let mut nums = alloc::vec![BigUint::one()];
    let mut dens = alloc::vec![BigUint::one()];
    let last = loop {
        let i = nums.len() as u64;
        let num = &nums[nums.len() - 1] * &base;
        let den = (&dens[dens.len() - 1] * BigUint::from(i)) << shift as usize;
        meter.charge(limbs(&num) * limbs(&base) + limbs(&den) * 2);
        let small = (&num << shift_n) <= den;
        meter.charge(limbs(&num).max(limbs(&den)));
        let prev = i - 1;
        if small && BigUint::from(prev) >= min_terms {
            break prev;
        }
        nums.push(num);
        dens.push(den);
    };

    let term_bits = n + 2 + Dyadic::from_int(last as i64 + 1).ceil_log2().unwrap_or(0) as u64;
    let mut sum = BigUint::zero();
    for (num, den) in nums.iter().zip(&dens).take(last as usize + 1) {
        let scaled = num << term_bits as usize;
        let q = &scaled / den;
        meter.charge(limbs(&scaled) * limbs(den) + limbs(&q));
        sum += q;
        meter.charge(limbs(&sum));
    }
    let value = Dyadic::from_parts(BigInt::from(sum), -(term_bits as i64));
    meter.emit(&value);
    Ok(ExpRun {
        value,
        last_term: last,
        term_bits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::bit_length;

    fn run(x: &str, n: u64) -> ExpRun {
        exp_digit_demo(&x.parse().unwrap(), n, &mut OpMeter::new()).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(run("0", 5).value, Dyadic::one());
        // e = 10.1011011111100001...
        let e = run("1", 16).value;
        assert_eq!(e.round_to_precision(12), "10.10110111111".parse().unwrap());
    }

    #[test]
    fn integer_part_grows_with_x() {
        // floor(16 log2 e) = 23
        let v = run("10000", 4).value;
        assert_eq!(bit_length(&v.floor()), 24);
        let v = run("100000", 4).value;
        assert_eq!(bit_length(&v.floor()), 47);
    }

    #[test]
    fn rejects_negative() {
        assert!(exp_digit_demo(&"-1".parse().unwrap(), 3, &mut OpMeter::new()).is_err());
    }
}
