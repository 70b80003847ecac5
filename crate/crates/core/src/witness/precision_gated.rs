use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::cost::OpMeter;
use crate::dyadic::{bit_length, bigint_to_u64, Dyadic};
use crate::error::{Error, Result};
use crate::oracle::CauchyOracle;
use crate::witness::{finish_knots, require_nonnegative, ExactFunction};

/// Tent on every `[j, j+1]` with peak `1/2 + 2^-(2^k)` at `j + 1/2`, where
/// `k` is the bit length of `j`.
///
/// Exactly evaluating it at a dyadic in block `j` writes about `2^k` bits,
/// exponential in the input length. Approximating it to `2^-n` only needs
/// those bits when `n` is at least `2^k - 10`; otherwise peak `1/2` is close
/// enough. See [`precision_gated_machine`].
#[derive(Debug, Clone, Copy, Default)]
pub struct PrecisionGated;

/// `2^-(2^k)`, or an overflow error when `2^k` does not fit an exponent.
fn bump(k: u64) -> Result<Dyadic> {
    if k >= 63 {
        return Err(Error::Overflow(format!("2^-(2^{k})")));
    }
    Ok(Dyadic::pow2(-(1i64 << k)))
}

/// Tent of height `peak` over `[j, j+1]` at offset `delta`.
fn tent(delta: &Dyadic, peak: &Dyadic, meter: &mut OpMeter) -> Dyadic {
    let half = Dyadic::half();
    let leg = if meter.cmp(delta, &half) != core::cmp::Ordering::Greater {
        delta.clone()
    } else {
        meter.sub(&Dyadic::one(), delta)
    };
    let scaled = meter.mul(&leg, peak);
    meter.mul_pow2(&scaled, 1)
}

fn split(d: &Dyadic, meter: &mut OpMeter) -> Result<(BigInt, u64, Dyadic)> {
    let j = meter.floor(d);
    let k = bit_length(&j);
    let delta = meter.sub(d, &Dyadic::from_bigint(j.clone()));
    Ok((j, k, delta))
}

impl PrecisionGated {
    /// Peak height on block `j`.
    pub fn peak(j: u64) -> Result<Dyadic> {
        let k = u64::from(64 - j.leading_zeros());
        Ok(Dyadic::half() + bump(k)?)
    }
}

impl ExactFunction for PrecisionGated {
    fn eval_metered(&self, d: &Dyadic, meter: &mut OpMeter) -> Result<Dyadic> {
        require_nonnegative(d)?;
        let (_, k, delta) = split(d, meter)?;
        let peak = meter.add(&Dyadic::half(), &bump(k)?);
        Ok(tent(&delta, &peak, meter))
    }

    fn knots(&self, lo: &Dyadic, hi: &Dyadic, _resolution: u64) -> Option<Vec<Dyadic>> {
        let first = bigint_to_u64(&lo.floor()).unwrap_or(0);
        let last = bigint_to_u64(&hi.floor())?;
        let mut out = Vec::new();
        for j in first..=last {
            let base = Dyadic::from_biguint(j.into());
            out.push(&base + Dyadic::half());
            out.push(base + Dyadic::one());
            if j == first {
                out.push(Dyadic::from_biguint(j.into()));
            }
        }
        Some(finish_knots(out, lo, hi))
    }
}

/// Record of one run of [`precision_gated_machine`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineRun {
    /// `phi(2)`.
    pub coarse: Dyadic,
    /// Least `k` with `phi(2) + 1 < 2^k`: a bound on the block of `x`.
    pub coarse_k: u64,
    /// `phi(n + 3)`, clamped at 0.
    pub fine: Dyadic,
    /// Bit length of `floor(fine)`.
    pub k: u64,
    /// Whether the exact peak was used.
    pub exact_peak: bool,
    pub output: Dyadic,
}

/// Approximates the precision-gated witness at a real `x >= 0` to `2^-n`.
///
/// Queries the oracle at depths 2 and `n + 3`. The block index of the fine
/// answer decides the peak: the exact `1/2 + 2^-(2^k)` when
/// `n >= 2^k - 10`, plain `1/2` otherwise. Either way the work is
/// polynomial in `n` and the literal lengths of the answers.
pub fn precision_gated_machine<O: CauchyOracle + ?Sized>(
    oracle: &O,
    n: u64,
    meter: &mut OpMeter,
) -> Result<MachineRun> {
    meter.query(2);
    let coarse = oracle.query(2);
    meter.read(&coarse);
    let bound = meter.add(&coarse, &Dyadic::one());
    let coarse_k = match bound.ceil_log2() {
        Some(e) if !bound.is_negative() => {
            // least k with bound < 2^k
            let e = e.max(0) as u64;
            if bound == Dyadic::pow2(e as i64) { e + 1 } else { e }
        }
        _ => 0,
    };

    let depth = n.saturating_add(3);
    meter.query(depth);
    let mut fine = oracle.query(depth);
    meter.read(&fine);
    if fine.is_negative() {
        fine = Dyadic::zero();
    }
    let (_, k, delta) = split(&fine, meter)?;
    let exact_peak = k < 63 && n.saturating_add(10) >= (1u64 << k);
    let peak = if exact_peak {
        meter.add(&Dyadic::half(), &bump(k)?)
    } else {
        Dyadic::half()
    };
    let output = tent(&delta, &peak, meter);
    meter.emit(&output);
    Ok(MachineRun {
        coarse,
        coarse_k,
        fine,
        k,
        exact_peak,
        output,
    })
}
