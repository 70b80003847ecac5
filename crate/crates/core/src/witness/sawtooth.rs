use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::One;

use crate::cost::OpMeter;
use crate::dyadic::{bigint_to_u64, Dyadic};
use crate::error::{Error, Result};
use crate::witness::{finish_knots, require_nonnegative, ExactFunction};

/// `eps_a = sum_{i=1..a} 4^-i = (4^a - 1) / (3 * 4^a)`.
pub fn epsilon(a: u64) -> Dyadic {
    if a == 0 {
        return Dyadic::zero();
    }
    let four_a = BigUint::one() << (2 * a);
    let mantissa = (four_a - 1u32) / 3u32;
    let shift = i64::try_from(2 * a).expect("epsilon index fits i64");
    Dyadic::from_biguint(mantissa).mul_pow2(-shift)
}

fn spike_value(j: u64) -> Dyadic {
    if j == 0 {
        Dyadic::zero()
    } else {
        Dyadic::pow2(j as i64)
    }
}

fn identity(r: u64) -> u64 {
    r
}

/// The sawtooth witness.
///
/// On block `[r, r+1]` with `g = growth(r)` it climbs through
/// `d_j = r + eps_j` (value `2^j`, `j = 1..g`) and descends through
/// `e_j = r + 2 eps_g - eps_j` back to `e_0`, where it stays zero until
/// `r + 1`. Segments next to `d_j` and `e_j` have width `4^-(j+1)`.
#[derive(Debug, Clone, Copy)]
pub struct Sawtooth {
    growth: fn(u64) -> u64,
}

impl Default for Sawtooth {
    fn default() -> Self {
        Sawtooth::new()
    }
}

impl Sawtooth {
    /// Spike height `2^r` on block `r`.
    pub const fn new() -> Self {
        Sawtooth { growth: identity }
    }

    pub const fn with_growth(growth: fn(u64) -> u64) -> Self {
        Sawtooth { growth }
    }

    /// Number of ascending breakpoints on block `r`.
    pub fn apex_count(&self, r: u64) -> u64 {
        (self.growth)(r)
    }

    /// Ascending breakpoint `d_j` of block `r`.
    pub fn ascending(&self, r: u64, j: u64) -> Dyadic {
        Dyadic::from_biguint(r.into()) + epsilon(j)
    }

    /// Descending breakpoint `e_j` of block `r`.
    pub fn descending(&self, r: u64, j: u64) -> Dyadic {
        let g = self.apex_count(r);
        Dyadic::from_biguint(r.into()) + epsilon(g).mul_pow2(1) - epsilon(j)
    }

    /// Largest `j` in `[lo, hi]` with `eps_j <= t`, given `eps_lo <= t`.
    fn last_at_most(t: &Dyadic, mut lo: u64, mut hi: u64, meter: &mut OpMeter) -> u64 {
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if meter.cmp(&epsilon(mid), t) != Ordering::Greater {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo
    }

    /// Value at `eps_j + offset` (or `2 eps_g - eps_j - offset`) with
    /// `0 < offset < 4^-(j+1)`.
    fn between(j: u64, offset: &Dyadic, meter: &mut OpMeter) -> Dyadic {
        let width_exp = 2 * (j as i64 + 1);
        let near = spike_value(j);
        let far = spike_value(j + 1);
        let rise = meter.sub(&far, &near);
        let scaled = meter.mul(offset, &rise);
        let step = meter.mul_pow2(&scaled, width_exp);
        meter.add(&near, &step)
    }
}

impl ExactFunction for Sawtooth {
    fn eval_metered(&self, d: &Dyadic, meter: &mut OpMeter) -> Result<Dyadic> {
        require_nonnegative(d)?;
        let r_int = meter.floor(d);
        let r = bigint_to_u64(&r_int).ok_or_else(|| Error::Overflow(format!("block of {d}")))?;
        let delta = meter.sub(d, &Dyadic::from_bigint(r_int));
        if delta.is_zero() {
            return Ok(Dyadic::zero());
        }
        let g = self.apex_count(r);
        if g == 0 {
            return Ok(Dyadic::zero());
        }

        // Breakpoints beyond index L/2 + 2 have more fractional bits than
        // delta, so comparisons against eps_probe decide the side.
        let probe = g.min(delta.frac_bits() / 2 + 2);
        let eps_probe = epsilon(probe);
        if meter.cmp(&delta, &eps_probe) != Ordering::Greater {
            let j = Self::last_at_most(&delta, 0, probe, meter);
            let eps_j = epsilon(j);
            if eps_j == delta {
                return Ok(spike_value(j));
            }
            let offset = meter.sub(&delta, &eps_j);
            return Ok(Self::between(j, &offset, meter));
        }

        let twice = meter.mul_pow2(&eps_probe, 1);
        match meter.cmp(&delta, &twice) {
            Ordering::Greater => return Ok(Dyadic::zero()),
            Ordering::Equal if probe == g => return Ok(Dyadic::zero()),
            _ => {}
        }

        // Descending side: reflect around eps_g.
        let eps_g = if probe == g { eps_probe } else { epsilon(g) };
        let two_eps_g = meter.mul_pow2(&eps_g, 1);
        let t = meter.sub(&two_eps_g, &delta);
        let j = Self::last_at_most(&t, 0, g - 1, meter);
        let eps_j = epsilon(j);
        if eps_j == t {
            return Ok(spike_value(j));
        }
        let offset = meter.sub(&t, &eps_j);
        Ok(Self::between(j, &offset, meter))
    }

    fn knots(&self, lo: &Dyadic, hi: &Dyadic, _resolution: u64) -> Option<Vec<Dyadic>> {
        let first = bigint_to_u64(&lo.floor()).unwrap_or(0);
        let last = bigint_to_u64(&hi.floor())?;
        let mut out = Vec::new();
        for r in first..=last {
            let base = Dyadic::from_biguint(r.into());
            let g = self.apex_count(r);
            let two_eps_g = epsilon(g).mul_pow2(1);
            out.push(base.clone());
            for j in 0..=g {
                let eps = epsilon(j);
                out.push(&base + &eps);
                out.push(&base + &two_eps_g - &eps);
            }
            out.push(base + Dyadic::one());
        }
        Some(finish_knots(out, lo, hi))
    }
}
