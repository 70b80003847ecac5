use alloc::vec::Vec;

use crate::cost::OpMeter;
use crate::dyadic::Dyadic;
use crate::error::Result;
use crate::witness::{finish_knots, require_nonnegative, ExactFunction};

/// Towers `2^(2^m)` that fit in a `u64`.
const TOWERS: [u64; 6] = [2, 4, 16, 256, 65_536, 1 << 32];

/// Largest tower knot materialized when the window reaches 1; the next one
/// would need a 2^32-bit mantissa.
const LARGEST_MATERIALIZED: u64 = 65_536;

/// `alpha(i)`: the largest `2^(2^m) <= i` (for `i >= 2`), with its `m`.
pub fn alpha(i: u64) -> Option<(u64, u32)> {
    TOWERS
        .iter()
        .enumerate()
        .rev()
        .find(|(_, &t)| t <= i)
        .map(|(m, &t)| (t, m as u32))
}

/// Value at the breakpoint `d_i = 1 - 2^-i`.
fn level(i: u64) -> Dyadic {
    match alpha(i) {
        Some((_, m)) if i > 1 => Dyadic::pow2(-i64::from(m)),
        _ => Dyadic::one(),
    }
}

fn breakpoint(i: u64) -> Dyadic {
    Dyadic::one() - Dyadic::pow2(-(i as i64))
}

/// Decreasing witness on `[0, 1]` whose drops sit at towers.
///
/// `f(1 - 2^-i) = 2^-m` where `2^(2^m)` is the largest tower not above `i`,
/// `f = 1` on `[0, 1/2]`, linear between consecutive breakpoints, and
/// `f = 0` from 1 on. The drop into level `2^-m` happens over a piece of
/// width `2^-(2^(2^m))`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SlowDecay;

impl SlowDecay {
    pub fn breakpoint(i: u64) -> Dyadic {
        breakpoint(i)
    }

    pub fn level(i: u64) -> Dyadic {
        level(i)
    }

    /// Towers at which the level changes.
    pub fn drop_towers() -> impl Iterator<Item = u64> {
        TOWERS.into_iter().skip(1)
    }
}

impl ExactFunction for SlowDecay {
    fn eval_metered(&self, d: &Dyadic, meter: &mut OpMeter) -> Result<Dyadic> {
        require_nonnegative(d)?;
        let one = Dyadic::one();
        if meter.cmp(d, &Dyadic::half()) != core::cmp::Ordering::Greater {
            return Ok(one);
        }
        if *d >= one {
            return Ok(Dyadic::zero());
        }
        let u = meter.sub(&one, d);
        // d_i <= d < d_{i+1}
        let top = u.floor_log2().expect("u > 0");
        let i = if u.is_power_of_two() { -top } else { -top - 1 } as u64;
        let here = level(i);
        let next = level(i + 1);
        if here == next {
            return Ok(here);
        }
        let offset = meter.sub(d, &breakpoint(i));
        let rise = meter.sub(&next, &here);
        let scaled = meter.mul(&offset, &rise);
        let step = meter.mul_pow2(&scaled, i as i64 + 1);
        Ok(meter.add(&here, &step))
    }

    fn knots(&self, lo: &Dyadic, hi: &Dyadic, _resolution: u64) -> Option<Vec<Dyadic>> {
        let one = Dyadic::one();
        let mut out = alloc::vec![Dyadic::half()];
        if *hi >= one {
            for w in Self::drop_towers().filter(|&w| w <= LARGEST_MATERIALIZED) {
                out.push(breakpoint(w - 1));
                out.push(breakpoint(w));
            }
            out.push(one);
        } else {
            let gap = &one - hi;
            let top = gap.floor_log2().expect("hi < 1");
            for w in Self::drop_towers() {
                // d_{w-1} < hi  <=>  1 - hi < 2^-(w-1)
                if top >= -(w as i64 - 1) {
                    break;
                }
                out.push(breakpoint(w - 1));
                out.push(breakpoint(w));
            }
        }
        Some(finish_knots(out, lo, hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn tower_lookup() {
        assert_eq!(alpha(1), None);
        assert_eq!(alpha(2), Some((2, 0)));
        assert_eq!(alpha(15), Some((4, 1)));
        assert_eq!(alpha(16), Some((16, 2)));
        assert_eq!(alpha(u64::MAX), Some((1 << 32, 5)));
    }

    #[test]
    fn breakpoint_values() {
        let f = SlowDecay;
        for (i, expect) in [(0, "1"), (1, "1"), (3, "1"), (4, "0.1"), (15, "0.1"), (16, "0.01")] {
            assert_eq!(f.eval(&breakpoint(i)).unwrap(), d(expect), "i = {i}");
        }
        assert_eq!(f.eval(&d("0.01")).unwrap(), Dyadic::one());
        assert_eq!(f.eval(&d("1")).unwrap(), Dyadic::zero());
        assert_eq!(f.eval(&d("101")).unwrap(), Dyadic::zero());
        // midway through the first drop
        assert_eq!(f.eval(&d("0.11101")).unwrap(), d("0.11"));
        assert!(f.eval(&d("-0.1")).is_err());
    }

    #[test]
    fn drop_slopes() {
        let f = SlowDecay;
        let p = crate::witness::PiecewiseLinear::sample(&f, &d("0.111"), &d("0.1111"), 0).unwrap();
        assert_eq!(p.steepest().unwrap().1, d("1000"));
        let hi = breakpoint(16);
        let p = crate::witness::PiecewiseLinear::sample(&f, &breakpoint(15), &hi, 0).unwrap();
        assert_eq!(p.steepest().unwrap().1, Dyadic::pow2(14));
    }

    #[test]
    fn knots_stop_below_hi() {
        let f = SlowDecay;
        let k = f.knots(&d("0.1"), &d("0.1111"), 0).unwrap();
        assert_eq!(k, alloc::vec![d("0.1"), d("0.111"), d("0.1111")]);
        let k = f.knots(&Dyadic::zero(), &d("10"), 0).unwrap();
        assert_eq!(k.first(), Some(&Dyadic::zero()));
        assert!(k.contains(&Dyadic::one()));
        assert!(k.contains(&breakpoint(65_536)));
    }
}
