//! Separation witnesses.
//!
//! Every witness is piecewise linear with dyadic breakpoints and values, so
//! it maps dyadics to dyadics exactly. Each exposes its breakpoints through
//! [`ExactFunction::knots`], which is what makes exact modulus computations
//! possible.

mod combined;
mod exp_demo;
mod precision_gated;
mod pwl;
mod sawtooth;
mod slow_decay;

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use combined::Combined;
pub use exp_demo::{exp_digit_demo, ExpRun};
pub use precision_gated::{precision_gated_machine, MachineRun, PrecisionGated};
pub use pwl::PiecewiseLinear;
pub use sawtooth::{epsilon, Sawtooth};
pub use slow_decay::{alpha, SlowDecay};

use crate::cost::OpMeter;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};

/// A function that can be evaluated exactly on dyadic arguments.
pub trait ExactFunction {
    fn eval_metered(&self, d: &Dyadic, meter: &mut OpMeter) -> Result<Dyadic>;

    fn eval(&self, d: &Dyadic) -> Result<Dyadic> {
        self.eval_metered(d, &mut OpMeter::new())
    }

    /// Breakpoints of the function on `[lo, hi]`, sorted, including both
    /// endpoints; `None` when the function is not piecewise linear.
    ///
    /// Between consecutive knots the function is linear, except that
    /// breakpoints whose pieces are narrower than `2^-resolution` may be
    /// dropped where they cannot change the variation over windows of width
    /// `2^-resolution`.
    fn knots(&self, lo: &Dyadic, hi: &Dyadic, resolution: u64) -> Option<Vec<Dyadic>>;
}

impl<T: ExactFunction + ?Sized> ExactFunction for &T {
    fn eval_metered(&self, d: &Dyadic, meter: &mut OpMeter) -> Result<Dyadic> {
        (**self).eval_metered(d, meter)
    }

    fn knots(&self, lo: &Dyadic, hi: &Dyadic, resolution: u64) -> Option<Vec<Dyadic>> {
        (**self).knots(lo, hi, resolution)
    }
}

/// Wraps a closure as an [`ExactFunction`] without breakpoint information.
pub struct FnExact<F>(pub F);

impl<F: Fn(&Dyadic) -> Result<Dyadic>> ExactFunction for FnExact<F> {
    fn eval_metered(&self, d: &Dyadic, meter: &mut OpMeter) -> Result<Dyadic> {
        meter.charge(1);
        (self.0)(d)
    }

    fn knots(&self, _lo: &Dyadic, _hi: &Dyadic, _resolution: u64) -> Option<Vec<Dyadic>> {
        None
    }
}

/// The constant zero function.
pub struct Zero;

impl ExactFunction for Zero {
    fn eval_metered(&self, _d: &Dyadic, _meter: &mut OpMeter) -> Result<Dyadic> {
        Ok(Dyadic::zero())
    }

    fn knots(&self, lo: &Dyadic, hi: &Dyadic, _resolution: u64) -> Option<Vec<Dyadic>> {
        Some(finish_knots(Vec::new(), lo, hi))
    }
}

/// The identity function.
pub struct Identity;

impl ExactFunction for Identity {
    fn eval_metered(&self, d: &Dyadic, _meter: &mut OpMeter) -> Result<Dyadic> {
        Ok(d.clone())
    }

    fn knots(&self, lo: &Dyadic, hi: &Dyadic, _resolution: u64) -> Option<Vec<Dyadic>> {
        Some(finish_knots(Vec::new(), lo, hi))
    }
}

/// Keeps the candidates strictly inside `(lo, hi)`, adds the endpoints, sorts
/// and deduplicates.
pub(crate) fn finish_knots(candidates: Vec<Dyadic>, lo: &Dyadic, hi: &Dyadic) -> Vec<Dyadic> {
    let mut out: Vec<Dyadic> = candidates
        .into_iter()
        .filter(|x| x > lo && x < hi)
        .collect();
    out.push(lo.clone());
    if hi != lo {
        out.push(hi.clone());
    }
    out.sort();
    out.dedup();
    out
}

pub(crate) fn require_nonnegative(d: &Dyadic) -> Result<()> {
    if d.is_negative() {
        Err(Error::Domain(alloc::format!("{d} < 0")))
    } else {
        Ok(())
    }
}

static SAWTOOTH: Sawtooth = Sawtooth::new();
static SLOW_DECAY: SlowDecay = SlowDecay;
static PRECISION_GATED: PrecisionGated = PrecisionGated;
static COMBINED: Combined = Combined::new();

/// Stable identifiers of the shipped witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessId {
    Sawtooth,
    SlowDecay,
    PrecisionGated,
    Combined,
    ExpDemo,
}

impl WitnessId {
    pub const ALL: [WitnessId; 5] = [
        WitnessId::Sawtooth,
        WitnessId::SlowDecay,
        WitnessId::PrecisionGated,
        WitnessId::Combined,
        WitnessId::ExpDemo,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            WitnessId::Sawtooth => "sawtooth",
            WitnessId::SlowDecay => "slow-decay",
            WitnessId::PrecisionGated => "precision-gated",
            WitnessId::Combined => "combined",
            WitnessId::ExpDemo => "exp-demo",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            WitnessId::Sawtooth => {
                "per-block spikes of height 2^r; PTime on dyadics, modulus 3*2^k+n, exponential in k"
            }
            WitnessId::SlowDecay => {
                "decreasing on [0,1] with drops at towers 2^(2^j); modulus not polynomial in n"
            }
            WitnessId::PrecisionGated => {
                "tent of height 1/2+2^(-2^k) on each [j,j+1]; PTime as a real function only"
            }
            WitnessId::Combined => "sawtooth + slow-decay; modulus not polynomial in k nor in n",
            WitnessId::ExpDemo => "e^x by a truncated series; integer part grows like 2^k",
        }
    }

    /// The exact dyadic function behind the id; `None` for the `e^x` demo.
    pub fn function(self) -> Option<&'static dyn ExactFunction> {
        match self {
            WitnessId::Sawtooth => Some(&SAWTOOTH),
            WitnessId::SlowDecay => Some(&SLOW_DECAY),
            WitnessId::PrecisionGated => Some(&PRECISION_GATED),
            WitnessId::Combined => Some(&COMBINED),
            WitnessId::ExpDemo => None,
        }
    }

    pub fn eval(self, d: &Dyadic) -> Result<Dyadic> {
        self.function()
            .ok_or_else(|| Error::Domain("exp-demo needs a precision".to_string()))?
            .eval(d)
    }
}

impl fmt::Display for WitnessId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for WitnessId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WitnessId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in WitnessId::ALL {
            assert_eq!(id.as_str().parse::<WitnessId>().unwrap(), id);
        }
        assert!("nope".parse::<WitnessId>().is_err());
    }

    #[test]
    fn knot_finishing() {
        let lo = Dyadic::from_int(1);
        let hi = Dyadic::from_int(3);
        let k = finish_knots(
            alloc::vec![Dyadic::from_int(2), Dyadic::from_int(5), Dyadic::from_int(2), lo.clone()],
            &lo,
            &hi,
        );
        assert_eq!(k, alloc::vec![lo, Dyadic::from_int(2), hi]);
    }
}
