use alloc::vec::Vec;

use crate::cost::OpMeter;
use crate::dyadic::Dyadic;
use crate::error::Result;
use crate::witness::{finish_knots, ExactFunction, Sawtooth, SlowDecay};

/// Sawtooth plus slow-decay. Its modulus is super-polynomial both in the
/// extension parameter and in the precision.
#[derive(Debug, Clone, Copy, Default)]
pub struct Combined {
    sawtooth: Sawtooth,
}

impl Combined {
    pub const fn new() -> Self {
        Combined {
            sawtooth: Sawtooth::new(),
        }
    }
}

impl ExactFunction for Combined {
    fn eval_metered(&self, d: &Dyadic, meter: &mut OpMeter) -> Result<Dyadic> {
        let a = self.sawtooth.eval_metered(d, meter)?;
        let b = SlowDecay.eval_metered(d, meter)?;
        Ok(meter.add(&a, &b))
    }

    fn knots(&self, lo: &Dyadic, hi: &Dyadic, resolution: u64) -> Option<Vec<Dyadic>> {
        let mut all = self.sawtooth.knots(lo, hi, resolution)?;
        all.extend(SlowDecay.knots(lo, hi, resolution)?);
        Some(finish_knots(all, lo, hi))
    }
}
