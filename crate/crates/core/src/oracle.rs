//! Cauchy-function oracles.
//!
//! An oracle for a real `x` answers a precision `n` with a dyadic within
//! `2^-n` of `x`. Oracles are total and deterministic; seeded jitter is the
//! only source of variation between representations of the same real.

use alloc::boxed::Box;
use core::cell::Cell;

use crate::dyadic::Dyadic;
use crate::error::Result;
use crate::witness::WitnessId;

/// A queryable representation of a real number.
pub trait CauchyOracle {
    /// A dyadic within `2^-n` of the represented real.
    fn query(&self, n: u64) -> Dyadic;
}

impl<T: CauchyOracle + ?Sized> CauchyOracle for &T {
    fn query(&self, n: u64) -> Dyadic {
        (**self).query(n)
    }
}

impl<T: CauchyOracle + ?Sized> CauchyOracle for Box<T> {
    fn query(&self, n: u64) -> Dyadic {
        (**self).query(n)
    }
}

/// A value the system knows exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactValue {
    Dyadic(Dyadic),
    /// A witness function applied to an exact dyadic argument.
    Witness(WitnessId, Dyadic),
}

impl ExactValue {
    pub fn value(&self) -> Result<Dyadic> {
        match self {
            ExactValue::Dyadic(d) => Ok(d.clone()),
            ExactValue::Witness(id, d) => id.eval(d),
        }
    }
}

impl From<Dyadic> for ExactValue {
    fn from(d: Dyadic) -> Self {
        ExactValue::Dyadic(d)
    }
}

/// `n -> floor(2^n x) / 2^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalOracle {
    x: Dyadic,
}

impl CanonicalOracle {
    pub fn new(x: Dyadic) -> Self {
        CanonicalOracle { x }
    }

    pub fn value(&self) -> &Dyadic {
        &self.x
    }
}

impl CauchyOracle for CanonicalOracle {
    fn query(&self, n: u64) -> Dyadic {
        self.x.round_to_precision(n)
    }
}

/// The canonical oracle of an exact value.
pub fn canonical_oracle(x: &ExactValue) -> Result<CanonicalOracle> {
    Ok(CanonicalOracle::new(x.value()?))
}

/// A valid but adversarial oracle: `phi*(n+1) + j 2^-(n+1)` with
/// `j in {-1, 0, 1}` drawn from a hash of `(seed, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JitteredOracle {
    x: Dyadic,
    seed: u64,
}

impl JitteredOracle {
    pub fn new(x: Dyadic, seed: u64) -> Self {
        JitteredOracle { x, seed }
    }

    /// The offset `j` used at precision `n`.
    pub fn jitter(&self, n: u64) -> i64 {
        (mix64(self.seed ^ mix64(n)) % 3) as i64 - 1
    }
}

// splitmix64 finalizer; only used as a deterministic hash
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl CauchyOracle for JitteredOracle {
    fn query(&self, n: u64) -> Dyadic {
        let fine = n.saturating_add(1);
        let base = self.x.round_to_precision(fine);
        let step = Dyadic::pow2(-i64::try_from(fine).expect("precision fits i64"));
        match self.jitter(n) {
            -1 => base - step,
            1 => base + step,
            _ => base,
        }
    }
}

pub fn jittered_oracle(x: &ExactValue, seed: u64) -> Result<JitteredOracle> {
    Ok(JitteredOracle::new(x.value()?, seed))
}

/// Oracle backed by a closure. The caller is responsible for soundness.
pub struct FnOracle<F>(pub F);

impl<F: Fn(u64) -> Dyadic> CauchyOracle for FnOracle<F> {
    fn query(&self, n: u64) -> Dyadic {
        (self.0)(n)
    }
}

/// Forwarding wrapper that records the deepest precision queried and the
/// number of queries. Confined to one evaluation at a time.
#[derive(Debug)]
pub struct InstrumentedOracle<O> {
    inner: O,
    max_depth: Cell<u64>,
    count: Cell<u64>,
}

impl<O: CauchyOracle> InstrumentedOracle<O> {
    pub fn new(inner: O) -> Self {
        InstrumentedOracle {
            inner,
            max_depth: Cell::new(0),
            count: Cell::new(0),
        }
    }

    pub fn max_depth(&self) -> u64 {
        self.max_depth.get()
    }

    pub fn count(&self) -> u64 {
        self.count.get()
    }

    pub fn into_inner(self) -> O {
        self.inner
    }
}

impl<O: CauchyOracle> CauchyOracle for InstrumentedOracle<O> {
    fn query(&self, n: u64) -> Dyadic {
        self.count.set(self.count.get() + 1);
        if n > self.max_depth.get() {
            self.max_depth.set(n);
        }
        self.inner.query(n)
    }
}

pub fn instrument<O: CauchyOracle>(o: O) -> InstrumentedOracle<O> {
    InstrumentedOracle::new(o)
}
