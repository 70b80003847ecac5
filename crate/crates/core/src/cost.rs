//! The abstract cost model.
//!
//! Cost is a tally of digit operations, never wall-clock time:
//!
//! - arithmetic on dyadics costs one unit per 64-bit limb touched (operands
//!   and result for addition, the limb product for multiplication);
//! - exponent shifts cost one unit;
//! - reading an input or an oracle answer, and emitting an output, costs one
//!   unit per literal symbol;
//! - issuing an oracle query at depth `n` costs `n + 1`, the precision being
//!   written in unary on the query tape.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;

use crate::dyadic::Dyadic;

const LIMB_BITS: u64 = 64;

fn limbs(d: &Dyadic) -> u64 {
    d.mantissa_bits().div_ceil(LIMB_BITS).max(1)
}

/// Running tally of digit operations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OpMeter {
    ops: u64,
}

impl OpMeter {
    pub fn new() -> Self {
        OpMeter::default()
    }

    pub fn ops(&self) -> u64 {
        self.ops
    }

    pub fn charge(&mut self, units: u64) {
        self.ops = self.ops.saturating_add(units);
    }

    pub fn add(&mut self, a: &Dyadic, b: &Dyadic) -> Dyadic {
        let r = a + b;
        self.charge(limbs(a) + limbs(b) + limbs(&r));
        r
    }

    pub fn sub(&mut self, a: &Dyadic, b: &Dyadic) -> Dyadic {
        let r = a - b;
        self.charge(limbs(a) + limbs(b) + limbs(&r));
        r
    }

    pub fn mul(&mut self, a: &Dyadic, b: &Dyadic) -> Dyadic {
        let r = a * b;
        self.charge(limbs(a) * limbs(b) + limbs(&r));
        r
    }

    pub fn mul_pow2(&mut self, a: &Dyadic, shift: i64) -> Dyadic {
        self.charge(1);
        a.mul_pow2(shift)
    }

    pub fn cmp(&mut self, a: &Dyadic, b: &Dyadic) -> Ordering {
        self.charge(limbs(a).max(limbs(b)));
        a.cmp(b)
    }

    pub fn floor(&mut self, a: &Dyadic) -> BigInt {
        self.charge(limbs(a));
        a.floor()
    }

    pub fn round_to_precision(&mut self, a: &Dyadic, n: u64) -> Dyadic {
        self.charge(limbs(a));
        a.round_to_precision(n)
    }

    /// Reading a literal from a tape.
    pub fn read(&mut self, a: &Dyadic) {
        self.charge(a.symbol_count());
    }

    /// Writing the final answer.
    pub fn emit(&mut self, a: &Dyadic) {
        self.charge(a.symbol_count());
    }

    /// Writing an oracle query for precision `n`.
    pub fn query(&mut self, n: u64) {
        self.charge(n.saturating_add(1));
    }
}

/// Cost of one measured computation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CostReport {
    /// `len(d)` for dyadic inputs, the literal length of `x` for real inputs.
    pub input_len: u64,
    /// Extension parameter, when meaningful.
    pub k: Option<u64>,
    /// Precision parameter, when meaningful.
    pub n: Option<u64>,
    pub output_len: u64,
    pub digit_ops: u64,
    pub oracle_depth: u64,
    pub oracle_count: u64,
}

impl CostReport {
    /// Column names of the cost CSV, in order.
    pub const CSV_HEADER: [&'static str; 10] = [
        "target",
        "param_name",
        "param_value",
        "input_len",
        "k",
        "n",
        "output_len",
        "digit_ops",
        "oracle_depth",
        "oracle_count",
    ];

    /// One CSV record for this report.
    pub fn csv_record(&self, target: &str, param_name: &str, param_value: u64) -> Vec<String> {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        alloc::vec![
            target.to_string(),
            param_name.to_string(),
            param_value.to_string(),
            self.input_len.to_string(),
            opt(self.k),
            opt(self.n),
            self.output_len.to_string(),
            self.digit_ops.to_string(),
            self.oracle_depth.to_string(),
            self.oracle_count.to_string(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meter_charges_every_helper() {
        let mut m = OpMeter::new();
        let a: Dyadic = "1.1".parse().unwrap();
        let s = m.add(&a, &a);
        assert_eq!(s, Dyadic::from_int(3));
        assert_eq!(m.ops(), 3);
        m.mul(&a, &a);
        assert_eq!(m.ops(), 5);
        m.emit(&a);
        assert_eq!(m.ops(), 8);
        m.query(4);
        assert_eq!(m.ops(), 13);
    }

    #[test]
    fn wide_operands_cost_more() {
        let mut narrow = OpMeter::new();
        let mut wide = OpMeter::new();
        let a = Dyadic::one();
        let b = Dyadic::one() + Dyadic::pow2(-300);
        narrow.mul(&a, &a);
        wide.mul(&b, &b);
        assert!(wide.ops() > narrow.ops());
    }
}
