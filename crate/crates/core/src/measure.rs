//! Cost measurement of witnesses and real evaluators.

use alloc::format;

use crate::cost::{CostReport, OpMeter};
use crate::dyadic::{bit_length, len, Dyadic};
use crate::error::{Error, Result};
use crate::eval::{evaluate_with, SpecId};
use crate::oracle::{CanonicalOracle, ExactValue, InstrumentedOracle};
use crate::witness::{exp_digit_demo, precision_gated_machine, ExpRun, WitnessId};

/// Cost of evaluating a witness exactly at `d`: reading `d`, the arithmetic,
/// and writing the value.
pub fn measure_dyadic(id: WitnessId, d: &Dyadic) -> Result<(Dyadic, CostReport)> {
    let f = id
        .function()
        .ok_or_else(|| Error::Domain(format!("{id} needs a precision; use measure_exp_demo")))?;
    let mut meter = OpMeter::new();
    meter.read(d);
    let value = f.eval_metered(d, &mut meter)?;
    meter.emit(&value);
    Ok((
        value.clone(),
        CostReport {
            input_len: len(d),
            output_len: len(&value),
            digit_ops: meter.ops(),
            ..CostReport::default()
        },
    ))
}

/// Least `k` with `x <= a + 2^k`, for `x >= a`.
pub fn extension_of(x: &Dyadic, a: &Dyadic) -> Result<u64> {
    if x < a {
        return Err(Error::Domain(format!("{x} < {a}")));
    }
    let span = x - a;
    if span <= Dyadic::one() {
        return Ok(0);
    }
    Ok(span.ceil_log2().expect("span > 1") as u64)
}

/// Cost of approximating a bundled real function at an exactly known `x`
/// through its canonical oracle.
///
/// The precision-gated spec runs its dedicated machine (queries at depths 2
/// and `n + 3`); the others run the generic evaluator.
pub fn measure_real(spec: SpecId, x: &ExactValue, n: u64) -> Result<(Dyadic, CostReport)> {
    let value = x.value()?;
    let oracle = CanonicalOracle::new(value.clone());
    let input_len = len(&value);
    match spec {
        SpecId::PrecisionGated => {
            let o = InstrumentedOracle::new(&oracle);
            let mut meter = OpMeter::new();
            let run = precision_gated_machine(&o, n, &mut meter)?;
            Ok((
                run.output.clone(),
                CostReport {
                    input_len,
                    k: Some(extension_of(&value, &Dyadic::zero())?),
                    n: Some(n),
                    output_len: len(&run.output),
                    digit_ops: meter.ops(),
                    oracle_depth: o.max_depth(),
                    oracle_count: o.count(),
                },
            ))
        }
        _ => {
            let s = spec.spec();
            let a = CanonicalOracle::new(s.left_endpoint.clone());
            let (out, t) = evaluate_with(&s, &a, &oracle, n, None)?;
            Ok((
                out,
                CostReport {
                    input_len,
                    ..t.cost
                },
            ))
        }
    }
}

/// Cost of the `e^x` demo, with `k` the bit length of `floor(x)`.
pub fn measure_exp_demo(x: &Dyadic, n: u64) -> Result<(ExpRun, CostReport)> {
    let mut meter = OpMeter::new();
    let run = exp_digit_demo(x, n, &mut meter)?;
    let report = CostReport {
        input_len: len(x),
        k: Some(bit_length(&x.floor())),
        n: Some(n),
        output_len: len(&run.value),
        digit_ops: meter.ops(),
        oracle_depth: 0,
        oracle_count: 0,
    };
    Ok((run, report))
}
