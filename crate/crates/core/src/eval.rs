//! Real functions given by a (modulus, approximator) pair, and the oracle
//! machine that evaluates them.
//!
//! For `x >= a` and precision `n` the machine
//!
//! 1. reads `d1 = phi_a(2)` and `d2 = phi_x(2)`;
//! 2. derives an extension `k` with `x in [a, a + 2^k]`;
//! 3. sets `alpha = m(k, n + 1)`;
//! 4. reads `d = phi_x(alpha)`, clamped up to `a`;
//! 5. outputs `psi(d, n + 1)`.
//!
//! Step 4 puts `f(d)` within `2^-(n+1)` of `f(x)`, step 5 puts the output
//! within `2^-(n+1)` of `f(d)`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::cost::{CostReport, OpMeter};
use crate::dyadic::{len, Dyadic};
use crate::error::{Error, Result};
use crate::modulus::Modulus;
use crate::oracle::{CanonicalOracle, CauchyOracle, InstrumentedOracle};
use crate::witness::{precision_gated_machine, ExactFunction, PrecisionGated, Sawtooth};

/// `psi(d, n)`: a dyadic within `2^-n` of `f(d)`.
pub type Approximator = Arc<dyn Fn(&Dyadic, u64, &mut OpMeter) -> Result<Dyadic> + Send + Sync>;

/// Exact reference values of `f` on dyadics, when known.
pub type Reference = Arc<dyn Fn(&Dyadic) -> Result<Dyadic> + Send + Sync>;

/// Identifiers of the bundled real functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecId {
    Identity,
    Affine,
    Square,
    PrecisionGated,
    SawtoothExt,
}

impl SpecId {
    pub const ALL: [SpecId; 5] = [
        SpecId::Identity,
        SpecId::Affine,
        SpecId::Square,
        SpecId::PrecisionGated,
        SpecId::SawtoothExt,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SpecId::Identity => "identity",
            SpecId::Affine => "affine",
            SpecId::Square => "square",
            SpecId::PrecisionGated => "precision-gated",
            SpecId::SawtoothExt => "sawtooth-ext",
        }
    }

    pub fn spec(self) -> RealFunctionSpec {
        match self {
            SpecId::Identity => identity(),
            SpecId::Affine => affine(Dyadic::from_parts((-3).into(), -1), Dyadic::from_int(5)),
            SpecId::Square => square(),
            SpecId::PrecisionGated => precision_gated(),
            SpecId::SawtoothExt => sawtooth_ext(),
        }
    }
}

impl fmt::Display for SpecId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for SpecId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SpecId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

/// A real function on `[a, oo)`.
#[derive(Clone)]
pub struct RealFunctionSpec {
    pub id: String,
    pub modulus: Modulus,
    pub approximator: Approximator,
    /// Left endpoint `a`, known exactly.
    pub left_endpoint: Dyadic,
    pub reference: Option<Reference>,
    /// One-line account of `m`, `psi` and the cost bound.
    pub summary: &'static str,
}

impl fmt::Debug for RealFunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RealFunctionSpec")
            .field("id", &self.id)
            .field("modulus", &self.modulus)
            .field("left_endpoint", &self.left_endpoint)
            .finish()
    }
}

impl RealFunctionSpec {
    pub fn psi(&self, d: &Dyadic, n: u64, meter: &mut OpMeter) -> Result<Dyadic> {
        if *d < self.left_endpoint {
            return Err(Error::DomainViolation(format!(
                "{d} < {}",
                self.left_endpoint
            )));
        }
        (self.approximator)(d, n, meter)
    }

    /// Exact `f(d)` when the spec carries a reference.
    pub fn exact(&self, d: &Dyadic) -> Option<Result<Dyadic>> {
        self.reference.as_ref().map(|r| r(d))
    }
}

fn round_psi(
    f: impl Fn(&Dyadic, &mut OpMeter) -> Dyadic + Send + Sync + 'static,
) -> Approximator {
    Arc::new(move |d, n, meter| {
        let v = f(d, meter);
        Ok(meter.round_to_precision(&v, n.saturating_add(2)))
    })
}

/// `f(x) = x`; `m = n`, `psi(d, n) = d` cut to `n + 2` bits.
pub fn identity() -> RealFunctionSpec {
    RealFunctionSpec {
        id: "identity".into(),
        modulus: Modulus::linear(0, 1, 0),
        approximator: round_psi(|d, _| d.clone()),
        left_endpoint: Dyadic::zero(),
        reference: Some(Arc::new(|d| Ok(d.clone()))),
        summary: "m(k,n) = n; psi(d,n) = d cut to n+2 bits; linear cost",
    }
}

/// `f(x) = c x + e`; `m = n + ceil(log2 |c|)`.
pub fn affine(c: Dyadic, e: Dyadic) -> RealFunctionSpec {
    let lip = c.ceil_log2().unwrap_or(0).max(0) as u64;
    let (c1, e1) = (c.clone(), e.clone());
    RealFunctionSpec {
        id: "affine".into(),
        modulus: Modulus::linear(0, 1, lip),
        approximator: round_psi(move |d, meter| {
            let p = meter.mul(&c1, d);
            meter.add(&p, &e1)
        }),
        left_endpoint: Dyadic::zero(),
        reference: Some(Arc::new(move |d| Ok(&c * d + &e))),
        summary: "c = -3/2, e = 5; m(k,n) = n + ceil(log2|c|); psi exact then cut to n+2 bits; linear cost",
    }
}

/// `f(x) = x^2`; `m = n + k + 1` from `|x^2 - y^2| <= 2^(k+1) |x - y|`.
pub fn square() -> RealFunctionSpec {
    RealFunctionSpec {
        id: "square".into(),
        modulus: Modulus::linear(1, 1, 1),
        approximator: round_psi(|d, meter| meter.mul(d, d)),
        left_endpoint: Dyadic::zero(),
        reference: Some(Arc::new(|d| Ok(d * d))),
        summary: "m(k,n) = n+k+1; psi(d,n) = d^2 cut to n+2 bits; quadratic cost",
    }
}

/// The precision-gated witness; `psi(d, n)` runs the gated machine on the
/// canonical oracle of `d`, and the slope bound 2 gives `m = n + 1`.
pub fn precision_gated() -> RealFunctionSpec {
    RealFunctionSpec {
        id: "precision-gated".into(),
        modulus: Modulus::linear(0, 1, 1),
        approximator: Arc::new(|d, n, meter| {
            let o = CanonicalOracle::new(d.clone());
            Ok(precision_gated_machine(&o, n, meter)?.output)
        }),
        left_endpoint: Dyadic::zero(),
        reference: Some(Arc::new(|d| PrecisionGated.eval(d))),
        summary: "m(k,n) = n+1; psi = gated machine; cost polynomial in k and n",
    }
}

/// The sawtooth's real extension with its exponential modulus `3 2^k + n`.
/// Evaluable, but outside the polynomial class.
pub fn sawtooth_ext() -> RealFunctionSpec {
    RealFunctionSpec {
        id: "sawtooth-ext".into(),
        modulus: Modulus::affine_exp(3),
        approximator: Arc::new(|d, _n, meter| Sawtooth::new().eval_metered(d, meter)),
        left_endpoint: Dyadic::zero(),
        reference: Some(Arc::new(|d| Sawtooth::new().eval(d))),
        summary: "m(k,n) = 3*2^k+n (not polynomial); psi exact",
    }
}

pub fn bundled_specs() -> Vec<RealFunctionSpec> {
    SpecId::ALL.into_iter().map(SpecId::spec).collect()
}

/// Least `j >= 0` with `d2 + 1/4 <= d1 - 1/4 + 2^j`.
///
/// With `|d1 - a|, |d2 - x| <= 1/4` and `x >= a` this guarantees
/// `x in [a, a + 2^j]`.
pub fn determine_extension(d1: &Dyadic, d2: &Dyadic) -> Result<u64> {
    let quarter = Dyadic::pow2(-2);
    let top = d2 + &quarter;
    let base = d1 - &quarter;
    if top < base {
        return Err(Error::InconsistentOracles);
    }
    let span = top - base;
    if span <= Dyadic::one() {
        return Ok(0);
    }
    Ok(span.ceil_log2().expect("span > 1") as u64)
}

/// Everything the machine saw and produced in one evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalTranscript {
    pub spec_id: String,
    /// Literal of `x`, when `x` is known exactly.
    pub x_literal: Option<String>,
    pub n: u64,
    pub d1: Dyadic,
    pub d2: Dyadic,
    pub k: u64,
    pub alpha: u64,
    /// The query answer `phi_x(alpha)` after clamping.
    pub d: Dyadic,
    pub output: Dyadic,
    pub cost: CostReport,
}

impl EvalTranscript {
    pub const CSV_HEADER: [&'static str; 8] = [
        "spec_id",
        "x_literal",
        "n",
        "k",
        "alpha",
        "query_depth",
        "digit_ops",
        "output_literal",
    ];

    pub fn csv_record(&self) -> Vec<String> {
        alloc::vec![
            self.spec_id.clone(),
            self.x_literal.clone().unwrap_or_default(),
            self.n.to_string(),
            self.k.to_string(),
            self.alpha.to_string(),
            self.cost.oracle_depth.to_string(),
            self.cost.digit_ops.to_string(),
            self.output.to_string(),
        ]
    }

    /// Runs step 5 again from the recorded `d`.
    pub fn replay(&self, spec: &RealFunctionSpec) -> Result<bool> {
        Ok(spec.psi(&self.d, self.n + 1, &mut OpMeter::new())? == self.output)
    }
}

/// Evaluates `spec` at the real given by `phi_x`, with `phi_a` the canonical
/// oracle of the left endpoint.
pub fn evaluate<O: CauchyOracle + ?Sized>(
    spec: &RealFunctionSpec,
    phi_x: &O,
    n: u64,
) -> Result<(Dyadic, EvalTranscript)> {
    let phi_a = CanonicalOracle::new(spec.left_endpoint.clone());
    evaluate_with(spec, &phi_a, phi_x, n, None)
}

/// [`evaluate`] with an explicit oracle for `a` and an optional literal of
/// `x` for the transcript.
pub fn evaluate_with<A, O>(
    spec: &RealFunctionSpec,
    phi_a: &A,
    phi_x: &O,
    n: u64,
    x_literal: Option<String>,
) -> Result<(Dyadic, EvalTranscript)>
where
    A: CauchyOracle + ?Sized,
    O: CauchyOracle + ?Sized,
{
    let x = InstrumentedOracle::new(phi_x);
    let mut meter = OpMeter::new();

    meter.query(2);
    let d1 = phi_a.query(2);
    meter.read(&d1);
    meter.query(2);
    let d2 = x.query(2);
    meter.read(&d2);

    let k = determine_extension(&d1, &d2)?;
    let alpha = spec.modulus.eval(k, n.saturating_add(1));

    meter.query(alpha);
    let mut d = x.query(alpha);
    meter.read(&d);
    if meter.cmp(&d, &spec.left_endpoint) == core::cmp::Ordering::Less {
        d = spec.left_endpoint.clone();
    }

    let output = spec.psi(&d, n.saturating_add(1), &mut meter)?;
    meter.emit(&output);

    let cost = CostReport {
        input_len: x_literal.as_ref().map(|s| 2 * s.len() as u64).unwrap_or(0),
        k: Some(k),
        n: Some(n),
        output_len: len(&output),
        digit_ops: meter.ops(),
        oracle_depth: x.max_depth(),
        oracle_count: x.count(),
    };
    let transcript = EvalTranscript {
        spec_id: spec.id.clone(),
        x_literal,
        n,
        d1,
        d2,
        k,
        alpha,
        d,
        output: output.clone(),
        cost,
    };
    Ok((output, transcript))
}

/// `psi(d, n)`: an `n`-approximation of the restriction of `f` to dyadics.
pub fn dyadic_restriction(spec: &RealFunctionSpec, d: &Dyadic, n: u64) -> Result<Dyadic> {
    spec.psi(d, n, &mut OpMeter::new())
}

/// Least depth `D` such that the canonical cylinder of `x` at depth `D`,
/// `[c, c + 2^-D]` with `c = floor(2^D x) / 2^D`, has oscillation of `f` at
/// most `2^(1-n)`.
///
/// A machine that reads the canonical oracle of `x` only up to depth `D` sees
/// the same answers for every point of the cylinder, so it must use at least
/// this depth to be `2^-n`-accurate on all of them.
pub fn required_oracle_depth<F: ExactFunction + ?Sized>(f: &F, x: &Dyadic, n: u64) -> Result<u64> {
    let bound = Dyadic::pow2(1 - n as i64);
    let fits = |depth: u64| -> Result<bool> {
        let c = x.round_to_precision(depth);
        let end = &c + Dyadic::pow2(-(depth as i64));
        let knots = f
            .knots(&c, &end, depth)
            .ok_or_else(|| Error::Domain("function does not expose breakpoints".into()))?;
        let values = knots.iter().map(|p| f.eval(p)).collect::<Result<Vec<_>>>()?;
        let hi = values.iter().max().expect("cylinder has endpoints");
        let lo = values.iter().min().expect("cylinder has endpoints");
        Ok(hi - lo <= bound)
    };
    let mut upper = 1u64;
    while !fits(upper)? {
        upper = upper.checked_mul(2).ok_or_else(|| Error::Overflow("depth".into()))?;
        if upper > 1 << 24 {
            return Err(Error::Overflow("depth search limit".into()));
        }
    }
    let mut low = 0u64;
    let mut high = upper;
    while low < high {
        let mid = low + (high - low) / 2;
        if fits(mid)? {
            high = mid;
        } else {
            low = mid + 1;
        }
    }
    Ok(low)
}
