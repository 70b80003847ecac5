//! Exact dyadic arithmetic and the machinery for studying polynomial-time
//! computability over dyadic rationals and over the reals.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure: values
//! are immutable, evaluators are deterministic, and cost is tallied with an
//! explicit [`OpMeter`] instead of wall-clock time. File formats, scans and
//! the command line live in the `ptreal` companion crate.
//!
//! Module map:
//!
//! - [`dyadic`]: [`Dyadic`] values, the literal syntax and the two-bit
//!   [`TauString`] encoding with its length measure.
//! - [`cost`]: the abstract cost model ([`OpMeter`], [`CostReport`]).
//! - [`oracle`]: Cauchy-function oracles for reals and their instrumentation.
//! - [`modulus`]: moduli of continuity, refutation and exact minimal moduli
//!   for piecewise-linear functions.
//! - [`witness`]: the separation witnesses and the `e^x` demo.
//! - [`eval`]: the (modulus, approximator) evaluator for real functions.
//! - [`measure`]: cost measurement of witnesses and real evaluators.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod cost;
pub mod dyadic;
pub mod error;
pub mod eval;
pub mod measure;
pub mod modulus;
pub mod oracle;
pub mod witness;

pub use cost::{CostReport, OpMeter};
pub use dyadic::{Dyadic, TauString};
pub use error::{Error, Result};
pub use eval::{evaluate, EvalTranscript, RealFunctionSpec, SpecId};
pub use modulus::{Modulus, ModulusForm, ModulusReport, Verdict};
pub use oracle::{CauchyOracle, ExactValue, InstrumentedOracle};
pub use witness::{ExactFunction, PiecewiseLinear, WitnessId};
