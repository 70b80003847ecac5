//! Cost scans over witnesses and bundled real functions.
//!
//! Targets and their parameters:
//!
//! | target | parameters | point measured |
//! |---|---|---|
//! | `sawtooth`, `combined` | `r` | the apex `d_r` of block `r` |
//! | `slow-decay` | `i` | the breakpoint `1 - 2^-i` |
//! | `precision-gated` | `j` | the peak `j + 1/2` |
//! | `exp-demo` | `x`, `n` (default 8) | `e^x` to `2^-n` |
//! | `real:<spec>` | `k` (default 2), `n` (default 8) | `a + 2^k - 15/32` to `2^-n` |
//!
//! Rows come out ordered by parameter, first `--param` outermost.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use ptreal_core::dyadic::len;
use ptreal_core::measure::{measure_dyadic, measure_exp_demo, measure_real};
use ptreal_core::witness::{Sawtooth, SlowDecay};
use ptreal_core::{CostReport, Dyadic, Error, ExactValue, SpecId, WitnessId};

use crate::growth::{classify, GrowthVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Witness(WitnessId),
    Real(SpecId),
}

impl Target {
    /// Parameter names, in default nesting order.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Target::Witness(WitnessId::Sawtooth | WitnessId::Combined) => &["r"],
            Target::Witness(WitnessId::SlowDecay) => &["i"],
            Target::Witness(WitnessId::PrecisionGated) => &["j"],
            Target::Witness(WitnessId::ExpDemo) => &["x", "n"],
            Target::Real(_) => &["k", "n"],
        }
    }

    fn default_value(self, name: &str) -> u64 {
        match (self, name) {
            (Target::Real(_), "k") => 2,
            _ => 8,
        }
    }

    /// Every scan target, in listing order.
    pub fn all() -> Vec<Target> {
        WitnessId::ALL
            .into_iter()
            .map(Target::Witness)
            .chain(SpecId::ALL.into_iter().map(Target::Real))
            .collect()
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Witness(id) => write!(f, "{id}"),
            Target::Real(id) => write!(f, "real:{id}"),
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.strip_prefix("real:") {
            Some(spec) => spec.parse().map(Target::Real),
            None => s.parse().map(Target::Witness),
        }
    }
}

/// `name=lo..hi`, both ends inclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamRange {
    pub name: String,
    pub lo: u64,
    pub hi: u64,
}

impl ParamRange {
    pub fn new(name: &str, lo: u64, hi: u64) -> Self {
        ParamRange {
            name: name.to_string(),
            lo,
            hi,
        }
    }

    pub fn values(&self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }
}

impl FromStr for ParamRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::MalformedLiteral(s.to_string());
        let (name, range) = s.split_once('=').ok_or_else(bad)?;
        let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
        let lo: u64 = lo.parse().map_err(|_| bad())?;
        let hi: u64 = hi.parse().map_err(|_| bad())?;
        if name.is_empty() || lo > hi {
            return Err(bad());
        }
        Ok(ParamRange::new(name, lo, hi))
    }
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}..{}", self.name, self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub param_name: String,
    pub param_value: u64,
    /// Length of the outer parameter as a literal.
    pub param_len: u64,
    pub report: CostReport,
}

fn measure(target: Target, values: &[(&str, u64)]) -> Result<CostReport, Error> {
    let get = |name: &str| values.iter().find(|v| v.0 == name).map(|v| v.1).expect("param");
    match target {
        Target::Witness(id @ (WitnessId::Sawtooth | WitnessId::Combined)) => {
            let r = get("r");
            measure_dyadic(id, &Sawtooth::new().ascending(r, r)).map(|x| x.1)
        }
        Target::Witness(id @ WitnessId::SlowDecay) => measure_dyadic(id, &SlowDecay::breakpoint(get("i"))).map(|x| x.1),
        Target::Witness(id @ WitnessId::PrecisionGated) => {
            let x = Dyadic::from_biguint(get("j").into()) + Dyadic::half();
            measure_dyadic(id, &x).map(|x| x.1)
        }
        Target::Witness(WitnessId::ExpDemo) => {
            measure_exp_demo(&Dyadic::from_biguint(get("x").into()), get("n")).map(|x| x.1)
        }
        Target::Real(id) => {
            let k = get("k");
            if k >= 62 {
                return Err(Error::Overflow(format!("k = {k}")));
            }
            let a = id.spec().left_endpoint;
            let x = a + Dyadic::pow2(k as i64) - Dyadic::from_parts(15.into(), -5);
            measure_real(id, &ExactValue::Dyadic(x), get("n")).map(|x| x.1)
        }
    }
}

/// Runs a scan. Parameters not given keep their defaults; unknown names are
/// rejected.
pub fn run_scan(target: Target, ranges: &[ParamRange]) -> Result<Vec<ScanRow>, Error> {
    let names = target.params();
    if ranges.is_empty() {
        return Err(Error::Domain(format!("{target} needs a range for one of {names:?}")));
    }
    for (i, r) in ranges.iter().enumerate() {
        if !names.contains(&r.name.as_str()) {
            return Err(Error::UnknownId(format!("{} (parameters of {target}: {names:?})", r.name)));
        }
        if ranges[..i].iter().any(|p| p.name == r.name) {
            return Err(Error::Domain(format!("parameter {} given twice", r.name)));
        }
    }
    let mut axes: Vec<ParamRange> = ranges.to_vec();
    for name in names {
        if !axes.iter().any(|r| r.name == *name) {
            let v = target.default_value(name);
            axes.push(ParamRange::new(name, v, v));
        }
    }

    let mut rows = Vec::new();
    let mut point: Vec<u64> = axes.iter().map(|a| a.lo).collect();
    'outer: loop {
        let values: Vec<(&str, u64)> = axes.iter().zip(&point).map(|(a, &v)| (a.name.as_str(), v)).collect();
        let report = measure(target, &values)?;
        rows.push(ScanRow {
            param_name: axes[0].name.clone(),
            param_value: point[0],
            param_len: len(&Dyadic::from_biguint(point[0].into())),
            report,
        });
        for i in (0..axes.len()).rev() {
            if point[i] < axes[i].hi {
                point[i] += 1;
                continue 'outer;
            }
            point[i] = axes[i].lo;
        }
        break;
    }
    Ok(rows)
}

/// Writes rows with the cost CSV header.
pub fn write_csv<W: Write>(out: W, target: Target, rows: &[ScanRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CostReport::CSV_HEADER)?;
    let name = target.to_string();
    for row in rows {
        w.write_record(row.report.csv_record(&name, &row.param_name, row.param_value))?;
    }
    w.flush()?;
    Ok(())
}

/// The growth verdicts reported for a scan, labelled `cost vs size`.
pub fn verdicts(target: Target, rows: &[ScanRow]) -> Vec<(String, Option<GrowthVerdict>)> {
    let by = |label: String, f: &dyn Fn(&ScanRow) -> (u64, u64)| {
        let series: Vec<(u64, u64)> = rows.iter().map(f).collect();
        (label, classify(&series))
    };
    match target {
        Target::Real(_) => {
            let size = |r: &ScanRow| r.report.k.unwrap_or(0) + r.report.n.unwrap_or(0) + 1;
            vec![
                by("digit_ops vs k+n+1".into(), &|r| (size(r), r.report.digit_ops)),
                by("oracle_depth vs k+n+1".into(), &|r| (size(r), r.report.oracle_depth)),
            ]
        }
        Target::Witness(_) => {
            let p = rows.first().map(|r| r.param_name.clone()).unwrap_or_default();
            vec![
                by(format!("output_len vs len({p})"), &|r| (r.param_len, r.report.output_len)),
                by("digit_ops vs input_len".into(), &|r| (r.report.input_len, r.report.digit_ops)),
            ]
        }
    }
}
