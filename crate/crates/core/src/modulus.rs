//! Moduli of continuity.
//!
//! A modulus `m(k, n)` promises that inside the `k`-th window, inputs within
//! `2^-m(k,n)` of each other have outputs within `2^-n`. Windows are either
//! `[a, a + 2^k]` (bounded case) or the strip `[a + 2^-k, b - 2^-k]` (open
//! case).
//!
//! For functions that expose their breakpoints, the largest output gap over
//! all pairs at distance at most `h` is computed exactly: it is attained at a
//! pair of breakpoints, or at a breakpoint paired with the point `h` away.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::witness::{ExactFunction, PiecewiseLinear};

/// Largest number of grid points enumerated by the sampling checker.
pub const GRID_LIMIT_LOG2: u64 = 22;

/// Closed forms of moduli.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulusForm {
    /// `(k + n)^b`.
    Poly(u32),
    /// `c 2^k + n`.
    AffineExp(u64),
    /// `k_coef k + n_coef n + offset`.
    Linear { k_coef: u64, n_coef: u64, offset: u64 },
    /// `c`, independent of both arguments.
    Constant(u64),
    /// An arbitrary function, normalized by running maxima.
    Custom,
}

impl fmt::Display for ModulusForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModulusForm::Poly(b) => write!(f, "poly:{b}"),
            ModulusForm::AffineExp(c) => write!(f, "expk:{c}"),
            ModulusForm::Linear {
                k_coef,
                n_coef,
                offset,
            } => write!(f, "{k_coef}k+{n_coef}n+{offset}"),
            ModulusForm::Constant(c) => write!(f, "const:{c}"),
            ModulusForm::Custom => f.write_str("custom"),
        }
    }
}

impl FromStr for ModulusForm {
    type Err = Error;

    /// Parses `poly:<b>`, `expk:<c>` and `const:<c>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedLiteral(s.to_string());
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "poly" => Ok(ModulusForm::Poly(arg.parse().map_err(|_| bad())?)),
            "expk" => Ok(ModulusForm::AffineExp(arg.parse().map_err(|_| bad())?)),
            "const" => Ok(ModulusForm::Constant(arg.parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

type RawModulus = dyn Fn(u64, u64) -> u64 + Send + Sync;

/// A modulus of continuity `m: N x N -> N`, monotone in both arguments.
#[derive(Clone)]
pub struct Modulus {
    form: ModulusForm,
    polynomial: bool,
    custom: Option<Arc<RawModulus>>,
}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Modulus")
            .field("form", &self.form)
            .field("polynomial", &self.polynomial)
            .finish()
    }
}

impl From<ModulusForm> for Modulus {
    fn from(form: ModulusForm) -> Self {
        let polynomial = !matches!(form, ModulusForm::AffineExp(c) if c > 0);
        Modulus {
            form,
            polynomial,
            custom: None,
        }
    }
}

impl Modulus {
    pub fn poly(b: u32) -> Self {
        ModulusForm::Poly(b).into()
    }

    pub fn affine_exp(c: u64) -> Self {
        ModulusForm::AffineExp(c).into()
    }

    pub fn linear(k_coef: u64, n_coef: u64, offset: u64) -> Self {
        ModulusForm::Linear {
            k_coef,
            n_coef,
            offset,
        }
        .into()
    }

    pub fn constant(c: u64) -> Self {
        ModulusForm::Constant(c).into()
    }

    /// Wraps an arbitrary function. Evaluation takes the maximum over all
    /// smaller arguments, so the cost of one evaluation is `(k+1)(n+1)` calls.
    pub fn custom<F>(f: F, polynomial: bool) -> Self
    where
        F: Fn(u64, u64) -> u64 + Send + Sync + 'static,
    {
        Modulus {
            form: ModulusForm::Custom,
            polynomial,
            custom: Some(Arc::new(f) as Arc<RawModulus>),
        }
    }

    pub fn form(&self) -> ModulusForm {
        self.form
    }

    /// Whether the modulus is dominated by some `(k + n)^b`.
    pub fn is_polynomial(&self) -> bool {
        self.polynomial
    }

    /// `m(k, n)`, saturating at `u64::MAX`.
    pub fn eval(&self, k: u64, n: u64) -> u64 {
        match self.form {
            ModulusForm::Poly(b) => k.saturating_add(n).saturating_pow(b),
            ModulusForm::AffineExp(c) => {
                let scale = if k >= 64 { u64::MAX } else { 1u64 << k };
                c.saturating_mul(scale).saturating_add(n)
            }
            ModulusForm::Linear {
                k_coef,
                n_coef,
                offset,
            } => k_coef
                .saturating_mul(k)
                .saturating_add(n_coef.saturating_mul(n))
                .saturating_add(offset),
            ModulusForm::Constant(c) => c,
            ModulusForm::Custom => {
                let f = self.custom.as_ref().expect("custom modulus has a function");
                let mut best = 0;
                for kk in 0..=k {
                    for nn in 0..=n {
                        best = best.max(f(kk, nn));
                    }
                }
                best
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// No violating pair among the pairs examined. Exact when the function
    /// exposes breakpoints.
    Verified,
    Refuted,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Verified => "verified-on-grid",
            Verdict::Refuted => "refuted",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// A pair `x <= y` with `|x - y| <= 2^-m` and `|f(x) - f(y)| > 2^-n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub x: Dyadic,
    pub y: Dyadic,
    /// `|f(x) - f(y)|`.
    pub gap: Dyadic,
    /// `2^-n`.
    pub bound: Dyadic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulusReport {
    pub verdict: Verdict,
    pub k: u64,
    pub n: u64,
    /// `m(k, n)`.
    pub m: u64,
    /// Window that was checked.
    pub lo: Dyadic,
    pub hi: Dyadic,
    /// Largest gap found among the checked pairs, with its pair.
    pub worst: Option<(Dyadic, Dyadic, Dyadic)>,
    pub violation: Option<Violation>,
    pub pairs_checked: u64,
    /// Whether the verdict covers every pair in the window, not just a grid.
    pub exhaustive: bool,
}

impl ModulusReport {
    pub const CSV_HEADER: [&'static str; 8] =
        ["verdict", "k", "n", "m", "witness_x", "witness_y", "gap", "bound"];

    pub fn csv_record(&self) -> Vec<String> {
        let (x, y, gap) = match &self.violation {
            Some(v) => (v.x.to_string(), v.y.to_string(), v.gap.to_string()),
            None => (String::new(), String::new(), String::new()),
        };
        alloc::vec![
            self.verdict.to_string(),
            self.k.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            x,
            y,
            gap,
            pow2_neg(self.n).to_string(),
        ]
    }

    /// Re-evaluates the violating pair with exact arithmetic. `Ok(true)` when
    /// there is a pair and it violates the claimed modulus.
    pub fn replay<F: ExactFunction + ?Sized>(&self, f: &F) -> Result<bool> {
        let Some(v) = &self.violation else {
            return Ok(false);
        };
        let dist = (&v.y - &v.x).abs();
        let gap = (f.eval(&v.y)? - f.eval(&v.x)?).abs();
        Ok(dist <= pow2_neg(self.m) && gap > pow2_neg(self.n) && gap == v.gap)
    }
}

fn pow2_neg(e: u64) -> Dyadic {
    Dyadic::pow2(-(e.min(i64::MAX as u64) as i64))
}

fn exponent(m: u64) -> Result<i64> {
    i64::try_from(m).map_err(|_| Error::Overflow(format!("2^-{m}")))
}

/// Largest `|f(x) - f(y)|` found with its pair, plus the number of pairs.
#[derive(Debug, Default)]
struct Sweep {
    worst: Option<(Dyadic, Dyadic, Dyadic)>,
    pairs: u64,
}

impl Sweep {
    fn offer(&mut self, x: &Dyadic, y: &Dyadic, fx: &Dyadic, fy: &Dyadic) {
        self.pairs += 1;
        let gap = (fy - fx).abs();
        let better = match &self.worst {
            None => true,
            Some((g, wx, _)) => gap > *g || (gap == *g && x < wx),
        };
        if better {
            let (a, b) = if x <= y { (x, y) } else { (y, x) };
            self.worst = Some((gap, a.clone(), b.clone()));
        }
    }

    fn merge(&mut self, other: Sweep) {
        self.pairs += other.pairs;
        if let Some((g, x, y)) = other.worst {
            let better = match &self.worst {
                None => true,
                Some((sg, sx, _)) => g > *sg || (g == *sg && x < *sx),
            };
            if better {
                self.worst = Some((g, x, y));
            }
        }
    }
}

/// Exact supremum of `|f(x) - f(y)|` over `x, y` in `[lo, hi]`, `|x - y| <= h`.
fn vertex_sweep<F: ExactFunction + ?Sized>(
    f: &F,
    knots: &[Dyadic],
    lo: &Dyadic,
    hi: &Dyadic,
    h: &Dyadic,
) -> Result<Sweep> {
    let values = knots.iter().map(|x| f.eval(x)).collect::<Result<Vec<_>>>()?;
    let mut sweep = Sweep::default();
    for i in 0..knots.len() {
        for j in i + 1..knots.len() {
            if &knots[j] - &knots[i] > *h {
                break;
            }
            sweep.offer(&knots[i], &knots[j], &values[i], &values[j]);
        }
        let right = &knots[i] + h;
        if right <= *hi {
            let fr = f.eval(&right)?;
            sweep.offer(&knots[i], &right, &values[i], &fr);
        }
        let left = &knots[i] - h;
        if left >= *lo {
            let fl = f.eval(&left)?;
            sweep.offer(&left, &knots[i], &fl, &values[i]);
        }
    }
    Ok(sweep)
}

/// Pairs `(x, x + t 2^-g)` on the grid `2^-g Z` within `[lo, hi]`, for all
/// `t >= 1` with `t 2^-g <= h`.
fn grid_sweep<F: ExactFunction + ?Sized>(
    f: &F,
    lo: &Dyadic,
    hi: &Dyadic,
    m: i64,
    grid_exp: i64,
) -> Result<Option<Sweep>> {
    let first = lo.mul_pow2(grid_exp).ceil();
    let last = hi.mul_pow2(grid_exp).floor();
    let count: BigInt = (&last - &first) + 1;
    let too_big = count.bits() > GRID_LIMIT_LOG2;
    if count <= BigInt::zero() {
        return Ok(Some(Sweep::default()));
    }
    if too_big {
        return Ok(None);
    }
    let count = count.to_u64().expect("bounded by the grid limit");
    let span = if grid_exp >= m {
        let d = (grid_exp - m) as u64;
        if d >= GRID_LIMIT_LOG2 {
            return Ok(None);
        }
        1u64 << d
    } else {
        0
    };
    if span.saturating_mul(count) > 1u64 << (GRID_LIMIT_LOG2 + 2) {
        return Ok(None);
    }
    let points = (0..count)
        .map(|i| Dyadic::from_parts(&first + BigInt::from(i), -grid_exp))
        .collect::<Vec<_>>();
    let values = points.iter().map(|x| f.eval(x)).collect::<Result<Vec<_>>>()?;
    let mut sweep = Sweep::default();
    for i in 0..points.len() {
        for t in 1..=span as usize {
            if i + t >= points.len() {
                break;
            }
            sweep.offer(&points[i], &points[i + t], &values[i], &values[i + t]);
        }
    }
    Ok(Some(sweep))
}

fn check_window<F: ExactFunction + ?Sized>(
    f: &F,
    lo: Dyadic,
    hi: Dyadic,
    m: &Modulus,
    k: u64,
    n: u64,
    grid_exp: u64,
) -> Result<ModulusReport> {
    let mk = m.eval(k, n);
    let m_exp = exponent(mk)?;
    let h = Dyadic::pow2(-m_exp);
    let knots = f.knots(&lo, &hi, mk);
    let grid = grid_sweep(f, &lo, &hi, m_exp, exponent(grid_exp)?)?;
    let exhaustive = knots.is_some();
    let mut sweep = match (&knots, grid) {
        (None, None) => return Err(Error::GridTooLarge(grid_exp.saturating_add(k))),
        (_, Some(s)) => s,
        (Some(_), None) => Sweep::default(),
    };
    if let Some(knots) = &knots {
        sweep.merge(vertex_sweep(f, knots, &lo, &hi, &h)?);
    }
    let bound = pow2_neg(n);
    let violation = match &sweep.worst {
        Some((gap, x, y)) if *gap > bound => Some(Violation {
            x: x.clone(),
            y: y.clone(),
            gap: gap.clone(),
            bound: bound.clone(),
        }),
        _ => None,
    };
    Ok(ModulusReport {
        verdict: if violation.is_some() {
            Verdict::Refuted
        } else {
            Verdict::Verified
        },
        k,
        n,
        m: mk,
        lo,
        hi,
        worst: sweep.worst,
        violation,
        pairs_checked: sweep.pairs,
        exhaustive,
    })
}

/// Checks `m` on the window `[a, a + 2^k]`.
///
/// Grid pairs at spacing `2^-grid_exp` are enumerated when the grid is small
/// enough; functions with breakpoints are additionally checked exactly over
/// all pairs. Fails with [`Error::GridTooLarge`] when neither is possible.
pub fn check_modulus_bounded<F: ExactFunction + ?Sized>(
    f: &F,
    a: &Dyadic,
    m: &Modulus,
    k: u64,
    n: u64,
    grid_exp: u64,
) -> Result<ModulusReport> {
    let hi = a + Dyadic::pow2(exponent(k)?);
    check_window(f, a.clone(), hi, m, k, n, grid_exp)
}

/// Checks `m` on the strip `[a + 2^-k, b - 2^-k]`; with `b = None` the strip
/// is `[a + 2^-k, a + 2^k]`.
pub fn check_modulus_open<F: ExactFunction + ?Sized>(
    f: &F,
    a: &Dyadic,
    b: Option<&Dyadic>,
    m: &Modulus,
    k: u64,
    n: u64,
    grid_exp: u64,
) -> Result<ModulusReport> {
    let kk = exponent(k)?;
    let lo = a + Dyadic::pow2(-kk);
    let hi = match b {
        Some(b) => b - Dyadic::pow2(-kk),
        None => a + Dyadic::pow2(kk),
    };
    if lo >= hi {
        return Err(Error::EmptyStrip);
    }
    check_window(f, lo, hi, m, k, n, grid_exp)
}

/// Exact `sup |f(x) - f(y)|` over `x, y in [lo, hi]` with `|x - y| <= 2^-m`.
pub fn max_variation<F: ExactFunction + ?Sized>(
    f: &F,
    lo: &Dyadic,
    hi: &Dyadic,
    m: u64,
) -> Result<Dyadic> {
    let knots = f
        .knots(lo, hi, m)
        .ok_or_else(|| Error::Domain("function does not expose breakpoints".into()))?;
    let h = Dyadic::pow2(-exponent(m)?);
    let sweep = vertex_sweep(f, &knots, lo, hi, &h)?;
    Ok(sweep.worst.map(|w| w.0).unwrap_or_default())
}

/// Cap on the modulus search; moduli beyond it are reported as overflow.
const SEARCH_LIMIT: u64 = 1 << 24;

/// Least `M` such that all pairs in `[lo, hi]` at distance at most `2^-M`
/// have outputs within `2^-n`.
///
/// Starts from the slope bound `n + ceil(log2 s)` of the steepest piece,
/// confirms it exactly, then binary searches below it: narrow pieces can make
/// the true modulus smaller than the slope bound.
pub fn min_modulus_pwl<F: ExactFunction + ?Sized>(
    f: &F,
    lo: &Dyadic,
    hi: &Dyadic,
    n: u64,
) -> Result<u64> {
    if lo > hi {
        return Err(Error::Domain(format!("[{lo}, {hi}] is empty")));
    }
    let bound = pow2_neg(n);
    let ok = |m: u64| -> Result<bool> { Ok(max_variation(f, lo, hi, m)? <= bound) };

    let sampled = PiecewiseLinear::sample(f, lo, hi, n)?;
    let steepest = (0..sampled.segment_count())
        .filter_map(|i| sampled.slope_log2_upper(i))
        .max();
    let mut upper = match steepest {
        None => 0,
        Some(s) => (n as i64).saturating_add(s).max(0) as u64,
    };
    while !ok(upper)? {
        upper = upper.saturating_mul(2) + 1;
        if upper > SEARCH_LIMIT {
            return Err(Error::Overflow("modulus search limit".into()));
        }
    }
    let (mut low, mut high) = (0u64, upper);
    while low < high {
        let mid = low + (high - low) / 2;
        if ok(mid)? {
            high = mid;
        } else {
            low = mid + 1;
        }
    }
    Ok(low)
}

/// Leftmost steepest piece of `f` on `[lo, hi]` as `(x0, x1, |slope|)`.
pub fn steepest_piece<F: ExactFunction + ?Sized>(
    f: &F,
    lo: &Dyadic,
    hi: &Dyadic,
    resolution: u64,
) -> Result<Option<(Dyadic, Dyadic, Dyadic)>> {
    let p = PiecewiseLinear::sample(f, lo, hi, resolution)?;
    Ok(p.steepest().map(|(i, s)| {
        let pts = p.points();
        (pts[i].0.clone(), pts[i + 1].0.clone(), s)
    }))
}

/// A modulus that always answers with the exact minimum for `f` on
/// `[a, a + 2^k]`. Expensive; meant for small tables.
pub fn exact_modulus_table<F: ExactFunction + ?Sized>(
    f: &F,
    a: &Dyadic,
    ks: core::ops::RangeInclusive<u64>,
    ns: core::ops::RangeInclusive<u64>,
) -> Result<Vec<Vec<u64>>> {
    let mut rows = Vec::new();
    for k in ks {
        let hi = a + Dyadic::pow2(exponent(k)?);
        let mut row = Vec::new();
        for n in ns.clone() {
            row.push(min_modulus_pwl(f, a, &hi, n)?);
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{FnExact, Identity, Sawtooth, SlowDecay, Zero};

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn modulus_forms() {
        let known = Modulus::affine_exp(3);
        assert_eq!(known.eval(2, 3), 15);
        assert_eq!(known.eval(0, 0), 3);
        assert_eq!(known.eval(3, 5), 29);
        assert!(!known.is_polynomial());
        assert_eq!(Modulus::poly(2).eval(1, 3), 16);
        assert!(Modulus::poly(2).is_polynomial());
        assert_eq!(Modulus::linear(1, 1, 1).eval(1, 4), 6);
        assert_eq!("poly:3".parse::<ModulusForm>().unwrap(), ModulusForm::Poly(3));
        assert_eq!("expk:3".parse::<ModulusForm>().unwrap(), ModulusForm::AffineExp(3));
        assert!("poly".parse::<ModulusForm>().is_err());
        assert!("cubic:3".parse::<ModulusForm>().is_err());
    }

    #[test]
    fn custom_moduli_are_normalized() {
        let m = Modulus::custom(|k, n| if (k + n) % 2 == 0 { 10 } else { 1 }, true);
        assert_eq!(m.eval(0, 0), 10);
        assert_eq!(m.eval(0, 1), 10);
        assert_eq!(m.form(), ModulusForm::Custom);
    }

    #[test]
    fn sawtooth_claim_verifies_small() {
        let r = check_modulus_bounded(&Sawtooth::new(), &Dyadic::zero(), &Modulus::affine_exp(3), 2, 3, 17)
            .unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert!(r.exhaustive);
    }

    #[test]
    fn identity_modulus_refutes_sawtooth() {
        let f = Sawtooth::new();
        let r = check_modulus_bounded(&f, &Dyadic::zero(), &Modulus::linear(0, 1, 0), 2, 4, 4).unwrap();
        assert_eq!(r.verdict, Verdict::Refuted);
        assert!(r.replay(&f).unwrap());
        let v = r.violation.unwrap();
        assert!(v.gap > d("0.0001"));
    }

    #[test]
    fn explicit_breakpoint_pair_violates() {
        let f = Sawtooth::new();
        let (x, y) = (f.ascending(3, 2), f.ascending(3, 3));
        assert_eq!(&y - &x, Dyadic::pow2(-6));
        assert_eq!(f.eval(&y).unwrap() - f.eval(&x).unwrap(), d("100"));
    }

    #[test]
    fn zero_is_always_fine() {
        for (k, n) in [(0, 0), (2, 9), (4, 1)] {
            let r = check_modulus_bounded(&Zero, &Dyadic::zero(), &Modulus::constant(0), k, n, 3).unwrap();
            assert_eq!(r.verdict, Verdict::Verified);
        }
    }

    #[test]
    fn open_strip() {
        let r = check_modulus_open(&Identity, &Dyadic::zero(), Some(&Dyadic::one()), &Modulus::linear(0, 1, 0), 2, 5, 8)
            .unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!((r.lo.clone(), r.hi.clone()), (d("0.01"), d("0.11")));
        let e = check_modulus_open(&Identity, &Dyadic::zero(), Some(&Dyadic::half()), &Modulus::constant(1), 1, 1, 4);
        assert_eq!(e.unwrap_err(), Error::EmptyStrip);
        let r = check_modulus_open(&Identity, &Dyadic::zero(), None, &Modulus::linear(0, 1, 0), 1, 2, 4).unwrap();
        assert_eq!((r.lo, r.hi), (d("0.1"), d("10")));
    }

    #[test]
    fn grid_only_functions() {
        let f = FnExact(|x: &Dyadic| Ok(x * x));
        let r = check_modulus_bounded(&f, &Dyadic::zero(), &Modulus::linear(1, 1, 1), 1, 3, 8).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert!(!r.exhaustive);
        let r = check_modulus_bounded(&f, &Dyadic::zero(), &Modulus::linear(0, 1, 0), 1, 3, 8).unwrap();
        assert_eq!(r.verdict, Verdict::Refuted);
        let e = check_modulus_bounded(&f, &Dyadic::zero(), &Modulus::constant(30), 10, 3, 30);
        assert!(matches!(e, Err(Error::GridTooLarge(_))));
    }

    #[test]
    fn minimal_moduli() {
        let s = Sawtooth::new();
        assert_eq!(min_modulus_pwl(&s, &d("11"), &s.ascending(3, 3), 4).unwrap(), 12);
        let sd = SlowDecay;
        let (lo, hi) = (d("0.111"), d("0.1111"));
        assert_eq!(min_modulus_pwl(&sd, &lo, &hi, 1).unwrap(), 0);
        assert_eq!(min_modulus_pwl(&sd, &lo, &hi, 2).unwrap(), 5);
        assert_eq!(min_modulus_pwl(&Zero, &lo, &hi, 40).unwrap(), 0);
        let piece = steepest_piece(&s, &d("11"), &s.ascending(3, 3), 0).unwrap().unwrap();
        assert_eq!(piece.2, Dyadic::pow2(8));
    }

    #[test]
    fn minimal_modulus_is_tight() {
        let s = Sawtooth::new();
        for k in 0..=2u64 {
            let hi = Dyadic::pow2(k as i64);
            for n in 0..=5u64 {
                let m = min_modulus_pwl(&s, &Dyadic::zero(), &hi, n).unwrap();
                let ok = check_modulus_bounded(&s, &Dyadic::zero(), &Modulus::constant(m), k, n, 0).unwrap();
                assert_eq!(ok.verdict, Verdict::Verified);
                if m > 0 {
                    let bad = check_modulus_bounded(&s, &Dyadic::zero(), &Modulus::constant(m - 1), k, n, 0)
                        .unwrap();
                    assert_eq!(bad.verdict, Verdict::Refuted, "k={k} n={n} m={m}");
                    assert!(bad.replay(&s).unwrap());
                }
            }
        }
    }
}
