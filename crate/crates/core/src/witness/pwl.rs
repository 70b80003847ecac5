use alloc::format;
use alloc::vec::Vec;

use crate::cost::OpMeter;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::witness::ExactFunction;

/// A materialized piecewise-linear function: an increasing list of
/// `(breakpoint, value)` pairs, linear in between.
///
/// Interpolation only divides by the run of a segment, so every sloped
/// segment must have a power-of-two run. Flat segments may have any run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinear {
    points: Vec<(Dyadic, Dyadic)>,
}

impl PiecewiseLinear {
    pub fn new(points: Vec<(Dyadic, Dyadic)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Domain("no breakpoints".into()));
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Domain("breakpoints must increase".into()));
        }
        Ok(PiecewiseLinear { points })
    }

    /// Samples `f` at its knots on `[lo, hi]`.
    pub fn sample<F: ExactFunction + ?Sized>(
        f: &F,
        lo: &Dyadic,
        hi: &Dyadic,
        resolution: u64,
    ) -> Result<Self> {
        let knots = f
            .knots(lo, hi, resolution)
            .ok_or_else(|| Error::Domain("function is not piecewise linear".into()))?;
        let points = knots
            .into_iter()
            .map(|x| f.eval(&x).map(|y| (x, y)))
            .collect::<Result<Vec<_>>>()?;
        PiecewiseLinear::new(points)
    }

    pub fn points(&self) -> &[(Dyadic, Dyadic)] {
        &self.points
    }

    pub fn lo(&self) -> &Dyadic {
        &self.points[0].0
    }

    pub fn hi(&self) -> &Dyadic {
        &self.points[self.points.len() - 1].0
    }

    pub fn segment_count(&self) -> usize {
        self.points.len().saturating_sub(1)
    }

    /// Exact slope of segment `i`, or `None` if it is sloped over a run that
    /// is not a power of two.
    pub fn slope(&self, i: usize) -> Option<Dyadic> {
        let (x0, y0) = &self.points[i];
        let (x1, y1) = &self.points[i + 1];
        let rise = y1 - y0;
        if rise.is_zero() {
            return Some(Dyadic::zero());
        }
        let run = x1 - x0;
        run.is_power_of_two().then(|| rise.mul_pow2(-run.exponent()))
    }

    /// `ceil(log2 |slope|)` of segment `i`, or an upper bound on it when the
    /// run is not a power of two. `None` for flat segments.
    pub fn slope_log2_upper(&self, i: usize) -> Option<i64> {
        let (x0, y0) = &self.points[i];
        let (x1, y1) = &self.points[i + 1];
        let rise = (y1 - y0).abs();
        let run = x1 - x0;
        if rise.is_zero() {
            return None;
        }
        if run.is_power_of_two() {
            return rise.mul_pow2(-run.exponent()).ceil_log2();
        }
        Some(rise.ceil_log2()? - run.floor_log2()?)
    }

    /// Leftmost segment of largest `|slope|` among segments with exact slopes.
    pub fn steepest(&self) -> Option<(usize, Dyadic)> {
        let mut best: Option<(usize, Dyadic)> = None;
        for i in 0..self.segment_count() {
            if let Some(s) = self.slope(i) {
                let s = s.abs();
                if best.as_ref().is_none_or(|(_, b)| s > *b) {
                    best = Some((i, s));
                }
            }
        }
        best
    }

    /// Continuity check against a function's own evaluation at the knots.
    pub fn agrees_with<F: ExactFunction + ?Sized>(&self, f: &F) -> Result<bool> {
        for (x, y) in &self.points {
            if f.eval(x)? != *y {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl ExactFunction for PiecewiseLinear {
    fn eval_metered(&self, d: &Dyadic, meter: &mut OpMeter) -> Result<Dyadic> {
        if d < self.lo() || d > self.hi() {
            return Err(Error::Domain(format!(
                "{d} outside [{}, {}]",
                self.lo(),
                self.hi()
            )));
        }
        let idx = self.points.partition_point(|(x, _)| x <= d);
        let (x0, y0) = &self.points[idx - 1];
        if x0 == d || idx == self.points.len() {
            return Ok(y0.clone());
        }
        let (x1, y1) = &self.points[idx];
        let rise = meter.sub(y1, y0);
        if rise.is_zero() {
            return Ok(y0.clone());
        }
        let run = meter.sub(x1, x0);
        if !run.is_power_of_two() {
            return Err(Error::Domain(format!(
                "sloped segment [{x0}, {x1}] has a run that is not a power of two"
            )));
        }
        let offset = meter.sub(d, x0);
        let scaled = meter.mul(&offset, &rise);
        let step = meter.mul_pow2(&scaled, -run.exponent());
        Ok(meter.add(y0, &step))
    }

    fn knots(&self, lo: &Dyadic, hi: &Dyadic, _resolution: u64) -> Option<Vec<Dyadic>> {
        let inner = self.points.iter().map(|(x, _)| x.clone()).collect();
        Some(super::finish_knots(inner, lo, hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn interpolates_exactly() {
        let p = PiecewiseLinear::new(alloc::vec![
            (d("0"), d("0")),
            (d("0.01"), d("10")),
            (d("0.1"), d("10")),
            (d("1.1"), d("0")),
        ])
        .unwrap();
        assert_eq!(p.eval(&d("0.001")).unwrap(), d("1"));
        assert_eq!(p.eval(&d("0.011")).unwrap(), d("10"));
        assert_eq!(p.eval(&d("1")).unwrap(), d("1"));
        assert_eq!(p.slope(0), Some(d("1000")));
        assert_eq!(p.slope(1), Some(Dyadic::zero()));
        assert_eq!(p.slope(2), Some(d("-10")));
        assert_eq!(p.steepest().unwrap().0, 0);
        assert!(p.eval(&d("10")).is_err());
    }

    #[test]
    fn rejects_non_dyadic_interpolation() {
        let p = PiecewiseLinear::new(alloc::vec![(d("0"), d("0")), (d("11"), d("1"))]).unwrap();
        assert!(p.eval(&d("1")).is_err());
        assert_eq!(p.slope(0), None);
        assert_eq!(p.slope_log2_upper(0), Some(-1));
    }

    #[test]
    fn rejects_unsorted() {
        assert!(PiecewiseLinear::new(alloc::vec![(d("1"), d("0")), (d("1"), d("1"))]).is_err());
        assert!(PiecewiseLinear::new(alloc::vec![]).is_err());
    }
}
