//! Polynomial versus super-polynomial classification of cost series.
//!
//! The rule: collapse the series to the maximum cost per size, fit
//! `log2(cost)` against `log2(size)` by least squares on the lower and the
//! upper half (the halves share the middle point), and call the series
//! super-polynomial when the upper slope exceeds the lower by more than 0.5,
//! or when `cost / size^6` increases strictly along the whole series.
//! Otherwise it is polynomial with degree at most the ceiling of the upper
//! slope.

use std::fmt;

/// Slope increase that marks a series as super-polynomial.
pub const SLOPE_JUMP: f64 = 0.5;

/// Exponent of the ratio test.
pub const RATIO_DEGREE: f64 = 6.0;

/// Fewest distinct sizes a series needs.
pub const MIN_POINTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Growth {
    Poly { degree: u32 },
    SuperPoly,
}

impl Growth {
    pub fn is_poly(self) -> bool {
        matches!(self, Growth::Poly { .. })
    }
}

impl fmt::Display for Growth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Growth::Poly { degree } => write!(f, "poly(degree <= {degree})"),
            Growth::SuperPoly => f.write_str("super-poly"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthVerdict {
    /// `(size, cost)`, sorted by size, one point per size.
    pub series: Vec<(u64, u64)>,
    pub growth: Growth,
    /// Log-log slope on the lower half.
    pub slope_low: f64,
    /// Log-log slope on the upper half.
    pub slope_high: f64,
    /// Whether `cost / size^6` increases strictly.
    pub ratio_increasing: bool,
}

impl fmt::Display for GrowthVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (slopes {:.3} -> {:.3}, {} points)",
            self.growth,
            self.slope_low,
            self.slope_high,
            self.series.len()
        )
    }
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let count = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / count;
    let my = points.iter().map(|p| p.1).sum::<f64>() / count;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Sorts by size and keeps the largest cost per size. Sizes below 1 count
/// as 1.
pub fn normalize(series: &[(u64, u64)]) -> Vec<(u64, u64)> {
    let mut pts: Vec<(u64, u64)> = series.iter().map(|&(s, c)| (s.max(1), c)).collect();
    pts.sort_unstable();
    let mut out: Vec<(u64, u64)> = Vec::with_capacity(pts.len());
    for (s, c) in pts {
        match out.last_mut() {
            Some(last) if last.0 == s => last.1 = last.1.max(c),
            _ => out.push((s, c)),
        }
    }
    out
}

/// Classifies a `(size, cost)` series. `None` when it has fewer than
/// [`MIN_POINTS`] distinct sizes.
pub fn classify(series: &[(u64, u64)]) -> Option<GrowthVerdict> {
    let series = normalize(series);
    if series.len() < MIN_POINTS {
        return None;
    }
    let logs: Vec<(f64, f64)> = series
        .iter()
        .map(|&(s, c)| ((s as f64).log2(), (c.max(1) as f64).log2()))
        .collect();
    let mid = logs.len() / 2;
    let slope_low = slope(&logs[..=mid]);
    let slope_high = slope(&logs[mid..]);
    let ratio_increasing = logs
        .windows(2)
        .all(|w| w[1].1 - RATIO_DEGREE * w[1].0 > w[0].1 - RATIO_DEGREE * w[0].0);
    let growth = if slope_high - slope_low > SLOPE_JUMP || ratio_increasing {
        Growth::SuperPoly
    } else {
        Growth::Poly {
            degree: slope_high.max(0.0).ceil() as u32,
        }
    };
    Some(GrowthVerdict {
        series,
        growth,
        slope_low,
        slope_high,
        ratio_increasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(sizes: impl Iterator<Item = u64>, f: impl Fn(u64) -> u64) -> Vec<(u64, u64)> {
        sizes.map(|s| (s, f(s))).collect()
    }

    #[test]
    fn polynomials() {
        for b in 1..=4u32 {
            let v = classify(&series(1..=40, |s| 3 * s.pow(b) + 7)).unwrap();
            assert_eq!(v.growth, Growth::Poly { degree: b }, "{v}");
        }
        let v = classify(&series([2, 4, 8, 16, 32].into_iter(), |s| s * s)).unwrap();
        assert_eq!(v.growth, Growth::Poly { degree: 2 });
    }

    #[test]
    fn exponentials() {
        let v = classify(&series(1..=30, |s| 1 << s)).unwrap();
        assert_eq!(v.growth, Growth::SuperPoly);
        let v = classify(&series([4, 6, 8, 10].into_iter(), |s| 1 << (s / 2))).unwrap();
        assert_eq!(v.growth, Growth::SuperPoly);
    }

    #[test]
    fn duplicates_keep_the_maximum() {
        let v = normalize(&[(3, 1), (1, 5), (3, 9), (0, 2)]);
        assert_eq!(v, vec![(1, 5), (3, 9)]);
        assert!(classify(&[(1, 1), (2, 2), (2, 3), (3, 3)]).is_none());
    }

    #[test]
    fn deterministic() {
        let s = series(1..=12, |s| s * s * s + 5);
        assert_eq!(classify(&s), classify(&s));
    }
}
