//! Tenor structures and initial discount curves.

use crate::error::{Error, Result};

/// Tenor dates `0 < T_1 < ... < T_{N+1}` with accrual fractions
/// `delta_k = T_k - T_{k-1}` (and `delta_1 = T_1`), all in years.
///
/// The last date `T_{N+1}` is the terminal horizon of the model; normalized
/// bond prices exist for the first `N` dates.
#[derive(Debug, Clone, PartialEq)]
pub struct TenorStructure {
    dates: Vec<f64>,
    accruals: Vec<f64>,
}

impl TenorStructure {
    pub fn new(dates: Vec<f64>) -> Result<Self> {
        if dates.len() < 2 {
            return Err(Error::CurveValidation(
                "tenor structure needs at least two dates".into(),
            ));
        }
        let mut prev = 0.0;
        for (i, &d) in dates.iter().enumerate() {
            if !d.is_finite() || d <= prev {
                return Err(Error::CurveValidation(format!(
                    "tenor dates must be strictly increasing and positive; \
                     offending entry {i} = {d}"
                )));
            }
            prev = d;
        }
        let mut accruals = Vec::with_capacity(dates.len());
        let mut last = 0.0;
        for &d in &dates {
            accruals.push(d - last);
            last = d;
        }
        Ok(Self { dates, accruals })
    }

    /// Equally spaced dates `start, start + step, ...` (`count` of them).
    pub fn regular(start: f64, step: f64, count: usize) -> Result<Self> {
        if step <= 0.0 || !step.is_finite() {
            return Err(Error::CurveValidation(format!("invalid tenor step {step}")));
        }
        Self::new((0..count).map(|i| start + i as f64 * step).collect())
    }

    /// Number of tenor dates, `N + 1`.
    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of calibrated bond parameters, `N`.
    pub fn n_params(&self) -> usize {
        self.dates.len() - 1
    }

    /// `T_k` for 1-based `k`.
    pub fn date(&self, k: usize) -> f64 {
        self.dates[k - 1]
    }

    /// `delta_k = T_k - T_{k-1}` for 1-based `k`.
    pub fn accrual(&self, k: usize) -> f64 {
        self.accruals[k - 1]
    }

    /// Terminal date `T_{N+1}`.
    pub fn horizon(&self) -> f64 {
        *self.dates.last().unwrap()
    }

    pub fn dates(&self) -> &[f64] {
        &self.dates
    }

    /// 1-based index of the date equal to `t` (within 1e-9), if any.
    pub fn index_of_date(&self, t: f64) -> Option<usize> {
        self.dates
            .iter()
            .position(|&d| (d - t).abs() <= 1e-9 * t.abs().max(1.0))
            .map(|i| i + 1)
    }
}

/// Initial discount factors `P(0, T_k)` aligned with a tenor structure.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscountCurve {
    discounts: Vec<f64>,
}

impl DiscountCurve {
    /// Validates against the tenor: one factor per date, each in (0, 1],
    /// non-increasing (equivalently, nonnegative forward rates).
    pub fn new(discounts: Vec<f64>, tenor: &TenorStructure) -> Result<Self> {
        if discounts.len() != tenor.len() {
            return Err(Error::CurveValidation(format!(
                "expected {} discount factors, got {}",
                tenor.len(),
                discounts.len()
            )));
        }
        let mut prev = 1.0;
        for (i, &p) in discounts.iter().enumerate() {
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::CurveValidation(format!(
                    "discount factor {i} = {p} outside (0, 1]"
                )));
            }
            if p > prev * (1.0 + 1e-12) {
                return Err(Error::CurveValidation(format!(
                    "discount factors must be non-increasing (negative forward \
                     rate between dates {} and {})",
                    i,
                    i + 1
                )));
            }
            prev = p;
        }
        Ok(Self { discounts })
    }

    /// Flat curve under simple compounding per tenor period:
    /// `P(0, T_k) = prod_{j<=k} 1 / (1 + rate * delta_j)`.
    ///
    /// For a uniform step this reduces to `(1 + rate * step)^(-T/step)`.
    pub fn flat_simple_per_period(rate: f64, tenor: &TenorStructure) -> Result<Self> {
        if !rate.is_finite() || rate < 0.0 {
            return Err(Error::CurveValidation(format!(
                "flat rate must be finite and >= 0, got {rate}"
            )));
        }
        let mut discounts = Vec::with_capacity(tenor.len());
        let mut p = 1.0;
        for k in 1..=tenor.len() {
            p /= 1.0 + rate * tenor.accrual(k);
            discounts.push(p);
        }
        Self::new(discounts, tenor)
    }

    /// `P(0, T_k)` for 1-based `k`.
    pub fn discount(&self, k: usize) -> f64 {
        self.discounts[k - 1]
    }

    /// `P(0, T_{N+1})`, the terminal discount factor.
    pub fn terminal(&self) -> f64 {
        *self.discounts.last().unwrap()
    }

    /// Normalized ratio `P(0, T_k) / P(0, T)`, always >= 1.
    pub fn normalized(&self, k: usize) -> f64 {
        self.discount(k) / self.terminal()
    }

    /// Curve-implied simple forward rate over `(T_{k-1}, T_k]`.
    pub fn simple_forward(&self, tenor: &TenorStructure, k: usize) -> f64 {
        (self.discount(k - 1) / self.discount(k) - 1.0) / tenor.accrual(k)
    }

    pub fn discounts(&self) -> &[f64] {
        &self.discounts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn regular_tenor() {
        let t = TenorStructure::regular(0.5, 0.5, 20).unwrap();
        assert_eq!(t.len(), 20);
        assert_eq!(t.n_params(), 19);
        assert_relative_eq!(t.horizon(), 10.0, max_relative = 0.0);
        assert_relative_eq!(t.date(1), 0.5, max_relative = 0.0);
        assert_relative_eq!(t.accrual(1), 0.5, max_relative = 0.0);
        assert_relative_eq!(t.accrual(13), 0.5, max_relative = 1e-15);
        assert_eq!(t.index_of_date(5.0), Some(10));
        assert_eq!(t.index_of_date(5.2), None);
    }

    #[test]
    fn tenor_rejects_non_increasing() {
        assert!(TenorStructure::new(vec![0.5, 0.5, 1.0]).is_err());
        assert!(TenorStructure::new(vec![-0.5, 1.0]).is_err());
        assert!(TenorStructure::new(vec![1.0]).is_err());
    }

    #[test]
    fn flat_curve_per_period_compounding() {
        let t = TenorStructure::regular(0.5, 0.5, 20).unwrap();
        let c = DiscountCurve::flat_simple_per_period(0.035, &t).unwrap();
        // P(0, 0.5) / P(0, 1.0) = 1 + 0.035 * 0.5 = 1.0175
        assert_relative_eq!(c.discount(1) / c.discount(2), 1.0175, max_relative = 1e-14);
        assert_relative_eq!(
            c.discount(20),
            (1.0175_f64).powi(-20),
            max_relative = 1e-13
        );
        assert_relative_eq!(c.simple_forward(&t, 2), 0.035, max_relative = 1e-12);
    }

    #[test]
    fn curve_rejects_increasing_factors() {
        let t = TenorStructure::regular(1.0, 1.0, 3).unwrap();
        assert!(DiscountCurve::new(vec![0.9, 0.95, 0.8], &t).is_err());
        assert!(DiscountCurve::new(vec![0.9, 0.8], &t).is_err());
        assert!(DiscountCurve::new(vec![1.1, 0.9, 0.8], &t).is_err());
    }
}
