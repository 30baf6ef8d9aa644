//! The ratio λ = E/W between current energy use and cumulative production.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::reconstruction::{cumulative_production, WealthSeries};
use crate::series::{AnnualSeries, Period, SeriesKind};
use crate::stats;
use crate::units::{convert, convert_with, ConversionContext, Quantity, Unit, SECONDS_PER_DAY};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingEstimate {
    pub period: Period,
    pub n: usize,
    pub mean: Quantity,
    /// Sample (n-1) standard deviation.
    pub std: Quantity,
    /// 1.96·std/√n.
    pub ci95_halfwidth: Quantity,
    /// OLS slope of ln λ against year, 1/yr.
    pub trend_per_year: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialParams {
    tau_d: f64,
}

impl PotentialParams {
    pub fn new(tau_d_seconds: f64) -> Result<Self> {
        if !(tau_d_seconds > 0.0 && tau_d_seconds.is_finite()) {
            return Err(Error::param("tau_d", "must be positive"));
        }
        Ok(Self {
            tau_d: tau_d_seconds,
        })
    }

    pub fn tau_d(&self) -> f64 {
        self.tau_d
    }
}

impl Default for PotentialParams {
    fn default() -> Self {
        Self {
            tau_d: SECONDS_PER_DAY,
        }
    }
}

/// λ_j = E_j / W_j in GW per trillion 2010 US$ for every shared year.
pub fn lambda_series(energy: &AnnualSeries, wealth: &WealthSeries) -> Result<AnnualSeries> {
    let e = energy.to_unit(Unit::Gigawatt)?;
    let w = wealth.series().to_unit(Unit::TrillionUsd)?;
    let points: Vec<_> = e.zip_years(&w).into_iter().map(|(y, e, w)| (y, e / w)).collect();
    if points.is_empty() {
        return Err(Error::EmptySlice {
            start: e.first_year().unwrap_or(0),
            end: e.last_year().unwrap_or(0),
        });
    }
    AnnualSeries::new(SeriesKind::Derived, Unit::GwPerTrillionUsd, points)
}

pub fn lambda_stats(ls: &AnnualSeries, p: Period) -> Result<ScalingEstimate> {
    let s = ls.slice(p)?;
    let unit = s.unit();
    let values: Vec<f64> = s.values().collect();
    let n = values.len();
    let mean = stats::mean(&values);
    let std = stats::sample_std(&values);
    let ci = stats::Z95 * std / (n as f64).sqrt();
    let trend = if n >= 2 && values.iter().all(|v| *v > 0.0) {
        let years: Vec<f64> = s.years().map(f64::from).collect();
        let logs: Vec<f64> = values.iter().map(|v| v.ln()).collect();
        stats::ols_slope(&years, &logs)
    } else {
        0.0
    };
    Ok(ScalingEstimate {
        period: p,
        n,
        mean: Quantity::new(mean, unit)?,
        std: Quantity::new(std, unit)?,
        ci95_halfwidth: Quantity::new(ci, unit)?,
        trend_per_year: trend,
    })
}

/// λ statistics over `p` after rescaling the initial cumulative production.
pub fn sensitivity_to_w1(
    gdp: &AnnualSeries,
    energy: &AnnualSeries,
    w1: Quantity,
    factor: f64,
    p: Period,
) -> Result<ScalingEstimate> {
    if !(factor > 0.0 && factor.is_finite()) {
        return Err(Error::param("factor", "must be positive"));
    }
    let wealth = cumulative_production(gdp, w1.scale(factor)?)?;
    lambda_stats(&lambda_series(energy, &wealth)?, p)
}

/// G/W = λ·τ_d, in joules per 2010 US$.
pub fn potential_per_dollar(lambda: Quantity, pp: &PotentialParams) -> Result<Quantity> {
    let ctx = ConversionContext {
        tau_d: Some(pp.tau_d),
        ..Default::default()
    };
    convert_with(lambda, Unit::JoulePerUsd, &ctx)
}

/// G = E·τ_d, in joules.
pub fn civilization_potential(energy: Quantity, pp: &PotentialParams) -> Result<Quantity> {
    let watts = convert(energy, Unit::Watt)?.value();
    Quantity::new(watts * pp.tau_d, Unit::Joule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reconstruction::cumulative_production;

    fn q(v: f64, u: Unit) -> Quantity {
        Quantity::new(v, u).unwrap()
    }

    fn synthetic(lambda0: f64) -> (AnnualSeries, AnnualSeries, Quantity) {
        let gdp = AnnualSeries::new(
            SeriesKind::GdpMer,
            Unit::TrillionUsdPerYr,
            (1..=60).map(|y| (y, 1.0 + 0.03 * f64::from(y) + 0.1 * f64::from(y % 3))).collect(),
        )
        .unwrap();
        let w1 = q(40.0, Unit::TrillionUsd);
        let w = cumulative_production(&gdp, w1).unwrap();
        let energy = AnnualSeries::new(
            SeriesKind::Energy,
            Unit::Gigawatt,
            w.series().points().iter().map(|&(y, v)| (y, lambda0 * v)).collect(),
        )
        .unwrap();
        (gdp, energy, w1)
    }

    #[test]
    fn exact_scaling_recovered() {
        let (gdp, energy, w1) = synthetic(5.9);
        let w = cumulative_production(&gdp, w1).unwrap();
        let ls = lambda_series(&energy, &w).unwrap();
        for v in ls.values() {
            assert!((v - 5.9).abs() < 1e-12 * 5.9);
        }
        let est = lambda_stats(&ls, Period::new(10, 60).unwrap()).unwrap();
        assert!((est.mean.value() - 5.9).abs() < 1e-12 * 5.9);
        assert!(est.std.value() < 1e-12);
        assert!(est.trend_per_year.abs() < 1e-12);
    }

    #[test]
    fn constant_series_stats() {
        let ls = AnnualSeries::new(
            SeriesKind::Derived,
            Unit::GwPerTrillionUsd,
            (1980..=2017).map(|y| (y, 5.0)).collect(),
        )
        .unwrap();
        let est = lambda_stats(&ls, Period::new(1980, 2017).unwrap()).unwrap();
        assert_eq!(est.mean.value(), 5.0);
        assert_eq!(est.std.value(), 0.0);
        assert_eq!(est.ci95_halfwidth.value(), 0.0);
        assert!(est.trend_per_year.abs() < 1e-15);
        assert_eq!(est.n, 38);
    }

    #[test]
    fn trend_of_declining_series() {
        let ls = AnnualSeries::new(
            SeriesKind::Derived,
            Unit::GwPerTrillionUsd,
            (0..=20).map(|y| (2000 + y, 6.0 * (-0.001 * f64::from(y)).exp())).collect(),
        )
        .unwrap();
        let est = lambda_stats(&ls, Period::new(2000, 2020).unwrap()).unwrap();
        assert!((est.trend_per_year + 0.001).abs() < 1e-12);
    }

    #[test]
    fn w1_factor_one_is_baseline() {
        let (gdp, energy, w1) = synthetic(5.9);
        let p = Period::new(10, 60).unwrap();
        let base = lambda_stats(
            &lambda_series(&energy, &cumulative_production(&gdp, w1).unwrap()).unwrap(),
            p,
        )
        .unwrap();
        assert_eq!(sensitivity_to_w1(&gdp, &energy, w1, 1.0, p).unwrap(), base);
        let doubled = sensitivity_to_w1(&gdp, &energy, w1, 2.0, p).unwrap();
        assert!(doubled.mean.value() < base.mean.value());
        assert!(sensitivity_to_w1(&gdp, &energy, w1, 0.0, p).is_err());
    }

    #[test]
    fn scale_invariance() {
        let (gdp, energy, w1) = synthetic(5.9);
        let base = lambda_series(&energy, &cumulative_production(&gdp, w1).unwrap()).unwrap();
        for alpha in [0.5, 2.0, 10.0] {
            let g = AnnualSeries::new(
                SeriesKind::GdpMer,
                Unit::TrillionUsdPerYr,
                gdp.points().iter().map(|&(y, v)| (y, alpha * v)).collect(),
            )
            .unwrap();
            let w = cumulative_production(&g, w1.scale(alpha).unwrap()).unwrap();
            let ls = lambda_series(&energy, &w).unwrap();
            for (a, b) in base.values().zip(ls.values()) {
                assert!((b - a / alpha).abs() < 1e-12 * a);
            }
        }
    }

    #[test]
    fn joules_per_dollar() {
        let pp = PotentialParams::default();
        let out = potential_per_dollar(q(5.9, Unit::GwPerTrillionUsd), &pp).unwrap();
        assert!((out.value() - 510.0).abs() < 1.0);
        let out = potential_per_dollar(q(5.88, Unit::GwPerTrillionUsd), &pp).unwrap();
        // 5.88e9 W × 86400 s / 1e12 $
        assert!((out.value() - 508.032).abs() < 1e-9);
        let unit = PotentialParams::new(1.0).unwrap();
        let out = potential_per_dollar(q(1.0, Unit::GwPerTrillionUsd), &unit).unwrap();
        assert!((out.value() - 1e-3).abs() < 1e-18);
        assert!(PotentialParams::new(0.0).is_err());
    }

    #[test]
    fn potential_of_twenty_terawatts() {
        let pp = PotentialParams::default();
        let g = civilization_potential(q(20_000.0, Unit::Gigawatt), &pp).unwrap();
        assert!((g.value() - 1.728e18).abs() < 1e6);
        assert_eq!(civilization_potential(q(0.0, Unit::Watt), &pp).unwrap().value(), 0.0);
        let one = PotentialParams::new(1.0).unwrap();
        assert_eq!(civilization_potential(q(1.0, Unit::Watt), &one).unwrap().value(), 1.0);
        assert!(civilization_potential(q(1.0, Unit::Ppmv), &pp).is_err());
    }
}
