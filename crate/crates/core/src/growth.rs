//! Growth-rate estimators and the identities linking the growth of
//! cumulative production, energy use, energy productivity and GDP.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{AnnualSeries, Period, SeriesKind};
use crate::stats;
use crate::units::{convert, Quantity, Unit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthMethod {
    /// ln(x(end)/x(start)) / (end - start)
    #[default]
    EndpointLog,
    /// OLS slope of ln x against year.
    OlsLog,
    /// Arithmetic mean of an annual rate series; used for model-derived rates.
    PeriodMean,
}

impl GrowthMethod {
    pub fn name(self) -> &'static str {
        match self {
            GrowthMethod::EndpointLog => "endpoint_log",
            GrowthMethod::OlsLog => "ols_log",
            GrowthMethod::PeriodMean => "period_mean",
        }
    }
}

impl fmt::Display for GrowthMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GrowthMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "endpoint_log" | "endpoint" => Ok(GrowthMethod::EndpointLog),
            "ols_log" | "ols" => Ok(GrowthMethod::OlsLog),
            _ => Err(Error::param("method", format!("unknown growth method `{s}`"))),
        }
    }
}

/// An exponential rate in 1/yr.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthRate {
    pub value: f64,
    pub period: Period,
    pub method: GrowthMethod,
}

impl GrowthRate {
    pub fn new(value: f64, period: Period, method: GrowthMethod) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::NonFinite(value));
        }
        Ok(Self {
            value,
            period,
            method,
        })
    }

    pub fn percent(&self) -> f64 {
        100.0 * self.value
    }
}

pub fn growth_rate(s: &AnnualSeries, p: Period, method: GrowthMethod) -> Result<GrowthRate> {
    let sl = s.slice(p)?;
    if sl.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: sl.len(),
        });
    }
    if let Some(&(year, value)) = sl.points().iter().find(|(_, v)| *v <= 0.0) {
        return Err(Error::NonPositiveValue { year, value });
    }
    let value = match method {
        GrowthMethod::EndpointLog => {
            let (y0, v0) = sl.points()[0];
            let (y1, v1) = sl.points()[sl.len() - 1];
            (v1 / v0).ln() / f64::from(y1 - y0)
        }
        GrowthMethod::OlsLog => {
            let years: Vec<f64> = sl.years().map(f64::from).collect();
            let logs: Vec<f64> = sl.values().map(f64::ln).collect();
            stats::ols_slope(&years, &logs)
        }
        GrowthMethod::PeriodMean => {
            return Err(Error::param(
                "method",
                "period_mean applies to rate series, not levels",
            ))
        }
    };
    GrowthRate::new(value, p, method)
}

fn ratio_series(
    num: &AnnualSeries,
    den: &AnnualSeries,
    unit: Unit,
) -> Result<AnnualSeries> {
    let points: Vec<_> = num
        .zip_years(den)
        .into_iter()
        .map(|(y, a, b)| (y, a / b))
        .collect();
    if points.is_empty() {
        return Err(Error::EmptySlice {
            start: num.first_year().unwrap_or(0),
            end: num.last_year().unwrap_or(0),
        });
    }
    AnnualSeries::new(SeriesKind::Derived, unit, points)
}

/// Y/E per year, in trillion 2010 US$ per EJ.
pub fn energy_productivity(gdp: &AnnualSeries, energy: &AnnualSeries) -> Result<AnnualSeries> {
    let y = gdp.to_unit(Unit::TrillionUsdPerYr)?;
    let e = energy.to_unit(Unit::ExajoulePerYr)?;
    ratio_series(&y, &e, Unit::TrillionUsdPerEj)
}

/// Y/W per year: the instantaneous growth rate of cumulative production, 1/yr.
pub fn wealth_growth_series(gdp: &AnnualSeries, wealth: &AnnualSeries) -> Result<AnnualSeries> {
    let y = gdp.to_unit(Unit::TrillionUsdPerYr)?;
    let w = wealth.to_unit(Unit::TrillionUsd)?;
    ratio_series(&y, &w, Unit::PerYear)
}

fn lambda_per_year(lambda: Quantity) -> Result<f64> {
    Ok(convert(lambda, Unit::EjPerYrPerTrillionUsd)?.value())
}

/// Period mean of λ·ε, the growth rate of energy use implied by a fixed λ.
pub fn predicted_energy_growth(
    lambda: Quantity,
    eps: &AnnualSeries,
    p: Period,
) -> Result<GrowthRate> {
    let l = lambda_per_year(lambda)?;
    let e = eps.to_unit(Unit::TrillionUsdPerEj)?.slice(p)?;
    let products: Vec<f64> = e.values().map(|v| l * v).collect();
    GrowthRate::new(stats::mean(&products), p, GrowthMethod::PeriodMean)
}

/// Growth rate of a positive series; applied to ε gives η_ε, applied to
/// [`wealth_growth_series`] gives η_I.
pub fn innovation_rate(s: &AnnualSeries, p: Period, method: GrowthMethod) -> Result<GrowthRate> {
    growth_rate(s, p, method)
}

/// λε + η_ε.
pub fn predicted_gdp_growth(
    lambda: Quantity,
    eps: &AnnualSeries,
    p: Period,
    method: GrowthMethod,
) -> Result<GrowthRate> {
    let le = predicted_energy_growth(lambda, eps, p)?;
    let ie = innovation_rate(eps, p, method)?;
    GrowthRate::new(le.value + ie.value, p, GrowthMethod::PeriodMean)
}

/// Measured and derived growth rates for one period, all in 1/yr.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatesRow {
    pub period: Period,
    pub eta_w: f64,
    pub eta_e: f64,
    /// Mean λε with λ held at the supplied full-sample value.
    pub lambda_eps: f64,
    /// Mean λε with λ set to E/W averaged over this period only.
    pub lambda_eps_period: f64,
    pub eta_i: f64,
    pub eta_eps: f64,
    pub eta_y: f64,
    pub predicted_eta_y: f64,
}

pub struct RatesInputs<'a> {
    pub gdp: &'a AnnualSeries,
    pub energy: &'a AnnualSeries,
    pub wealth: &'a AnnualSeries,
    /// Full-sample λ, GW per T$2010.
    pub lambda: Quantity,
}

pub fn rates_row(inp: &RatesInputs<'_>, p: Period, method: GrowthMethod) -> Result<RatesRow> {
    let eps = energy_productivity(inp.gdp, inp.energy)?;
    let eta_w_series = wealth_growth_series(inp.gdp, inp.wealth)?;

    let e_gw = inp.energy.to_unit(Unit::Gigawatt)?;
    let w = inp.wealth.to_unit(Unit::TrillionUsd)?;
    let lambdas: Vec<f64> = e_gw
        .slice(p)?
        .zip_years(&w)
        .into_iter()
        .map(|(_, e, w)| e / w)
        .collect();
    let period_lambda = Quantity::new(stats::mean(&lambdas), Unit::GwPerTrillionUsd)?;

    let lambda_eps = predicted_energy_growth(inp.lambda, &eps, p)?.value;
    let eta_eps = innovation_rate(&eps, p, method)?.value;
    Ok(RatesRow {
        period: p,
        eta_w: growth_rate(inp.wealth, p, method)?.value,
        eta_e: growth_rate(inp.energy, p, method)?.value,
        lambda_eps,
        lambda_eps_period: predicted_energy_growth(period_lambda, &eps, p)?.value,
        eta_i: innovation_rate(&eta_w_series, p, method)?.value,
        eta_eps,
        eta_y: growth_rate(inp.gdp, p, method)?.value,
        predicted_eta_y: lambda_eps + eta_eps,
    })
}

pub fn rates_table(
    inp: &RatesInputs<'_>,
    periods: &[Period],
    method: GrowthMethod,
) -> Result<Vec<RatesRow>> {
    periods.iter().map(|&p| rates_row(inp, p, method)).collect()
}
