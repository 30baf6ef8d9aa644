//! Emissions scaling, the Kaya growth decomposition and a single-box
//! linear-sink model of the atmospheric CO2 perturbation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::growth::{energy_productivity, growth_rate, GrowthMethod};
use crate::series::{AnnualSeries, Period, SeriesKind};
use crate::stats;
use crate::units::{convert, Quantity, Unit};

pub const SIGMA_BAND: (f64, f64) = (0.019, 0.027);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CarbonCycleParams {
    sigma: f64,
    kappa_a: f64,
    preindustrial: f64,
}

impl CarbonCycleParams {
    /// `sigma` in 1/yr must lie in [0.019, 0.027].
    pub fn new(sigma: f64, kappa_a: f64, preindustrial: f64) -> Result<Self> {
        if !(SIGMA_BAND.0..=SIGMA_BAND.1).contains(&sigma) {
            return Err(Error::param(
                "sigma",
                format!(
                    "{sigma} outside [{}, {}]; use with_sigma_override for other values",
                    SIGMA_BAND.0, SIGMA_BAND.1
                ),
            ));
        }
        Self::with_sigma_override(sigma, kappa_a, preindustrial)
    }

    /// Like [`CarbonCycleParams::new`] but accepts any positive sink rate.
    pub fn with_sigma_override(sigma: f64, kappa_a: f64, preindustrial: f64) -> Result<Self> {
        for (name, v) in [
            ("sigma", sigma),
            ("kappa_a", kappa_a),
            ("preindustrial", preindustrial),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::param(name, "must be positive"));
            }
        }
        Ok(Self {
            sigma,
            kappa_a,
            preindustrial,
        })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn kappa_a(&self) -> f64 {
        self.kappa_a
    }

    pub fn preindustrial(&self) -> f64 {
        self.preindustrial
    }
}

impl Default for CarbonCycleParams {
    fn default() -> Self {
        Self {
            sigma: 0.023,
            kappa_a: 0.47,
            preindustrial: 275.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AtmosphereState {
    pub year: f64,
    /// ppmv above the preindustrial baseline
    pub delta_co2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CarbonizationEstimate {
    pub period: Period,
    /// Mean C/E, GtC per EJ.
    pub c: f64,
    pub eta_c: f64,
    /// Mean C/W, GtC/yr per quadrillion 2010 US$.
    pub lambda_c: f64,
    pub lambda_c_std: f64,
    /// Mean κ·C/W, ppmv/yr per quadrillion 2010 US$.
    pub kappa_lambda_c: f64,
    pub kappa_lambda_c_std: f64,
    pub eta_emissions: f64,
}

pub fn carbonization(
    emissions: &AnnualSeries,
    energy: &AnnualSeries,
    wealth: &AnnualSeries,
    p: Period,
    params: &CarbonCycleParams,
    method: GrowthMethod,
) -> Result<CarbonizationEstimate> {
    let c_series = carbon_intensity(emissions, energy)?;
    let c_slice = c_series.slice(p)?;
    let c_mean = stats::mean(&c_slice.values().collect::<Vec<_>>());

    let cw = emissions_per_wealth(emissions, wealth)?.slice(p)?;
    let cw: Vec<f64> = cw.values().collect();
    let lambda_c = stats::mean(&cw);
    let lambda_c_std = stats::sample_std(&cw);
    if !(c_mean > 0.0) {
        return Err(Error::param("emissions", "mean carbonization must be positive"));
    }
    Ok(CarbonizationEstimate {
        period: p,
        c: c_mean,
        eta_c: growth_rate(&c_series, p, method)?.value,
        lambda_c,
        lambda_c_std,
        kappa_lambda_c: params.kappa_a * lambda_c,
        kappa_lambda_c_std: params.kappa_a * lambda_c_std,
        eta_emissions: growth_rate(emissions, p, method)?.value,
    })
}

/// C/E per year, GtC per EJ.
pub fn carbon_intensity(emissions: &AnnualSeries, energy: &AnnualSeries) -> Result<AnnualSeries> {
    let c = emissions.to_unit(Unit::GtcPerYr)?;
    let e = energy.to_unit(Unit::ExajoulePerYr)?;
    pointwise(&c, &e, Unit::GtcPerEj, |a, b| a / b)
}

/// C/W per year, GtC/yr per quadrillion 2010 US$.
pub fn emissions_per_wealth(emissions: &AnnualSeries, wealth: &AnnualSeries) -> Result<AnnualSeries> {
    let c = emissions.to_unit(Unit::GtcPerYr)?;
    let w = wealth.to_unit(Unit::TrillionUsd)?;
    pointwise(&c, &w, Unit::GtcPerYrPerQuadrillionUsd, |a, b| 1000.0 * a / b)
}

fn pointwise(
    a: &AnnualSeries,
    b: &AnnualSeries,
    unit: Unit,
    f: impl Fn(f64, f64) -> f64,
) -> Result<AnnualSeries> {
    let points: Vec<_> = a.zip_years(b).into_iter().map(|(y, x, z)| (y, f(x, z))).collect();
    if points.is_empty() {
        return Err(Error::EmptySlice {
            start: a.first_year().unwrap_or(0),
            end: a.last_year().unwrap_or(0),
        });
    }
    AnnualSeries::new(SeriesKind::Derived, unit, points)
}

/// Growth rates of the factors in C = P · (Y/P) · (E/Y) · (C/E), in 1/yr.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KayaComponents {
    pub period: Period,
    pub eta_p: f64,
    /// Growth of per-capita GDP.
    pub eta_g: f64,
    /// Growth of energy productivity Y/E.
    pub eta_eps: f64,
    pub eta_c: f64,
    pub eta_emissions: f64,
    /// η_P + η_g − η_ε + η_c − η_C
    pub residual: f64,
}

impl KayaComponents {
    pub fn eta_p_plus_g(&self) -> f64 {
        self.eta_p + self.eta_g
    }
}

pub fn kaya_growth_decomposition(
    pop: &AnnualSeries,
    gdp: &AnnualSeries,
    energy: &AnnualSeries,
    emissions: &AnnualSeries,
    p: Period,
    method: GrowthMethod,
) -> Result<KayaComponents> {
    let per_capita = pointwise(gdp, pop, Unit::Dimensionless, |y, n| y / n)?;
    let eps = energy_productivity(gdp, energy)?;
    let c = carbon_intensity(emissions, energy)?;
    let eta_p = growth_rate(pop, p, method)?.value;
    let eta_g = growth_rate(&per_capita, p, method)?.value;
    let eta_eps = growth_rate(&eps, p, method)?.value;
    let eta_c = growth_rate(&c, p, method)?.value;
    let eta_emissions = growth_rate(emissions, p, method)?.value;
    Ok(KayaComponents {
        period: p,
        eta_p,
        eta_g,
        eta_eps,
        eta_c,
        eta_emissions,
        residual: eta_p + eta_g - eta_eps + eta_c - eta_emissions,
    })
}

/// η_C = η_c + λε.
pub fn predicted_emissions_growth(eta_c: f64, lambda_eps: f64) -> f64 {
    eta_c + lambda_eps
}

fn check_dt(dt: f64) -> Result<()> {
    if dt > 0.0 && dt <= 1.0 {
        Ok(())
    } else {
        Err(Error::param("dt", "dt must be in (0,1]"))
    }
}

/// One RK4 step of dΔ/dt = κC − σΔ with emissions held at `emissions_rate` GtC/yr.
pub fn step_atmosphere(
    state: AtmosphereState,
    emissions_rate: f64,
    params: &CarbonCycleParams,
    dt: f64,
) -> Result<AtmosphereState> {
    step_atmosphere_with(state, |_| emissions_rate, params, dt)
}

/// One RK4 step with emissions (GtC/yr) given as a function of the year.
pub fn step_atmosphere_with(
    state: AtmosphereState,
    emissions: impl Fn(f64) -> f64,
    params: &CarbonCycleParams,
    dt: f64,
) -> Result<AtmosphereState> {
    check_dt(dt)?;
    let f = |t: f64, d: f64| params.kappa_a * emissions(t) - params.sigma * d;
    let (t, d) = (state.year, state.delta_co2);
    let k1 = f(t, d);
    let k2 = f(t + 0.5 * dt, d + 0.5 * dt * k1);
    let k3 = f(t + 0.5 * dt, d + 0.5 * dt * k2);
    let k4 = f(t + dt, d + dt * k3);
    Ok(AtmosphereState {
        year: t + dt,
        delta_co2: d + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4),
    })
}

/// Δ(t) for constant emissions starting from Δ₀.
pub fn constant_emissions_solution(delta0: f64, emissions_rate: f64, params: &CarbonCycleParams, t: f64) -> f64 {
    let eq = params.kappa_a * emissions_rate / params.sigma;
    let decay = (-params.sigma * t).exp();
    eq * (1.0 - decay) + delta0 * decay
}

fn per_year(lambda: Quantity) -> Result<f64> {
    Ok(convert(lambda, Unit::EjPerYrPerTrillionUsd)?.value())
}

fn positive(name: &'static str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::param(name, "must be positive"))
    }
}

/// σ/(κλc): cumulative production (T$2010) committed per ppmv of equilibrium perturbation.
pub fn equilibrium_coefficient(
    lambda: Quantity,
    c: Quantity,
    params: &CarbonCycleParams,
) -> Result<Quantity> {
    let l = positive("lambda", per_year(lambda)?)?;
    let c = positive("c", convert(c, Unit::GtcPerEj)?.value())?;
    Quantity::new(params.sigma / (params.kappa_a * l * c), Unit::TrillionUsdPerPpmv)
}

/// σ/(κ·λc) with λc given directly as C/W.
pub fn equilibrium_coefficient_from_scaling(
    lambda_c: Quantity,
    params: &CarbonCycleParams,
) -> Result<Quantity> {
    let lc = positive(
        "lambda_c",
        convert(lambda_c, Unit::GtcPerYrPerQuadrillionUsd)?.value() / 1000.0,
    )?;
    Quantity::new(params.sigma / (params.kappa_a * lc), Unit::TrillionUsdPerPpmv)
}

/// Δ_eq = κλcW/σ, ppmv.
pub fn committed_equilibrium(
    w: Quantity,
    lambda: Quantity,
    c: Quantity,
    params: &CarbonCycleParams,
) -> Result<Quantity> {
    let w = convert(w, Unit::TrillionUsd)?.value();
    if w < 0.0 {
        return Err(Error::param("w", "must be nonnegative"));
    }
    let l = per_year(lambda)?;
    let c = convert(c, Unit::GtcPerEj)?.value();
    Quantity::new(params.kappa_a * l * c * w / params.sigma, Unit::Ppmv)
}

/// σ/(κλ), in GtC·T$2010 per (EJ·ppmv).
pub fn max_carbonization_coefficient(lambda: Quantity, params: &CarbonCycleParams) -> Result<f64> {
    let l = positive("lambda", per_year(lambda)?)?;
    Ok(params.sigma / (params.kappa_a * l))
}

/// Largest c (GtC/EJ) compatible with holding Δ at `delta_target` given W.
pub fn max_carbonization(
    delta_target: Quantity,
    w: Quantity,
    lambda: Quantity,
    params: &CarbonCycleParams,
) -> Result<Quantity> {
    let d = convert(delta_target, Unit::Ppmv)?.value();
    let w = positive("w", convert(w, Unit::TrillionUsd)?.value())?;
    Quantity::new(
        max_carbonization_coefficient(lambda, params)? * d / w,
        Unit::GtcPerEj,
    )
}
