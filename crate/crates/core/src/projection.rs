//! Forward scenarios: grow cumulative production exponentially, apply a
//! carbonization trend, and integrate the atmospheric perturbation.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::carbon::{
    committed_equilibrium, step_atmosphere, step_atmosphere_with, AtmosphereState,
    CarbonCycleParams,
};
use crate::error::{Error, Result};
use crate::series::AnnualSeries;
use crate::units::{convert, Quantity, Unit, DAYS_PER_YEAR, EJ_PER_YR_PER_GW};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Scenario {
    pub start_year: f64,
    pub horizon_years: f64,
    /// T$2010
    pub w0: f64,
    /// GW per T$2010
    pub lambda: f64,
    /// GtC/EJ
    pub c0: f64,
    /// 1/yr
    pub eta_w: f64,
    /// 1/yr, negative for decarbonization
    pub eta_c: f64,
    /// ppmv above preindustrial
    pub delta0: f64,
    pub carbon_params: CarbonCycleParams,
    /// yr
    pub dt: f64,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt <= 1.0) {
            return Err(Error::param("dt", "dt must be in (0,1]"));
        }
        if !(self.horizon_years > 0.0 && self.horizon_years.is_finite()) {
            return Err(Error::param("horizon", "must be positive"));
        }
        for (name, v) in [("w0", self.w0), ("c0", self.c0), ("lambda", self.lambda)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::param(name, "must be positive"));
            }
        }
        for (name, v) in [
            ("start_year", self.start_year),
            ("eta_w", self.eta_w),
            ("eta_c", self.eta_c),
            ("delta0", self.delta0),
        ] {
            if !v.is_finite() {
                return Err(Error::param(name, "must be finite"));
            }
        }
        if self.delta0 < 0.0 {
            return Err(Error::param("delta0", "must be nonnegative"));
        }
        Ok(())
    }

    fn steps(&self) -> Result<usize> {
        let n = (self.horizon_years / self.dt).round();
        if (n * self.dt - self.horizon_years).abs() > 1e-9 * self.horizon_years {
            return Err(Error::param("horizon", "must be a whole number of dt steps"));
        }
        Ok(n as usize)
    }

    pub fn wealth_at(&self, year: f64) -> f64 {
        self.w0 * (self.eta_w * (year - self.start_year)).exp()
    }

    pub fn carbonization_at(&self, year: f64) -> f64 {
        self.c0 * (self.eta_c * (year - self.start_year)).exp()
    }

    /// GtC/yr
    pub fn emissions_at(&self, year: f64) -> f64 {
        self.lambda * EJ_PER_YR_PER_GW * self.carbonization_at(year) * self.wealth_at(year)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub year: f64,
    /// T$2010
    pub wealth: f64,
    /// GW
    pub energy: f64,
    /// GtC/EJ
    pub carbonization: f64,
    /// GtC/yr
    pub emissions: f64,
    /// ppmv above preindustrial
    pub delta: f64,
    pub committed_delta: f64,
    /// ppmv
    pub concentration: f64,
    pub committed_concentration: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub points: Vec<TrajectoryPoint>,
}

impl Trajectory {
    pub fn last(&self) -> &TrajectoryPoint {
        // run_scenario always emits at least the initial point
        &self.points[self.points.len() - 1]
    }

    /// First time the committed concentration reaches `level`, linearly
    /// interpolated between steps.
    pub fn committed_crossing(&self, level: f64) -> Option<f64> {
        crossing(&self.points, level, |p| p.committed_concentration)
    }

    pub fn concentration_crossing(&self, level: f64) -> Option<f64> {
        crossing(&self.points, level, |p| p.concentration)
    }

    /// Point at `year` if it is on the step grid.
    pub fn at(&self, year: f64) -> Option<&TrajectoryPoint> {
        self.points.iter().find(|p| (p.year - year).abs() < 1e-9)
    }
}

fn crossing(points: &[TrajectoryPoint], level: f64, f: impl Fn(&TrajectoryPoint) -> f64) -> Option<f64> {
    let first = points.first()?;
    if f(first) >= level {
        return Some(first.year);
    }
    points.windows(2).find_map(|w| {
        let (a, b) = (f(&w[0]), f(&w[1]));
        (a < level && b >= level)
            .then(|| w[0].year + (level - a) / (b - a) * (w[1].year - w[0].year))
    })
}

fn record(s: &Scenario, year: f64, delta: f64, w: f64, c: f64) -> Result<TrajectoryPoint> {
    let lambda = Quantity::new(s.lambda, Unit::GwPerTrillionUsd)?;
    let committed = committed_equilibrium(
        Quantity::new(w, Unit::TrillionUsd)?,
        lambda,
        Quantity::new(c, Unit::GtcPerEj)?,
        &s.carbon_params,
    )?
    .value();
    let pre = s.carbon_params.preindustrial();
    Ok(TrajectoryPoint {
        year,
        wealth: w,
        energy: s.lambda * w,
        carbonization: c,
        emissions: s.lambda * EJ_PER_YR_PER_GW * c * w,
        delta,
        committed_delta: committed,
        concentration: pre + delta,
        committed_concentration: pre + committed,
    })
}

/// Integrates the scenario with emissions evaluated continuously inside each step.
pub fn run_scenario(s: &Scenario) -> Result<Trajectory> {
    s.validate()?;
    let n = s.steps()?;
    let mut points = Vec::with_capacity(n + 1);
    let t0 = s.start_year;
    let mut state = AtmosphereState {
        year: t0,
        delta_co2: s.delta0,
    };
    points.push(record(s, t0, state.delta_co2, s.w0, s.c0)?);
    for k in 1..=n {
        state = step_atmosphere_with(state, |t| s.emissions_at(t), &s.carbon_params, s.dt)?;
        // recompute from the step index so the grid does not accumulate rounding
        state.year = t0 + k as f64 * s.dt;
        points.push(record(
            s,
            state.year,
            state.delta_co2,
            s.wealth_at(state.year),
            s.carbonization_at(state.year),
        )?);
    }
    Ok(Trajectory { points })
}

/// (W, Δ_eq) pairs for fixed λ and c.
pub fn committed_curve(
    w_values: &[f64],
    lambda: Quantity,
    c: Quantity,
    params: &CarbonCycleParams,
) -> Result<Vec<(f64, f64)>> {
    w_values
        .iter()
        .map(|&w| {
            if !(w > 0.0) {
                return Err(Error::param("w", "must be positive"));
            }
            let d = committed_equilibrium(Quantity::new(w, Unit::TrillionUsd)?, lambda, c, params)?;
            Ok((w, d.value()))
        })
        .collect()
}

/// `n` evenly spaced W values from `from` to `to` inclusive.
pub fn wealth_grid(from: f64, to: f64, n: usize) -> Result<Vec<f64>> {
    if !(from > 0.0 && to > from) {
        return Err(Error::param("w range", "need 0 < from < to"));
    }
    if n < 2 {
        return Err(Error::param("points", "need at least 2"));
    }
    let step = (to - from) / (n - 1) as f64;
    Ok((0..n).map(|i| if i == n - 1 { to } else { from + i as f64 * step }).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CleanCapacity {
    pub gw_per_year: f64,
    pub gw_per_day: f64,
}

/// New capacity needed each year to grow `energy` at `eta_e` from clean sources alone.
pub fn required_clean_capacity(energy: Quantity, eta_e: f64) -> Result<CleanCapacity> {
    let gw = convert(energy, Unit::Gigawatt)?.value();
    if gw < 0.0 {
        return Err(Error::param("energy", "must be nonnegative"));
    }
    if !eta_e.is_finite() {
        return Err(Error::NonFinite(eta_e));
    }
    let per_year = gw * eta_e;
    Ok(CleanCapacity {
        gw_per_year: per_year,
        gw_per_day: per_year / DAYS_PER_YEAR,
    })
}

/// ln 2 / σ, years.
pub fn halving_time(params: &CarbonCycleParams) -> f64 {
    std::f64::consts::LN_2 / params.sigma()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteadyState {
    pub freeze_year: f64,
    pub frozen_wealth: f64,
    pub frozen_carbonization: f64,
    /// κλcW/σ at the frozen state, ppmv above preindustrial
    pub asymptote_delta: f64,
    pub asymptote_concentration: f64,
    /// Baseline up to the freeze followed by the frozen tail.
    pub trajectory: Trajectory,
}

/// Runs `s` to `freeze_year`, then holds W and c fixed for `tail_years`.
pub fn steady_state_commitment(
    s: &Scenario,
    freeze_year: f64,
    tail_years: f64,
) -> Result<SteadyState> {
    s.validate()?;
    if freeze_year < s.start_year {
        return Err(Error::param("freeze_year", "must not precede the start year"));
    }
    let mut points = if freeze_year > s.start_year {
        let head = Scenario {
            horizon_years: freeze_year - s.start_year,
            ..*s
        };
        run_scenario(&head)?.points
    } else {
        vec![record(s, s.start_year, s.delta0, s.w0, s.c0)?]
    };
    let last = points[points.len() - 1];
    let (w, c) = (last.wealth, last.carbonization);
    let emissions = last.emissions;
    let tail = Scenario {
        horizon_years: tail_years,
        ..*s
    };
    let n = tail.steps()?;
    let mut state = AtmosphereState {
        year: last.year,
        delta_co2: last.delta,
    };
    for k in 1..=n {
        state = step_atmosphere(state, emissions, &s.carbon_params, s.dt)?;
        state.year = last.year + k as f64 * s.dt;
        points.push(record(s, state.year, state.delta_co2, w, c)?);
    }
    Ok(SteadyState {
        freeze_year: last.year,
        frozen_wealth: w,
        frozen_carbonization: c,
        asymptote_delta: last.committed_delta,
        asymptote_concentration: last.committed_concentration,
        trajectory: Trajectory { points },
    })
}

/// Integrates observed annual emissions (held constant within each year)
/// from the observed perturbation at `from` up to `to`.
pub fn historical_spin_up(
    concentration: &AnnualSeries,
    emissions: &AnnualSeries,
    from: i32,
    to: i32,
    params: &CarbonCycleParams,
    dt: f64,
) -> Result<f64> {
    if to <= from {
        return Err(Error::InvalidPeriod { start: from, end: to });
    }
    let conc = concentration.to_unit(Unit::Ppmv)?;
    let em = emissions.to_unit(Unit::GtcPerYr)?;
    let per_year = (1.0 / dt).round();
    if !(dt > 0.0 && dt <= 1.0) || (per_year * dt - 1.0).abs() > 1e-12 {
        return Err(Error::param("dt", "must divide one year"));
    }
    let mut state = AtmosphereState {
        year: f64::from(from),
        delta_co2: conc.value_at(from)? - params.preindustrial(),
    };
    for year in from..to {
        let rate = em.value_at(year)?;
        for k in 1..=per_year as usize {
            state = step_atmosphere(state, rate, params, dt)?;
            state.year = f64::from(year) + k as f64 * dt;
        }
    }
    Ok(state.delta_co2)
}

/// Named sets of initial conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Preset {
    Paper2017,
}

impl Preset {
    pub const ALL: [Preset; 1] = [Preset::Paper2017];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Paper2017 => "paper-2017",
        }
    }

    pub fn year(self) -> i32 {
        match self {
            Preset::Paper2017 => 2017,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::param("preset", format!("unknown preset `{s}`")))
    }
}

/// Observed series needed to anchor a scenario at a given year.
pub struct Snapshot<'a> {
    pub wealth: &'a AnnualSeries,
    pub energy: &'a AnnualSeries,
    pub emissions: &'a AnnualSeries,
    pub concentration: &'a AnnualSeries,
}

/// Scenario starting at `year` with W, λ = E/W, c = C/E and Δ read from observations.
/// Growth defaults are η_W = 2.4 %/yr, η_c = 0, dt = 0.25 yr, 40 yr horizon.
pub fn scenario_from_snapshot(
    snap: &Snapshot<'_>,
    year: i32,
    params: CarbonCycleParams,
) -> Result<Scenario> {
    let w = snap.wealth.to_unit(Unit::TrillionUsd)?.value_at(year)?;
    let e_gw = snap.energy.to_unit(Unit::Gigawatt)?.value_at(year)?;
    let e_ej = snap.energy.to_unit(Unit::ExajoulePerYr)?.value_at(year)?;
    let c = snap.emissions.to_unit(Unit::GtcPerYr)?.value_at(year)?;
    let conc = snap.concentration.to_unit(Unit::Ppmv)?.value_at(year)?;
    let s = Scenario {
        start_year: f64::from(year),
        horizon_years: 40.0,
        w0: w,
        lambda: e_gw / w,
        c0: c / e_ej,
        eta_w: 0.024,
        eta_c: 0.0,
        delta0: (conc - params.preindustrial()).max(0.0),
        carbon_params: params,
        dt: 0.25,
    };
    s.validate()?;
    Ok(s)
}

pub fn preset_scenario(preset: Preset, snap: &Snapshot<'_>) -> Result<Scenario> {
    match preset {
        Preset::Paper2017 => scenario_from_snapshot(snap, preset.year(), CarbonCycleParams::default()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carbon::constant_emissions_solution;

    fn base() -> Scenario {
        Scenario {
            start_year: 2017.0,
            horizon_years: 50.0,
            w0: 3400.0,
            lambda: 5.6,
            c0: 0.0164,
            eta_w: 0.024,
            eta_c: 0.0,
            delta0: 131.0,
            carbon_params: CarbonCycleParams::default(),
            dt: 0.25,
        }
    }

    #[test]
    fn rejects_invalid() {
        for s in [
            Scenario { dt: 0.0, ..base() },
            Scenario { dt: 1.5, ..base() },
            Scenario { horizon_years: 0.0, ..base() },
            Scenario { w0: -1.0, ..base() },
            Scenario { horizon_years: 10.1, ..base() },
        ] {
            assert!(run_scenario(&s).is_err());
        }
        let err = run_scenario(&Scenario { dt: 0.0, ..base() }).unwrap_err();
        assert!(err.to_string().contains("dt must be in (0,1]"));
    }

    #[test]
    fn frozen_growth_matches_closed_form() {
        let s = Scenario {
            eta_w: 0.0,
            eta_c: 0.0,
            dt: 1.0,
            horizon_years: 100.0,
            ..base()
        };
        let tr = run_scenario(&s).unwrap();
        let rate = s.emissions_at(s.start_year);
        let mut prev = tr.points[0].delta;
        for (k, p) in tr.points.iter().enumerate() {
            let exact = constant_emissions_solution(s.delta0, rate, &s.carbon_params, k as f64);
            assert!((p.delta - exact).abs() < 1e-6);
            assert!(p.delta >= prev);
            prev = p.delta;
        }
    }

    fn final_delta(dt: f64) -> f64 {
        run_scenario(&Scenario { dt, ..base() }).unwrap().last().delta
    }

    #[test]
    fn fourth_order_convergence() {
        let (a, b, c) = (final_delta(1.0), final_delta(0.5), final_delta(0.25));
        let ratio = (a - b) / (b - c);
        assert!((14.0..=18.0).contains(&ratio), "ratio {ratio}");
        assert!((final_delta(0.25) - final_delta(0.125)).abs() < 1e-5);
    }

    #[test]
    fn deterministic() {
        let s = base();
        assert_eq!(run_scenario(&s).unwrap(), run_scenario(&s).unwrap());
    }

    #[test]
    fn commitment_dominates() {
        for (eta_w, eta_c) in [(0.024, 0.0), (0.0, 0.0), (0.03, -0.03), (0.01, 0.02)] {
            let s = Scenario {
                eta_w,
                eta_c,
                ..base()
            };
            for p in run_scenario(&s).unwrap().points {
                assert!(p.committed_delta >= p.delta, "{eta_w} {eta_c} {}", p.year);
            }
        }
    }

    #[test]
    fn wealth_grows() {
        let tr = run_scenario(&base()).unwrap();
        assert!(tr.points.windows(2).all(|w| w[1].wealth > w[0].wealth));
        assert_eq!(tr.points.len(), 201);
        assert_eq!(tr.last().year, 2067.0);
    }

    #[test]
    fn curve_basics() {
        let params = CarbonCycleParams::default();
        let lambda = Quantity::new(5.6, Unit::GwPerTrillionUsd).unwrap();
        let c = Quantity::new(0.0164, Unit::GtcPerEj).unwrap();
        assert!(committed_curve(&[], lambda, c, &params).unwrap().is_empty());
        let coef = crate::carbon::equilibrium_coefficient(lambda, c, &params).unwrap().value();
        let one = committed_curve(&[coef], lambda, c, &params).unwrap();
        assert!((one[0].1 - 1.0).abs() < 1e-12);
        let grid = wealth_grid(100.0, 5000.0, 50).unwrap();
        let curve = committed_curve(&grid, lambda, c, &params).unwrap();
        assert!(curve.windows(2).all(|w| w[1].1 > w[0].1));
        assert_eq!(grid[49], 5000.0);
        assert!(wealth_grid(10.0, 5.0, 10).is_err());
    }

    #[test]
    fn clean_capacity_examples() {
        let tw20 = Quantity::new(20_000.0, Unit::Gigawatt).unwrap();
        let r = required_clean_capacity(tw20, 0.024).unwrap();
        assert!((r.gw_per_year - 480.0).abs() < 1e-9);
        assert!((r.gw_per_day - 480.0 / 365.25).abs() < 1e-12);
        assert!((r.gw_per_day - 1.314).abs() < 1e-3);
        let r = required_clean_capacity(tw20, 0.016).unwrap();
        assert!((r.gw_per_year - 320.0).abs() < 1e-9);
        assert!(r.gw_per_day < 1.0);
        let zero = Quantity::new(0.0, Unit::Watt).unwrap();
        assert_eq!(required_clean_capacity(zero, 0.05).unwrap().gw_per_year, 0.0);
    }

    #[test]
    fn halving_times() {
        let p = CarbonCycleParams::default();
        assert!((halving_time(&p) - 30.14).abs() < 0.01);
        let p = CarbonCycleParams::with_sigma_override(std::f64::consts::LN_2, 0.47, 275.0).unwrap();
        assert!((halving_time(&p) - 1.0).abs() < 1e-15);
        let p = CarbonCycleParams::with_sigma_override(0.0115, 0.47, 275.0).unwrap();
        assert!((halving_time(&p) - 60.27).abs() < 0.01);
    }

    #[test]
    fn freeze_approaches_asymptote() {
        let s = base();
        let ss = steady_state_commitment(&s, 2030.0, 400.0).unwrap();
        assert_eq!(ss.freeze_year, 2030.0);
        let tail = ss.trajectory.last();
        assert!((tail.delta - ss.asymptote_delta).abs() < 0.01 * ss.asymptote_delta);
        assert!((ss.frozen_wealth - s.wealth_at(2030.0)).abs() < 1e-9 * ss.frozen_wealth);
        let at_start = steady_state_commitment(&s, 2017.0, 10.0).unwrap();
        assert_eq!(at_start.frozen_wealth, s.w0);
        assert!(steady_state_commitment(&s, 2000.0, 10.0).is_err());
    }

    #[test]
    fn decarbonized_freeze_decays() {
        let s = Scenario {
            eta_c: -1000.0,
            horizon_years: 1.0,
            ..base()
        };
        let ss = steady_state_commitment(&s, 2018.0, 600.0).unwrap();
        assert!(ss.frozen_carbonization < 1e-300);
        assert!(ss.trajectory.last().delta < 1e-3);
    }

    #[test]
    fn crossing_interpolates() {
        let tr = run_scenario(&base()).unwrap();
        let first = tr.points[0].committed_concentration;
        assert_eq!(tr.committed_crossing(first - 1.0), Some(2017.0));
        let t = tr.committed_crossing(first + 50.0).unwrap();
        assert!(t > 2017.0 && t < 2067.0);
        assert!(tr.committed_crossing(1e9).is_none());
    }

    #[test]
    fn preset_names() {
        assert_eq!("paper-2017".parse::<Preset>().unwrap(), Preset::Paper2017);
        assert!("paper-2018".parse::<Preset>().is_err());
    }
}
