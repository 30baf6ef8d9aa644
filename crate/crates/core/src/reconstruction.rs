//! Historical GDP reconstruction and world cumulative production.
//!
//! Sparse PPP benchmarks are converted to market-exchange-rate terms with a
//! fixed PPP/MER ratio, infilled to annual values with a natural cubic spline,
//! spliced onto the annual MER record, and summed into
//! `W(t) = W(1) + Y(1) + ... + Y(t)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{AnnualSeries, Period, SeriesKind};
use crate::spline::NaturalSpline;
use crate::stats;
use crate::units::{Quantity, Unit};

/// Mean PPP/MER ratio over a calibration window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PppMerRatio {
    value: f64,
    window: Period,
}

impl PppMerRatio {
    pub fn new(value: f64, window: Period) -> Result<Self> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::param("ppp_mer_ratio", format!("must be positive, got {value}")));
        }
        Ok(Self { value, window })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn window(&self) -> Period {
        self.window
    }
}

pub fn estimate_ppp_mer_ratio(
    ppp: &AnnualSeries,
    mer: &AnnualSeries,
    window: Period,
) -> Result<PppMerRatio> {
    let ppp = ppp.slice(window)?;
    let mer = mer.slice(window)?.to_unit(ppp.unit())?;
    let ratios: Vec<f64> = ppp.zip_years(&mer).iter().map(|t| t.1 / t.2).collect();
    if ratios.is_empty() {
        return Err(Error::EmptySlice {
            start: window.start(),
            end: window.end(),
        });
    }
    PppMerRatio::new(stats::mean(&ratios), window)
}

pub fn ppp_to_mer(s: &AnnualSeries, r: &PppMerRatio) -> Result<AnnualSeries> {
    if s.kind() != SeriesKind::GdpPpp {
        return Err(Error::KindError {
            expected: SeriesKind::GdpPpp.to_string(),
            found: s.kind().to_string(),
        });
    }
    let points = s.points().iter().map(|&(y, v)| (y, v / r.value)).collect();
    AnnualSeries::new(SeriesKind::GdpMer, s.unit(), points)
}

/// Space in which the spline is fitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplineSpace {
    Linear,
    /// Fit ln(y) and exponentiate; keeps multi-century gaps positive.
    Log,
}

/// Annual values at every year between the first and last knot.
pub fn spline_infill(sparse: &AnnualSeries, space: SplineSpace) -> Result<AnnualSeries> {
    if sparse.len() < 4 {
        return Err(Error::TooFewPoints {
            needed: 4,
            got: sparse.len(),
        });
    }
    let x: Vec<f64> = sparse.years().map(f64::from).collect();
    let y: Vec<f64> = match space {
        SplineSpace::Linear => sparse.values().collect(),
        SplineSpace::Log => sparse
            .points()
            .iter()
            .map(|&(year, v)| {
                if v > 0.0 {
                    Ok(v.ln())
                } else {
                    Err(Error::NonPositiveValue { year, value: v })
                }
            })
            .collect::<Result<_>>()?,
    };
    let spline = NaturalSpline::fit(&x, &y)?;
    let (first, last) = (sparse.first_year().unwrap(), sparse.last_year().unwrap());
    let mut points = Vec::with_capacity((last - first + 1) as usize);
    for year in first..=last {
        let value = match sparse.get(year) {
            Some(knot) => knot,
            None => {
                let raw = spline.eval(f64::from(year));
                match space {
                    SplineSpace::Linear => raw,
                    SplineSpace::Log => raw.exp(),
                }
            }
        };
        if sparse.kind().requires_positive() && value <= 0.0 {
            return Err(Error::NonPositiveResult { year, value });
        }
        points.push((year, value));
    }
    AnnualSeries::new(sparse.kind(), sparse.unit(), points)
}

/// W(1) such that Y(1)/W(1) equals the population growth rate.
///
/// The iterative calibration (adjust W(1) until the growth rate of W at
/// year 1 matches population growth) has this closed form as its fixed point
/// because η_W(1) = Y(1)/W(1); see [`calibrate_initial_wealth_iterative`].
pub fn calibrate_initial_wealth(gdp: &AnnualSeries, pop_growth: f64) -> Result<Quantity> {
    let y1 = year_one_output(gdp, pop_growth)?;
    Quantity::new(y1 / pop_growth, Unit::TrillionUsd)
}

/// Fixed-point form of the calibration: W ← W·η_W(W)/η_pop with
/// η_W(W) = Y(1)/W, iterated until the relative update is below `tol`.
/// Returns the calibrated value and the number of updates taken.
pub fn calibrate_initial_wealth_iterative(
    gdp: &AnnualSeries,
    pop_growth: f64,
    tol: f64,
    max_iter: usize,
) -> Result<(Quantity, usize)> {
    let y1 = year_one_output(gdp, pop_growth)?;
    // start from one year of output
    let mut w = y1;
    for iter in 1..=max_iter {
        let eta_w = y1 / w;
        let next = w * eta_w / pop_growth;
        let rel = ((next - w) / next).abs();
        w = next;
        if rel < tol {
            return Ok((Quantity::new(w, Unit::TrillionUsd)?, iter));
        }
    }
    Err(Error::param("max_iter", "calibration did not converge"))
}

fn year_one_output(gdp: &AnnualSeries, pop_growth: f64) -> Result<f64> {
    if !(pop_growth > 0.0 && pop_growth.is_finite()) {
        return Err(Error::param("pop_growth", format!("must be positive, got {pop_growth}")));
    }
    let gdp = gdp.to_unit(Unit::TrillionUsdPerYr)?;
    gdp.value_at(1)
}

/// Cumulative production with its initialization and provenance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WealthSeries {
    series: AnnualSeries,
    w1: Quantity,
    method: String,
}

impl WealthSeries {
    pub fn series(&self) -> &AnnualSeries {
        &self.series
    }

    pub fn w1(&self) -> Quantity {
        self.w1
    }

    pub fn method(&self) -> &str {
        &self.method
    }

    pub fn value_at(&self, year: i32) -> Result<f64> {
        self.series.value_at(year)
    }
}

/// W(t) = w1 + Σ_{first ≤ t' ≤ t} Y(t') over a contiguous annual GDP series.
pub fn cumulative_production(gdp: &AnnualSeries, w1: Quantity) -> Result<WealthSeries> {
    let w1 = crate::units::convert(w1, Unit::TrillionUsd)?;
    if w1.value() < 0.0 {
        return Err(Error::param("w1", "must be non-negative"));
    }
    let gdp = gdp.to_unit(Unit::TrillionUsdPerYr)?;
    if let Some(w) = gdp.points().windows(2).find(|w| w[1].0 != w[0].0 + 1) {
        return Err(Error::Gap(w[0].0, w[1].0));
    }
    let mut acc = w1.value();
    let points = gdp
        .points()
        .iter()
        .map(|&(year, y)| {
            acc += y;
            (year, acc)
        })
        .collect();
    Ok(WealthSeries {
        series: AnnualSeries::new(SeriesKind::Wealth, Unit::TrillionUsd, points)?,
        w1,
        method: "annual sum from W(1)".into(),
    })
}

/// Fraction of W(`reference`) produced during the closed interval `from..=to`.
/// Starting at the first year counts production only, not the initial stock.
pub fn accumulated_share(wealth: &WealthSeries, from: i32, to: i32, reference: i32) -> Result<f64> {
    if to < from {
        return Err(Error::InvalidPeriod { start: from, end: to });
    }
    let s = wealth.series();
    let before = if Some(from) == s.first_year() {
        wealth.w1().value()
    } else {
        s.value_at(from - 1)?
    };
    Ok((s.value_at(to)? - before) / s.value_at(reference)?)
}

/// W(1) as a fraction of W(`reference`).
pub fn initial_share(wealth: &WealthSeries, reference: i32) -> Result<f64> {
    Ok(wealth.w1().value() / wealth.series().value_at(reference)?)
}

/// How W(1) is chosen for a reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialWealth {
    /// Calibrated from population growth, multiplied by a factor.
    Calibrated { factor: f64 },
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReconstructionConfig {
    pub ratio_window: Period,
    /// First year taken from the annual MER record.
    pub splice_year: i32,
    /// Population growth rate near 1 CE, 1/yr.
    pub pop_growth: f64,
    pub space: SplineSpace,
    pub initial_wealth: InitialWealth,
}

impl Default for ReconstructionConfig {
    fn default() -> Self {
        Self {
            ratio_window: Period::new(1970, 1992).expect("valid window"),
            splice_year: 1970,
            pop_growth: 0.00059,
            space: SplineSpace::Log,
            initial_wealth: InitialWealth::Calibrated { factor: 1.0 },
        }
    }
}

/// Result of the full reconstruction pipeline.
#[derive(Debug, Clone)]
pub struct History {
    pub ratio: PppMerRatio,
    /// PPP benchmarks before the splice year, already divided by the ratio.
    pub knots: AnnualSeries,
    /// Annual MER GDP from the first benchmark year to the end of the record.
    pub gdp: AnnualSeries,
    pub wealth: WealthSeries,
    pub config: ReconstructionConfig,
}

pub fn reconstruct_history(
    ppp: &AnnualSeries,
    mer: &AnnualSeries,
    config: ReconstructionConfig,
) -> Result<History> {
    let ratio = estimate_ppp_mer_ratio(ppp, mer, config.ratio_window)?;
    let converted = ppp_to_mer(ppp, &ratio)?;
    let knot_points: Vec<_> = converted
        .points()
        .iter()
        .copied()
        .filter(|p| p.0 < config.splice_year)
        .collect();
    let knots = AnnualSeries::new(SeriesKind::GdpMer, converted.unit(), knot_points)?;
    let early = spline_infill(&knots, config.space)?;

    let mer = mer.to_unit(Unit::TrillionUsdPerYr)?;
    let late: Vec<_> = mer
        .points()
        .iter()
        .copied()
        .filter(|p| p.0 >= config.splice_year)
        .collect();
    match late.first() {
        Some(&(y, _)) if y == config.splice_year => {}
        _ => return Err(Error::MissingYear(config.splice_year)),
    }
    if early.last_year() != Some(config.splice_year - 1) {
        return Err(Error::Gap(early.last_year().unwrap_or(0), config.splice_year));
    }
    let mut points = early.points().to_vec();
    points.extend(late);
    let gdp = AnnualSeries::new(SeriesKind::GdpMer, Unit::TrillionUsdPerYr, points)?;

    let w1 = match config.initial_wealth {
        InitialWealth::Calibrated { factor } => {
            if !(factor > 0.0) {
                return Err(Error::param("w1 factor", "must be positive"));
            }
            calibrate_initial_wealth(&gdp, config.pop_growth)?.scale(factor)?
        }
        InitialWealth::Fixed(w) => Quantity::new(w, Unit::TrillionUsd)?,
    };
    let mut wealth = cumulative_production(&gdp, w1)?;
    wealth.method = format!(
        "{:?}-space natural spline below {}, PPP/MER ratio {} over {}, W(1) {:?}",
        config.space,
        config.splice_year,
        ratio.value(),
        ratio.window(),
        config.initial_wealth
    );
    Ok(History {
        ratio,
        knots,
        gdp,
        wealth,
        config,
    })
}
