//! Unit tags and checked quantities.
//!
//! Every unit belongs to one dimension and carries a linear factor to that
//! dimension's SI-like base. Conversions are only allowed within a dimension;
//! conversions that need a physical parameter (dissipation time, atmospheric
//! mass factor) go through [`convert_with`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SECONDS_PER_DAY: f64 = 86_400.0;
pub const DAYS_PER_YEAR: f64 = 365.25;
pub const SECONDS_PER_YEAR: f64 = SECONDS_PER_DAY * DAYS_PER_YEAR;

/// EJ/yr carried by one gigawatt of continuous power.
pub const EJ_PER_YR_PER_GW: f64 = 1e9 * SECONDS_PER_YEAR / 1e18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Unit {
    #[serde(rename = "T$2010")]
    TrillionUsd,
    #[serde(rename = "P$2010")]
    QuadrillionUsd,
    #[serde(rename = "T$2010/yr")]
    TrillionUsdPerYr,
    #[serde(rename = "EJ/yr")]
    ExajoulePerYr,
    #[serde(rename = "GW")]
    Gigawatt,
    #[serde(rename = "W")]
    Watt,
    #[serde(rename = "GtC/yr")]
    GtcPerYr,
    #[serde(rename = "GtC/EJ")]
    GtcPerEj,
    #[serde(rename = "ppmv")]
    Ppmv,
    #[serde(rename = "ppmv/yr")]
    PpmvPerYr,
    #[serde(rename = "ppmv/GtC")]
    PpmvPerGtc,
    #[serde(rename = "1/yr")]
    PerYear,
    #[serde(rename = "1/s")]
    PerSecond,
    #[serde(rename = "yr")]
    Year,
    #[serde(rename = "s")]
    Second,
    #[serde(rename = "persons")]
    Persons,
    #[serde(rename = "J")]
    Joule,
    #[serde(rename = "J/$")]
    JoulePerUsd,
    #[serde(rename = "GW per T$2010")]
    GwPerTrillionUsd,
    #[serde(rename = "EJ/yr per T$2010")]
    EjPerYrPerTrillionUsd,
    #[serde(rename = "T$2010 per ppmv")]
    TrillionUsdPerPpmv,
    #[serde(rename = "T$2010/EJ")]
    TrillionUsdPerEj,
    #[serde(rename = "GtC/yr per P$2010")]
    GtcPerYrPerQuadrillionUsd,
    #[serde(rename = "ppmv/yr per P$2010")]
    PpmvPerYrPerQuadrillionUsd,
    #[serde(rename = "dimensionless")]
    Dimensionless,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dimension {
    Money,
    MoneyFlow,
    Power,
    CarbonFlow,
    CarbonIntensity,
    Concentration,
    ConcentrationRate,
    AirborneFactor,
    Rate,
    Time,
    Count,
    Energy,
    EnergyPerMoney,
    PowerPerMoney,
    MoneyPerConcentration,
    MoneyPerEnergy,
    CarbonFlowPerMoney,
    ConcentrationRatePerMoney,
    Pure,
}

impl Unit {
    pub const ALL: [Unit; 25] = [
        Unit::TrillionUsd,
        Unit::QuadrillionUsd,
        Unit::TrillionUsdPerYr,
        Unit::ExajoulePerYr,
        Unit::Gigawatt,
        Unit::Watt,
        Unit::GtcPerYr,
        Unit::GtcPerEj,
        Unit::Ppmv,
        Unit::PpmvPerYr,
        Unit::PpmvPerGtc,
        Unit::PerYear,
        Unit::PerSecond,
        Unit::Year,
        Unit::Second,
        Unit::Persons,
        Unit::Joule,
        Unit::JoulePerUsd,
        Unit::GwPerTrillionUsd,
        Unit::EjPerYrPerTrillionUsd,
        Unit::TrillionUsdPerPpmv,
        Unit::TrillionUsdPerEj,
        Unit::GtcPerYrPerQuadrillionUsd,
        Unit::PpmvPerYrPerQuadrillionUsd,
        Unit::Dimensionless,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Unit::TrillionUsd => "T$2010",
            Unit::QuadrillionUsd => "P$2010",
            Unit::TrillionUsdPerYr => "T$2010/yr",
            Unit::ExajoulePerYr => "EJ/yr",
            Unit::Gigawatt => "GW",
            Unit::Watt => "W",
            Unit::GtcPerYr => "GtC/yr",
            Unit::GtcPerEj => "GtC/EJ",
            Unit::Ppmv => "ppmv",
            Unit::PpmvPerYr => "ppmv/yr",
            Unit::PpmvPerGtc => "ppmv/GtC",
            Unit::PerYear => "1/yr",
            Unit::PerSecond => "1/s",
            Unit::Year => "yr",
            Unit::Second => "s",
            Unit::Persons => "persons",
            Unit::Joule => "J",
            Unit::JoulePerUsd => "J/$",
            Unit::GwPerTrillionUsd => "GW per T$2010",
            Unit::EjPerYrPerTrillionUsd => "EJ/yr per T$2010",
            Unit::TrillionUsdPerPpmv => "T$2010 per ppmv",
            Unit::TrillionUsdPerEj => "T$2010/EJ",
            Unit::GtcPerYrPerQuadrillionUsd => "GtC/yr per P$2010",
            Unit::PpmvPerYrPerQuadrillionUsd => "ppmv/yr per P$2010",
            Unit::Dimensionless => "dimensionless",
        }
    }

    // (dimension, factor to the dimension's base unit)
    fn base(self) -> (Dimension, f64) {
        use Dimension as D;
        match self {
            Unit::TrillionUsd => (D::Money, 1e12),
            Unit::QuadrillionUsd => (D::Money, 1e15),
            Unit::TrillionUsdPerYr => (D::MoneyFlow, 1.0),
            Unit::Watt => (D::Power, 1.0),
            Unit::Gigawatt => (D::Power, 1e9),
            Unit::ExajoulePerYr => (D::Power, 1e18 / SECONDS_PER_YEAR),
            Unit::GtcPerYr => (D::CarbonFlow, 1.0),
            Unit::GtcPerEj => (D::CarbonIntensity, 1.0),
            Unit::Ppmv => (D::Concentration, 1.0),
            Unit::PpmvPerYr => (D::ConcentrationRate, 1.0),
            Unit::PpmvPerGtc => (D::AirborneFactor, 1.0),
            Unit::PerSecond => (D::Rate, 1.0),
            Unit::PerYear => (D::Rate, 1.0 / SECONDS_PER_YEAR),
            Unit::Second => (D::Time, 1.0),
            Unit::Year => (D::Time, SECONDS_PER_YEAR),
            Unit::Persons => (D::Count, 1.0),
            Unit::Joule => (D::Energy, 1.0),
            Unit::JoulePerUsd => (D::EnergyPerMoney, 1.0),
            // base: W per $
            Unit::GwPerTrillionUsd => (D::PowerPerMoney, 1e9 / 1e12),
            Unit::EjPerYrPerTrillionUsd => (D::PowerPerMoney, 1e18 / SECONDS_PER_YEAR / 1e12),
            Unit::TrillionUsdPerPpmv => (D::MoneyPerConcentration, 1.0),
            Unit::TrillionUsdPerEj => (D::MoneyPerEnergy, 1.0),
            Unit::GtcPerYrPerQuadrillionUsd => (D::CarbonFlowPerMoney, 1.0),
            Unit::PpmvPerYrPerQuadrillionUsd => (D::ConcentrationRatePerMoney, 1.0),
            Unit::Dimensionless => (D::Pure, 1.0),
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Unit::ALL
            .iter()
            .copied()
            .find(|u| u.tag() == s)
            .ok_or_else(|| Error::UnknownUnit(s.to_string()))
    }
}

/// A finite value tagged with its unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quantity {
    value: f64,
    unit: Unit,
}

impl Quantity {
    pub fn new(value: f64, unit: Unit) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::NonFinite(value));
        }
        Ok(Self { value, unit })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn checked_add(self, other: Quantity) -> Result<Quantity> {
        let other = convert(other, self.unit)?;
        Quantity::new(self.value + other.value, self.unit)
    }

    pub fn checked_sub(self, other: Quantity) -> Result<Quantity> {
        let other = convert(other, self.unit)?;
        Quantity::new(self.value - other.value, self.unit)
    }

    pub fn scale(self, factor: f64) -> Result<Quantity> {
        Quantity::new(self.value * factor, self.unit)
    }

    /// Value expressed in `unit`, for callers that need a bare number.
    pub fn value_in(&self, unit: Unit) -> Result<f64> {
        convert(*self, unit).map(|q| q.value)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.unit)
    }
}

/// Context-free conversion between units of the same dimension.
pub fn convert(q: Quantity, target: Unit) -> Result<Quantity> {
    if q.unit == target {
        return Ok(q);
    }
    let (from_dim, from_factor) = q.unit.base();
    let (to_dim, to_factor) = target.base();
    if from_dim != to_dim {
        return Err(Error::IncompatibleUnits {
            from: q.unit,
            to: target,
        });
    }
    Quantity::new(q.value * from_factor / to_factor, target)
}

/// Physical parameters that bridge otherwise incompatible dimensions.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ConversionContext {
    /// Dissipation time in seconds; bridges power-per-dollar and energy-per-dollar.
    pub tau_d: Option<f64>,
    /// ppmv per GtC; bridges carbon flows and concentration rates.
    pub kappa_a: Option<f64>,
}

/// Conversion that may use the physical parameters in `ctx`.
pub fn convert_with(q: Quantity, target: Unit, ctx: &ConversionContext) -> Result<Quantity> {
    match convert(q, target) {
        Ok(out) => return Ok(out),
        Err(Error::IncompatibleUnits { .. }) => {}
        Err(e) => return Err(e),
    }
    let incompatible = || Error::IncompatibleUnits {
        from: q.unit,
        to: target,
    };
    let (from_dim, _) = q.unit.base();
    let (to_dim, _) = target.base();
    use Dimension as D;
    match (from_dim, to_dim) {
        (D::PowerPerMoney, D::EnergyPerMoney) => {
            let tau = ctx.tau_d.ok_or_else(incompatible)?;
            let w_per_usd = convert(q, Unit::GwPerTrillionUsd)?.value * 1e-3;
            Quantity::new(w_per_usd * tau, target)
        }
        (D::EnergyPerMoney, D::PowerPerMoney) => {
            let tau = ctx.tau_d.ok_or_else(incompatible)?;
            let gw_per_t = q.value / tau * 1e3;
            convert(Quantity::new(gw_per_t, Unit::GwPerTrillionUsd)?, target)
        }
        (D::CarbonFlow, D::ConcentrationRate)
        | (D::CarbonFlowPerMoney, D::ConcentrationRatePerMoney) => {
            let kappa = ctx.kappa_a.ok_or_else(incompatible)?;
            Quantity::new(q.value * kappa, target)
        }
        (D::ConcentrationRate, D::CarbonFlow)
        | (D::ConcentrationRatePerMoney, D::CarbonFlowPerMoney) => {
            let kappa = ctx.kappa_a.ok_or_else(incompatible)?;
            Quantity::new(q.value / kappa, target)
        }
        _ => Err(incompatible()),
    }
}
