//! The bundled set of observed series and the derived history built from it.

use std::path::Path;

use crate::error::Result;
use crate::ingest::{load_series, Manifest};
use crate::reconstruction::{reconstruct_history, History, ReconstructionConfig};
use crate::scaling::{lambda_series, lambda_stats, ScalingEstimate};
use crate::series::{AnnualSeries, Period};

pub const SERIES_NAMES: [&str; 6] = [
    "gdp_mer",
    "gdp_ppp",
    "energy",
    "emissions",
    "concentration",
    "population",
];

#[derive(Debug, Clone)]
pub struct Dataset {
    pub gdp_mer: AnnualSeries,
    pub gdp_ppp: AnnualSeries,
    pub energy: AnnualSeries,
    pub emissions: AnnualSeries,
    pub concentration: AnnualSeries,
    pub population: AnnualSeries,
}

impl Dataset {
    pub fn from_manifest(m: &Manifest) -> Result<Self> {
        let get = |name: &str| -> Result<AnnualSeries> {
            load_series(m.get(name)?)
        };
        Ok(Self {
            gdp_mer: get("gdp_mer")?,
            gdp_ppp: get("gdp_ppp")?,
            energy: get("energy")?,
            emissions: get("emissions")?,
            concentration: get("concentration")?,
            population: get("population")?,
        })
    }

    pub fn load(manifest_path: impl AsRef<Path>) -> Result<Self> {
        Self::from_manifest(&Manifest::load(manifest_path.as_ref())?)
    }
}

/// Observations plus the reconstructed history and the energy scaling ratio.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub data: Dataset,
    pub history: History,
    /// E/W per year, GW per T$2010.
    pub lambda: AnnualSeries,
    /// Statistics over `full_period`.
    pub lambda_full: ScalingEstimate,
    pub full_period: Period,
}

impl Analysis {
    pub fn new(data: Dataset, config: ReconstructionConfig) -> Result<Self> {
        let history = reconstruct_history(&data.gdp_ppp, &data.gdp_mer, config)?;
        let lambda = lambda_series(&data.energy, &history.wealth)?;
        let full_period = Period::new(
            lambda.first_year().unwrap_or(0),
            lambda.last_year().unwrap_or(0),
        )?;
        let lambda_full = lambda_stats(&lambda, full_period)?;
        Ok(Self {
            data,
            history,
            lambda,
            lambda_full,
            full_period,
        })
    }

    pub fn wealth(&self) -> &AnnualSeries {
        self.history.wealth.series()
    }
}
