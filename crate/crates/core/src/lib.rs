//! Cumulative production, energy scaling, growth identities and CO2
//! commitment projections.

pub mod carbon;
pub mod dataset;
pub mod error;
pub mod growth;
pub mod ingest;
pub mod projection;
pub mod reconstruction;
pub mod scaling;
pub mod series;
pub mod spline;
pub mod stats;
pub mod tables;
pub mod thermo;
pub mod units;

pub use error::{Error, Result};
pub use series::{AnnualSeries, Period, SeriesKind};
pub use units::{Quantity, Unit};
