//! Loading observational series from delimited text and checking them.
//!
//! Input files are UTF-8 CSV with a header row and one row per year. A TOML
//! manifest binds named series to files:
//!
//! ```toml
//! [series.energy]
//! path = "energy.csv"          # relative to the manifest
//! kind = "energy"
//! unit = "EJ/yr"               # unit after scaling
//! year_column = "year"
//! value_column = "consumption_quad_btu"
//! scale = 1.05506              # multiplier applied on load
//! contiguous = true            # optional; false for sparse benchmark series
//! ```
//!
//! Loading never interpolates. Missing years are reported by [`validate`].

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{AnnualSeries, Period, SeriesKind};
use crate::stats;
use crate::units::Unit;

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct DataSourceDescriptor {
    pub path: PathBuf,
    pub kind: SeriesKind,
    pub unit: Unit,
    pub year_column: String,
    pub value_column: String,
    pub scale: f64,
    #[serde(default = "default_true")]
    pub contiguous: bool,
}

impl DataSourceDescriptor {
    pub fn check(&self) -> Result<()> {
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::Manifest(format!(
                "{}: scale must be positive, got {}",
                self.path.display(),
                self.scale
            )));
        }
        if self.year_column.trim().is_empty() || self.value_column.trim().is_empty() {
            return Err(Error::Manifest(format!(
                "{}: column names must be non-empty",
                self.path.display()
            )));
        }
        if !self.kind.accepts_unit(self.unit) {
            return Err(Error::KindUnitMismatch {
                kind: self.kind.to_string(),
                unit: self.unit,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct Manifest {
    pub series: BTreeMap<String, DataSourceDescriptor>,
}

impl Manifest {
    /// Reads a manifest and resolves every series path against its directory.
    pub fn load(path: &Path) -> Result<Manifest> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut manifest: Manifest =
            toml::from_str(&text).map_err(|e| Error::Manifest(e.to_string()))?;
        let base = path.parent().unwrap_or_else(|| Path::new(""));
        for d in manifest.series.values_mut() {
            if d.path.is_relative() {
                d.path = base.join(&d.path);
            }
            d.check()?;
        }
        Ok(manifest)
    }

    pub fn get(&self, name: &str) -> Result<&DataSourceDescriptor> {
        self.series
            .get(name)
            .ok_or_else(|| Error::Manifest(format!("no series named `{name}`")))
    }
}

/// Reads one series, sorted by year, values multiplied by the descriptor scale.
pub fn load_series(d: &DataSourceDescriptor) -> Result<AnnualSeries> {
    d.check()?;
    let path = d.path.clone();
    let file = fs::File::open(&path).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let headers = reader
        .headers()
        .map_err(|e| Error::Parse {
            path: path.clone(),
            row: 1,
            message: e.to_string(),
        })?
        .clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Schema {
                path: path.clone(),
                column: name.to_string(),
            })
    };
    let year_idx = column(&d.year_column)?;
    let value_idx = column(&d.value_column)?;

    let mut points = Vec::new();
    for (i, record) in reader.records().enumerate() {
        // header is line 1
        let row = i + 2;
        let parse_err = |message: String| Error::Parse {
            path: path.clone(),
            row,
            message,
        };
        let record = record.map_err(|e| parse_err(e.to_string()))?;
        let year_text = record
            .get(year_idx)
            .ok_or_else(|| parse_err("missing year field".into()))?;
        let value_text = record
            .get(value_idx)
            .ok_or_else(|| parse_err("missing value field".into()))?;
        let year: i32 = year_text
            .parse()
            .map_err(|_| parse_err(format!("invalid year `{year_text}`")))?;
        let value: f64 = value_text
            .parse()
            .map_err(|_| parse_err(format!("invalid value `{value_text}`")))?;
        if !value.is_finite() {
            return Err(parse_err(format!("non-finite value `{value_text}`")));
        }
        if d.kind.requires_positive() && value <= 0.0 {
            return Err(Error::Domain {
                path: path.clone(),
                row,
                value,
            });
        }
        points.push((year, value * d.scale));
    }
    if points.is_empty() {
        return Err(Error::Parse {
            path,
            row: 0,
            message: "no data rows".into(),
        });
    }
    points.sort_by_key(|p| p.0);
    AnnualSeries::new(d.kind, d.unit, points)
}

/// Writes `year,value` rows with shortest round-trip number formatting.
pub fn write_series<W: Write>(s: &AnnualSeries, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Write(e.to_string());
    w.write_record(["year", "value"]).map_err(io)?;
    for &(year, value) in s.points() {
        w.write_record([year.to_string(), format!("{value}")])
            .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Write(e.to_string()))?;
    Ok(())
}

/// Descriptor for a file produced by [`write_series`].
pub fn canonical_descriptor(path: PathBuf, kind: SeriesKind, unit: Unit) -> DataSourceDescriptor {
    DataSourceDescriptor {
        path,
        kind,
        unit,
        year_column: "year".into(),
        value_column: "value".into(),
        scale: 1.0,
        contiguous: true,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    /// Inclusive ranges of missing interior years.
    pub gaps: Vec<(i32, i32)>,
    pub nonpositive_count: usize,
    pub duplicate_years: Vec<i32>,
    pub coverage: Option<Period>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.gaps.is_empty() && self.nonpositive_count == 0 && self.duplicate_years.is_empty()
    }
}

/// Checks raw `(year, value)` rows without constructing a series.
pub fn validate_points(
    kind: SeriesKind,
    points: &[(i32, f64)],
    require_contiguous: bool,
) -> ValidationReport {
    let mut sorted: Vec<_> = points.to_vec();
    sorted.sort_by_key(|p| p.0);
    let mut report = ValidationReport::default();
    if kind.requires_positive() {
        report.nonpositive_count = sorted.iter().filter(|p| !(p.1 > 0.0)).count();
    }
    for w in sorted.windows(2) {
        let (a, b) = (w[0].0, w[1].0);
        if a == b {
            if report.duplicate_years.last() != Some(&a) {
                report.duplicate_years.push(a);
            }
        } else if require_contiguous && b > a + 1 {
            report.gaps.push((a + 1, b - 1));
        }
    }
    if let (Some(first), Some(last)) = (sorted.first(), sorted.last()) {
        report.coverage = Period::new(first.0, last.0).ok();
    }
    report
}

pub fn validate(s: &AnnualSeries, require_contiguous: bool) -> ValidationReport {
    validate_points(s.kind(), s.points(), require_contiguous)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioStats {
    pub mean: f64,
    pub std: f64,
    pub n: usize,
}

/// Mean and sample standard deviation of annual production/consumption ratios.
pub fn production_consumption_ratio(
    production: &AnnualSeries,
    consumption: &AnnualSeries,
    p: Period,
) -> Result<RatioStats> {
    let prod = production.slice(p)?;
    let cons = consumption.slice(p)?.to_unit(prod.unit())?;
    let ratios: Vec<f64> = prod.zip_years(&cons).iter().map(|t| t.1 / t.2).collect();
    if ratios.is_empty() {
        return Err(Error::EmptySlice {
            start: p.start(),
            end: p.end(),
        });
    }
    Ok(RatioStats {
        mean: stats::mean(&ratios),
        std: stats::sample_std(&ratios),
        n: ratios.len(),
    })
}
