//! Year-indexed series and closed year periods.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::{convert, Quantity, Unit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    GdpMer,
    GdpPpp,
    Energy,
    Emissions,
    Concentration,
    Population,
    /// Cumulative production W(t).
    Wealth,
    /// Ratios, rates and other computed quantities; only finiteness is enforced.
    Derived,
}

impl SeriesKind {
    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::GdpMer => "gdp_mer",
            SeriesKind::GdpPpp => "gdp_ppp",
            SeriesKind::Energy => "energy",
            SeriesKind::Emissions => "emissions",
            SeriesKind::Concentration => "concentration",
            SeriesKind::Population => "population",
            SeriesKind::Wealth => "wealth",
            SeriesKind::Derived => "derived",
        }
    }

    pub fn requires_positive(self) -> bool {
        !matches!(self, SeriesKind::Derived)
    }

    pub fn accepts_unit(self, unit: Unit) -> bool {
        match self {
            SeriesKind::GdpMer | SeriesKind::GdpPpp => unit == Unit::TrillionUsdPerYr,
            SeriesKind::Energy => matches!(unit, Unit::ExajoulePerYr | Unit::Gigawatt),
            SeriesKind::Emissions => unit == Unit::GtcPerYr,
            SeriesKind::Concentration => unit == Unit::Ppmv,
            SeriesKind::Population => unit == Unit::Persons,
            SeriesKind::Wealth => unit == Unit::TrillionUsd,
            SeriesKind::Derived => true,
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "gdp_mer" => SeriesKind::GdpMer,
            "gdp_ppp" => SeriesKind::GdpPpp,
            "energy" => SeriesKind::Energy,
            "emissions" => SeriesKind::Emissions,
            "concentration" => SeriesKind::Concentration,
            "population" => SeriesKind::Population,
            "wealth" => SeriesKind::Wealth,
            "derived" => SeriesKind::Derived,
            other => return Err(Error::UnknownKind(other.to_string())),
        })
    }
}

/// Closed interval of calendar years, both endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Period {
    start: i32,
    end: i32,
}

impl Period {
    pub fn new(start: i32, end: i32) -> Result<Self> {
        if start >= end {
            return Err(Error::InvalidPeriod { start, end });
        }
        Ok(Self { start, end })
    }

    pub fn start(&self) -> i32 {
        self.start
    }

    pub fn end(&self) -> i32 {
        self.end
    }

    pub fn years(&self) -> i32 {
        self.end - self.start
    }

    pub fn contains(&self, year: i32) -> bool {
        (self.start..=self.end).contains(&year)
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.start, self.end)
    }
}

/// An immutable, strictly year-ordered series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnnualSeries {
    kind: SeriesKind,
    unit: Unit,
    points: Vec<(i32, f64)>,
}

impl AnnualSeries {
    pub fn new(kind: SeriesKind, unit: Unit, points: Vec<(i32, f64)>) -> Result<Self> {
        if !kind.accepts_unit(unit) {
            return Err(Error::KindUnitMismatch {
                kind: kind.to_string(),
                unit,
            });
        }
        for pair in points.windows(2) {
            let (prev, next) = (pair[0].0, pair[1].0);
            if next == prev {
                return Err(Error::DuplicateYear(next));
            }
            if next < prev {
                return Err(Error::UnorderedYears(next, prev));
            }
        }
        for &(year, value) in &points {
            if !value.is_finite() {
                return Err(Error::NonFinite(value));
            }
            if kind.requires_positive() && value <= 0.0 {
                return Err(Error::NonPositiveValue { year, value });
            }
        }
        Ok(Self { kind, unit, points })
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn points(&self) -> &[(i32, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn years(&self) -> impl Iterator<Item = i32> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.1)
    }

    pub fn first_year(&self) -> Option<i32> {
        self.points.first().map(|p| p.0)
    }

    pub fn last_year(&self) -> Option<i32> {
        self.points.last().map(|p| p.0)
    }

    pub fn get(&self, year: i32) -> Option<f64> {
        self.points
            .binary_search_by_key(&year, |p| p.0)
            .ok()
            .map(|i| self.points[i].1)
    }

    pub fn value_at(&self, year: i32) -> Result<f64> {
        self.get(year).ok_or(Error::MissingYear(year))
    }

    pub fn quantity_at(&self, year: i32) -> Result<Quantity> {
        Quantity::new(self.value_at(year)?, self.unit)
    }

    /// Points within the closed period.
    pub fn slice(&self, p: Period) -> Result<AnnualSeries> {
        let points: Vec<_> = self
            .points
            .iter()
            .copied()
            .filter(|(y, _)| p.contains(*y))
            .collect();
        if points.is_empty() {
            return Err(Error::EmptySlice {
                start: p.start(),
                end: p.end(),
            });
        }
        Ok(AnnualSeries {
            kind: self.kind,
            unit: self.unit,
            points,
        })
    }

    /// Same series expressed in another unit of the same dimension.
    pub fn to_unit(&self, unit: Unit) -> Result<AnnualSeries> {
        let points = self
            .points
            .iter()
            .map(|&(y, v)| Ok((y, convert(Quantity::new(v, self.unit)?, unit)?.value())))
            .collect::<Result<Vec<_>>>()?;
        AnnualSeries::new(self.kind, unit, points)
    }

    /// Pairs `(year, a, b)` for every year present in both series.
    pub fn zip_years<'a>(&'a self, other: &'a AnnualSeries) -> Vec<(i32, f64, f64)> {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.points.len() && j < other.points.len() {
            let (ya, va) = self.points[i];
            let (yb, vb) = other.points[j];
            match ya.cmp(&yb) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push((ya, va, vb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// True when every year between first and last is present.
    pub fn is_contiguous(&self) -> bool {
        self.points.windows(2).all(|w| w[1].0 == w[0].0 + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gdp(years: std::ops::RangeInclusive<i32>) -> AnnualSeries {
        let points = years.map(|y| (y, 10.0 + f64::from(y - 1970))).collect();
        AnnualSeries::new(SeriesKind::GdpMer, Unit::TrillionUsdPerYr, points).unwrap()
    }

    #[test]
    fn slice_1980_2017_has_38_points() {
        let s = gdp(1970..=2017);
        let before = s.clone();
        let out = s.slice(Period::new(1980, 2017).unwrap()).unwrap();
        assert_eq!(out.len(), 38);
        assert_eq!(out.kind(), SeriesKind::GdpMer);
        assert_eq!(out.unit(), Unit::TrillionUsdPerYr);
        assert_eq!(s, before);
    }

    #[test]
    fn slice_full_range_is_identity() {
        let s = gdp(1970..=2017);
        assert_eq!(s.slice(Period::new(1970, 2017).unwrap()).unwrap(), s);
    }

    #[test]
    fn slice_disjoint_is_empty() {
        let s = gdp(1970..=2017);
        assert!(matches!(
            s.slice(Period::new(2020, 2030).unwrap()),
            Err(Error::EmptySlice { .. })
        ));
    }

    #[test]
    fn period_requires_order() {
        assert!(Period::new(2010, 2010).is_err());
        assert!(Period::new(2011, 2010).is_err());
        assert_eq!(Period::new(1980, 1990).unwrap().years(), 10);
    }

    #[test]
    fn construction_invariants() {
        let u = Unit::TrillionUsdPerYr;
        assert!(matches!(
            AnnualSeries::new(SeriesKind::GdpMer, u, vec![(1, 1.0), (1, 2.0)]),
            Err(Error::DuplicateYear(1))
        ));
        assert!(matches!(
            AnnualSeries::new(SeriesKind::GdpMer, u, vec![(2, 1.0), (1, 2.0)]),
            Err(Error::UnorderedYears(1, 2))
        ));
        assert!(matches!(
            AnnualSeries::new(SeriesKind::GdpMer, u, vec![(1, -3.0)]),
            Err(Error::NonPositiveValue { year: 1, .. })
        ));
        assert!(AnnualSeries::new(SeriesKind::Derived, u, vec![(1, -3.0)]).is_ok());
        assert!(matches!(
            AnnualSeries::new(SeriesKind::Energy, Unit::Ppmv, vec![(1, 1.0)]),
            Err(Error::KindUnitMismatch { .. })
        ));
    }

    #[test]
    fn energy_unit_change() {
        let e = AnnualSeries::new(SeriesKind::Energy, Unit::Gigawatt, vec![(2000, 1000.0)]).unwrap();
        let ej = e.to_unit(Unit::ExajoulePerYr).unwrap();
        assert!((ej.value_at(2000).unwrap() - 31.5576).abs() < 1e-9);
    }

    #[test]
    fn zip_intersects_years() {
        let a = gdp(1970..=1975);
        let b = gdp(1973..=1980);
        let z = a.zip_years(&b);
        assert_eq!(z.iter().map(|t| t.0).collect::<Vec<_>>(), vec![1973, 1974, 1975]);
    }
}
