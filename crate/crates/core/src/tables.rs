//! Period summaries of the scaling, growth, carbonization and sink-balance
//! estimates, with CSV and aligned-text rendering.

use std::fmt::Write as _;

use serde::Serialize;

use crate::carbon::{
    carbonization, equilibrium_coefficient_from_scaling, kaya_growth_decomposition,
    predicted_emissions_growth, CarbonCycleParams, CarbonizationEstimate, KayaComponents,
};
use crate::dataset::Analysis;
use crate::error::{Error, Result};
use crate::growth::{rates_table, GrowthMethod, RatesInputs, RatesRow};
use crate::scaling::{lambda_stats, ScalingEstimate};
use crate::series::Period;
use crate::units::{Quantity, Unit};

fn periods(spans: &[(i32, i32)]) -> Vec<Period> {
    spans
        .iter()
        .map(|&(a, b)| Period::new(a, b).expect("static period"))
        .collect()
}

pub fn scaling_periods() -> Vec<Period> {
    periods(&[
        (1980, 1990),
        (1990, 2000),
        (2000, 2010),
        (2010, 2017),
        (1980, 2010),
        (1980, 2017),
    ])
}

pub fn growth_periods() -> Vec<Period> {
    periods(&[(1980, 2010), (2010, 2017), (1980, 2017)])
}

/// Observed decadal sink rates, 1/yr, with the all-period average last.
pub fn sink_periods() -> Vec<(Period, f64)> {
    periods(&[(1980, 1990), (1990, 2000), (2000, 2010), (1980, 2010)])
        .into_iter()
        .zip([0.023, 0.024, 0.022, 0.023])
        .collect()
}

/// A labelled grid of numbers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub id: u8,
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<(String, Vec<f64>)>,
}

impl Table {
    /// Shortest round-trip decimal for every value.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("period");
        for c in &self.columns {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for (label, values) in &self.rows {
            out.push_str(label);
            for v in values {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|(label, values)| {
                std::iter::once(label.clone())
                    .chain(values.iter().map(|v| format!("{v:.3}")))
                    .collect()
            })
            .collect();
        let header: Vec<String> = std::iter::once("period".to_string())
            .chain(self.columns.iter().cloned())
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|i| {
                cells
                    .iter()
                    .map(|r| r[i].len())
                    .chain([header[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = format!("Table {}: {}\n", self.id, self.title);
        let line = |row: &[String]| {
            row.iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        out.push_str(&line(&header));
        out.push('\n');
        for r in &cells {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }

    pub fn row(&self, label: &str) -> Option<&[f64]> {
        self.rows
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, v)| v.as_slice())
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn value(&self, row: &str, column: &str) -> Option<f64> {
        Some(self.row(row)?[self.column(column)?])
    }
}

fn cols(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn scaling_rows(a: &Analysis) -> Result<Vec<ScalingEstimate>> {
    scaling_periods()
        .into_iter()
        .map(|p| lambda_stats(&a.lambda, p))
        .collect()
}

pub fn growth_rows(a: &Analysis, method: GrowthMethod) -> Result<Vec<RatesRow>> {
    let inp = RatesInputs {
        gdp: &a.history.gdp,
        energy: &a.data.energy,
        wealth: a.wealth(),
        lambda: a.lambda_full.mean,
    };
    rates_table(&inp, &growth_periods(), method)
}

/// Carbonization for each growth period, paired with the revised-Kaya prediction.
pub fn carbon_rows(
    a: &Analysis,
    params: &CarbonCycleParams,
    method: GrowthMethod,
) -> Result<Vec<(CarbonizationEstimate, f64)>> {
    let rates = growth_rows(a, method)?;
    rates
        .iter()
        .map(|r| {
            let est = carbonization(
                &a.data.emissions,
                &a.data.energy,
                a.wealth(),
                r.period,
                params,
                method,
            )?;
            Ok((est, predicted_emissions_growth(est.eta_c, r.lambda_eps)))
        })
        .collect()
}

pub fn kaya_rows(a: &Analysis, method: GrowthMethod) -> Result<Vec<(KayaComponents, f64)>> {
    let rates = growth_rows(a, method)?;
    rates
        .iter()
        .map(|r| {
            let k = kaya_growth_decomposition(
                &a.data.population,
                &a.history.gdp,
                &a.data.energy,
                &a.data.emissions,
                r.period,
                method,
            )?;
            Ok((k, r.predicted_eta_y))
        })
        .collect()
}

/// σ/(κ·λc) for each sink period, T$2010 per ppmv, using mean C/W in the period.
pub fn sink_rows(a: &Analysis, base: &CarbonCycleParams) -> Result<Vec<(Period, f64, f64)>> {
    sink_periods()
        .into_iter()
        .map(|(p, sigma)| {
            let params =
                CarbonCycleParams::new(sigma, base.kappa_a(), base.preindustrial())?;
            let est = carbonization(
                &a.data.emissions,
                &a.data.energy,
                a.wealth(),
                p,
                &params,
                GrowthMethod::EndpointLog,
            )?;
            let lc = Quantity::new(est.lambda_c, Unit::GtcPerYrPerQuadrillionUsd)?;
            let coef = equilibrium_coefficient_from_scaling(lc, &params)?;
            Ok((p, sigma, coef.value()))
        })
        .collect()
}

const PCT: f64 = 100.0;

pub fn build(id: u8, a: &Analysis, method: GrowthMethod) -> Result<Table> {
    let params = CarbonCycleParams::default();
    let table = match id {
        1 => Table {
            id,
            title: "E/W scaling ratio lambda (GW per trillion 2010 USD)".into(),
            columns: cols(&["lambda_mean", "lambda_std", "ci95_halfwidth", "ln_trend_per_yr", "n"]),
            rows: scaling_rows(a)?
                .into_iter()
                .map(|e| {
                    (
                        e.period.to_string(),
                        vec![
                            e.mean.value(),
                            e.std.value(),
                            e.ci95_halfwidth.value(),
                            e.trend_per_year,
                            e.n as f64,
                        ],
                    )
                })
                .collect(),
        },
        2 => Table {
            id,
            title: "Measured and derived growth rates (%/yr)".into(),
            columns: cols(&[
                "eta_w",
                "eta_e",
                "lambda_eps",
                "eta_i",
                "eta_eps",
                "eta_y",
                "lambda_eps_plus_eta_eps",
                "lambda_eps_period_lambda",
            ]),
            rows: growth_rows(a, method)?
                .into_iter()
                .map(|r| {
                    (
                        r.period.to_string(),
                        [
                            r.eta_w,
                            r.eta_e,
                            r.lambda_eps,
                            r.eta_i,
                            r.eta_eps,
                            r.eta_y,
                            r.predicted_eta_y,
                            r.lambda_eps_period,
                        ]
                        .map(|v| v * PCT)
                        .to_vec(),
                    )
                })
                .collect(),
        },
        3 => Table {
            id,
            title: "Emissions scaling and carbonization".into(),
            columns: cols(&[
                "c_w_gtc_per_pusd",
                "c_w_std",
                "kappa_c_w_ppmv_per_pusd",
                "kappa_c_w_std",
                "c_gtc_per_ej",
                "eta_c",
                "eta_emissions",
                "eta_c_plus_lambda_eps",
            ]),
            rows: carbon_rows(a, &params, method)?
                .into_iter()
                .map(|(e, pred)| {
                    (
                        e.period.to_string(),
                        vec![
                            e.lambda_c,
                            e.lambda_c_std,
                            e.kappa_lambda_c,
                            e.kappa_lambda_c_std,
                            e.c,
                            e.eta_c * PCT,
                            e.eta_emissions * PCT,
                            pred * PCT,
                        ],
                    )
                })
                .collect(),
        },
        4 => Table {
            id,
            title: "Population and per-capita GDP growth (%/yr)".into(),
            columns: cols(&["eta_p", "eta_g", "eta_p_plus_eta_g", "lambda_eps_plus_eta_eps", "kaya_residual"]),
            rows: kaya_rows(a, method)?
                .into_iter()
                .map(|(k, pred)| {
                    (
                        k.period.to_string(),
                        vec![
                            k.eta_p * PCT,
                            k.eta_g * PCT,
                            k.eta_p_plus_g() * PCT,
                            pred * PCT,
                            k.residual * PCT,
                        ],
                    )
                })
                .collect(),
        },
        5 => Table {
            id,
            title: "Committed production per ppmv, sigma/(kappa lambda c) (trillion 2010 USD per ppmv)".into(),
            columns: cols(&["sigma", "coefficient"]),
            rows: sink_rows(a, &params)?
                .into_iter()
                .map(|(p, s, c)| (p.to_string(), vec![s, c]))
                .collect(),
        },
        _ => return Err(Error::param("table", format!("no table {id}; choose 1-5"))),
    };
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        Table {
            id: 9,
            title: "t".into(),
            columns: cols(&["a", "b"]),
            rows: vec![("1980-1990".into(), vec![0.1, 2.0]), ("x".into(), vec![1e-20, -3.5])],
        }
    }

    #[test]
    fn csv_round_trips_numbers() {
        let csv = sample().to_csv();
        assert_eq!(csv, "period,a,b\n1980-1990,0.1,2\nx,0.00000000000000000001,-3.5\n");
        for line in csv.lines().skip(1) {
            for cell in line.split(',').skip(1) {
                let v: f64 = cell.parse().unwrap();
                assert!(v.is_finite());
            }
        }
    }

    #[test]
    fn text_is_aligned() {
        let text = sample().to_text();
        let lines: Vec<_> = text.lines().skip(1).collect();
        assert!(lines.windows(2).all(|w| w[0].len() == w[1].len()));
        assert_eq!(sample().value("x", "b"), Some(-3.5));
        assert_eq!(sample().value("x", "c"), None);
    }

    #[test]
    fn period_sets() {
        assert_eq!(scaling_periods().len(), 6);
        assert_eq!(growth_periods().len(), 3);
        assert!(sink_periods().iter().all(|(_, s)| (0.019..=0.027).contains(s)));
    }
}
