use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use inertia_core::carbon::CarbonCycleParams;
use inertia_core::dataset::{Analysis, Dataset};
use inertia_core::growth::GrowthMethod;
use inertia_core::ingest::{load_series, validate, write_series, Manifest};
use inertia_core::projection::{
    committed_curve, halving_time, historical_spin_up, preset_scenario, run_scenario,
    steady_state_commitment, wealth_grid, Preset, Scenario, Snapshot, Trajectory,
    TrajectoryPoint,
};
use inertia_core::reconstruction::{
    accumulated_share, initial_share, InitialWealth, ReconstructionConfig, SplineSpace,
};
use inertia_core::scaling::{lambda_stats, sensitivity_to_w1};
use inertia_core::series::AnnualSeries;
use inertia_core::tables::{self, scaling_periods};
use inertia_core::{Quantity, Unit};
use serde_json::json;

use crate::run_manifest::Recorder;
use crate::{
    CliError, IngestArgs, Method, ProjectArgs, ReconstructArgs, ReconstructionOpts, ReportArgs,
    Space, TablesArgs,
};

type Result<T> = std::result::Result<T, CliError>;

const SPIN_UP_FROM: i32 = 1959;

fn config(o: &ReconstructionOpts) -> ReconstructionConfig {
    ReconstructionConfig {
        splice_year: o.splice_year,
        pop_growth: o.pop_growth,
        space: match o.space {
            Space::Log => SplineSpace::Log,
            Space::Linear => SplineSpace::Linear,
        },
        initial_wealth: InitialWealth::Calibrated {
            factor: o.w1_factor,
        },
        ..ReconstructionConfig::default()
    }
}

fn config_json(o: &ReconstructionOpts) -> serde_json::Value {
    json!({
        "space": format!("{:?}", o.space).to_lowercase(),
        "w1_factor": o.w1_factor,
        "pop_growth": o.pop_growth,
        "splice_year": o.splice_year,
    })
}

fn method(m: Method) -> GrowthMethod {
    match m {
        Method::EndpointLog => GrowthMethod::EndpointLog,
        Method::OlsLog => GrowthMethod::OlsLog,
    }
}

/// Loads the manifest and records it and every referenced file as inputs.
fn load(manifest: &Path, rec: &mut Recorder) -> Result<(Manifest, Dataset)> {
    let m = Manifest::load(manifest)?;
    rec.input(manifest)?;
    let data = Dataset::from_manifest(&m)?;
    for d in m.series.values() {
        rec.input(&d.path)?;
    }
    Ok((m, data))
}

fn analysis(manifest: &Path, opts: &ReconstructionOpts, rec: &mut Recorder) -> Result<Analysis> {
    let (_, data) = load(manifest, rec)?;
    Ok(Analysis::new(data, config(opts))?)
}

fn series_csv(s: &AnnualSeries) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_series(s, &mut buf)?;
    Ok(buf)
}

fn json_bytes(v: &impl serde::Serialize) -> Result<Vec<u8>> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    Ok(text.into_bytes())
}

pub fn ingest(a: &IngestArgs) -> Result<()> {
    let mut rec = Recorder::new(json!({ "manifest": a.data.manifest.display().to_string() }));
    let m = Manifest::load(&a.data.manifest)?;
    rec.input(&a.data.manifest)?;
    let mut reports = BTreeMap::new();
    let mut failures = Vec::new();
    for (name, d) in &m.series {
        let s = load_series(d)?;
        rec.input(&d.path)?;
        let report = validate(&s, d.contiguous);
        if !report.is_clean() {
            failures.push(format!("{name}: {report:?}"));
        }
        rec.write(&a.out.join(format!("{name}.csv")), &series_csv(&s)?)?;
        reports.insert(name.clone(), report);
    }
    rec.write(&a.out.join("validation.json"), &json_bytes(&reports)?)?;
    rec.finish(&a.out.join("ingest.manifest.json"))?;
    if failures.is_empty() {
        println!("{} series written to {}", m.series.len(), a.out.display());
        Ok(())
    } else {
        Err(CliError::Validation(failures.join("; ")))
    }
}

fn shares(an: &Analysis) -> Result<serde_json::Value> {
    let w = &an.history.wealth;
    let last = an.wealth().last_year().unwrap_or(0);
    Ok(json!({
        "reference_year": last,
        "initial_over_reference": initial_share(w, last)?,
        "years_1_to_1000": accumulated_share(w, 1, 1000, last)?,
        "years_1980_to_reference": accumulated_share(w, 1980, last, last)?,
    }))
}

pub fn reconstruct(a: &ReconstructArgs) -> Result<()> {
    let mut rec = Recorder::new(json!({
        "manifest": a.data.manifest.display().to_string(),
        "reconstruction": config_json(&a.opts),
    }));
    let an = analysis(&a.data.manifest, &a.opts, &mut rec)?;
    rec.write(&a.out.join("gdp_annual.csv"), &series_csv(&an.history.gdp)?)?;
    rec.write(&a.out.join("wealth.csv"), &series_csv(an.wealth())?)?;
    rec.write(&a.out.join("lambda.csv"), &series_csv(&an.lambda)?)?;
    let summary = json!({
        "ppp_mer_ratio": an.history.ratio.value(),
        "ratio_window": an.history.ratio.window().to_string(),
        "initial_wealth_trillion_usd2010": an.history.wealth.w1().value(),
        "method": an.history.wealth.method(),
        "shares": shares(&an)?,
    });
    rec.write(&a.out.join("reconstruction.json"), &json_bytes(&summary)?)?;
    rec.finish(&a.out.join("reconstruct.manifest.json"))?;
    println!(
        "ratio {}  W(1) {} T$2010  W({}) {} T$2010",
        an.history.ratio.value(),
        an.history.wealth.w1().value(),
        an.wealth().last_year().unwrap_or(0),
        an.wealth().values().last().unwrap_or(f64::NAN)
    );
    Ok(())
}

pub fn calibrate(a: &ReconstructArgs) -> Result<()> {
    let mut rec = Recorder::new(json!({
        "manifest": a.data.manifest.display().to_string(),
        "reconstruction": config_json(&a.opts),
    }));
    let an = analysis(&a.data.manifest, &a.opts, &mut rec)?;
    let mut csv = String::from("period,w1_factor,mean,std,ci95_halfwidth,ln_trend_per_yr,n\n");
    let mut text = String::new();
    for factor in [0.5, 1.0, 2.0] {
        for p in scaling_periods() {
            let e = if factor == 1.0 {
                lambda_stats(&an.lambda, p)?
            } else {
                sensitivity_to_w1(
                    &an.history.gdp,
                    &an.data.energy,
                    an.history.wealth.w1(),
                    factor,
                    p,
                )?
            };
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{},{}",
                p,
                factor,
                e.mean.value(),
                e.std.value(),
                e.ci95_halfwidth.value(),
                e.trend_per_year,
                e.n
            );
            if p == an.full_period {
                let _ = writeln!(
                    text,
                    "W(1) x{factor}: lambda {:.3} +/- {:.3} GW per T$2010 over {p}",
                    e.mean.value(),
                    e.std.value()
                );
            }
        }
    }
    rec.write(&a.out.join("calibration.csv"), csv.as_bytes())?;
    rec.finish(&a.out.join("calibrate.manifest.json"))?;
    print!("{text}");
    Ok(())
}

pub fn tables(a: &TablesArgs) -> Result<()> {
    let m = method(a.method);
    let mut rec = Recorder::new(json!({
        "manifest": a.data.manifest.display().to_string(),
        "reconstruction": config_json(&a.opts),
        "table": a.table,
        "method": m.name(),
    }));
    let an = analysis(&a.data.manifest, &a.opts, &mut rec)?;
    let t = tables::build(a.table, &an, m)?;
    rec.write(&a.out.join(format!("table{}.csv", a.table)), t.to_csv().as_bytes())?;
    rec.write(&a.out.join(format!("table{}.txt", a.table)), t.to_text().as_bytes())?;
    rec.finish(&a.out.join(format!("table{}.manifest.json", a.table)))?;
    print!("{}", t.to_text());
    Ok(())
}

fn scenario(a: &ProjectArgs, an: &Analysis) -> Result<Scenario> {
    let preset: Preset = a.preset.parse()?;
    let snap = Snapshot {
        wealth: an.wealth(),
        energy: &an.data.energy,
        emissions: &an.data.emissions,
        concentration: &an.data.concentration,
    };
    let mut s = preset_scenario(preset, &snap)?;
    if let Some(sigma) = a.sigma {
        let p = s.carbon_params;
        s.carbon_params = CarbonCycleParams::new(sigma, p.kappa_a(), p.preindustrial())?;
    }
    if a.spin_up {
        s.delta0 = historical_spin_up(
            &an.data.concentration,
            &an.data.emissions,
            SPIN_UP_FROM,
            preset.year(),
            &s.carbon_params,
            a.dt,
        )?;
    }
    s.eta_c = a.eta_c;
    if let Some(eta_w) = a.eta_w {
        s.eta_w = eta_w;
    }
    s.horizon_years = a.horizon;
    s.dt = a.dt;
    s.validate()?;
    Ok(s)
}

const TRAJECTORY_HEADER: &str = "year,wealth,energy_gw,carbonization,emissions_gtc,delta_ppmv,\
committed_delta_ppmv,concentration_ppmv,committed_concentration_ppmv\n";

fn trajectory_csv(points: &[TrajectoryPoint], every_step: bool) -> String {
    let mut out = String::from(TRAJECTORY_HEADER);
    for p in points {
        if !every_step && p.year.fract() != 0.0 {
            continue;
        }
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            p.year,
            p.wealth,
            p.energy,
            p.carbonization,
            p.emissions,
            p.delta,
            p.committed_delta,
            p.concentration,
            p.committed_concentration
        );
    }
    out
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "trajectory".into());
    path.with_file_name(format!("{stem}{suffix}"))
}

fn milestones(tr: &Trajectory) -> String {
    let first = &tr.points[0];
    let mut s = format!(
        "start {}: concentration {:.1} ppmv, committed {:.1} ppmv\n",
        first.year, first.concentration, first.committed_concentration
    );
    match tr.committed_crossing(550.0) {
        Some(t) => {
            let _ = writeln!(s, "committed concentration reaches 550 ppmv in {t:.1}");
        }
        None => s.push_str("committed concentration stays below 550 ppmv\n"),
    }
    let last = tr.last();
    let _ = writeln!(
        s,
        "end {}: concentration {:.1} ppmv, committed {:.1} ppmv",
        last.year, last.concentration, last.committed_concentration
    );
    s
}

pub fn project(a: &ProjectArgs) -> Result<()> {
    let mut rec = Recorder::new(json!({}));
    let an = analysis(&a.data.manifest, &a.opts, &mut rec)?;
    let s = scenario(a, &an)?;
    let params = json!({
        "manifest": a.data.manifest.display().to_string(),
        "reconstruction": config_json(&a.opts),
        "preset": a.preset,
        "scenario": s,
        "spin_up": a.spin_up,
        "freeze_year": a.freeze_year,
        "tail_years": a.tail_years,
        "every_step": a.every_step,
        "curve": a.curve.then(|| json!({"from_w": a.from_w, "to_w": a.to_w, "points": a.points})),
    });
    rec.set_parameters(params);

    let tr = match a.freeze_year {
        Some(year) => steady_state_commitment(&s, year, a.tail_years)?.trajectory,
        None => run_scenario(&s)?,
    };
    rec.write(&a.out, trajectory_csv(&tr.points, a.every_step).as_bytes())?;

    if a.curve {
        let grid = wealth_grid(a.from_w, a.to_w, a.points)?;
        let lambda = Quantity::new(s.lambda, Unit::GwPerTrillionUsd)?;
        let c = Quantity::new(s.c0, Unit::GtcPerEj)?;
        let curve = committed_curve(&grid, lambda, c, &s.carbon_params)?;
        let pre = s.carbon_params.preindustrial();
        let mut csv = String::from("wealth,committed_delta_ppmv,committed_concentration_ppmv\n");
        for (w, d) in curve {
            let _ = writeln!(csv, "{w},{d},{}", pre + d);
        }
        let path = a.curve_out.clone().unwrap_or_else(|| sibling(&a.out, "_curve.csv"));
        rec.write(&path, csv.as_bytes())?;
    }
    rec.finish(&sibling(&a.out, ".manifest.json"))?;
    print!("{}", milestones(&tr));
    println!(
        "perturbation halving time {:.2} yr",
        halving_time(&s.carbon_params)
    );
    Ok(())
}

pub fn report(a: &ReportArgs) -> Result<()> {
    let mut rec = Recorder::new(json!({
        "manifest": a.data.manifest.display().to_string(),
        "reconstruction": config_json(&a.opts),
    }));
    let an = analysis(&a.data.manifest, &a.opts, &mut rec)?;
    let mut out = String::new();
    let sh = shares(&an)?;
    let _ = writeln!(
        out,
        "PPP/MER ratio {:.4} over {}\nW(1) = {:.2} T$2010\nshares of W({}): initial {:.4}, years 1-1000 {:.4}, since 1980 {:.4}\n",
        an.history.ratio.value(),
        an.history.ratio.window(),
        an.history.wealth.w1().value(),
        sh["reference_year"],
        sh["initial_over_reference"].as_f64().unwrap_or(f64::NAN),
        sh["years_1_to_1000"].as_f64().unwrap_or(f64::NAN),
        sh["years_1980_to_reference"].as_f64().unwrap_or(f64::NAN),
    );
    for id in 1..=5 {
        let t = tables::build(id, &an, GrowthMethod::EndpointLog)?;
        out.push_str(&t.to_text());
        out.push('\n');
        rec.write(&a.out.join(format!("table{id}.csv")), t.to_csv().as_bytes())?;
    }
    let snap = Snapshot {
        wealth: an.wealth(),
        energy: &an.data.energy,
        emissions: &an.data.emissions,
        concentration: &an.data.concentration,
    };
    let s = preset_scenario(Preset::Paper2017, &snap)?;
    let tr = run_scenario(&s)?;
    let _ = writeln!(out, "Projection ({}):", Preset::Paper2017);
    out.push_str(&milestones(&tr));
    rec.write(&a.out.join("trajectory.csv"), trajectory_csv(&tr.points, false).as_bytes())?;
    rec.write(&a.out.join("report.txt"), out.as_bytes())?;
    rec.finish(&a.out.join("report.manifest.json"))?;
    print!("{out}");
    Ok(())
}
