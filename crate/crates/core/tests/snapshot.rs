use std::path::PathBuf;

use inertia_core::carbon::{carbonization, CarbonCycleParams};
use inertia_core::dataset::{Analysis, Dataset};
use inertia_core::growth::{
    energy_productivity, growth_rate, innovation_rate, predicted_energy_growth,
    predicted_gdp_growth, wealth_growth_series, GrowthMethod,
};
use inertia_core::ingest::{validate, Manifest};
use inertia_core::projection::{
    committed_curve, historical_spin_up, preset_scenario, steady_state_commitment, Preset,
    Snapshot,
};
use inertia_core::reconstruction::ReconstructionConfig;
use inertia_core::thermo::productivity_bridge;
use inertia_core::units::{Quantity, Unit, SECONDS_PER_DAY, SECONDS_PER_YEAR};
use inertia_core::Period;

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/manifest.toml")
}

fn analysis() -> Analysis {
    Analysis::new(Dataset::load(manifest()).unwrap(), ReconstructionConfig::default()).unwrap()
}

fn p(a: i32, b: i32) -> Period {
    Period::new(a, b).unwrap()
}

fn pct(r: f64) -> f64 {
    100.0 * r
}

#[test]
fn bundled_series_validate_cleanly() {
    let m = Manifest::load(&manifest()).unwrap();
    for (name, d) in &m.series {
        let s = inertia_core::ingest::load_series(d).unwrap();
        let report = validate(&s, d.contiguous);
        assert!(report.is_clean(), "{name}: {report:?}");
    }
}

#[test]
fn measured_growth_of_wealth_and_energy() {
    let a = analysis();
    let m = GrowthMethod::EndpointLog;
    let w = growth_rate(a.wealth(), p(1980, 2017), m).unwrap();
    assert!((pct(w.value) - 2.14).abs() < 0.15, "{}", pct(w.value));
    let e = growth_rate(&a.data.energy, p(1980, 2010), m).unwrap();
    assert!((pct(e.value) - 1.98).abs() < 0.15, "{}", pct(e.value));
}

#[test]
fn derived_growth_rates() {
    let a = analysis();
    let m = GrowthMethod::EndpointLog;
    let eps = energy_productivity(&a.history.gdp, &a.data.energy).unwrap();
    let lambda = a.lambda_full.mean;
    let check = |got: f64, want: f64| assert!((pct(got) - want).abs() < 0.2, "{} vs {want}", pct(got));

    check(predicted_energy_growth(lambda, &eps, p(1980, 2010)).unwrap().value, 2.09);
    check(predicted_energy_growth(lambda, &eps, p(1980, 2017)).unwrap().value, 2.15);
    check(predicted_energy_growth(lambda, &eps, p(2010, 2017)).unwrap().value, 2.40);
    check(innovation_rate(&eps, p(1980, 2010), m).unwrap().value, 0.91);
    let eta_w = wealth_growth_series(&a.history.gdp, a.wealth()).unwrap();
    check(innovation_rate(&eta_w, p(1980, 2010), m).unwrap().value, 0.82);
    check(predicted_gdp_growth(lambda, &eps, p(1980, 2010), m).unwrap().value, 3.0);
    check(predicted_gdp_growth(lambda, &eps, p(1980, 2017), m).unwrap().value, 3.15);
}

#[test]
fn recent_carbonization() {
    let a = analysis();
    let est = carbonization(
        &a.data.emissions,
        &a.data.energy,
        a.wealth(),
        p(2010, 2017),
        &CarbonCycleParams::default(),
        GrowthMethod::EndpointLog,
    )
    .unwrap();
    assert!((est.c - 0.017).abs() < 0.001, "{}", est.c);
    assert!((pct(est.eta_c) + 0.36).abs() < 0.15, "{}", pct(est.eta_c));
}

fn snapshot(a: &Analysis) -> Snapshot<'_> {
    Snapshot {
        wealth: a.wealth(),
        energy: &a.data.energy,
        emissions: &a.data.emissions,
        concentration: &a.data.concentration,
    }
}

#[test]
fn three_fifty_requires_shrinking_wealth_by_two_thirds() {
    let a = analysis();
    let s = preset_scenario(Preset::Paper2017, &snapshot(&a)).unwrap();
    let lambda = Quantity::new(s.lambda, Unit::GwPerTrillionUsd).unwrap();
    let c = Quantity::new(s.c0, Unit::GtcPerEj).unwrap();
    let params = s.carbon_params;
    // Invert the linear curve: find W with Δ_eq = 75 ppmv.
    let (w_unit, d_unit) = committed_curve(&[1.0], lambda, c, &params).unwrap()[0];
    let w75 = 75.0 * w_unit / d_unit;
    let back = committed_curve(&[w75], lambda, c, &params).unwrap()[0].1;
    assert!((back - 75.0).abs() < 1e-9);
    let frac = w75 / s.w0;
    assert!((0.28..=0.42).contains(&frac), "{frac}");
    let year = a
        .wealth()
        .points()
        .iter()
        .find(|(_, w)| *w >= w75)
        .map(|(y, _)| *y)
        .unwrap();
    assert!((1955..=1970).contains(&year), "{year}");
}

#[test]
fn freezing_in_2030_commits_doubling() {
    let a = analysis();
    let s = preset_scenario(Preset::Paper2017, &snapshot(&a)).unwrap();
    let ss = steady_state_commitment(&s, 2030.0, 300.0).unwrap();
    assert!((ss.asymptote_concentration - 550.0).abs() < 15.0, "{}", ss.asymptote_concentration);
    let tail = ss.trajectory.last();
    assert!((tail.concentration - ss.asymptote_concentration).abs() < 2.0);
}

#[test]
fn historical_spin_up_lands_near_observation() {
    let a = analysis();
    let params = CarbonCycleParams::default();
    let d = historical_spin_up(&a.data.concentration, &a.data.emissions, 1959, 2017, &params, 0.25)
        .unwrap();
    let observed = a.data.concentration.value_at(2017).unwrap() - params.preindustrial();
    // the single-box sink omits land-use emissions, so only the order is checked
    assert!(d > 0.5 * observed && d < 1.5 * observed, "{d} vs {observed}");
}

#[test]
fn bridge_matches_observed_productivity() {
    let a = analysis();
    let eps_thermo = 0.021 / SECONDS_PER_YEAR * SECONDS_PER_DAY;
    let bridged = productivity_bridge(
        eps_thermo,
        Quantity::new(5.9, Unit::GwPerTrillionUsd).unwrap(),
        SECONDS_PER_DAY,
    )
    .unwrap()
    .value();
    let eps = energy_productivity(&a.history.gdp, &a.data.energy).unwrap();
    let observed = eps.value_at(2017).unwrap();
    assert!((bridged / observed - 1.0).abs() < 0.25, "{bridged} vs {observed}");
}
