//! Closed-form relations between a civilization's potential, its power
//! consumption, and the growth of its network of nodes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::units::{convert, Quantity, Unit};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermoState {
    /// Potential G = n·μ, J.
    pub g: f64,
    /// Dissipation timescale, s.
    pub tau_d: f64,
    /// Surplus fraction, in [0, 1).
    pub epsilon: f64,
    pub k: f64,
    pub n: f64,
    /// Potential per node, J.
    pub mu: f64,
}

impl ThermoState {
    pub fn new(n: f64, mu: f64, tau_d: f64, epsilon: f64, k: f64) -> Result<Self> {
        if !(tau_d > 0.0 && tau_d.is_finite()) {
            return Err(Error::param("tau_d", "must be positive"));
        }
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::param("epsilon", "must lie in [0, 1)"));
        }
        if !(n >= 0.0 && n.is_finite() && mu >= 0.0 && mu.is_finite()) {
            return Err(Error::param("n, mu", "must be nonnegative"));
        }
        if !(k.is_finite()) {
            return Err(Error::NonFinite(k));
        }
        Ok(Self {
            g: n * mu,
            tau_d,
            epsilon,
            k,
            n,
            mu,
        })
    }
}

/// G/τ_d, W.
pub fn sustenance_power(st: &ThermoState) -> f64 {
    st.g / st.tau_d
}

/// τ_d/(τ_d + τ_long).
pub fn surplus_fraction(tau_d: f64, tau_long: f64) -> Result<f64> {
    if !(tau_d > 0.0 && tau_long > 0.0) {
        return Err(Error::param("timescales", "must be positive"));
    }
    Ok(tau_d / (tau_d + tau_long))
}

/// d ln G/dt = ε/((1−ε)τ_d), 1/s.
pub fn potential_growth_rate(st: &ThermoState) -> f64 {
    st.epsilon / ((1.0 - st.epsilon) * st.tau_d)
}

/// ε/τ_d, the leading-order form of [`potential_growth_rate`].
pub fn potential_growth_rate_approx(st: &ThermoState) -> f64 {
    st.epsilon / st.tau_d
}

/// dn/dt = εE/(kμ), nodes per s, for consumption `energy` in W.
pub fn node_production_rate(st: &ThermoState, energy: f64) -> Result<f64> {
    if !(st.k > 0.0 && st.mu > 0.0) {
        return Err(Error::param("k, mu", "must be positive"));
    }
    Ok(st.epsilon * energy / (st.k * st.mu))
}

/// d ln μ/dt when dμ/dn = (k−1)μ/n and nodes grow at `eta_n`.
pub fn specific_potential_growth(k: f64, eta_n: f64) -> f64 {
    (k - 1.0) * eta_n
}

/// ε/(λτ_d) expressed as trillion 2010 US$ per EJ.
pub fn productivity_bridge(epsilon: f64, lambda: Quantity, tau_d: f64) -> Result<Quantity> {
    if !(epsilon >= 0.0 && tau_d > 0.0) {
        return Err(Error::param("epsilon, tau_d", "must be nonnegative and positive"));
    }
    // GW per T$ equals 1e-3 W per $
    let w_per_usd = convert(lambda, Unit::GwPerTrillionUsd)?.value() * 1e-3;
    if !(w_per_usd > 0.0) {
        return Err(Error::param("lambda", "must be positive"));
    }
    let usd_per_joule = epsilon / (w_per_usd * tau_d);
    Quantity::new(usd_per_joule * 1e18 / 1e12, Unit::TrillionUsdPerEj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::{SECONDS_PER_DAY, SECONDS_PER_YEAR};

    #[test]
    fn twenty_terawatts() {
        let st = ThermoState::new(1.0, 1.728e18, SECONDS_PER_DAY, 0.0, 2.0).unwrap();
        assert!((sustenance_power(&st) - 2e13).abs() < 1.0);
        let zero = ThermoState::new(0.0, 5.0, SECONDS_PER_DAY, 0.0, 2.0).unwrap();
        assert_eq!(sustenance_power(&zero), 0.0);
        let unit = ThermoState::new(2.0, 43200.0, SECONDS_PER_DAY, 0.0, 2.0).unwrap();
        assert_eq!(sustenance_power(&unit), 1.0);
    }

    #[test]
    fn state_invariants() {
        let st = ThermoState::new(7.3e9, 3.1e7, 86400.0, 1e-4, 2.0).unwrap();
        assert!((st.g - st.n * st.mu).abs() <= 1e-12 * st.g);
        assert!(ThermoState::new(1.0, 1.0, 1.0, 1.0, 2.0).is_err());
        assert!(ThermoState::new(1.0, 1.0, 0.0, 0.1, 2.0).is_err());
    }

    #[test]
    fn surplus_examples() {
        let eps = surplus_fraction(SECONDS_PER_DAY, 50.0 * SECONDS_PER_YEAR).unwrap();
        // 86400 / (86400 + 50 * 31557600)
        assert!((eps - 86400.0 / 1_577_966_400.0).abs() < 1e-18);
        assert!((eps - 5.476e-5).abs() < 1e-8);
        assert_eq!(surplus_fraction(3.0, 3.0).unwrap(), 0.5);
        assert!(surplus_fraction(1.0, 1e30).unwrap() < 1e-29);
        assert!(surplus_fraction(0.0, 1.0).is_err());
    }

    #[test]
    fn growth_rate_examples() {
        let st = ThermoState::new(1.0, 1.0, SECONDS_PER_DAY, 5.5e-5, 2.0).unwrap();
        let eta = potential_growth_rate(&st);
        assert!((eta - 6.366e-10).abs() < 1e-12);
        let per_year = eta * SECONDS_PER_YEAR;
        assert!((per_year - 0.02).abs() < 0.001);
        let approx = potential_growth_rate_approx(&st);
        assert!((eta - approx).abs() / eta <= st.epsilon * (1.0 + 1e-9));

        let z = ThermoState::new(1.0, 1.0, 1.0, 0.0, 2.0).unwrap();
        assert_eq!(potential_growth_rate(&z), 0.0);
        let h = ThermoState::new(1.0, 1.0, 1.0, 0.5, 2.0).unwrap();
        assert_eq!(potential_growth_rate(&h), 1.0);
    }

    #[test]
    fn node_rate_examples() {
        let st = ThermoState::new(1.0, 1e6, 1.0, 0.01, 2.0).unwrap();
        assert!((node_production_rate(&st, 2e8).unwrap() - 1.0).abs() < 1e-15);
        let z = ThermoState::new(1.0, 1e6, 1.0, 0.0, 2.0).unwrap();
        assert_eq!(node_production_rate(&z, 2e8).unwrap(), 0.0);
        let bad = ThermoState::new(1.0, 1e6, 1.0, 0.01, 0.0).unwrap();
        assert!(node_production_rate(&bad, 1.0).is_err());
        assert_eq!(specific_potential_growth(2.0, 0.013), 0.013);
    }

    #[test]
    fn bridge_examples() {
        let lambda = Quantity::new(5.9, Unit::GwPerTrillionUsd).unwrap();
        let eps = 0.021 / SECONDS_PER_YEAR * SECONDS_PER_DAY;
        let b = productivity_bridge(eps, lambda, SECONDS_PER_DAY).unwrap().value();
        // η_W/λ with λ in EJ/yr per T$: 0.021 / (5.9 * 0.0315576)
        assert!((b - 0.021 / 0.186_189_84).abs() < 1e-9);
        assert!((b - 0.13).abs() < 0.02);
        assert_eq!(productivity_bridge(0.0, lambda, 1.0).unwrap().value(), 0.0);
        let l2 = Quantity::new(11.8, Unit::GwPerTrillionUsd).unwrap();
        let b2 = productivity_bridge(eps, l2, SECONDS_PER_DAY).unwrap().value();
        assert!((b2 - b / 2.0).abs() < 1e-15);
    }

    fn rhs(e: f64, eps: f64, k: f64, n: f64, mu: f64) -> (f64, f64) {
        let dn = eps * e / (k * mu);
        (dn, (k - 1.0) * mu / n * dn)
    }

    #[test]
    fn partition_closure() {
        // RK4 on (n, μ) under dμ/dn = (k−1)μ/n with constant E.
        for k in [1.5, 2.0, 3.0] {
            let (e, eps) = (2e13, 1e-4);
            let (mut n, mut mu) = (7e9, 2.5e8);
            let g0 = n * mu;
            let (h, steps) = (1000.0, 10_000);
            for _ in 0..steps {
                let k1 = rhs(e, eps, k, n, mu);
                let k2 = rhs(e, eps, k, n + 0.5 * h * k1.0, mu + 0.5 * h * k1.1);
                let k3 = rhs(e, eps, k, n + 0.5 * h * k2.0, mu + 0.5 * h * k2.1);
                let k4 = rhs(e, eps, k, n + h * k3.0, mu + h * k3.1);
                n += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
                mu += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
            }
            let gained = n * mu - g0;
            let work = eps * e * h * f64::from(steps);
            assert!((gained - work).abs() < 1e-9 * work, "k={k}");
        }
    }
}
