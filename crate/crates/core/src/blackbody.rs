//! Photon gas at temperature T: pressure, free energy, Planck internal
//! energy and entropy, in natural units with β = 1/T a length.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Result};
use crate::numerics::{bose_integral, derivative, log_bose_integral, DerivativeConfig, QuadratureConfig};
use crate::quantities::{beta_from_temperature, PhysicalConstants, Quantity};
use crate::Method;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalState {
    beta: f64,
}

impl ThermalState {
    /// β in natural length units (metres).
    pub fn from_beta(beta: f64) -> Result<Self> {
        require_positive("beta", beta)?;
        Ok(ThermalState { beta })
    }

    /// Natural-unit temperature (inverse length).
    pub fn from_natural_temperature(t: f64) -> Result<Self> {
        require_positive("temperature", t)?;
        Ok(ThermalState { beta: 1.0 / t })
    }

    /// SI (K) or natural (inverse length) temperature.
    pub fn from_temperature(t: Quantity) -> Result<Self> {
        let beta = beta_from_temperature(t, &PhysicalConstants::CODATA_2018)?;
        ThermalState::from_beta(beta.magnitude)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Natural-unit temperature, 1/β.
    pub fn temperature(&self) -> f64 {
        1.0 / self.beta
    }

    pub fn temperature_kelvin(&self) -> f64 {
        let c = PhysicalConstants::CODATA_2018;
        c.hbar_c() / (c.k_b() * self.beta)
    }
}

/// The four thermodynamic densities at one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermoPoint {
    pub p: f64,
    pub f: f64,
    pub u: f64,
    pub s: f64,
}

/// p = -(1/(π²β)) ∫_0^∞ k² ln(1 - e^{-βk}) dk.
pub fn pressure_bb(state: &ThermalState, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(-log_bose_integral(state.beta, cfg)? / (PI * PI * state.beta))
}

/// π²/(45β⁴)
pub fn pressure_bb_closed_form(state: &ThermalState) -> f64 {
    PI * PI / (45.0 * state.beta.powi(4))
}

/// Planck's law integrated over frequency: u = (1/π²) ∫_0^∞ k³/(e^{βk} - 1) dk.
pub fn internal_energy_bb(state: &ThermalState, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(bose_integral(4.0, state.beta, cfg)? / (PI * PI))
}

/// π²/(15β⁴)
pub fn internal_energy_bb_closed_form(state: &ThermalState) -> f64 {
    PI * PI / (15.0 * state.beta.powi(4))
}

/// u = -∂(βp)/∂β, differentiating the quadrature pressure.
pub fn internal_energy_via_derivative(
    state: &ThermalState,
    dcfg: &DerivativeConfig,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let beta_p = |b: f64| Ok(b * pressure_bb(&ThermalState::from_beta(b)?, cfg)?);
    Ok(-derivative(beta_p, state.beta, &dcfg.scaled_to(state.beta))?)
}

/// s = (p + u)/T from the quadrature routes.
pub fn entropy_density(state: &ThermalState, cfg: &QuadratureConfig) -> Result<f64> {
    let p = pressure_bb(state, cfg)?;
    let u = internal_energy_bb(state, cfg)?;
    Ok((p + u) * state.beta)
}

/// All four densities. `Method::ClosedForm` uses the π²/45β⁴, π²/15β⁴
/// expressions, anything else the quadrature routes.
pub fn thermo_point(state: &ThermalState, method: Method, cfg: &QuadratureConfig) -> Result<ThermoPoint> {
    let (p, u) = match method {
        Method::ClosedForm => (pressure_bb_closed_form(state), internal_energy_bb_closed_form(state)),
        _ => (pressure_bb(state, cfg)?, internal_energy_bb(state, cfg)?),
    };
    Ok(ThermoPoint {
        p,
        f: -p,
        u,
        s: (p + u) * state.beta,
    })
}

/// Outcome of checking ∂s/∂u = 1/T along the family of temperatures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DsDuCheck {
    pub ds_du: f64,
    pub expected: f64,
    /// |ds_du · T - 1|
    pub residual: f64,
    /// -∂f/∂T, the entropy obtained from the free energy.
    pub entropy_from_free_energy: f64,
    /// Relative gap between (p + u)/T and -∂f/∂T.
    pub entropy_residual: f64,
}

pub fn check_ds_du(state: &ThermalState, dcfg: &DerivativeConfig, cfg: &QuadratureConfig) -> Result<DsDuCheck> {
    let t = state.temperature();
    let dcfg = dcfg.scaled_to(t);
    let at = |temp: f64| ThermalState::from_natural_temperature(temp);
    let ds_dt = derivative(|temp| entropy_density(&at(temp)?, cfg), t, &dcfg)?;
    let du_dt = derivative(|temp| internal_energy_bb(&at(temp)?, cfg), t, &dcfg)?;
    let ds_du = ds_dt / du_dt;

    let s = entropy_density(state, cfg)?;
    let s_from_f = derivative(|temp| pressure_bb(&at(temp)?, cfg), t, &dcfg)?;
    Ok(DsDuCheck {
        ds_du,
        expected: 1.0 / t,
        residual: (ds_du * t - 1.0).abs(),
        entropy_from_free_energy: s_from_f,
        entropy_residual: ((s_from_f - s) / s).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn state(beta: f64) -> ThermalState {
        ThermalState::from_beta(beta).unwrap()
    }

    #[test]
    fn unit_beta_closed_forms() {
        let s = state(1.0);
        assert!((pressure_bb(&s, &cfg()).unwrap() - 0.2193245).abs() < 1e-7);
        assert!((internal_energy_bb(&s, &cfg()).unwrap() - 0.6579736).abs() < 1e-7);
        assert!((entropy_density(&s, &cfg()).unwrap() - 0.8772981).abs() < 1e-7);
        assert!(rel(pressure_bb(&state(2.0), &cfg()).unwrap(), PI * PI / 720.0) < 1e-10);
    }

    #[test]
    fn room_temperature_energy_density() {
        let s = ThermalState::from_temperature(Quantity::temperature(300.0)).unwrap();
        let c = PhysicalConstants::CODATA_2018;
        let u_si = internal_energy_bb(&s, &cfg()).unwrap() * c.hbar_c();
        assert!(rel(u_si, 6.13e-6) < 1e-2, "{u_si}");
        // Stefan-Boltzmann radiation constant a = π² k_B⁴/(15 ħ³ c³)
        let a = PI * PI * c.k_b().powi(4) / (15.0 * c.hbar_c().powi(3));
        assert!(rel(u_si, a * 300f64.powi(4)) < 1e-9);
        assert!((s.temperature_kelvin() - 300.0).abs() < 1e-9);
    }

    #[test]
    fn thermo_point_relations() {
        for beta in [0.5, 1.0, 3.0] {
            let st = state(beta);
            let q = thermo_point(&st, Method::Quadrature, &cfg()).unwrap();
            assert_eq!(q.p, -q.f);
            assert!(rel(q.u, 3.0 * q.p) < 1e-9);
            assert!(rel(q.s, 4.0 / 3.0 * q.u / st.temperature()) < 1e-9);
            let c = thermo_point(&st, Method::ClosedForm, &cfg()).unwrap();
            assert!(rel(q.u, c.u) < 1e-10 && rel(q.s, c.s) < 1e-10);
        }
    }

    #[test]
    fn zero_temperature_limit() {
        let cold = state(1e3);
        assert!(pressure_bb(&cold, &cfg()).unwrap() < 1e-11);
        assert!(entropy_density(&cold, &cfg()).unwrap() < 1e-8);
    }

    #[test]
    fn derivative_route_matches() {
        let d = DerivativeConfig::default();
        let u = internal_energy_via_derivative(&state(1.0), &d, &cfg()).unwrap();
        assert!(rel(u, PI * PI / 15.0) < 1e-6);
        let u = internal_energy_via_derivative(&state(0.5), &d, &cfg()).unwrap();
        assert!(rel(u, 16.0 * PI * PI / 15.0) < 1e-6);
    }

    #[test]
    fn absolute_temperature_relation() {
        let d = DerivativeConfig::default();
        for t in [1.0, 2.0] {
            let c = check_ds_du(&ThermalState::from_natural_temperature(t).unwrap(), &d, &cfg()).unwrap();
            assert!(c.residual <= 1e-6, "T = {t}: {c:?}");
            assert!((c.ds_du - 1.0 / t).abs() <= 1e-6);
            assert!(c.entropy_residual <= 1e-6);
        }
    }

    #[test]
    fn residual_is_unit_independent() {
        let d = DerivativeConfig::default();
        let si = ThermalState::from_temperature(Quantity::temperature(300.0)).unwrap();
        let c = check_ds_du(&si, &d, &cfg()).unwrap();
        assert!(c.residual <= 1e-6, "{c:?}");
    }

    #[test]
    fn rejects_non_positive_states() {
        assert!(ThermalState::from_beta(0.0).is_err());
        assert!(ThermalState::from_natural_temperature(-1.0).is_err());
        assert!(ThermalState::from_temperature(Quantity::temperature(0.0)).is_err());
        assert!(ThermalState::from_temperature(Quantity::length(1.0)).is_err());
    }
}
