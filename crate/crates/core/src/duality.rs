//! The map between the plate system and the photon gas.
//!
//! Under 2l ↔ β the Casimir pressure becomes minus the Planck energy density
//! and the Casimir energy density becomes minus the blackbody pressure. The
//! map is exact, yet reading ħc/(2k_B l) as a temperature breaks ∂s/∂u = 1/T:
//! along the family of gaps |∂s/∂u| comes out three times the would-be
//! inverse temperature. [`check_dual_thermo_relation`] computes that factor and
//! [`thermal_control_ratio`] runs the same pipeline on the photon gas, where
//! it gives one.
//!
//! Sign note: differentiating s = -2l(u + p) with the closed forms gives
//! ∂s/∂u = -6l, negative, since s falls while u rises with l. The ratio is
//! reported as a magnitude.

use serde::{Deserialize, Serialize};

use crate::blackbody::{self, ThermalState};
use crate::casimir;
use crate::error::{require_positive, Error, Result};
use crate::numerics::{derivative, DerivativeConfig, QuadratureConfig};
use crate::Method;

/// Tolerance on the swap residuals through closed forms.
pub const CLOSED_FORM_SWAP_TOLERANCE: f64 = 1e-12;
/// Tolerance on the swap residuals through quadrature.
pub const QUADRATURE_SWAP_TOLERANCE: f64 = 1e-8;
/// Tolerance on |ratio - 3| for the inconsistency ratio.
pub const RATIO_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualityDirection {
    GapToBeta,
    BetaToGap,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityMap {
    pub direction: DualityDirection,
    pub input: f64,
    pub output: f64,
}

impl DualityMap {
    pub fn gap_to_beta(gap: f64) -> Result<Self> {
        Ok(DualityMap {
            direction: DualityDirection::GapToBeta,
            input: gap,
            output: map_gap_to_beta(gap)?,
        })
    }

    pub fn beta_to_gap(beta: f64) -> Result<Self> {
        Ok(DualityMap {
            direction: DualityDirection::BetaToGap,
            input: beta,
            output: map_beta_to_gap(beta)?,
        })
    }

    /// The opposite direction applied to this map's output.
    pub fn inverse(&self) -> Result<Self> {
        match self.direction {
            DualityDirection::GapToBeta => DualityMap::beta_to_gap(self.output),
            DualityDirection::BetaToGap => DualityMap::gap_to_beta(self.output),
        }
    }
}

/// β = 2l
pub fn map_gap_to_beta(gap: f64) -> Result<f64> {
    Ok(2.0 * require_positive("plate gap", gap)?)
}

/// l = β/2
pub fn map_beta_to_gap(beta: f64) -> Result<f64> {
    Ok(0.5 * require_positive("beta", beta)?)
}

/// ξ = Tl = l/β, kept as the pair (l, β) so that the inversion, a swap of
/// the pair through the duality map, is exact in floating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Xi {
    gap: f64,
    beta: f64,
}

impl Xi {
    pub fn new(value: f64) -> Result<Self> {
        require_positive("xi", value)?;
        Ok(Xi { gap: value, beta: 1.0 })
    }

    pub fn from_gap_and_beta(gap: f64, beta: f64) -> Result<Self> {
        require_positive("plate gap", gap)?;
        require_positive("beta", beta)?;
        Ok(Xi { gap, beta })
    }

    pub fn value(&self) -> f64 {
        self.gap / self.beta
    }
}

/// ξ ↦ 1/(4ξ), induced by (l, β) ↦ (β/2, 2l).
pub fn xi_inversion(xi: Xi) -> Xi {
    Xi {
        gap: 0.5 * xi.beta,
        beta: 2.0 * xi.gap,
    }
}

/// How the Casimir and blackbody densities inside a check are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    ClosedForm,
    Quadrature,
}

impl Route {
    pub fn swap_tolerance(self) -> f64 {
        match self {
            Route::ClosedForm => CLOSED_FORM_SWAP_TOLERANCE,
            Route::Quadrature => QUADRATURE_SWAP_TOLERANCE,
        }
    }

    pub fn method(self) -> Method {
        match self {
            Route::ClosedForm => Method::ClosedForm,
            Route::Quadrature => Method::Quadrature,
        }
    }
}

struct Sides {
    p_cas: f64,
    u_cas: f64,
    p_bb: f64,
    u_bb: f64,
}

fn casimir_pair(gap: f64, route: Route, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    match route {
        Route::ClosedForm => Ok((
            casimir::pressure_closed_form(gap)?,
            casimir::energy_density_closed_form(gap)?,
        )),
        Route::Quadrature => Ok((casimir::pressure(gap, cfg)?, casimir::energy_density(gap, cfg)?)),
    }
}

fn evaluate_sides(gap: f64, route: Route, cfg: &QuadratureConfig) -> Result<Sides> {
    let (p_cas, u_cas) = casimir_pair(gap, route, cfg)?;
    let state = ThermalState::from_beta(map_gap_to_beta(gap)?)?;
    let (p_bb, u_bb) = match route {
        Route::ClosedForm => (
            blackbody::pressure_bb_closed_form(&state),
            blackbody::internal_energy_bb_closed_form(&state),
        ),
        Route::Quadrature => (
            blackbody::pressure_bb(&state, cfg)?,
            blackbody::internal_energy_bb(&state, cfg)?,
        ),
    };
    Ok(Sides { p_cas, u_cas, p_bb, u_bb })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwapResiduals {
    /// |p_cas(l) + u_bb(2l)| / |u_bb(2l)|
    pub residual_p_swap: f64,
    /// |u_cas(l) + p_bb(2l)| / |p_bb(2l)|
    pub residual_u_swap: f64,
}

impl SwapResiduals {
    pub fn within(&self, tol: f64) -> bool {
        self.residual_p_swap <= tol && self.residual_u_swap <= tol
    }
}

pub fn check_pressure_energy_swap(gap: f64, route: Route, cfg: &QuadratureConfig) -> Result<SwapResiduals> {
    let s = evaluate_sides(gap, route, cfg)?;
    Ok(SwapResiduals {
        residual_p_swap: ((s.p_cas + s.u_bb) / s.u_bb).abs(),
        residual_u_swap: ((s.u_cas + s.p_bb) / s.p_bb).abs(),
    })
}

/// s = -2l (u_cas + p_cas), natural units (k_B = ħ = c = 1).
pub fn dual_entropy_density(gap: f64, route: Route, cfg: &QuadratureConfig) -> Result<f64> {
    let (p, u) = casimir_pair(gap, route, cfg)?;
    Ok(-2.0 * gap * (u + p))
}

/// π²/(90 l³)
pub fn dual_entropy_density_closed_form(gap: f64) -> Result<f64> {
    require_positive("plate gap", gap)?;
    Ok(std::f64::consts::PI.powi(2) / (90.0 * gap.powi(3)))
}

/// ∂s/∂u along a one-parameter family, compared with an inverse temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermoRelationCheck {
    pub ds_du: f64,
    pub effective_inverse_t: f64,
    /// |ds_du| / effective_inverse_t
    pub inconsistency_ratio: f64,
}

/// The shared pipeline: ds/du = (ds/dx)/(du/dx) at `x`, then the ratio to
/// the inverse temperature assigned to that point.
fn thermo_relation<S, U>(
    entropy: S,
    energy: U,
    x: f64,
    inverse_temperature: f64,
    dcfg: &DerivativeConfig,
) -> Result<ThermoRelationCheck>
where
    S: Fn(f64) -> Result<f64>,
    U: Fn(f64) -> Result<f64>,
{
    let dcfg = dcfg.scaled_to(x);
    let ds = derivative(entropy, x, &dcfg)?;
    let du = derivative(energy, x, &dcfg)?;
    if du == 0.0 {
        return Err(Error::NonFinite("du/dx vanished".into()));
    }
    let ds_du = ds / du;
    Ok(ThermoRelationCheck {
        ds_du,
        effective_inverse_t: inverse_temperature,
        inconsistency_ratio: ds_du.abs() / inverse_temperature,
    })
}

/// Dual side: the family in l, with effective inverse temperature 2l.
pub fn check_dual_thermo_relation(
    gap: f64,
    dcfg: &DerivativeConfig,
    cfg: &QuadratureConfig,
) -> Result<ThermoRelationCheck> {
    require_positive("plate gap", gap)?;
    thermo_relation(
        |l| dual_entropy_density(l, Route::Quadrature, cfg),
        |l| casimir::energy_density(l, cfg),
        gap,
        map_gap_to_beta(gap)?,
        dcfg,
    )
}

/// Thermal side through the same pipeline: the family in β, inverse
/// temperature β. Expected ratio 1.
pub fn thermal_control_ratio(
    beta: f64,
    dcfg: &DerivativeConfig,
    cfg: &QuadratureConfig,
) -> Result<ThermoRelationCheck> {
    require_positive("beta", beta)?;
    thermo_relation(
        |b| blackbody::entropy_density(&ThermalState::from_beta(b)?, cfg),
        |b| blackbody::internal_energy_bb(&ThermalState::from_beta(b)?, cfg),
        beta,
        beta,
        dcfg,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub l: f64,
    pub beta_dual: f64,
    pub residual_p_swap: f64,
    pub residual_u_swap: f64,
    pub ds_du_dual: f64,
    pub inconsistency_ratio: f64,
}

impl DualityReport {
    /// Swap residuals within the route's tolerance and the ratio within 1e-6 of 3.
    pub fn passes(&self, route: Route) -> bool {
        let tol = route.swap_tolerance();
        self.residual_p_swap <= tol
            && self.residual_u_swap <= tol
            && (self.inconsistency_ratio - 3.0).abs() <= RATIO_TOLERANCE
    }
}

pub fn full_report(
    gap: f64,
    route: Route,
    dcfg: &DerivativeConfig,
    cfg: &QuadratureConfig,
) -> Result<DualityReport> {
    let swap = check_pressure_energy_swap(gap, route, cfg)?;
    let thermo = check_dual_thermo_relation(gap, dcfg, cfg)?;
    Ok(DualityReport {
        l: gap,
        beta_dual: map_gap_to_beta(gap)?,
        residual_p_swap: swap.residual_p_swap,
        residual_u_swap: swap.residual_u_swap,
        ds_du_dual: thermo.ds_du,
        inconsistency_ratio: thermo.inconsistency_ratio,
    })
}
