//! The Abel-Plana summation operator
//!
//! Σ_{n≥0} f(n) = ∫_0^∞ f(x) dx + f(0)/2 + ∫_0^∞ d(x)/(e^{2πx} - 1) dx,
//!
//! where d(x) = i[f(ix) - f(-ix)] is supplied by the caller as a real
//! function. The caller fixes the branch of any multivalued f through d.

use super::quadrature::{integrate, integrate_to_infinity, QuadratureConfig};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbelPlanaResult {
    pub integral_term: f64,
    pub half_f0: f64,
    pub branch_term: f64,
    pub total: f64,
}

impl AbelPlanaResult {
    fn new(integral_term: f64, half_f0: f64, branch_term: f64) -> Self {
        AbelPlanaResult {
            integral_term,
            half_f0,
            branch_term,
            total: integral_term + half_f0 + branch_term,
        }
    }
}

/// ∫_0^∞ d(x)/(e^{2πx} - 1) dx on its own, for sums whose plain integral diverges.
pub fn abel_plana_branch<D>(discontinuity: D, cfg: &QuadratureConfig) -> Result<f64>
where
    D: Fn(f64) -> f64,
{
    let weighted = |x: f64| {
        let denom = (2.0 * std::f64::consts::PI * x).exp_m1();
        if denom.is_infinite() {
            0.0
        } else {
            discontinuity(x) / denom
        }
    };
    let r = integrate_to_infinity(weighted, 0.0, cfg)?;
    if !r.value.is_finite() {
        return Err(Error::NonFinite("Abel-Plana branch term".into()));
    }
    Ok(r.value)
}

/// Branch term for a discontinuity that switches on at `onset > 0` with a
/// non-analytic (e.g. square-root) edge. The half-line is split there so the
/// edge sits at an endpoint of both rules.
pub fn abel_plana_branch_from<D>(discontinuity: D, onset: f64, cfg: &QuadratureConfig) -> Result<f64>
where
    D: Fn(f64) -> f64,
{
    if !(onset >= 0.0 && onset.is_finite()) {
        return Err(Error::invalid(format!("branch onset must be non-negative, got {onset}")));
    }
    if onset == 0.0 {
        return abel_plana_branch(discontinuity, cfg);
    }
    let weighted = |x: f64| {
        let denom = (2.0 * std::f64::consts::PI * x).exp_m1();
        if denom.is_infinite() {
            0.0
        } else {
            discontinuity(x) / denom
        }
    };
    let below = integrate(weighted, 0.0, onset, cfg)?.value;
    let above = integrate_to_infinity(weighted, onset, cfg)?.value;
    let total = below + above;
    if !total.is_finite() {
        return Err(Error::NonFinite("Abel-Plana branch term".into()));
    }
    Ok(total)
}

/// All three Abel-Plana terms; fails if any of them is not finite.
pub fn abel_plana<F, D>(f: F, discontinuity: D, cfg: &QuadratureConfig) -> Result<AbelPlanaResult>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let f0 = f(0.0);
    if !f0.is_finite() {
        return Err(Error::NonFinite(format!("f(0) = {f0}")));
    }
    let integral = integrate_to_infinity(&f, 0.0, cfg)?.value;
    if !integral.is_finite() {
        return Err(Error::NonFinite("Abel-Plana integral term".into()));
    }
    let branch = abel_plana_branch(discontinuity, cfg)?;
    Ok(AbelPlanaResult::new(integral, 0.5 * f0, branch))
}
