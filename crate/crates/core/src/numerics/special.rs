//! Bose-type integrals, the zeta values they reduce to, and the coth
//! partial-fraction expansion behind the Matsubara-style mode sum.

use std::f64::consts::PI;

use super::quadrature::{exp_poly_tail, integrate_with_tail, QuadratureConfig};
use crate::error::{require_positive, Error, Result};

/// ζ(3), Apéry's constant.
pub const APERY: f64 = 1.202_056_903_159_594_2;

/// ζ(s) for s ∈ {2, 3, 4}.
pub fn zeta_value(s: u32) -> Result<f64> {
    match s {
        2 => Ok(PI * PI / 6.0),
        3 => Ok(APERY),
        4 => Ok(PI.powi(4) / 90.0),
        _ => Err(Error::invalid(format!("zeta_value supports s in {{2, 3, 4}}, got {s}"))),
    }
}

/// Γ(s)ζ(s)/a^s, the closed form of [`bose_integral`] for s ∈ {2, 3, 4}.
pub fn bose_integral_closed_form(s: u32, a: f64) -> Result<f64> {
    require_positive("a", a)?;
    let gamma = match s {
        2 => 1.0,
        3 => 2.0,
        4 => 6.0,
        _ => return Err(Error::invalid(format!("closed form available for s in {{2, 3, 4}}, got {s}"))),
    };
    Ok(gamma * zeta_value(s)? / a.powi(s as i32))
}

/// -π⁴/(45 a³), the closed form of [`log_bose_integral`].
pub fn log_bose_integral_closed_form(a: f64) -> Result<f64> {
    require_positive("a", a)?;
    Ok(-PI.powi(4) / (45.0 * a.powi(3)))
}

/// ∫_0^∞ x^{s-1}/(e^{ax}-1) dx by quadrature.
pub fn bose_integral(s: f64, a: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(s > 1.0 && s.is_finite()) {
        return Err(Error::invalid(format!("bose_integral requires s > 1, got {s}")));
    }
    require_positive("a", a)?;
    cfg.validate()?;
    let p = s - 1.0;
    let integrand = move |x: f64| {
        let d = (a * x).exp_m1();
        if d.is_infinite() {
            0.0
        } else {
            x.powf(p) / d
        }
    };
    // x^{s-1} <= x^m for x >= 1 and 1/(e^{ax}-1) <= e^{-ax}/(1-e^{-aX})
    let m = p.ceil() as u32;
    let tail = move |cut: f64| exp_poly_tail(m, a, cut) / -(-a * cut).exp_m1();
    let cut = cfg.tail_cut_for_rate(a).max(1.0);
    Ok(integrate_with_tail(integrand, cut, tail, cfg)?.value)
}

/// ∫_0^∞ x² ln(1 - e^{-ax}) dx by quadrature. The integrand has an
/// integrable logarithmic singularity at the origin (times x²).
pub fn log_bose_integral(a: f64, cfg: &QuadratureConfig) -> Result<f64> {
    require_positive("a", a)?;
    cfg.validate()?;
    let integrand = move |x: f64| x * x * (-(-a * x).exp_m1()).ln();
    // |ln(1-y)| <= y/(1-y)
    let tail = move |cut: f64| exp_poly_tail(2, a, cut) / -(-a * cut).exp_m1();
    let cut = cfg.tail_cut_for_rate(a);
    Ok(integrate_with_tail(integrand, cut, tail, cfg)?.value)
}

/// Partial sum of coth(z)/z = 1/z² + Σ_{n≥1} 2/(z² + π²n²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CothCheck {
    pub partial: f64,
    pub target: f64,
    /// 2/(π²N): bound on the dropped tail Σ_{n>N} 2/(z²+π²n²).
    pub tail_bound: f64,
}

impl CothCheck {
    pub fn error(&self) -> f64 {
        (self.partial - self.target).abs()
    }

    pub fn within_bound(&self) -> bool {
        self.error() <= self.tail_bound
    }
}

pub fn coth_series_check(z: f64, terms: u64) -> Result<CothCheck> {
    if z == 0.0 || !z.is_finite() {
        return Err(Error::invalid(format!("coth_series_check requires finite z != 0, got {z}")));
    }
    if terms < 1 {
        return Err(Error::invalid("coth_series_check requires N >= 1"));
    }
    let z2 = z * z;
    // smallest terms first
    let series: f64 = (1..=terms)
        .rev()
        .map(|n| {
            let pn = PI * n as f64;
            2.0 / (z2 + pn * pn)
        })
        .sum();
    Ok(CothCheck {
        partial: 1.0 / z2 + series,
        target: 1.0 / (z.tanh() * z),
        tail_bound: 2.0 / (PI * PI * terms as f64),
    })
}
