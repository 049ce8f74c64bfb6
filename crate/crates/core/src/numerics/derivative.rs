//! Central differences with Richardson extrapolation.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeConfig {
    /// First step size. `None` uses `1e-2 * max(|x|, 1)`.
    pub initial_step: Option<f64>,
    /// Number of extrapolation stages; the tableau has `levels + 1` rows.
    pub richardson_levels: usize,
}

impl Default for DerivativeConfig {
    fn default() -> Self {
        DerivativeConfig {
            initial_step: None,
            richardson_levels: 4,
        }
    }
}

impl DerivativeConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(h) = self.initial_step {
            if !(h > 0.0 && h.is_finite()) {
                return Err(Error::invalid(format!("initial_step must be positive, got {h}")));
            }
        }
        if self.richardson_levels < 1 {
            return Err(Error::invalid("richardson_levels must be at least 1"));
        }
        Ok(())
    }

    pub fn step_at(&self, x: f64) -> f64 {
        self.initial_step.unwrap_or(1e-2 * x.abs().max(1.0))
    }

    /// Fixes the default step to 1e-2·|x| for a positive physical scale
    /// parameter, so that SI-sized inputs (l ~ 1e-6 m) are differentiated
    /// with a step proportional to themselves. An explicit step is kept.
    pub fn scaled_to(&self, x: f64) -> DerivativeConfig {
        match self.initial_step {
            None if x != 0.0 && x.is_finite() => DerivativeConfig {
                initial_step: Some(1e-2 * x.abs()),
                ..*self
            },
            _ => *self,
        }
    }
}

/// dg/dx at `x`. `g` may fail (e.g. a quadrature inside it); the first
/// failure is propagated.
pub fn derivative<G>(g: G, x: f64, cfg: &DerivativeConfig) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    cfg.validate()?;
    if !x.is_finite() {
        return Err(Error::invalid(format!("derivative point must be finite, got {x}")));
    }
    let eval = |p: f64| -> Result<f64> {
        let v = g(p)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(format!("g({p:e}) = {v}")))
        }
    };

    let rows = cfg.richardson_levels + 1;
    let mut h = cfg.step_at(x);
    let mut table: Vec<f64> = Vec::with_capacity(rows);
    for _ in 0..rows {
        table.push((eval(x + h)? - eval(x - h)?) / (2.0 * h));
        h *= 0.5;
    }
    // Central differences have an even error series in h: eliminate h², h⁴, ...
    let mut factor = 1.0;
    for level in 1..rows {
        factor *= 4.0;
        for i in 0..rows - level {
            table[i] = (factor * table[i + 1] - table[i]) / (factor - 1.0);
        }
    }
    Ok(table[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d<F: Fn(f64) -> f64>(f: F, x: f64) -> f64 {
        derivative(|p| Ok(f(p)), x, &DerivativeConfig::default()).unwrap()
    }

    #[test]
    fn square_is_exact() {
        assert!((d(|x| x * x, 1.0) - 2.0).abs() < 1e-13);
    }

    #[test]
    fn inverse_fourth_power() {
        assert!((d(|x: f64| x.powi(-4), 1.0) + 4.0).abs() < 4e-9);
    }

    #[test]
    fn exponential_at_zero() {
        assert!((d(f64::exp, 0.0) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn large_argument_uses_relative_step() {
        let x = 1e4;
        let v = d(|t: f64| t.powi(3), x);
        assert!(((v - 3.0 * x * x) / (3.0 * x * x)).abs() < 1e-10);
    }

    #[test]
    fn failures_propagate() {
        let cfg = DerivativeConfig::default();
        let err = derivative(|x| Ok(if x > 1.005 { f64::NAN } else { x }), 1.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::NonFinite(_)));
        let err = derivative(|_| Err(Error::Convergence("inner".into())), 1.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::Convergence(_)));
    }

    #[test]
    fn scaled_step_tracks_small_arguments() {
        let cfg = DerivativeConfig::default().scaled_to(1e-6);
        assert_eq!(cfg.initial_step, Some(1e-8));
        let v = derivative(|x: f64| Ok(x.powi(-4)), 1e-6, &cfg).unwrap();
        let exact = -4.0 * 1e-6f64.powi(-5);
        assert!(((v - exact) / exact).abs() < 1e-8);
        let fixed = DerivativeConfig { initial_step: Some(0.1), ..Default::default() };
        assert_eq!(fixed.scaled_to(1e-6).initial_step, Some(0.1));
    }

    #[test]
    fn config_validation() {
        let bad = DerivativeConfig { richardson_levels: 0, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = DerivativeConfig { initial_step: Some(0.0), ..Default::default() };
        assert!(bad.validate().is_err());
    }
}
