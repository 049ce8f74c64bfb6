//! Parallel-plate side: mode spectrum, finite part of the zero-point energy
//! and the Casimir pressure.
//!
//! All functions work in natural units (ħ = c = 1) with lengths in metres;
//! energies per volume and pressures are then in m⁻⁴.
//!
//! The finite part per transverse momentum is available by two routes: the
//! integrated-by-parts logarithm ([`delta_i_log_route`]) and the Abel-Plana
//! branch-cut integral ([`delta_i_abel_plana`]). The energy density itself is
//! available as a logarithmic Bose integral, as a nested Abel-Plana integral,
//! and as the λ → 0 limit of an exponentially regulated mode sum minus its
//! continuum counterpart.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{require_positive, Error, Result};
use crate::numerics::quadrature::{exp_poly_tail, integrate_with_tail};
use crate::numerics::{bose_integral, derivative, log_bose_integral, DerivativeConfig, QuadratureConfig};
use crate::quantities::{to_natural, Dimension, PhysicalConstants, Quantity};

/// Relative tolerance for the regulated mode sum against the closed form.
pub const REGULATED_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateGeometry {
    gap: f64,
    transverse_area: Option<f64>,
}

impl PlateGeometry {
    /// Gap in natural length units (metres).
    pub fn new(gap: f64) -> Result<Self> {
        require_positive("plate gap", gap)?;
        Ok(PlateGeometry {
            gap,
            transverse_area: None,
        })
    }

    pub fn from_quantity(gap: Quantity) -> Result<Self> {
        let gap = gap.expect_dim(Dimension::LENGTH)?;
        PlateGeometry::new(to_natural(gap, &PhysicalConstants::CODATA_2018)?.magnitude)
    }

    /// Plate area in m². Zero is allowed and gives zero force.
    pub fn with_area(mut self, area: f64) -> Result<Self> {
        if !(area >= 0.0 && area.is_finite()) {
            return Err(Error::invalid(format!("plate area must be non-negative, got {area}")));
        }
        self.transverse_area = Some(area);
        Ok(self)
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn transverse_area(&self) -> Option<f64> {
        self.transverse_area
    }

    /// k_z(n) = πn/l
    pub fn k_z(&self, n: u64) -> f64 {
        PI * n as f64 / self.gap
    }
}

/// Modes at fixed transverse momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSpectrum {
    pub k_perp: f64,
    pub gap: f64,
}

impl ModeSpectrum {
    pub fn new(k_perp: f64, gap: f64) -> Result<Self> {
        if !(k_perp >= 0.0 && k_perp.is_finite()) {
            return Err(Error::invalid(format!("k_perp must be non-negative, got {k_perp}")));
        }
        require_positive("plate gap", gap)?;
        Ok(ModeSpectrum { k_perp, gap })
    }

    /// √(k⊥² + (πn/l)²)
    pub fn k_n(&self, n: u64) -> f64 {
        self.k_perp.hypot(PI * n as f64 / self.gap)
    }

    /// Polarizations: one for the zero mode, two otherwise.
    pub fn degeneracy(n: u64) -> u32 {
        if n == 0 {
            1
        } else {
            2
        }
    }
}

fn check_args(k_perp: f64, gap: f64, cfg: &QuadratureConfig) -> Result<()> {
    ModeSpectrum::new(k_perp, gap)?;
    cfg.validate()
}

/// (1/π) ∫_0^∞ dk_z ln(1 - e^{-2l√(k_z² + k⊥²)}), in units of inverse length.
///
/// The factor e^{-2lk⊥} is taken out of the integrand so that the quadrature
/// works on O(1) values however large lk⊥ is.
pub fn delta_i_log_route(k_perp: f64, gap: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_args(k_perp, gap, cfg)?;
    let a = 2.0 * gap;
    let c = a * k_perp;
    let integrand = move |kz: f64| {
        let r = kz.hypot(k_perp);
        let y = (-a * r).exp();
        if y > 0.5 {
            (-(-a * r).exp_m1()).ln() * c.exp()
        } else {
            // ln(1 - y) e^{c} = [ln(1 - y)/y] e^{-a(r - k⊥)}
            let ratio = if y == 0.0 { -1.0 } else { (-y).ln_1p() / y };
            ratio * (-a * kz * kz / (r + k_perp)).exp()
        }
    };
    // r - k⊥ >= kz - k⊥ and |ln(1-y)| <= y/(1-y)
    let tail = move |cut: f64| (-a * (cut - k_perp)).exp() / a / -(-a * cut).exp_m1();
    let cut = k_perp + cfg.tail_cut_for_rate(a);
    Ok(integrate_with_tail(integrand, cut, tail, cfg)?.value * (-c).exp() / PI)
}

/// -(2l/π) ∫_{k⊥}^∞ dt √(t² - k⊥²)/(e^{2lt} - 1): the Abel-Plana branch term
/// of Σ_n g(n) k_n / 2, with the discontinuity vanishing below t = k⊥.
///
/// The square-root onset is removed by t = k⊥ cosh θ, and e^{-2lk⊥} is
/// factored out as in [`delta_i_log_route`].
pub fn delta_i_abel_plana(k_perp: f64, gap: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_args(k_perp, gap, cfg)?;
    let scale = -2.0 * gap / PI;
    let c = 2.0 * gap * k_perp;
    // Below this the shift from k⊥ = 0 is O((lk⊥)² ln(lk⊥)) < 1e-16 relative.
    if c < 1e-9 {
        return Ok(scale * bose_integral(2.0, 2.0 * gap, cfg)?);
    }
    let k2 = k_perp * k_perp;
    // e^{c}/(e^{c cosh θ} - 1) = e^{-c(cosh θ - 1)}/(1 - e^{-c cosh θ})
    let integrand = move |theta: f64| {
        let s = theta.sinh();
        let half = (0.5 * theta).sinh();
        let decay = (-2.0 * c * half * half).exp();
        if decay == 0.0 {
            0.0
        } else {
            k2 * s * s * decay / -(-c * theta.cosh()).exp_m1()
        }
    };
    // sinh²θ <= sinhθ coshθ; with w = cosh θ the tail is ∫_W^∞ w e^{-c(w-1)} dw
    let tail = move |cut: f64| {
        let w = cut.cosh();
        k2 * (-c * (w - 1.0)).exp() * (w / c + 1.0 / (c * c)) / -(-c * w).exp_m1()
    };
    // cut where c(cosh θ - 1) = 50
    let cut = (1.0 + 50.0 / c).acosh();
    Ok(scale * integrate_with_tail(integrand, cut, tail, cfg)?.value * (-c).exp())
}

/// u(l) = (1/(2π² l)) ∫_0^∞ k² ln(1 - e^{-2lk}) dk by quadrature.
pub fn energy_density(gap: f64, cfg: &QuadratureConfig) -> Result<f64> {
    require_positive("plate gap", gap)?;
    Ok(log_bose_integral(2.0 * gap, cfg)? / (2.0 * PI * PI * gap))
}

/// -π²/(720 l⁴)
pub fn energy_density_closed_form(gap: f64) -> Result<f64> {
    require_positive("plate gap", gap)?;
    Ok(-PI * PI / (720.0 * gap.powi(4)))
}

/// u(l) = (1/(2π l)) ∫_0^∞ k⊥ ΔI(k⊥) dk⊥ with ΔI from [`delta_i_abel_plana`].
pub fn energy_density_abel_plana(gap: f64, cfg: &QuadratureConfig) -> Result<f64> {
    require_positive("plate gap", gap)?;
    cfg.validate()?;
    let a = 2.0 * gap;
    // The inner integrand is evaluated in a closure that cannot return
    // errors, so failures are parked here and surfaced afterwards.
    let failure = std::cell::RefCell::new(None);
    let integrand = |k: f64| match delta_i_abel_plana(k, gap, cfg) {
        Ok(v) => k * v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            0.0
        }
    };
    // |ΔI(k)| <= (2l/π) e^{-2lk}(k/2l + 1/4l²)/(1 - e^{-2lk})
    let tail = |cut: f64| {
        let norm = 2.0 * gap / PI / -(-a * cut).exp_m1();
        norm * (exp_poly_tail(2, a, cut) / a + exp_poly_tail(1, a, cut) / (a * a))
    };
    let cut = cfg.tail_cut_for_rate(a);
    let outer = integrate_with_tail(integrand, cut, tail, cfg);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(outer?.value / (2.0 * PI * gap))
}

/// p(l) = -(1/π²) ∫_0^∞ k³/(e^{2lk} - 1) dk by quadrature.
pub fn pressure(gap: f64, cfg: &QuadratureConfig) -> Result<f64> {
    require_positive("plate gap", gap)?;
    Ok(-bose_integral(4.0, 2.0 * gap, cfg)? / (PI * PI))
}

/// -π²/(240 l⁴)
pub fn pressure_closed_form(gap: f64) -> Result<f64> {
    require_positive("plate gap", gap)?;
    Ok(-PI * PI / (240.0 * gap.powi(4)))
}

/// p = -∂(l u)/∂l, differentiating the quadrature energy density.
pub fn pressure_via_derivative(gap: f64, dcfg: &DerivativeConfig, cfg: &QuadratureConfig) -> Result<f64> {
    require_positive("plate gap", gap)?;
    let dcfg = dcfg.scaled_to(gap);
    if dcfg.step_at(gap) >= gap {
        return Err(Error::invalid(format!(
            "derivative step {} reaches past l = 0 at l = {gap}",
            dcfg.step_at(gap)
        )));
    }
    let energy_per_area = |l: f64| Ok(l * energy_density(l, cfg)?);
    Ok(-derivative(energy_per_area, gap, &dcfg)?)
}

/// Force on a plate of the given area (natural units, m⁻²).
pub fn total_force(geom: &PlateGeometry, cfg: &QuadratureConfig) -> Result<f64> {
    let area = geom
        .transverse_area()
        .ok_or_else(|| Error::invalid("total force requires a transverse plate area"))?;
    Ok(pressure(geom.gap(), cfg)? * area)
}

/// Regulators λ (lengths) and the polynomial order of the λ → 0 fit.
#[derive(Debug, Clone, PartialEq)]
pub struct RegulatorConfig {
    pub lambda_sequence: Vec<f64>,
    pub extrapolation_order: usize,
}

impl RegulatorConfig {
    /// λ ∈ {l/5, l/10, l/20, l/40} with a cubic fit.
    pub fn for_gap(gap: f64) -> Self {
        RegulatorConfig {
            lambda_sequence: [5.0, 10.0, 20.0, 40.0].iter().map(|d| gap / d).collect(),
            extrapolation_order: 3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda_sequence.is_empty() {
            return Err(Error::invalid("regulator sequence is empty"));
        }
        if let Some(bad) = self.lambda_sequence.iter().find(|l| !(**l > 0.0 && l.is_finite())) {
            return Err(Error::invalid(format!("regulator values must be positive, got {bad}")));
        }
        if self.lambda_sequence.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::invalid("regulator sequence must be strictly decreasing"));
        }
        if self.extrapolation_order + 1 > self.lambda_sequence.len() {
            return Err(Error::invalid(format!(
                "order {} fit needs at least {} regulator values, got {}",
                self.extrapolation_order,
                self.extrapolation_order + 1,
                self.lambda_sequence.len()
            )));
        }
        Ok(())
    }
}

/// One regulated evaluation of the finite part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegulatedPoint {
    pub lambda: f64,
    /// ΔE(λ)/L², energy per unit plate area (natural units, m⁻³).
    pub energy_per_area: f64,
    /// Number of discrete modes summed before truncation.
    pub modes: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegulatedFinitePart {
    pub gap: f64,
    pub points: Vec<RegulatedPoint>,
    pub extrapolated: f64,
    pub closed_form: f64,
    pub rel_residual: f64,
}

const MAX_MODES: u64 = 50_000_000;

/// ΔE(λ)/L² = (1/2π) ∫ k⊥ dk⊥ [Σ_n g(n)/2 · k_n e^{-λ k_n} - (l/π) ∫ dk_z k e^{-λk}].
///
/// The transverse integral is done per mode in closed form,
/// ∫_0^∞ k⊥ dk⊥ k_n e^{-λ k_n} = e^{-λq}(q²/λ + 2q/λ² + 2/λ³) with q = πn/l,
/// and the continuum term integrates to 6l/(πλ⁴).
pub fn regulated_energy_per_area(gap: f64, lambda: f64) -> Result<RegulatedPoint> {
    require_positive("plate gap", gap)?;
    require_positive("regulator", lambda)?;
    let transverse = |q: f64| (-lambda * q).exp() * (q * q / lambda + 2.0 * q / (lambda * lambda) + 2.0 / lambda.powi(3));

    // Neumaier summation, terms are positive and decreasing in n.
    let mut sum = 0.5 * transverse(0.0);
    let mut comp = 0.0;
    let mut n = 1u64;
    loop {
        let term = transverse(PI * n as f64 / gap);
        if term < 1e-16 * sum {
            break;
        }
        let t = sum + term;
        comp += if sum.abs() >= term.abs() {
            (sum - t) + term
        } else {
            (term - t) + sum
        };
        sum = t;
        n += 1;
        if n > MAX_MODES {
            return Err(Error::Convergence(format!(
                "regulated mode sum at λ = {lambda:e} not truncated after {MAX_MODES} modes"
            )));
        }
    }
    let continuum = 6.0 * gap / (PI * lambda.powi(4));
    let diff = (sum - continuum) + comp;
    Ok(RegulatedPoint {
        lambda,
        energy_per_area: diff / (2.0 * PI),
        modes: n,
    })
}

/// Value at 0 of the least-squares polynomial of the given order through the points.
pub fn extrapolate_to_zero(xs: &[f64], ys: &[f64], order: usize) -> Result<f64> {
    let n = xs.len();
    if n != ys.len() || n < order + 1 {
        return Err(Error::invalid("not enough points for the requested fit order"));
    }
    let scale = xs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let cols = order + 1;
    // Normal equations in the scaled variable x/scale.
    let mut a = vec![vec![0.0; cols + 1]; cols];
    for (x, y) in xs.iter().zip(ys) {
        let t = x / scale;
        let powers: Vec<f64> = (0..cols).map(|k| t.powi(k as i32)).collect();
        for r in 0..cols {
            for c in 0..cols {
                a[r][c] += powers[r] * powers[c];
            }
            a[r][cols] += powers[r] * y;
        }
    }
    for col in 0..cols {
        let pivot = (col..cols)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty range");
        a.swap(col, pivot);
        if a[col][col].abs() < 1e-300 {
            return Err(Error::Convergence("singular extrapolation system".into()));
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col {
                let factor = row[col] / pivot_row[col];
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= factor * p;
                }
            }
        }
    }
    Ok(a[0][cols] / a[0][0])
}

/// All regulated points and the λ → 0 extrapolation, without a tolerance check.
pub fn regulated_sum_table(gap: f64, reg: &RegulatorConfig) -> Result<RegulatedFinitePart> {
    require_positive("plate gap", gap)?;
    reg.validate()?;
    let points = reg
        .lambda_sequence
        .par_iter()
        .map(|&lambda| regulated_energy_per_area(gap, lambda))
        .collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = points.iter().map(|p| p.lambda).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.energy_per_area).collect();
    let extrapolated = extrapolate_to_zero(&xs, &ys, reg.extrapolation_order)?;
    let closed_form = energy_density_closed_form(gap)? * gap;
    Ok(RegulatedFinitePart {
        gap,
        points,
        extrapolated,
        closed_form,
        rel_residual: ((extrapolated - closed_form) / closed_form).abs(),
    })
}

/// The regulated-sum route to the energy per unit area, -π²/(720 l³).
///
/// Fails if the extrapolation misses the closed form by more than
/// [`REGULATED_TOLERANCE`].
pub fn regulated_finite_part(gap: f64, reg: &RegulatorConfig) -> Result<RegulatedFinitePart> {
    let table = regulated_sum_table(gap, reg)?;
    if table.rel_residual > REGULATED_TOLERANCE {
        return Err(Error::Convergence(format!(
            "regulated extrapolation {:e} misses {:e} by {:e} (relative)",
            table.extrapolated, table.closed_form, table.rel_residual
        )));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::abel_plana::abel_plana_branch_from;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn geometry_and_modes() {
        assert!(PlateGeometry::new(0.0).is_err());
        assert!(PlateGeometry::new(-1.0).is_err());
        let g = PlateGeometry::new(2.0).unwrap();
        assert_eq!(g.k_z(2), PI);
        assert!(PlateGeometry::from_quantity(Quantity::temperature(3.0)).is_err());
        let g = PlateGeometry::from_quantity(Quantity::length(1e-6)).unwrap();
        assert_eq!(g.gap(), 1e-6);

        let m = ModeSpectrum::new(0.7, 1.0).unwrap();
        assert_eq!(m.k_n(0), 0.7);
        assert!((0..50).all(|n| m.k_n(n + 1) > m.k_n(n)));
        assert_eq!(ModeSpectrum::degeneracy(0), 1);
        assert_eq!(ModeSpectrum::degeneracy(1), 2);
        assert_eq!(ModeSpectrum::degeneracy(17), 2);
        assert!(ModeSpectrum::new(-0.1, 1.0).is_err());
    }

    #[test]
    fn massless_transverse_limit() {
        let expected = -PI / 12.0;
        assert!(rel(delta_i_abel_plana(0.0, 1.0, &cfg()).unwrap(), expected) < 1e-12);
        assert!(rel(delta_i_log_route(0.0, 1.0, &cfg()).unwrap(), expected) < 1e-12);
        assert!((expected + 0.2617994).abs() < 1e-7);
    }

    #[test]
    fn routes_agree_at_unit_coupling() {
        let a = delta_i_log_route(1.0, 1.0, &cfg()).unwrap();
        let b = delta_i_abel_plana(1.0, 1.0, &cfg()).unwrap();
        assert!(rel(a, b) < 1e-10, "{a} vs {b}");
        assert!(a < 0.0);
    }

    #[test]
    fn generic_operator_reproduces_casimir_branch_term() {
        // f(x) = √(k⊥² + (πx/l)²): i[f(ix) - f(-ix)] = -2√((πx/l)² - k⊥²) above onset.
        let (k, l) = (0.5, 1.0);
        let disc = |x: f64| {
            let q = PI * x / l;
            if q > k {
                -2.0 * (q * q - k * k).sqrt()
            } else {
                0.0
            }
        };
        let generic = abel_plana_branch_from(disc, l * k / PI, &cfg()).unwrap();
        let dedicated = delta_i_abel_plana(k, l, &cfg()).unwrap();
        assert!(rel(generic, dedicated) < 1e-10, "{generic} vs {dedicated}");
    }

    #[test]
    fn finite_part_scaling_and_decay() {
        for (k, l) in [(0.3, 2.0), (4.0, 0.5)] {
            let lhs = delta_i_log_route(k, l, &cfg()).unwrap();
            let rhs = delta_i_log_route(l * k, 1.0, &cfg()).unwrap() / l;
            assert!(rel(lhs, rhs) < 1e-10);
        }
        let far = delta_i_abel_plana(40.0, 1.0, &cfg()).unwrap();
        assert!(far.abs() < 1e-30 && far <= 0.0);
        assert!(delta_i_log_route(40.0, 1.0, &cfg()).unwrap().abs() < 1e-30);
    }

    #[test]
    fn energy_density_examples() {
        let u1 = energy_density(1.0, &cfg()).unwrap();
        assert!(rel(u1, -PI * PI / 720.0) < 1e-10);
        assert!((u1 + 1.3707783e-2).abs() < 1e-9);
        let u2 = energy_density(2.0, &cfg()).unwrap();
        assert!(rel(u2, -PI * PI / 720.0 / 16.0) < 1e-10);
        assert!((u2 + 8.5673646e-4).abs() < 1e-10);
        assert!(energy_density(0.0, &cfg()).is_err());
    }

    #[test]
    fn nested_abel_plana_energy_density() {
        let u = energy_density_abel_plana(1.0, &cfg()).unwrap();
        assert!(rel(u, -PI * PI / 720.0) < 1e-9, "{u}");
    }

    #[test]
    fn pressure_examples() {
        let p = pressure(1.0, &cfg()).unwrap();
        assert!(rel(p, -PI * PI / 240.0) < 1e-10);
        assert!((p + 4.1123352e-2).abs() < 1e-9);
        for l in [0.3, 1.0, 7.0] {
            let ratio = pressure(l, &cfg()).unwrap() / energy_density(l, &cfg()).unwrap();
            assert!((ratio - 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn derivative_route() {
        let d = DerivativeConfig::default();
        let p = pressure_via_derivative(1.0, &d, &cfg()).unwrap();
        assert!(rel(p, -PI * PI / 240.0) < 1e-6);
        let p = pressure_via_derivative(0.5, &d, &cfg()).unwrap();
        assert!(rel(p, -16.0 * PI * PI / 240.0) < 1e-6);
        let huge = DerivativeConfig { initial_step: Some(2.0), ..d };
        assert!(pressure_via_derivative(1.0, &huge, &cfg()).is_err());
    }

    #[test]
    fn total_force_requires_area() {
        let g = PlateGeometry::new(1.0).unwrap();
        assert!(total_force(&g, &cfg()).is_err());
        let g = g.with_area(0.0).unwrap();
        assert_eq!(total_force(&g, &cfg()).unwrap(), 0.0);
        let f1 = total_force(&g.with_area(3.0).unwrap(), &cfg()).unwrap();
        let f2 = total_force(&g.with_area(6.0).unwrap(), &cfg()).unwrap();
        assert!(rel(f2, 2.0 * f1) < 1e-15);
        assert!(g.with_area(-1.0).is_err());
    }

    #[test]
    fn regulated_points_are_finite() {
        for lambda in [0.2, 0.05, 0.01] {
            let p = regulated_energy_per_area(1.0, lambda).unwrap();
            assert!(p.energy_per_area.is_finite());
            assert!(p.modes > 1);
        }
    }

    #[test]
    fn regulated_sum_extrapolates_to_closed_form() {
        for l in [1.0, 2.0] {
            let r = regulated_finite_part(l, &RegulatorConfig::for_gap(l)).unwrap();
            assert!(r.rel_residual <= 1e-3, "l = {l}: {r:?}");
            assert!(rel(r.extrapolated, -PI * PI / 720.0 / l.powi(3)) <= 1e-3);
        }
    }

    #[test]
    fn regulator_validation() {
        let mut reg = RegulatorConfig::for_gap(1.0);
        reg.lambda_sequence = vec![0.1, 0.2, 0.05, 0.01];
        assert!(reg.validate().is_err());
        reg.lambda_sequence = vec![0.2, 0.1];
        assert!(reg.validate().is_err());
        reg.lambda_sequence = vec![0.2, 0.1, 0.0, -0.1];
        assert!(reg.validate().is_err());
    }

    #[test]
    fn extrapolation_recovers_polynomials() {
        let xs = [0.4, 0.2, 0.1, 0.05, 0.025];
        let ys: Vec<f64> = xs.iter().map(|x| 1.5 - 2.0 * x + 0.25 * x * x * x).collect();
        assert!((extrapolate_to_zero(&xs, &ys, 3).unwrap() - 1.5).abs() < 1e-12);
        assert!((extrapolate_to_zero(&xs[..4], &ys[..4], 3).unwrap() - 1.5).abs() < 1e-12);
        assert!(extrapolate_to_zero(&xs[..2], &ys[..2], 3).is_err());
    }
}
