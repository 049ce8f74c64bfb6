//! Dimensional bookkeeping and the natural-unit reduction.
//!
//! A [`Quantity`] carries an SI magnitude and a [`Dimension`] over
//! (length, time, mass, temperature). Setting ħ = c = k_B = 1 collapses every
//! such dimension onto a single power of length; [`to_natural`] and
//! [`from_natural`] convert across that boundary. The rest of the crate works
//! with natural-unit magnitudes where the length unit is the metre.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul};

use crate::error::{Error, Result};

/// Integer exponents of (length, time, mass, temperature).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Dimension {
    pub length: i8,
    pub time: i8,
    pub mass: i8,
    pub temperature: i8,
}

impl Dimension {
    pub const fn new(length: i8, time: i8, mass: i8, temperature: i8) -> Self {
        Dimension {
            length,
            time,
            mass,
            temperature,
        }
    }

    pub const DIMENSIONLESS: Dimension = Dimension::new(0, 0, 0, 0);
    pub const LENGTH: Dimension = Dimension::new(1, 0, 0, 0);
    pub const INVERSE_LENGTH: Dimension = Dimension::new(-1, 0, 0, 0);
    pub const AREA: Dimension = Dimension::new(2, 0, 0, 0);
    pub const TIME: Dimension = Dimension::new(0, 1, 0, 0);
    pub const MASS: Dimension = Dimension::new(0, 0, 1, 0);
    pub const TEMPERATURE: Dimension = Dimension::new(0, 0, 0, 1);
    pub const ENERGY: Dimension = Dimension::new(2, -2, 1, 0);
    pub const FORCE: Dimension = Dimension::new(1, -2, 1, 0);
    /// Pa, identical to J/m³.
    pub const PRESSURE: Dimension = Dimension::new(-1, -2, 1, 0);
    pub const ENERGY_DENSITY: Dimension = Dimension::PRESSURE;
    /// J/m², energy per unit plate area.
    pub const ENERGY_PER_AREA: Dimension = Dimension::new(0, -2, 1, 0);
    /// J/(K·m³).
    pub const ENTROPY_DENSITY: Dimension = Dimension::new(-1, -2, 1, -1);

    pub fn powi(self, n: i8) -> Self {
        Dimension::new(
            self.length * n,
            self.time * n,
            self.mass * n,
            self.temperature * n,
        )
    }

    /// Length exponent left after setting ħ = c = k_B = 1.
    pub fn natural_length_power(self) -> i32 {
        self.length as i32 + self.time as i32 - self.mass as i32 - self.temperature as i32
    }

    /// Conventional SI symbol for the dimensions this crate reports.
    pub fn si_symbol(self) -> String {
        match self {
            Dimension::DIMENSIONLESS => "1".into(),
            Dimension::LENGTH => "m".into(),
            Dimension::AREA => "m^2".into(),
            Dimension::TEMPERATURE => "K".into(),
            Dimension::FORCE => "N".into(),
            Dimension::ENERGY => "J".into(),
            Dimension::PRESSURE => "Pa".into(),
            Dimension::ENERGY_PER_AREA => "J/m^2".into(),
            Dimension::ENTROPY_DENSITY => "J/(K m^3)".into(),
            other => other.to_string(),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [
            ("m", self.length),
            ("s", self.time),
            ("kg", self.mass),
            ("K", self.temperature),
        ];
        let mut first = true;
        for (sym, exp) in parts.iter().filter(|(_, e)| *e != 0) {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if *exp == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{exp}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl Mul for Dimension {
    type Output = Dimension;
    fn mul(self, rhs: Dimension) -> Dimension {
        Dimension::new(
            self.length + rhs.length,
            self.time + rhs.time,
            self.mass + rhs.mass,
            self.temperature + rhs.temperature,
        )
    }
}

impl Div for Dimension {
    type Output = Dimension;
    fn div(self, rhs: Dimension) -> Dimension {
        Dimension::new(
            self.length - rhs.length,
            self.time - rhs.time,
            self.mass - rhs.mass,
            self.temperature - rhs.temperature,
        )
    }
}

/// An SI magnitude together with its dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub magnitude: f64,
    pub dim: Dimension,
}

impl Quantity {
    pub const fn new(magnitude: f64, dim: Dimension) -> Self {
        Quantity { magnitude, dim }
    }

    pub const fn length(metres: f64) -> Self {
        Quantity::new(metres, Dimension::LENGTH)
    }

    pub const fn temperature(kelvin: f64) -> Self {
        Quantity::new(kelvin, Dimension::TEMPERATURE)
    }

    fn require_same_dim(&self, other: &Quantity) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            })
        }
    }

    pub fn expect_dim(self, expected: Dimension) -> Result<Self> {
        if self.dim == expected {
            Ok(self)
        } else {
            Err(Error::DimensionMismatch {
                expected,
                found: self.dim,
            })
        }
    }

    pub fn checked_add(self, other: Quantity) -> Result<Quantity> {
        self.require_same_dim(&other)?;
        Ok(Quantity::new(self.magnitude + other.magnitude, self.dim))
    }

    pub fn checked_sub(self, other: Quantity) -> Result<Quantity> {
        self.require_same_dim(&other)?;
        Ok(Quantity::new(self.magnitude - other.magnitude, self.dim))
    }

    /// Ordering is only defined between quantities of the same dimension.
    pub fn try_cmp(&self, other: &Quantity) -> Result<Option<Ordering>> {
        self.require_same_dim(other)?;
        Ok(self.magnitude.partial_cmp(&other.magnitude))
    }
}

impl Mul for Quantity {
    type Output = Quantity;
    fn mul(self, rhs: Quantity) -> Quantity {
        Quantity::new(self.magnitude * rhs.magnitude, self.dim * rhs.dim)
    }
}

impl Div for Quantity {
    type Output = Quantity;
    fn div(self, rhs: Quantity) -> Quantity {
        Quantity::new(self.magnitude / rhs.magnitude, self.dim / rhs.dim)
    }
}

impl Mul<f64> for Quantity {
    type Output = Quantity;
    fn mul(self, rhs: f64) -> Quantity {
        Quantity::new(self.magnitude * rhs, self.dim)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.magnitude, self.dim.si_symbol())
    }
}

/// A magnitude in natural units (ħ = c = k_B = 1), measured in powers of metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NaturalQuantity {
    pub magnitude: f64,
    pub length_power: i32,
}

/// CODATA-2018 exact values of ħ, c and k_B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    hbar: f64,
    c: f64,
    k_b: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        hbar: 1.054571817e-34,
        c: 2.99792458e8,
        k_b: 1.380649e-23,
    };

    /// J·s
    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// m/s
    pub fn c(&self) -> f64 {
        self.c
    }

    /// J/K
    pub fn k_b(&self) -> f64 {
        self.k_b
    }

    /// J·m
    pub fn hbar_c(&self) -> f64 {
        self.hbar * self.c
    }

    /// Multiplier taking an SI magnitude of dimension `dim` to its natural-unit magnitude.
    fn natural_factor(&self, dim: Dimension) -> f64 {
        let per_second = self.c;
        let per_kilogram = self.c / self.hbar;
        let per_kelvin = self.k_b / (self.hbar * self.c);
        per_second.powi(dim.time as i32)
            * per_kilogram.powi(dim.mass as i32)
            * per_kelvin.powi(dim.temperature as i32)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants::CODATA_2018
    }
}

/// Reduces an SI quantity to natural units.
///
/// Every dimension over (length, time, mass, temperature) reduces to a power
/// of length, so the only failure is a non-finite magnitude.
pub fn to_natural(q: Quantity, constants: &PhysicalConstants) -> Result<NaturalQuantity> {
    if !q.magnitude.is_finite() {
        return Err(Error::NonFinite(format!("quantity magnitude {}", q.magnitude)));
    }
    Ok(NaturalQuantity {
        magnitude: q.magnitude * constants.natural_factor(q.dim),
        length_power: q.dim.natural_length_power(),
    })
}

/// Restores SI units for a natural-unit magnitude, given the SI dimension it represents.
pub fn from_natural(
    q: NaturalQuantity,
    target: Dimension,
    constants: &PhysicalConstants,
) -> Result<Quantity> {
    if target.natural_length_power() != q.length_power {
        return Err(Error::invalid(format!(
            "natural length power {} does not match {} (length power {})",
            q.length_power,
            target,
            target.natural_length_power()
        )));
    }
    if !q.magnitude.is_finite() {
        return Err(Error::NonFinite(format!("quantity magnitude {}", q.magnitude)));
    }
    Ok(Quantity::new(q.magnitude / constants.natural_factor(target), target))
}

/// Converts a natural-unit magnitude straight to its SI magnitude.
pub fn natural_to_si(magnitude: f64, target: Dimension, constants: &PhysicalConstants) -> f64 {
    magnitude / constants.natural_factor(target)
}

/// β = ħc/(k_B T), a length.
///
/// Accepts an SI temperature (K) or a natural-unit temperature (inverse length).
pub fn beta_from_temperature(t: Quantity, constants: &PhysicalConstants) -> Result<Quantity> {
    let natural_t = match t.dim {
        Dimension::TEMPERATURE | Dimension::INVERSE_LENGTH => to_natural(t, constants)?,
        found => {
            return Err(Error::DimensionMismatch {
                expected: Dimension::TEMPERATURE,
                found,
            })
        }
    };
    if natural_t.magnitude <= 0.0 || natural_t.magnitude.is_nan() {
        return Err(Error::invalid(format!(
            "temperature must be positive, got {}",
            t.magnitude
        )));
    }
    Ok(Quantity::length(1.0 / natural_t.magnitude))
}

/// A command-line magnitude: either a bare (natural-unit) number or one with an SI suffix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParsedValue {
    Bare(f64),
    Si(Quantity),
}

// Longer suffixes first so "um" wins over "m".
const UNIT_SUFFIXES: &[(&str, f64, Dimension)] = &[
    ("J/m3", 1.0, Dimension::ENERGY_DENSITY),
    ("m2", 1.0, Dimension::AREA),
    ("um", 1e-6, Dimension::LENGTH),
    ("µm", 1e-6, Dimension::LENGTH),
    ("mm", 1e-3, Dimension::LENGTH),
    ("nm", 1e-9, Dimension::LENGTH),
    ("Pa", 1.0, Dimension::PRESSURE),
    ("m", 1.0, Dimension::LENGTH),
    ("K", 1.0, Dimension::TEMPERATURE),
];

/// Parses `"1um"`, `"300K"`, `"2.5e-7m"`, `"1"` and friends.
pub fn parse_value(input: &str) -> Result<ParsedValue> {
    let s = input.trim();
    if s.is_empty() {
        return Err(Error::parse(input, "empty value"));
    }
    if let Ok(v) = s.parse::<f64>() {
        return if v.is_finite() {
            Ok(ParsedValue::Bare(v))
        } else {
            Err(Error::parse(input, "value is not finite"))
        };
    }
    for &(suffix, scale, dim) in UNIT_SUFFIXES {
        if let Some(number) = s.strip_suffix(suffix) {
            if let Ok(v) = number.trim_end().parse::<f64>() {
                if !v.is_finite() {
                    return Err(Error::parse(input, "value is not finite"));
                }
                return Ok(ParsedValue::Si(Quantity::new(v * scale, dim)));
            }
        }
    }
    Err(Error::parse(
        input,
        "expected a number optionally followed by one of m, mm, um, nm, m2, K, Pa, J/m3",
    ))
}
