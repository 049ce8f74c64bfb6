//! Command-line front end.
//!
//! Inputs are parsed at the boundary into natural-unit magnitudes, every
//! computation runs in natural units, and each result is emitted as an
//! [`OutputRecord`] carrying both the natural and the SI value.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blackbody::{self, ThermalState};
use crate::casimir::{self, PlateGeometry, RegulatorConfig, REGULATED_TOLERANCE};
use crate::duality::{self, Route};
use crate::error::{Error, Result};
use crate::numerics::{DerivativeConfig, QuadratureConfig};
use crate::quantities::{natural_to_si, parse_value, to_natural, Dimension, ParsedValue, PhysicalConstants};
use crate::Method;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

/// One reported value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputRecord {
    pub quantity: String,
    pub value_natural: f64,
    pub value_si: f64,
    pub si_unit: String,
    pub method: Method,
    /// Relative deviation from the closed form, absent for closed-form values.
    pub rel_residual: Option<f64>,
    /// Inputs in natural units (lengths in metres).
    pub parameters: BTreeMap<String, f64>,
}

#[derive(Debug, Parser)]
#[command(name = "casimir-planck", version, about = "Casimir plates, blackbody radiation and the 2l <-> beta duality")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pressure and energy density between plates (and force, given an area).
    Casimir(CasimirArgs),
    /// Pressure, free energy, internal energy and entropy of the photon gas.
    Planck(PlanckArgs),
    /// Swap residuals and the inconsistency ratio for one gap.
    Duality(DualityArgs),
    /// Tabulate one quantity over a range.
    Sweep(SweepArgs),
    /// Regulated mode sum and its extrapolation to zero regulator.
    Modesum(ModesumArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    Natural,
    Si,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    ClosedForm,
    Quadrature,
    Derivative,
    RegulatedSum,
    AbelPlana,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::ClosedForm => Method::ClosedForm,
            MethodArg::Quadrature => Method::Quadrature,
            MethodArg::Derivative => Method::Derivative,
            MethodArg::RegulatedSum => Method::RegulatedSum,
            MethodArg::AbelPlana => Method::AbelPlana,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Unit system for inputs without a suffix and for displayed values.
    #[arg(long, value_enum, default_value = "natural")]
    pub units: Units,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Relative tolerance of the quadratures.
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
    /// Absolute tolerance of the quadratures.
    #[arg(long, default_value_t = 1e-14)]
    pub abs_tol: f64,
}

impl CommonArgs {
    fn quadrature(&self) -> Result<QuadratureConfig> {
        let cfg = QuadratureConfig {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            ..QuadratureConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args)]
pub struct CasimirArgs {
    /// Plate gap, e.g. 1um or a bare natural-unit length.
    #[arg(long, allow_hyphen_values = true)]
    pub gap: String,
    /// Plate area (m2 suffix in SI), adds the total force.
    #[arg(long, allow_hyphen_values = true)]
    pub area: Option<String>,
    /// Route for each quantity; quantities without that route fall back to quadrature.
    #[arg(long, value_enum, default_value = "quadrature")]
    pub method: MethodArg,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
#[command(group(clap::ArgGroup::new("state").required(true).args(["temperature", "beta"])))]
pub struct PlanckArgs {
    /// Temperature, e.g. 300K or a bare natural-unit value (inverse metres).
    #[arg(long, allow_hyphen_values = true)]
    pub temperature: Option<String>,
    /// Inverse temperature as a length.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, value_enum, default_value = "quadrature")]
    pub method: MethodArg,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone, Args)]
pub struct DualityArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub gap: String,
    /// Route for the swap residuals.
    #[arg(long, value_enum, default_value = "closed-form")]
    pub method: RouteArg,
    /// Emit the report as JSON.
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Observable {
    CasimirPressure,
    CasimirEnergy,
    PlanckP,
    PlanckU,
    PlanckS,
    PlanckF,
    DualEntropy,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(value_enum)]
    pub quantity: Observable,
    /// Gap range min:max.
    #[arg(long, allow_hyphen_values = true)]
    pub gap: Option<String>,
    /// Inverse-temperature range min:max.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Temperature range min:max.
    #[arg(long, allow_hyphen_values = true)]
    pub temperature: Option<String>,
    #[arg(long, default_value_t = 11)]
    pub points: usize,
    #[arg(long, value_enum, default_value = "log")]
    pub scale: Scale,
    #[arg(long, value_enum, default_value = "quadrature")]
    pub method: MethodArg,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ModesumArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub gap: String,
    /// Comma-separated regulators (lengths); defaults to l/5, l/10, l/20, l/40.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Option<Vec<String>>,
    /// Polynomial order of the fit in the regulator.
    #[arg(long, default_value_t = 3)]
    pub order: usize,
    #[command(flatten)]
    pub common: CommonArgs,
}

const CODATA: PhysicalConstants = PhysicalConstants::CODATA_2018;

impl Observable {
    pub fn name(self) -> &'static str {
        match self {
            Observable::CasimirPressure => "casimir-pressure",
            Observable::CasimirEnergy => "casimir-energy",
            Observable::PlanckP => "planck-p",
            Observable::PlanckU => "planck-u",
            Observable::PlanckS => "planck-s",
            Observable::PlanckF => "planck-f",
            Observable::DualEntropy => "dual-entropy",
        }
    }

    /// J/m^3 for energy densities, which share their dimension with pressure.
    pub fn si_unit(self) -> String {
        match self {
            Observable::CasimirEnergy | Observable::PlanckU | Observable::PlanckF => "J/m^3".into(),
            other => other.dimension().si_symbol(),
        }
    }

    pub fn dimension(self) -> Dimension {
        match self {
            Observable::CasimirPressure | Observable::PlanckP => Dimension::PRESSURE,
            Observable::CasimirEnergy | Observable::PlanckU | Observable::PlanckF => Dimension::ENERGY_DENSITY,
            Observable::PlanckS | Observable::DualEntropy => Dimension::ENTROPY_DENSITY,
        }
    }

    fn is_thermal(self) -> bool {
        matches!(
            self,
            Observable::PlanckP | Observable::PlanckU | Observable::PlanckS | Observable::PlanckF
        )
    }

    /// Natural-unit value at gap `x` or inverse temperature `x`, closed form.
    pub fn closed_form(self, x: f64) -> Result<f64> {
        let st = || ThermalState::from_beta(x);
        Ok(match self {
            Observable::CasimirPressure => casimir::pressure_closed_form(x)?,
            Observable::CasimirEnergy => casimir::energy_density_closed_form(x)?,
            Observable::PlanckP => blackbody::pressure_bb_closed_form(&st()?),
            Observable::PlanckU => blackbody::internal_energy_bb_closed_form(&st()?),
            Observable::PlanckF => -blackbody::pressure_bb_closed_form(&st()?),
            Observable::PlanckS => {
                let s = st()?;
                (blackbody::pressure_bb_closed_form(&s) + blackbody::internal_energy_bb_closed_form(&s)) * x
            }
            Observable::DualEntropy => duality::dual_entropy_density_closed_form(x)?,
        })
    }

    /// Evaluates by `method` where this quantity has that route, by
    /// quadrature otherwise. Returns the value and the route actually used.
    pub fn evaluate(self, x: f64, method: Method, cfg: &QuadratureConfig) -> Result<(f64, Method)> {
        let dcfg = DerivativeConfig::default();
        let st = || ThermalState::from_beta(x);
        let value = match (self, method) {
            (_, Method::ClosedForm) => return Ok((self.closed_form(x)?, Method::ClosedForm)),
            (Observable::CasimirPressure, Method::Derivative) => {
                return Ok((casimir::pressure_via_derivative(x, &dcfg, cfg)?, Method::Derivative))
            }
            (Observable::CasimirEnergy, Method::AbelPlana) => {
                return Ok((casimir::energy_density_abel_plana(x, cfg)?, Method::AbelPlana))
            }
            (Observable::CasimirEnergy, Method::RegulatedSum) => {
                let part = casimir::regulated_finite_part(x, &RegulatorConfig::for_gap(x))?;
                return Ok((part.extrapolated / x, Method::RegulatedSum));
            }
            (Observable::PlanckU, Method::Derivative) => {
                return Ok((blackbody::internal_energy_via_derivative(&st()?, &dcfg, cfg)?, Method::Derivative))
            }
            (Observable::CasimirPressure, _) => casimir::pressure(x, cfg)?,
            (Observable::CasimirEnergy, _) => casimir::energy_density(x, cfg)?,
            (Observable::PlanckP, _) => blackbody::pressure_bb(&st()?, cfg)?,
            (Observable::PlanckU, _) => blackbody::internal_energy_bb(&st()?, cfg)?,
            (Observable::PlanckF, _) => -blackbody::pressure_bb(&st()?, cfg)?,
            (Observable::PlanckS, _) => blackbody::entropy_density(&st()?, cfg)?,
            (Observable::DualEntropy, _) => duality::dual_entropy_density(x, Route::Quadrature, cfg)?,
        };
        Ok((value, Method::Quadrature))
    }

    pub fn record(self, x: f64, method: Method, cfg: &QuadratureConfig) -> Result<OutputRecord> {
        let (value, used) = self.evaluate(x, method, cfg)?;
        let rel_residual = match used {
            Method::ClosedForm => None,
            _ => {
                let exact = self.closed_form(x)?;
                Some(((value - exact) / exact).abs())
            }
        };
        let parameters = if self.is_thermal() {
            thermal_parameters(x)
        } else {
            BTreeMap::from([("gap".to_string(), x)])
        };
        let mut rec = make_record(self.name(), value, self.dimension(), used, rel_residual, parameters);
        rec.si_unit = self.si_unit();
        Ok(rec)
    }
}

fn thermal_parameters(beta: f64) -> BTreeMap<String, f64> {
    BTreeMap::from([
        ("beta".to_string(), beta),
        ("temperature_kelvin".to_string(), CODATA.hbar_c() / (CODATA.k_b() * beta)),
    ])
}

fn make_record(
    quantity: &str,
    value: f64,
    dim: Dimension,
    method: Method,
    rel_residual: Option<f64>,
    parameters: BTreeMap<String, f64>,
) -> OutputRecord {
    OutputRecord {
        quantity: quantity.to_string(),
        value_natural: value,
        value_si: natural_to_si(value, dim, &CODATA),
        si_unit: dim.si_symbol(),
        method,
        rel_residual,
        parameters,
    }
}

/// Reads a magnitude of the given SI dimension and returns it in natural units.
/// Bare numbers are natural-unit values and are refused under `--units si`.
fn resolve(input: &str, dim: Dimension, units: Units) -> Result<f64> {
    match parse_value(input)? {
        ParsedValue::Bare(v) => match units {
            Units::Natural => Ok(v),
            Units::Si => Err(Error::Parse {
                input: input.to_string(),
                reason: format!("a unit suffix ({}) is required with --units si", dim.si_symbol()),
            }),
        },
        ParsedValue::Si(q) => Ok(to_natural(q.expect_dim(dim)?, &CODATA)?.magnitude),
    }
}

fn parse_range(input: &str, dim: Dimension, units: Units) -> Result<(f64, f64)> {
    let (lo, hi) = input.split_once(':').ok_or_else(|| Error::Parse {
        input: input.to_string(),
        reason: "expected min:max".into(),
    })?;
    let (lo, hi) = (resolve(lo, dim, units)?, resolve(hi, dim, units)?);
    if lo >= hi || lo.is_nan() || hi.is_nan() {
        return Err(Error::InvalidArgument(format!("range needs min < max, got {lo}:{hi}")));
    }
    Ok((lo, hi))
}

/// Sample points over [lo, hi], endpoints included.
pub fn grid(lo: f64, hi: f64, points: usize, scale: Scale) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::InvalidArgument(format!("--points must be at least 2, got {points}")));
    }
    if scale == Scale::Log && lo <= 0.0 {
        return Err(Error::InvalidArgument("a log grid needs a positive range".into()));
    }
    let last = (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            let t = i as f64 / last;
            match (i, scale) {
                (0, _) => lo,
                (i, _) if i == points - 1 => hi,
                (_, Scale::Linear) => lo + (hi - lo) * t,
                (_, Scale::Log) => lo * (hi / lo).powf(t),
            }
        })
        .collect())
}

fn casimir_records(args: &CasimirArgs) -> Result<Vec<OutputRecord>> {
    let units = args.common.units;
    let cfg = args.common.quadrature()?;
    let mut geom = PlateGeometry::new(resolve(&args.gap, Dimension::LENGTH, units)?)?;
    if let Some(area) = &args.area {
        geom = geom.with_area(resolve(area, Dimension::AREA, units)?)?;
    }
    let method = args.method.into();
    let mut records = vec![
        Observable::CasimirPressure.record(geom.gap(), method, &cfg)?,
        Observable::CasimirEnergy.record(geom.gap(), method, &cfg)?,
    ];
    if let Some(area) = geom.transverse_area() {
        let p = &records[0];
        let mut parameters = p.parameters.clone();
        parameters.insert("area".into(), area);
        records.push(make_record(
            "casimir-force",
            p.value_natural * area,
            Dimension::FORCE,
            p.method,
            p.rel_residual,
            parameters,
        ));
    }
    Ok(records)
}

fn planck_records(args: &PlanckArgs) -> Result<Vec<OutputRecord>> {
    let units = args.common.units;
    let cfg = args.common.quadrature()?;
    let state = match (&args.temperature, &args.beta) {
        (Some(t), None) => ThermalState::from_natural_temperature(resolve(t, Dimension::TEMPERATURE, units)?)?,
        (None, Some(b)) => ThermalState::from_beta(resolve(b, Dimension::LENGTH, units)?)?,
        _ => return Err(Error::InvalidArgument("give exactly one of --temperature, --beta".into())),
    };
    let method = args.method.into();
    [Observable::PlanckP, Observable::PlanckF, Observable::PlanckU, Observable::PlanckS]
        .iter()
        .map(|o| o.record(state.beta(), method, &cfg))
        .collect()
}

fn sweep_records(args: &SweepArgs) -> Result<Vec<OutputRecord>> {
    let units = args.common.units;
    let cfg = args.common.quadrature()?;
    let thermal = args.quantity.is_thermal();
    let (param, lo, hi) = match (&args.gap, &args.beta, &args.temperature) {
        (Some(g), None, None) if !thermal => {
            let (lo, hi) = parse_range(g, Dimension::LENGTH, units)?;
            ("gap", lo, hi)
        }
        (None, Some(b), None) if thermal => {
            let (lo, hi) = parse_range(b, Dimension::LENGTH, units)?;
            ("beta", lo, hi)
        }
        (None, None, Some(t)) if thermal => {
            let (lo, hi) = parse_range(t, Dimension::TEMPERATURE, units)?;
            ("temperature", lo, hi)
        }
        _ if thermal => {
            return Err(Error::InvalidArgument(format!(
                "{} takes exactly one of --beta, --temperature",
                args.quantity.name()
            )))
        }
        _ => return Err(Error::InvalidArgument(format!("{} takes --gap", args.quantity.name()))),
    };
    let xs = grid(lo, hi, args.points, args.scale)?;
    let method = args.method.into();
    xs.par_iter()
        .map(|&x| {
            let at = if param == "temperature" { 1.0 / x } else { x };
            let mut rec = args.quantity.record(at, method, &cfg)?;
            if param == "temperature" {
                rec.parameters.insert("temperature".into(), x);
            }
            Ok(rec)
        })
        .collect()
}

/// Regulated table rows plus the extrapolated row, and whether it met the tolerance.
fn modesum_records(args: &ModesumArgs) -> Result<(Vec<OutputRecord>, f64)> {
    let units = args.common.units;
    let gap = resolve(&args.gap, Dimension::LENGTH, units)?;
    casimir::PlateGeometry::new(gap)?;
    let reg = match &args.lambda {
        None => RegulatorConfig {
            extrapolation_order: args.order,
            ..RegulatorConfig::for_gap(gap)
        },
        Some(list) => {
            let mut lambdas = list
                .iter()
                .map(|s| resolve(s.trim(), Dimension::LENGTH, units))
                .collect::<Result<Vec<_>>>()?;
            lambdas.sort_by(|a, b| b.total_cmp(a));
            RegulatorConfig {
                lambda_sequence: lambdas,
                extrapolation_order: args.order,
            }
        }
    };
    let table = casimir::regulated_sum_table(gap, &reg)?;
    let mut records: Vec<OutputRecord> = table
        .points
        .iter()
        .map(|p| {
            let params = BTreeMap::from([
                ("gap".to_string(), gap),
                ("lambda".to_string(), p.lambda),
                ("modes".to_string(), p.modes as f64),
            ]);
            make_record(
                "regulated-energy-per-area",
                p.energy_per_area,
                Dimension::ENERGY_PER_AREA,
                Method::RegulatedSum,
                None,
                params,
            )
        })
        .collect();
    let params = BTreeMap::from([
        ("gap".to_string(), gap),
        ("order".to_string(), args.order as f64),
    ]);
    records.push(make_record(
        "casimir-energy-per-area",
        table.extrapolated,
        Dimension::ENERGY_PER_AREA,
        Method::RegulatedSum,
        Some(table.rel_residual),
        params,
    ));
    Ok((records, table.rel_residual))
}

/// `%.11e` as printed by C: 12 significant digits, signed two-digit exponent.
pub fn format_sci(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{x:.11e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn natural_unit(dim: Dimension) -> String {
    match dim.natural_length_power() {
        0 => "1".into(),
        1 => "m".into(),
        p => format!("m^{p}"),
    }
}

fn parameter_names(records: &[OutputRecord]) -> Vec<String> {
    let mut names: Vec<String> = records.iter().flat_map(|r| r.parameters.keys().cloned()).collect();
    names.sort();
    names.dedup();
    names
}

fn record_dimension(r: &OutputRecord) -> Dimension {
    match r.si_unit.as_str() {
        "J/m^3" => Dimension::ENERGY_DENSITY,
        unit => [
            Dimension::PRESSURE,
            Dimension::ENTROPY_DENSITY,
            Dimension::FORCE,
            Dimension::ENERGY_PER_AREA,
        ]
        .into_iter()
        .find(|d| d.si_symbol() == unit)
        .unwrap_or(Dimension::DIMENSIONLESS),
    }
}

pub fn render(records: &[OutputRecord], format: Format, units: Units) -> String {
    let params = parameter_names(records);
    let mut out = String::new();
    match format {
        Format::Json => {
            for r in records {
                out.push_str(&serde_json::to_string(r).expect("records serialize"));
                out.push('\n');
            }
        }
        Format::Csv => {
            let mut header = vec!["quantity".to_string(), "method".to_string()];
            header.extend(params.iter().cloned());
            header.extend(["value_natural", "value_si", "si_unit", "rel_residual"].map(String::from));
            out.push_str(&header.join(","));
            out.push('\n');
            for r in records {
                let mut row = vec![r.quantity.clone(), r.method.to_string()];
                row.extend(params.iter().map(|p| r.parameters.get(p).map(|v| format_sci(*v)).unwrap_or_default()));
                row.push(format_sci(r.value_natural));
                row.push(format_sci(r.value_si));
                row.push(r.si_unit.clone());
                row.push(r.rel_residual.map(format_sci).unwrap_or_default());
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        Format::Table => {
            let mut rows = vec![{
                let mut h = vec!["quantity".to_string()];
                h.extend(params.iter().cloned());
                h.extend(["value", "unit", "method", "rel_residual"].map(String::from));
                h
            }];
            for r in records {
                let (value, unit) = match units {
                    Units::Natural => (r.value_natural, natural_unit(record_dimension(r))),
                    Units::Si => (r.value_si, r.si_unit.clone()),
                };
                let mut row = vec![r.quantity.clone()];
                row.extend(params.iter().map(|p| r.parameters.get(p).map(|v| format!("{v:.6e}")).unwrap_or_default()));
                row.push(format!("{value:.10e}"));
                row.push(unit);
                row.push(r.method.to_string());
                row.push(r.rel_residual.map(|v| format!("{v:.2e}")).unwrap_or_else(|| "-".into()));
                rows.push(row);
            }
            out.push_str(&align(&rows));
        }
    }
    out
}

fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn duality_output(args: &DualityArgs) -> Result<(String, bool)> {
    let cfg = args.common.quadrature()?;
    let gap = resolve(&args.gap, Dimension::LENGTH, args.common.units)?;
    let route = match args.method {
        RouteArg::ClosedForm => Route::ClosedForm,
        RouteArg::Quadrature => Route::Quadrature,
    };
    let report = duality::full_report(gap, route, &DerivativeConfig::default(), &cfg)?;
    let text = if args.json || args.common.format == Format::Json {
        serde_json::to_string(&report).expect("report serializes") + "\n"
    } else {
        let rows: Vec<Vec<String>> = [
            ("l", report.l),
            ("beta_dual", report.beta_dual),
            ("residual_p_swap", report.residual_p_swap),
            ("residual_u_swap", report.residual_u_swap),
            ("ds_du_dual", report.ds_du_dual),
            ("inconsistency_ratio", report.inconsistency_ratio),
        ]
        .iter()
        .map(|(k, v)| vec![k.to_string(), format_sci(*v)])
        .collect();
        align(&rows)
    };
    Ok((text, report.passes(route)))
}

fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_USAGE
    }
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let emit = |records: &[OutputRecord], common: &CommonArgs, out: &mut dyn Write| {
        let _ = out.write_all(render(records, common.format, common.units).as_bytes());
    };
    let result: Result<i32> = match &cli.command {
        Command::Casimir(a) => casimir_records(a).map(|r| {
            emit(&r, &a.common, out);
            EXIT_OK
        }),
        Command::Planck(a) => planck_records(a).map(|r| {
            emit(&r, &a.common, out);
            EXIT_OK
        }),
        Command::Sweep(a) => sweep_records(a).map(|r| {
            emit(&r, &a.common, out);
            EXIT_OK
        }),
        Command::Modesum(a) => modesum_records(a).map(|(r, residual)| {
            emit(&r, &a.common, out);
            if residual > REGULATED_TOLERANCE {
                let _ = writeln!(err, "error: extrapolated value misses the closed form by {residual:e} (relative)");
                EXIT_NUMERICAL
            } else {
                EXIT_OK
            }
        }),
        Command::Duality(a) => duality_output(a).map(|(text, ok)| {
            let _ = out.write_all(text.as_bytes());
            if ok {
                EXIT_OK
            } else {
                let _ = writeln!(err, "error: duality checks outside tolerance");
                EXIT_NUMERICAL
            }
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("casimir-planck").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn json_records(s: &str) -> Vec<OutputRecord> {
        s.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
    }

    #[test]
    fn sci_format_matches_c() {
        assert_eq!(format_sci(-1.3e-3), "-1.30000000000e-03");
        assert_eq!(format_sci(6.579736267392906), "6.57973626739e+00");
        assert_eq!(format_sci(1e100), "1.00000000000e+100");
        assert_eq!(format_sci(0.0), "0.00000000000e+00");
    }

    #[test]
    fn grids() {
        assert_eq!(grid(0.5, 2.0, 3, Scale::Log).unwrap(), vec![0.5, 1.0, 2.0]);
        assert_eq!(grid(0.0, 1.0, 3, Scale::Linear).unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(grid(1.0, 2.0, 1, Scale::Log).is_err());
        assert!(grid(0.0, 2.0, 3, Scale::Log).is_err());
    }

    #[test]
    fn casimir_natural_quadrature() {
        let (code, out, _) = call(&["casimir", "--gap", "1", "--format", "json"]);
        assert_eq!(code, 0);
        let r = json_records(&out);
        assert_eq!(r[0].quantity, "casimir-pressure");
        assert!((r[0].value_natural + PI.powi(2) / 240.0).abs() < 1e-12);
        assert!(r[0].rel_residual.unwrap() <= 1e-8);
        assert_eq!(r[0].method, Method::Quadrature);
    }

    #[test]
    fn casimir_si_golden() {
        let (code, out, _) = call(&["casimir", "--gap", "1um", "--units", "si", "--format", "json", "--area", "1e-4m2"]);
        assert_eq!(code, 0, "{out}");
        let r = json_records(&out);
        assert!(((r[0].value_si + 1.30e-3) / 1.30e-3).abs() < 1e-2);
        assert_eq!(r[0].si_unit, "Pa");
        assert_eq!(r[2].quantity, "casimir-force");
        assert!(((r[2].value_si - r[0].value_si * 1e-4) / r[2].value_si).abs() < 1e-12);
    }

    #[test]
    fn method_fallback_is_reported() {
        let (_, out, _) = call(&["casimir", "--gap", "1", "--method", "abel-plana", "--format", "json"]);
        let r = json_records(&out);
        assert_eq!(r[0].method, Method::Quadrature);
        assert_eq!(r[1].method, Method::AbelPlana);
        assert!(r[1].rel_residual.unwrap() < 1e-8);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["casimir", "--gap", "-1"]).0, 1);
        assert_eq!(call(&["casimir", "--gap", "1", "--units", "si"]).0, 1);
        assert_eq!(call(&["casimir", "--gap", "300K"]).0, 1);
        assert_eq!(call(&["planck", "--beta", "1", "--temperature", "300K"]).0, 1);
        assert_eq!(call(&["planck"]).0, 1);
        assert_eq!(call(&["duality", "--gap", "0"]).0, 1);
        assert_eq!(call(&["sweep", "planck-u", "--beta", "0.5:2", "--points", "1"]).0, 1);
        assert_eq!(call(&["sweep", "planck-u", "--gap", "0.5:2"]).0, 1);
        assert_eq!(call(&["sweep", "planck-u", "--beta", "2:0.5"]).0, 1);
        assert_eq!(call(&["bogus"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn planck_closed_forms() {
        let (code, out, _) = call(&["planck", "--beta", "1", "--format", "json"]);
        assert_eq!(code, 0);
        let r = json_records(&out);
        let names: Vec<&str> = r.iter().map(|r| r.quantity.as_str()).collect();
        assert_eq!(names, ["planck-p", "planck-f", "planck-u", "planck-s"]);
        assert!((r[2].value_natural - PI.powi(2) / 15.0).abs() < 1e-12);
        assert!((r[0].value_natural - PI.powi(2) / 45.0).abs() < 1e-12);
    }

    #[test]
    fn sweep_planck_grid() {
        let (code, out, _) = call(&["sweep", "planck-u", "--beta", "0.5:2", "--points", "3", "--format", "json"]);
        assert_eq!(code, 0);
        let r = json_records(&out);
        let betas: Vec<f64> = r.iter().map(|r| r.parameters["beta"]).collect();
        assert_eq!(betas, [0.5, 1.0, 2.0]);
        assert!((r[1].value_natural - PI.powi(2) / 15.0).abs() < 1e-12);
        assert!((r[0].value_natural - 16.0 * PI.powi(2) / 15.0).abs() < 1e-10);
    }

    #[test]
    fn duality_exit_codes() {
        let (code, out, _) = call(&["duality", "--gap", "0.5", "--json"]);
        assert_eq!(code, 0);
        let report: duality::DualityReport = serde_json::from_str(out.trim()).unwrap();
        assert!(report.residual_p_swap <= 1e-10);
        assert!((report.inconsistency_ratio - 3.0).abs() <= 1e-6);
    }

    #[test]
    fn modesum_default() {
        let (code, out, err) = call(&["modesum", "--gap", "1", "--format", "json"]);
        assert_eq!(code, 0, "{err}");
        let r = json_records(&out);
        let last = r.last().unwrap();
        assert!((last.value_natural + 1.3708e-2).abs() < 1e-5);
        assert!(r.iter().all(|r| r.value_natural.is_finite()));
        let (code, _, _) = call(&["modesum", "--gap", "1", "--lambda", "0.4,0.2,0.1,0.05"]);
        assert_eq!(code, 0);
        assert_eq!(call(&["modesum", "--gap", "1", "--lambda", "0.1,0.05", "--order", "3"]).0, 1);
    }
}
