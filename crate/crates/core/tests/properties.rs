use std::collections::BTreeMap;
use std::f64::consts::PI;

use casimir_planck::blackbody::{self, ThermalState};
use casimir_planck::casimir;
use casimir_planck::cli::{format_sci, grid, OutputRecord, Scale};
use casimir_planck::duality::{map_beta_to_gap, map_gap_to_beta, xi_inversion, Xi};
use casimir_planck::numerics::QuadratureConfig;
use casimir_planck::quantities::{from_natural, to_natural, Dimension, PhysicalConstants, Quantity};
use casimir_planck::Method;
use proptest::prelude::*;

const CODATA: PhysicalConstants = PhysicalConstants::CODATA_2018;

fn dimension() -> impl Strategy<Value = Dimension> {
    (-4i8..=4, -3i8..=3, -2i8..=2, -2i8..=2).prop_map(|(l, t, m, k)| Dimension::new(l, t, m, k))
}

fn method() -> impl Strategy<Value = Method> {
    prop_oneof![
        Just(Method::ClosedForm),
        Just(Method::Quadrature),
        Just(Method::Derivative),
        Just(Method::RegulatedSum),
        Just(Method::AbelPlana),
    ]
}

fn finite() -> impl Strategy<Value = f64> {
    prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO
}

prop_compose! {
    fn record()(
        quantity in "[a-z-]{1,24}",
        value_natural in finite(),
        value_si in finite(),
        si_unit in "[A-Za-z/^0-9 ()]{1,12}",
        method in method(),
        rel_residual in prop::option::of(0.0f64..1.0),
        parameters in prop::collection::btree_map("[a-z_]{1,10}", finite(), 0..4),
    ) -> OutputRecord {
        OutputRecord { quantity, value_natural, value_si, si_unit, method, rel_residual, parameters }
    }
}

proptest! {
    #[test]
    fn natural_si_round_trip(dim in dimension(), exponent in -30.0f64..30.0, sign in prop::bool::ANY) {
        let magnitude = if sign { 1.0 } else { -1.0 } * 10f64.powf(exponent);
        let q = Quantity::new(magnitude, dim);
        let n = to_natural(q, &CODATA).unwrap();
        prop_assert_eq!(n.length_power, dim.natural_length_power());
        let back = from_natural(n, dim, &CODATA).unwrap();
        prop_assert_eq!(back.dim, dim);
        prop_assert!(((back.magnitude - magnitude) / magnitude).abs() <= 1e-14);
    }

    #[test]
    fn json_round_trip(r in record()) {
        let text = serde_json::to_string(&r).unwrap();
        let back: OutputRecord = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn duality_map_is_an_involution(l in 1e-12f64..1e12) {
        prop_assert_eq!(map_beta_to_gap(map_gap_to_beta(l).unwrap()).unwrap(), l);
        prop_assert_eq!(map_gap_to_beta(map_beta_to_gap(l).unwrap()).unwrap(), l);
    }

    #[test]
    fn xi_inversion_is_exact(gap in 1e-6f64..1e6, beta in 1e-6f64..1e6) {
        let xi = Xi::from_gap_and_beta(gap, beta).unwrap();
        prop_assert_eq!(xi_inversion(xi_inversion(xi)), xi);
        let inv = xi_inversion(xi).value();
        prop_assert!((inv * 4.0 * xi.value() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn casimir_closed_forms_scale_as_inverse_fourth_power(l in 1e-3f64..1e3) {
        let p = casimir::pressure_closed_form(l).unwrap() * l.powi(4);
        let u = casimir::energy_density_closed_form(l).unwrap() * l.powi(4);
        prop_assert!((p + PI * PI / 240.0).abs() < 1e-15);
        prop_assert!((u + PI * PI / 720.0).abs() < 1e-15);
    }

    #[test]
    fn sci_format_round_trips_to_twelve_digits(x in finite()) {
        let s = format_sci(x);
        let back: f64 = s.parse().unwrap();
        let scale = x.abs().max(f64::MIN_POSITIVE);
        prop_assert!((back - x).abs() <= 5e-12 * scale, "{} -> {}", x, s);
        let exp = s.rsplit('e').next().unwrap();
        prop_assert!(exp.starts_with('+') || exp.starts_with('-'));
        prop_assert!(exp.len() >= 3);
    }

    #[test]
    fn log_grid_is_geometric(lo in 1e-3f64..1.0, ratio in 1.5f64..1e3, points in 2usize..40) {
        let hi = lo * ratio;
        let xs = grid(lo, hi, points, Scale::Log).unwrap();
        prop_assert_eq!(xs.len(), points);
        prop_assert_eq!(xs[0], lo);
        prop_assert_eq!(xs[points - 1], hi);
        let step = (hi / lo).powf(1.0 / (points - 1) as f64);
        for w in xs.windows(2) {
            prop_assert!((w[1] / w[0] / step - 1.0).abs() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn blackbody_quadrature_tracks_closed_form(beta in 0.1f64..10.0) {
        let cfg = QuadratureConfig::default();
        let st = ThermalState::from_beta(beta).unwrap();
        let p = blackbody::pressure_bb(&st, &cfg).unwrap();
        let u = blackbody::internal_energy_bb(&st, &cfg).unwrap();
        prop_assert!((p / blackbody::pressure_bb_closed_form(&st) - 1.0).abs() < 1e-9);
        prop_assert!((u / blackbody::internal_energy_bb_closed_form(&st) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn delta_i_routes_agree(gap in 0.05f64..5.0, k_perp in 0.01f64..20.0) {
        let cfg = QuadratureConfig::default();
        let log = casimir::delta_i_log_route(k_perp, gap, &cfg).unwrap();
        let ap = casimir::delta_i_abel_plana(k_perp, gap, &cfg).unwrap();
        prop_assert!(log <= 0.0);
        prop_assert!(((log - ap) / log).abs() < 1e-8 || (log - ap).abs() < 1e-300);
    }

    #[test]
    fn swap_identity_holds(gap in 0.1f64..10.0) {
        let cfg = QuadratureConfig::default();
        let p_cas = casimir::pressure(gap, &cfg).unwrap();
        let u_bb = blackbody::internal_energy_bb(&ThermalState::from_beta(2.0 * gap).unwrap(), &cfg).unwrap();
        prop_assert!(((p_cas + u_bb) / u_bb).abs() < 1e-9);
    }
}

#[test]
fn record_without_residual_serializes_null() {
    let r = OutputRecord {
        quantity: "planck-u".into(),
        value_natural: 1.0,
        value_si: 2.0,
        si_unit: "J/m^3".into(),
        method: Method::ClosedForm,
        rel_residual: None,
        parameters: BTreeMap::new(),
    };
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        ["method", "parameters", "quantity", "rel_residual", "si_unit", "value_natural", "value_si"]
    );
    assert!(v["rel_residual"].is_null());
    assert_eq!(v["method"], "closed_form");
}
