//! Quadrature, special values, the Abel-Plana operator and numerical differentiation.

pub mod abel_plana;
pub mod derivative;
pub mod quadrature;
pub mod special;

pub use abel_plana::{abel_plana, abel_plana_branch, abel_plana_branch_from, AbelPlanaResult};
pub use derivative::{derivative, DerivativeConfig};
pub use quadrature::{integrate, integrate_to_infinity, integrate_with_tail, Integral, QuadratureConfig};
pub use special::{
    bose_integral, bose_integral_closed_form, coth_series_check, log_bose_integral,
    log_bose_integral_closed_form, zeta_value, CothCheck,
};
