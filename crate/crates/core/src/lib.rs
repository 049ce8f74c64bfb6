//! Casimir pressure between parallel plates and blackbody thermodynamics,
//! each computed by independent numerical routes, together with the
//! 2l ↔ β duality that maps one onto the other.
//!
//! Everything below the command-line layer works in natural units
//! (ħ = c = k_B = 1) with the metre as the length unit; [`quantities`]
//! converts to and from SI.

pub mod blackbody;
pub mod casimir;
pub mod cli;
pub mod duality;
pub mod error;
pub mod numerics;
pub mod quantities;

use serde::{Deserialize, Serialize};

pub use error::{Error, Result};

/// How a reported value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
    Derivative,
    RegulatedSum,
    AbelPlana,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
            Method::Derivative => "derivative",
            Method::RegulatedSum => "regulated_sum",
            Method::AbelPlana => "abel_plana",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
