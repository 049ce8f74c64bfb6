//! C ABI over `casimir_planck`.
//!
//! All inputs and outputs are natural units (ħ = c = k_B = 1, lengths in
//! metres). Every call takes a `CpContext` created by `cp_context_new`, writes
//! its result through an out-pointer and returns a `CpStatus`. After a
//! non-OK status, `cp_last_error_message` describes the failure.

use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use casimir_planck::cli::Observable;
use casimir_planck::duality::{self, Route};
use casimir_planck::numerics::{DerivativeConfig, QuadratureConfig};
use casimir_planck::quantities::{beta_from_temperature, PhysicalConstants, Quantity};
use casimir_planck::{Error, Method};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Convergence = 3,
    NonFinite = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpMethod {
    ClosedForm = 0,
    Quadrature = 1,
    Derivative = 2,
    RegulatedSum = 3,
    AbelPlana = 4,
}

impl From<CpMethod> for Method {
    fn from(m: CpMethod) -> Self {
        match m {
            CpMethod::ClosedForm => Method::ClosedForm,
            CpMethod::Quadrature => Method::Quadrature,
            CpMethod::Derivative => Method::Derivative,
            CpMethod::RegulatedSum => Method::RegulatedSum,
            CpMethod::AbelPlana => Method::AbelPlana,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CpDualityReport {
    pub l: f64,
    pub beta_dual: f64,
    pub residual_p_swap: f64,
    pub residual_u_swap: f64,
    pub ds_du_dual: f64,
    pub inconsistency_ratio: f64,
}

/// Opaque evaluation context: tolerances and the last error message.
pub struct CpContext {
    quadrature: QuadratureConfig,
    derivative: DerivativeConfig,
    last_error: CString,
}

impl CpContext {
    fn fail(&mut self, status: CpStatus, msg: &str) -> CpStatus {
        self.last_error = CString::new(msg.replace('\0', " ")).unwrap_or_default();
        status
    }

    fn fail_with(&mut self, e: &Error) -> CpStatus {
        let status = match e {
            Error::Convergence(_) => CpStatus::Convergence,
            Error::NonFinite(_) => CpStatus::NonFinite,
            _ => CpStatus::InvalidArgument,
        };
        self.fail(status, &e.to_string())
    }
}

fn guarded<F>(ctx: *mut CpContext, out_is_null: bool, body: F) -> CpStatus
where
    F: FnOnce(&mut CpContext) -> CpStatus,
{
    if ctx.is_null() {
        return CpStatus::NullPointer;
    }
    // SAFETY: non-null contexts come from cp_context_new and are used from one thread at a time.
    let ctx = unsafe { &mut *ctx };
    if out_is_null {
        return ctx.fail(CpStatus::NullPointer, "output pointer is null");
    }
    ctx.last_error = CString::default();
    match catch_unwind(AssertUnwindSafe(|| body(&mut *ctx))) {
        Ok(status) => status,
        Err(_) => ctx.fail(CpStatus::Panic, "internal panic"),
    }
}

/// Creates a context with default tolerances. Free with `cp_context_free`.
#[no_mangle]
pub extern "C" fn cp_context_new() -> *mut CpContext {
    Box::into_raw(Box::new(CpContext {
        quadrature: QuadratureConfig::default(),
        derivative: DerivativeConfig::default(),
        last_error: CString::default(),
    }))
}

/// # Safety
/// `ctx` must be null or a pointer from `cp_context_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cp_context_free(ctx: *mut CpContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Quadrature relative and absolute tolerances.
///
/// # Safety
/// `ctx` must be null or a live context.
#[no_mangle]
pub unsafe extern "C" fn cp_context_set_tolerances(ctx: *mut CpContext, rel_tol: f64, abs_tol: f64) -> CpStatus {
    guarded(ctx, false, |ctx| {
        let cfg = QuadratureConfig {
            rel_tol,
            abs_tol,
            ..ctx.quadrature
        };
        match cfg.validate() {
            Ok(()) => {
                ctx.quadrature = cfg;
                CpStatus::Ok
            }
            Err(e) => ctx.fail_with(&e),
        }
    })
}

/// Message for the last failed call on `ctx`, empty after a success.
/// The pointer stays valid until the next call on the same context.
///
/// # Safety
/// `ctx` must be null or a live context.
#[no_mangle]
pub unsafe extern "C" fn cp_last_error_message(ctx: *const CpContext) -> *const c_char {
    if ctx.is_null() {
        return ptr::null();
    }
    (*ctx).last_error.as_ptr()
}

unsafe fn evaluate(ctx: *mut CpContext, observable: Observable, x: f64, method: CpMethod, out: *mut f64) -> CpStatus {
    guarded(ctx, out.is_null(), |ctx| {
        let wanted = Method::from(method);
        match observable.evaluate(x, wanted, &ctx.quadrature) {
            Ok((_, used)) if used != wanted => ctx.fail(
                CpStatus::InvalidArgument,
                &format!("{} has no {} route", observable.name(), wanted),
            ),
            Ok((v, _)) => {
                *out = v;
                CpStatus::Ok
            }
            Err(e) => ctx.fail_with(&e),
        }
    })
}

/// Casimir pressure at gap `gap`: closed form, quadrature or derivative.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cp_casimir_pressure(ctx: *mut CpContext, gap: f64, method: CpMethod, out: *mut f64) -> CpStatus {
    evaluate(ctx, Observable::CasimirPressure, gap, method, out)
}

/// Casimir energy density: closed form, quadrature, Abel-Plana or regulated sum.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cp_casimir_energy_density(
    ctx: *mut CpContext,
    gap: f64,
    method: CpMethod,
    out: *mut f64,
) -> CpStatus {
    evaluate(ctx, Observable::CasimirEnergy, gap, method, out)
}

/// Blackbody pressure at inverse temperature `beta`.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cp_blackbody_pressure(ctx: *mut CpContext, beta: f64, method: CpMethod, out: *mut f64) -> CpStatus {
    evaluate(ctx, Observable::PlanckP, beta, method, out)
}

/// Planck internal energy density: closed form, quadrature or derivative.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cp_blackbody_energy_density(
    ctx: *mut CpContext,
    beta: f64,
    method: CpMethod,
    out: *mut f64,
) -> CpStatus {
    evaluate(ctx, Observable::PlanckU, beta, method, out)
}

/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cp_blackbody_entropy_density(
    ctx: *mut CpContext,
    beta: f64,
    method: CpMethod,
    out: *mut f64,
) -> CpStatus {
    evaluate(ctx, Observable::PlanckS, beta, method, out)
}

/// β = ħc/(k_B T) in metres for a temperature in kelvin.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cp_beta_from_kelvin(ctx: *mut CpContext, kelvin: f64, out: *mut f64) -> CpStatus {
    guarded(ctx, out.is_null(), |ctx| {
        match beta_from_temperature(Quantity::temperature(kelvin), &PhysicalConstants::CODATA_2018) {
            Ok(b) => {
                *out = b.magnitude;
                CpStatus::Ok
            }
            Err(e) => ctx.fail_with(&e),
        }
    })
}

/// Swap residuals and inconsistency ratio at gap `gap`. `method` selects the
/// swap route and must be closed form or quadrature.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cp_duality_report(
    ctx: *mut CpContext,
    gap: f64,
    method: CpMethod,
    out: *mut CpDualityReport,
) -> CpStatus {
    guarded(ctx, out.is_null(), |ctx| {
        let route = match method {
            CpMethod::ClosedForm => Route::ClosedForm,
            CpMethod::Quadrature => Route::Quadrature,
            _ => return ctx.fail(CpStatus::InvalidArgument, "duality route must be closed form or quadrature"),
        };
        match duality::full_report(gap, route, &ctx.derivative, &ctx.quadrature) {
            Ok(r) => {
                *out = CpDualityReport {
                    l: r.l,
                    beta_dual: r.beta_dual,
                    residual_p_swap: r.residual_p_swap,
                    residual_u_swap: r.residual_u_swap,
                    ds_du_dual: r.ds_du_dual,
                    inconsistency_ratio: r.inconsistency_ratio,
                };
                CpStatus::Ok
            }
            Err(e) => ctx.fail_with(&e),
        }
    })
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
