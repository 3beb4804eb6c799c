//! The profile equation of a stationary band.
//!
//! A cylindrical band with horizontal rulings is the graph of `x3 = u(r)`
//! swept along `x2`. Its directrix satisfies
//!
//! ```text
//! u'' / (1 - u'^2)^{3/2} = kappa * u,    u(0) = u0,  u'(0) = 0
//! ```
//!
//! which is integrated as the first-order system in `(u, v)` with
//! `v = sinh(psi) = u' / sqrt(1 - u'^2)`:
//!
//! ```text
//! u' = v / sqrt(1 + v^2),    v' = kappa * u.
//! ```
//!
//! Along every trajectory `u^2 = u0^2 + (2 / kappa) (cosh(psi) - 1)` holds;
//! [`first_integral_residual`] measures the departure from it.

mod integrator;
mod profile;

pub use integrator::StepMethod;
pub use integrator::{integrate_ivp, IntegratorCtrl, StepStats, Stepping};
pub use profile::{extend_by_symmetry, reflect_sign, Profile};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of one trajectory family: `C = kappa * x3 + lambda`, `u(0) = u0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub kappa: f64,
    #[serde(default)]
    pub lambda: f64,
    pub u0: f64,
}

impl ModelParams {
    pub fn new(kappa: f64, u0: f64) -> Self {
        Self {
            kappa,
            lambda: 0.0,
            u0,
        }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn is_sessile(&self) -> bool {
        self.kappa > 0.0
    }

    pub fn is_pendent(&self) -> bool {
        self.kappa < 0.0
    }

    pub(crate) fn validate_for_ode(&self) -> Result<()> {
        if !(self.kappa.is_finite() && self.lambda.is_finite() && self.u0.is_finite()) {
            return Err(Error::NonFinite("model parameters"));
        }
        if self.kappa == 0.0 {
            return Err(Error::Unsupported(
                "kappa = 0 is the constant mean curvature case; use bounds::hyperbolic_cylinder"
                    .into(),
            ));
        }
        if self.lambda != 0.0 {
            return Err(Error::precondition(
                "lambda must be normalized to 0 before solving (see normalize_lambda)",
            ));
        }
        Ok(())
    }
}

/// A point `(r, u, v)` of the first-order system, `v = sinh(psi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseState {
    pub r: f64,
    pub u: f64,
    pub v: f64,
}

impl PhaseState {
    pub const fn new(r: f64, u: f64, v: f64) -> Self {
        Self { r, u, v }
    }

    /// `u' = v / sqrt(1 + v^2) = tanh(psi)`, always in `(-1, 1)` for finite `v`.
    pub fn slope(&self) -> f64 {
        slope_of(self.v)
    }

    /// Hyperbolic angle `psi = asinh(v)` between the directrix and the horizontal.
    pub fn angle(&self) -> f64 {
        self.v.asinh()
    }

    /// `cosh(psi) = sqrt(1 + v^2) = 1 / sqrt(1 - u'^2)`.
    pub fn cosh_angle(&self) -> f64 {
        self.v.hypot(1.0)
    }

    /// `u'' = kappa * u * (1 - u'^2)^{3/2} = kappa * u / (1 + v^2)^{3/2}`.
    pub fn second_derivative(&self, kappa: f64) -> f64 {
        let c = self.cosh_angle();
        kappa * self.u / (c * c * c)
    }

    pub fn is_finite(&self) -> bool {
        self.r.is_finite() && self.u.is_finite() && self.v.is_finite()
    }
}

pub(crate) fn slope_of(v: f64) -> f64 {
    v / v.hypot(1.0)
}

/// `cosh(psi) - 1` without cancellation for small `v`.
pub(crate) fn cosh_minus_one(v: f64) -> f64 {
    let v2 = v * v;
    v2 / ((v2 + 1.0).sqrt() + 1.0)
}

/// Right-hand side `(du/dr, dv/dr)` of the profile system.
pub fn rhs(state: &PhaseState, kappa: f64) -> Result<(f64, f64)> {
    if !state.is_finite() || !kappa.is_finite() {
        return Err(Error::NonFinite("rhs input"));
    }
    if kappa == 0.0 {
        return Err(Error::domain("kappa must be non-zero"));
    }
    Ok((slope_of(state.v), kappa * state.u))
}

/// Relative residual of the first integral
/// `u^2 - u0^2 - (2/kappa)(cosh(psi) - 1)`, scaled by `max(1, u0^2, u^2)`.
pub fn first_integral_residual(state: &PhaseState, params: &ModelParams) -> f64 {
    let u2 = state.u * state.u;
    let u02 = params.u0 * params.u0;
    let raw = (u2 - u02) - 2.0 / params.kappa * cosh_minus_one(state.v);
    raw / 1f64.max(u02).max(u2)
}

/// Height at the point where the hyperbolic angle is `psi`, taken on the
/// branch with the sign of `u0`: `sqrt(u0^2 + (2/kappa)(cosh(psi) - 1))`.
///
/// Returns `None` when the radicand is negative (the angle is never reached).
pub fn height_at_angle(params: &ModelParams, psi: f64) -> Option<f64> {
    let rad = params.u0 * params.u0 + 2.0 / params.kappa * cosh_minus_one(psi.sinh());
    if rad < 0.0 {
        return None;
    }
    let h = rad.sqrt();
    Some(if params.u0 < 0.0 { -h } else { h })
}

/// Removes the Laplace offset: the band for `(kappa, lambda)` is the band
/// for `(kappa, 0)` translated by `lambda / kappa` along `x3`.
///
/// Returns the normalized parameters (with `u0` expressed in the shifted
/// frame) and the shift `lambda / kappa`; heights in the original frame are
/// `u_normalized - shift`.
pub fn normalize_lambda(params: &ModelParams) -> Result<(ModelParams, f64)> {
    if params.kappa == 0.0 {
        if params.lambda == 0.0 {
            return Ok((*params, 0.0));
        }
        return Err(Error::Unsupported(
            "kappa = 0 with lambda != 0 has constant mean curvature; only the closed-form \
             hyperbolic cylinder is available"
                .into(),
        ));
    }
    let shift = params.lambda / params.kappa;
    Ok((
        ModelParams {
            kappa: params.kappa,
            lambda: 0.0,
            u0: params.u0 + shift,
        },
        shift,
    ))
}

/// Flips `u0` so that it carries the sign of `kappa`. The flag reports
/// whether a flip happened; the original trajectory is then recovered with
/// [`reflect_sign`].
pub fn canonicalize_sign(params: &ModelParams) -> (ModelParams, bool) {
    if params.u0 != 0.0 && params.u0.signum() != params.kappa.signum() {
        (
            ModelParams {
                u0: -params.u0,
                ..*params
            },
            true,
        )
    } else {
        (*params, false)
    }
}
