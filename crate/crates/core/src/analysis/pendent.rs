use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ode::{integrate_ivp, IntegratorCtrl, ModelParams, Profile};

/// Structure of a pendent profile (`kappa < 0`, `u0 < 0`).
///
/// The profile is even about `r = 0` and odd about its first zero `r_o`;
/// composing the two reflections is a translation by `4 r_o`, which is the
/// period. Extrema sit at `2 m r_o`, zeros (and inflections) at `(2m+1) r_o`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PendentSummary {
    pub params: ModelParams,
    /// First zero of `u`.
    pub r_o: f64,
    pub period: f64,
    pub amplitude: f64,
    /// Largest `|u'|` measured on the samples and at the located zeros.
    pub max_slope: f64,
    pub max_slope_closed_form: f64,
    /// `u'(r_o)`.
    pub slope_at_zero: f64,
    /// `sqrt(-2/kappa)` and `sqrt(u0^2 - 2/kappa)`, both strictly below `r_o`.
    pub zero_lower_bounds: (f64, f64),
    pub zero_locations: Vec<f64>,
    pub extrema_locations: Vec<f64>,
    pub inflection_locations: Vec<f64>,
    /// `max |z_m - (2m+1) r_o|` over the located zeros.
    pub zero_spacing_error: f64,
    /// `max |e_m - 2m r_o|` over the located extrema.
    pub extrema_spacing_error: f64,
    /// `max |u(r + 4 r_o) - u(r)|` over one period.
    pub period_residual: f64,
    /// `max |u(r_o + s) + u(r_o - s)|` for `s` in `[0, r_o]`.
    pub point_symmetry_residual: f64,
    /// Largest excursion of `u` outside `[u0, -u0]` (zero when contained).
    pub amplitude_excess: f64,
    /// Largest distance between an inflection and the nearest zero.
    pub inflection_mismatch: f64,
}

fn require_pendent(params: &ModelParams) -> Result<()> {
    if params.kappa >= 0.0 {
        return Err(Error::precondition(format!(
            "pendent analysis needs kappa < 0 (got {})",
            params.kappa
        )));
    }
    if params.u0 >= 0.0 {
        return Err(Error::precondition(format!(
            "pendent analysis uses the convention u0 < 0 (got {})",
            params.u0
        )));
    }
    Ok(())
}

/// `u'(r_o) = (-u0 / (2 - kappa u0^2)) sqrt(kappa^2 u0^2 - 4 kappa)`, the
/// largest slope of a pendent profile, attained at its zeros.
pub fn max_slope_closed_form(params: &ModelParams) -> Result<f64> {
    if params.kappa >= 0.0 {
        return Err(Error::precondition("max slope formula needs kappa < 0"));
    }
    let (k, u0) = (params.kappa, params.u0);
    Ok(u0.abs() / (2.0 - k * u0 * u0) * (k * k * u0 * u0 - 4.0 * k).sqrt())
}

/// First zero `r_o` of a pendent profile, together with a profile that
/// reaches past it.
pub fn first_zero(params: &ModelParams, ctrl: &IntegratorCtrl) -> Result<(f64, Profile)> {
    require_pendent(params)?;
    let lower = (params.u0 * params.u0 - 2.0 / params.kappa).sqrt();
    let mut r_max = 2.0 * lower;
    for _ in 0..60 {
        let p = integrate_ivp(params, r_max, ctrl)?;
        if let Some(&r_o) = p.crossings(|s| s.u).first() {
            return Ok((r_o, p));
        }
        r_max *= 2.0;
    }
    Err(Error::OutOfRegime(
        "no zero found for the pendent profile".into(),
    ))
}

/// The pendent profile over `periods` full periods starting at `r = 0`.
pub fn pendent_profile(
    params: &ModelParams,
    periods: f64,
    ctrl: &IntegratorCtrl,
) -> Result<Profile> {
    let (r_o, _) = first_zero(params, ctrl)?;
    integrate_ivp(params, 4.0 * r_o * periods, ctrl)
}

pub fn pendent_summary(params: &ModelParams, ctrl: &IntegratorCtrl) -> Result<PendentSummary> {
    require_pendent(params)?;
    let (k, u0) = (params.kappa, params.u0);
    let (r_o, _) = first_zero(params, ctrl)?;
    let period = 4.0 * r_o;
    // Two periods plus a margin, so the extremum at 8 r_o is bracketed.
    let p = integrate_ivp(params, 8.25 * r_o, ctrl)?;

    let zero_locations = p.crossings(|s| s.u);
    let mut extrema_locations = vec![0.0];
    extrema_locations.extend(p.crossings(|s| s.v));
    let inflection_locations = p.crossings(|s| s.second_derivative(k));

    let zero_spacing_error = zero_locations
        .iter()
        .enumerate()
        .map(|(m, z)| (z - (2 * m + 1) as f64 * r_o).abs())
        .fold(0.0, f64::max);
    let extrema_spacing_error = extrema_locations
        .iter()
        .enumerate()
        .map(|(m, e)| (e - (2 * m) as f64 * r_o).abs())
        .fold(0.0, f64::max);
    let inflection_mismatch = inflection_locations
        .iter()
        .map(|x| {
            zero_locations
                .iter()
                .map(|z| (x - z).abs())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);

    let n = 4000;
    let mut period_residual = 0.0f64;
    let mut point_symmetry_residual = 0.0f64;
    for i in 0..=n {
        let r = period * i as f64 / n as f64;
        period_residual = period_residual.max((p.u_at(r + period)? - p.u_at(r)?).abs());
        let s = r_o * i as f64 / n as f64;
        point_symmetry_residual =
            point_symmetry_residual.max((p.u_at(r_o + s)? + p.u_at(r_o - s)?).abs());
    }

    let amplitude_excess = p
        .samples()
        .iter()
        .map(|s| (u0 - s.u).max(s.u + u0).max(0.0))
        .fold(0.0, f64::max);

    let slope_at_zero = p.slope_at(r_o)?;
    let max_slope = p
        .samples()
        .iter()
        .map(|s| s.slope().abs())
        .chain(
            zero_locations
                .iter()
                .map(|&z| p.slope_at(z).map(f64::abs).unwrap_or(0.0)),
        )
        .fold(0.0, f64::max);

    Ok(PendentSummary {
        params: *params,
        r_o,
        period,
        amplitude: u0.abs(),
        max_slope,
        max_slope_closed_form: max_slope_closed_form(params)?,
        slope_at_zero,
        zero_lower_bounds: ((-2.0 / k).sqrt(), (u0 * u0 - 2.0 / k).sqrt()),
        zero_locations,
        extrema_locations,
        inflection_locations,
        zero_spacing_error,
        extrema_spacing_error,
        period_residual,
        point_symmetry_residual,
        amplitude_excess,
        inflection_mismatch,
    })
}

impl PendentSummary {
    /// All structural checks at the given location tolerance.
    pub fn passed(&self, location_tol: f64, period_tol: f64, slope_tol: f64) -> bool {
        let (b1, b2) = self.zero_lower_bounds;
        b1 < b2
            && b2 < self.r_o
            && self.zero_spacing_error <= location_tol
            && self.extrema_spacing_error <= location_tol
            && self.inflection_mismatch <= location_tol
            && self.period_residual < period_tol
            && self.point_symmetry_residual < period_tol
            && self.amplitude_excess <= 1e-9
            && (self.slope_at_zero - self.max_slope_closed_form).abs() < slope_tol
            && (self.max_slope - self.max_slope_closed_form).abs() < slope_tol
            && self.max_slope < 1.0
    }
}
