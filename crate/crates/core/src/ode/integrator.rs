//! Dormand-Prince 5(4) integration of the profile system.

use serde::{Deserialize, Serialize};

use super::{slope_of, ModelParams, PhaseState, Profile};
use crate::error::{Error, Result};
use crate::tolerances::TOL_INTEGRATOR;

// The system is autonomous, so the stage abscissae never enter.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;

const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;

// Difference between the 5th and embedded 4th order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const ORDER: u32 = 5;
const SAFETY: f64 = 0.9;
const MAX_GROWTH: f64 = 5.0;
const MIN_SHRINK: f64 = 0.2;

/// Step-size policy of the integrator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Stepping {
    /// Embedded error control with mixed absolute/relative tolerance.
    Adaptive { rtol: f64, atol: f64 },
    /// Uniform steps no larger than `h`, adjusted to land on `r_max`.
    Fixed { h: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorCtrl {
    pub stepping: Stepping,
    /// Upper bound on the distance between stored samples.
    pub max_step: f64,
    /// Additional uniformly spaced output points, filled by interpolation.
    pub output_step: Option<f64>,
    pub max_steps: usize,
}

impl Default for IntegratorCtrl {
    fn default() -> Self {
        Self {
            stepping: Stepping::Adaptive {
                rtol: TOL_INTEGRATOR,
                atol: TOL_INTEGRATOR,
            },
            max_step: 0.05,
            output_step: None,
            max_steps: 10_000_000,
        }
    }
}

impl IntegratorCtrl {
    pub fn adaptive(tol: f64) -> Self {
        Self {
            stepping: Stepping::Adaptive {
                rtol: tol,
                atol: tol,
            },
            ..Self::default()
        }
    }

    pub fn fixed(h: f64) -> Self {
        Self {
            stepping: Stepping::Fixed { h },
            max_step: h,
            ..Self::default()
        }
    }

    pub fn with_max_step(mut self, max_step: f64) -> Self {
        self.max_step = max_step;
        self
    }

    pub fn with_output_step(mut self, step: f64) -> Self {
        self.output_step = Some(step);
        self
    }

    fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.max_step) {
            return Err(Error::domain("max_step must be positive"));
        }
        if let Some(s) = self.output_step {
            if !positive(s) {
                return Err(Error::domain("output_step must be positive"));
            }
        }
        match self.stepping {
            Stepping::Adaptive { rtol, atol } if !(positive(rtol) && positive(atol)) => {
                Err(Error::domain("integrator tolerances must be positive"))
            }
            Stepping::Fixed { h } if !positive(h) => {
                Err(Error::domain("fixed step must be positive"))
            }
            _ => Ok(()),
        }
    }

    fn tolerance(&self) -> f64 {
        match self.stepping {
            Stepping::Adaptive { rtol, .. } => rtol,
            Stepping::Fixed { h } => h,
        }
    }
}

/// Diagnostics of one integration run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepStats {
    pub method: StepMethod,
    pub order: u32,
    /// Relative tolerance for adaptive runs, step length for fixed runs.
    pub tolerance: f64,
    pub max_step: f64,
    pub min_step: f64,
    pub accepted: usize,
    pub rejected: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepMethod {
    DormandPrinceAdaptive,
    DormandPrinceFixed,
    /// `u0 = 0`: the zero solution, returned without integrating.
    Exact,
}

#[inline]
fn deriv(kappa: f64, u: f64, v: f64) -> [f64; 2] {
    [slope_of(v), kappa * u]
}

struct Step {
    y: [f64; 2],
    k_last: [f64; 2],
    err: [f64; 2],
}

#[inline]
fn dopri_step(kappa: f64, y: [f64; 2], k1: [f64; 2], h: f64) -> Step {
    let stage = |w: [f64; 5], ks: &[[f64; 2]]| -> [f64; 2] {
        let mut out = y;
        for (wi, k) in w.iter().zip(ks) {
            out[0] += h * wi * k[0];
            out[1] += h * wi * k[1];
        }
        out
    };
    let f = |s: [f64; 2]| deriv(kappa, s[0], s[1]);

    let k2 = f(stage([A21, 0.0, 0.0, 0.0, 0.0], &[k1]));
    let k3 = f(stage([A31, A32, 0.0, 0.0, 0.0], &[k1, k2]));
    let k4 = f(stage([A41, A42, A43, 0.0, 0.0], &[k1, k2, k3]));
    let k5 = f(stage([A51, A52, A53, A54, 0.0], &[k1, k2, k3, k4]));
    let k6 = f(stage([A61, A62, A63, A64, A65], &[k1, k2, k3, k4, k5]));
    let mut ynew = y;
    for i in 0..2 {
        ynew[i] += h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
    }
    let k7 = f(ynew);
    let mut err = [0.0; 2];
    for i in 0..2 {
        err[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
    }
    Step {
        y: ynew,
        k_last: k7,
        err,
    }
}

fn error_norm(step: &Step, y: [f64; 2], rtol: f64, atol: f64) -> f64 {
    let mut acc = 0.0;
    for i in 0..2 {
        let scale = atol + rtol * y[i].abs().max(step.y[i].abs());
        let e = step.err[i] / scale;
        acc += e * e;
    }
    (acc / 2.0).sqrt()
}

fn check_state(s: &PhaseState) -> Result<()> {
    if !s.is_finite() {
        return Err(Error::NonFinite("integrated state"));
    }
    if s.slope().abs() >= 1.0 {
        return Err(Error::NotSpacelike { r: s.r });
    }
    Ok(())
}

/// Integrates the initial value problem `u(0) = u0, u'(0) = 0` on `[0, r_max]`.
///
/// Solutions exist on the whole line, so the only failure modes are invalid
/// input and a collapsing step size (which indicates a bug, not a blow-up).
pub fn integrate_ivp(params: &ModelParams, r_max: f64, ctrl: &IntegratorCtrl) -> Result<Profile> {
    params.validate_for_ode()?;
    ctrl.validate()?;
    if !(r_max.is_finite() && r_max > 0.0) {
        return Err(Error::domain(format!(
            "r_max must be positive, got {r_max}"
        )));
    }

    let (samples, stats) = if params.u0 == 0.0 {
        zero_solution(r_max, ctrl)
    } else {
        match ctrl.stepping {
            Stepping::Adaptive { rtol, atol } => adaptive(params, r_max, ctrl, rtol, atol)?,
            Stepping::Fixed { h } => fixed(params, r_max, ctrl, h)?,
        }
    };

    let profile = Profile::from_parts_unchecked(*params, samples, stats);
    Ok(match ctrl.output_step {
        Some(step) => profile.with_output_grid(step),
        None => profile,
    })
}

fn zero_solution(r_max: f64, ctrl: &IntegratorCtrl) -> (Vec<PhaseState>, StepStats) {
    let n = (r_max / ctrl.max_step).ceil().max(1.0) as usize;
    let h = r_max / n as f64;
    let mut samples: Vec<PhaseState> = (0..n)
        .map(|i| PhaseState::new(i as f64 * h, 0.0, 0.0))
        .collect();
    samples.push(PhaseState::new(r_max, 0.0, 0.0));
    let stats = StepStats {
        method: StepMethod::Exact,
        order: ORDER,
        tolerance: ctrl.tolerance(),
        max_step: h,
        min_step: h,
        accepted: n,
        rejected: 0,
    };
    (samples, stats)
}

fn fixed(
    params: &ModelParams,
    r_max: f64,
    ctrl: &IntegratorCtrl,
    h_req: f64,
) -> Result<(Vec<PhaseState>, StepStats)> {
    let h_req = h_req.min(ctrl.max_step);
    let n = (r_max / h_req - 1e-9).ceil().max(1.0) as usize;
    if n > ctrl.max_steps {
        return Err(Error::domain(format!(
            "fixed stepping needs {n} steps, over the cap"
        )));
    }
    let h = r_max / n as f64;
    let kappa = params.kappa;
    let mut y = [params.u0, 0.0];
    let mut k1 = deriv(kappa, y[0], y[1]);
    let mut samples = Vec::with_capacity(n + 1);
    samples.push(PhaseState::new(0.0, y[0], y[1]));
    for i in 1..=n {
        let step = dopri_step(kappa, y, k1, h);
        y = step.y;
        k1 = step.k_last;
        let r = if i == n { r_max } else { i as f64 * h };
        let s = PhaseState::new(r, y[0], y[1]);
        check_state(&s)?;
        samples.push(s);
    }
    let stats = StepStats {
        method: StepMethod::DormandPrinceFixed,
        order: ORDER,
        tolerance: h,
        max_step: h,
        min_step: h,
        accepted: n,
        rejected: 0,
    };
    Ok((samples, stats))
}

fn adaptive(
    params: &ModelParams,
    r_max: f64,
    ctrl: &IntegratorCtrl,
    rtol: f64,
    atol: f64,
) -> Result<(Vec<PhaseState>, StepStats)> {
    let kappa = params.kappa;
    let mut r = 0.0;
    let mut y = [params.u0, 0.0];
    let mut k1 = deriv(kappa, y[0], y[1]);
    let mut samples = vec![PhaseState::new(0.0, y[0], y[1])];

    // Local error of the first step scales like h^5 |kappa u0|; start from a
    // step that roughly meets the tolerance and let the controller adapt.
    let scale = (kappa * params.u0).abs().max(1e-300);
    let mut h = ((atol.max(rtol * params.u0.abs())) / scale)
        .powf(1.0 / ORDER as f64)
        .min(ctrl.max_step)
        .min(r_max)
        .max(1e-6 * r_max.min(1.0));

    let mut stats = StepStats {
        method: StepMethod::DormandPrinceAdaptive,
        order: ORDER,
        tolerance: rtol,
        max_step: 0.0,
        min_step: f64::INFINITY,
        accepted: 0,
        rejected: 0,
    };
    let mut rejected_last = false;

    while r < r_max {
        if stats.accepted + stats.rejected >= ctrl.max_steps {
            return Err(Error::StepUnderflow { r, h });
        }
        let last = r + h >= r_max * (1.0 - 4.0 * f64::EPSILON);
        if last {
            h = r_max - r;
        }
        let step = dopri_step(kappa, y, k1, h);
        let err = error_norm(&step, y, rtol, atol);
        if !err.is_finite() {
            return Err(Error::NonFinite("integrator error estimate"));
        }

        if err <= 1.0 {
            r = if last { r_max } else { r + h };
            y = step.y;
            k1 = step.k_last;
            let s = PhaseState::new(r, y[0], y[1]);
            check_state(&s)?;
            samples.push(s);
            stats.accepted += 1;
            stats.max_step = stats.max_step.max(h);
            stats.min_step = stats.min_step.min(h);
            let mut factor = if err == 0.0 {
                MAX_GROWTH
            } else {
                (SAFETY * err.powf(-1.0 / ORDER as f64)).clamp(MIN_SHRINK, MAX_GROWTH)
            };
            if rejected_last {
                factor = factor.min(1.0);
            }
            rejected_last = false;
            h = (h * factor).min(ctrl.max_step);
        } else {
            stats.rejected += 1;
            rejected_last = true;
            h *= (SAFETY * err.powf(-1.0 / ORDER as f64)).max(MIN_SHRINK);
        }

        if h < 1e-14 * r.abs().max(1.0) {
            return Err(Error::StepUnderflow { r, h });
        }
    }
    if stats.accepted == 0 {
        stats.min_step = 0.0;
    }
    Ok((samples, stats))
}
