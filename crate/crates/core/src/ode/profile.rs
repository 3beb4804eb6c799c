use serde::{Deserialize, Serialize};

use super::integrator::StepStats;
use super::{first_integral_residual, slope_of, ModelParams, PhaseState};
use crate::error::{Error, Result};
use crate::tolerances::{MAX_BISECTION_ITERATIONS, TOL_LOCATE};

/// A sampled trajectory of the profile system, ordered by strictly increasing `r`.
///
/// Between samples the trajectory is reconstructed by quintic Hermite
/// interpolation: at every sample `u', u''` and `v', v''` follow from the
/// state itself, so evaluation needs nothing beyond the stored samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    params: ModelParams,
    samples: Vec<PhaseState>,
    step_stats: StepStats,
}

impl Profile {
    /// Builds a profile from stored parts, checking ordering and finiteness.
    pub fn from_parts(
        params: ModelParams,
        samples: Vec<PhaseState>,
        step_stats: StepStats,
    ) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::domain("profile has no samples"));
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::NonFinite("profile samples"));
        }
        if samples.windows(2).any(|w| w[1].r <= w[0].r) {
            return Err(Error::domain(
                "profile samples must have strictly increasing r",
            ));
        }
        Ok(Self::from_parts_unchecked(params, samples, step_stats))
    }

    pub(crate) fn from_parts_unchecked(
        params: ModelParams,
        samples: Vec<PhaseState>,
        step_stats: StepStats,
    ) -> Self {
        Self {
            params,
            samples,
            step_stats,
        }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn kappa(&self) -> f64 {
        self.params.kappa
    }

    pub fn samples(&self) -> &[PhaseState] {
        &self.samples
    }

    pub fn step_stats(&self) -> &StepStats {
        &self.step_stats
    }

    pub fn r_start(&self) -> f64 {
        self.samples[0].r
    }

    pub fn r_end(&self) -> f64 {
        self.samples[self.samples.len() - 1].r
    }

    pub fn last(&self) -> &PhaseState {
        &self.samples[self.samples.len() - 1]
    }

    pub fn contains(&self, r: f64) -> bool {
        r >= self.r_start() && r <= self.r_end()
    }

    /// State at `r`, interpolated between samples.
    pub fn eval(&self, r: f64) -> Result<PhaseState> {
        if !r.is_finite() || !self.contains(r) {
            return Err(Error::domain(format!(
                "r = {r} outside profile range [{}, {}]",
                self.r_start(),
                self.r_end()
            )));
        }
        let i = self.samples.partition_point(|s| s.r <= r);
        if i == 0 {
            return Ok(self.samples[0]);
        }
        let left = &self.samples[i - 1];
        if left.r == r || i == self.samples.len() {
            return Ok(*left);
        }
        Ok(hermite(self.params.kappa, left, &self.samples[i], r))
    }

    pub fn u_at(&self, r: f64) -> Result<f64> {
        self.eval(r).map(|s| s.u)
    }

    pub fn slope_at(&self, r: f64) -> Result<f64> {
        self.eval(r).map(|s| s.slope())
    }

    /// Largest relative first-integral residual over the samples.
    pub fn max_first_integral_residual(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| first_integral_residual(s, &self.params).abs())
            .fold(0.0, f64::max)
    }

    /// Locations where `f` changes sign along the profile, refined by
    /// bisection on the interpolant to `TOL_LOCATE`. A sample where `f` is
    /// exactly zero counts as a crossing; the first sample is never reported.
    pub fn crossings<F>(&self, f: F) -> Vec<f64>
    where
        F: Fn(&PhaseState) -> f64,
    {
        let mut out = Vec::new();
        for (i, w) in self.samples.windows(2).enumerate() {
            let (fa, fb) = (f(&w[0]), f(&w[1]));
            if fb == 0.0 {
                out.push(w[1].r);
                continue;
            }
            if fa == 0.0 || fa.signum() == fb.signum() {
                continue;
            }
            let kappa = self.params.kappa;
            let (a, b) = (&self.samples[i], &self.samples[i + 1]);
            let (mut lo, mut hi) = (a.r, b.r);
            let mut flo = fa;
            for _ in 0..MAX_BISECTION_ITERATIONS {
                let mid = 0.5 * (lo + hi);
                if hi - lo <= TOL_LOCATE || mid <= lo || mid >= hi {
                    break;
                }
                let fm = f(&hermite(kappa, a, b, mid));
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        out
    }

    /// Inserts uniformly spaced samples `0, step, 2 step, ...` (relative to
    /// `r_start`) that are not already present.
    pub fn with_output_grid(self, step: f64) -> Self {
        let (r0, r1) = (self.r_start(), self.r_end());
        let n = ((r1 - r0) / step).floor() as usize;
        let mut merged = Vec::with_capacity(self.samples.len() + n);
        let mut k = 1usize;
        for w in self.samples.windows(2) {
            merged.push(w[0]);
            while k <= n {
                let r = r0 + k as f64 * step;
                if r >= w[1].r {
                    break;
                }
                if r > w[0].r {
                    merged.push(hermite(self.params.kappa, &w[0], &w[1], r));
                }
                k += 1;
            }
        }
        merged.push(*self.last());
        Self {
            samples: merged,
            ..self
        }
    }

    /// Samples on a caller-supplied grid (each point must lie in range).
    pub fn resample(&self, grid: &[f64]) -> Result<Vec<PhaseState>> {
        grid.iter().map(|&r| self.eval(r)).collect()
    }

    /// The profile restricted to `[r_start, r_cut]`, with an interpolated end sample.
    pub fn truncate(&self, r_cut: f64) -> Result<Profile> {
        let end = self.eval(r_cut)?;
        let mut samples: Vec<PhaseState> = self
            .samples
            .iter()
            .take_while(|s| s.r < r_cut)
            .copied()
            .collect();
        samples.push(end);
        Ok(Self {
            samples,
            ..self.clone()
        })
    }
}

/// Quintic Hermite interpolation of `(u, v)` using exact first and second
/// derivatives from the ODE at both ends.
fn hermite(kappa: f64, a: &PhaseState, b: &PhaseState, r: f64) -> PhaseState {
    let h = b.r - a.r;
    let t = (r - a.r) / h;
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t3 * t;
    let t5 = t4 * t;
    let h0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
    let h1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
    let h2 = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
    let h3 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
    let h4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
    let h5 = 0.5 * (t3 - 2.0 * t4 + t5);

    let (du_a, ddu_a) = (slope_of(a.v), a.second_derivative(kappa));
    let (du_b, ddu_b) = (slope_of(b.v), b.second_derivative(kappa));
    let (dv_a, ddv_a) = (kappa * a.u, kappa * du_a);
    let (dv_b, ddv_b) = (kappa * b.u, kappa * du_b);

    let mix = |y0: f64, d0: f64, dd0: f64, y1: f64, d1: f64, dd1: f64| {
        h0 * y0 + h * (h1 * d0 + h4 * d1) + h * h * (h2 * dd0 + h5 * dd1) + h3 * y1
    };
    PhaseState::new(
        r,
        mix(a.u, du_a, ddu_a, b.u, du_b, ddu_b),
        mix(a.v, dv_a, ddv_a, b.v, dv_b, ddv_b),
    )
}

/// Extends a profile across its first sample by the reflection symmetry of
/// the equation.
///
/// At a critical point (`v = 0`) the graph is symmetric about the vertical
/// line through it: `u(2c - r) = u(r)`, `v(2c - r) = -v(r)`. At a zero
/// (`u = 0`) it is symmetric about the point `(c, 0)`: `u(2c - r) = -u(r)`,
/// `v(2c - r) = v(r)`. Any other starting point is rejected.
pub fn extend_by_symmetry(p: &Profile) -> Result<Profile> {
    let first = p.samples[0];
    let c = first.r;
    let even = first.v == 0.0;
    if !even && first.u != 0.0 {
        return Err(Error::precondition(
            "reflection needs a critical point (v = 0) or a zero (u = 0) at the first sample",
        ));
    }
    let mirrored = p.samples[1..].iter().rev().map(|s| {
        let r = c - (s.r - c);
        if even {
            PhaseState::new(r, s.u, -s.v)
        } else {
            PhaseState::new(r, -s.u, s.v)
        }
    });
    let samples: Vec<PhaseState> = mirrored.chain(p.samples.iter().copied()).collect();
    Ok(Profile {
        params: p.params,
        samples,
        step_stats: p.step_stats,
    })
}

/// The trajectory for `-u0`: `u(r; -u0) = -u(r; u0)` sample by sample.
pub fn reflect_sign(p: &Profile) -> Profile {
    Profile {
        params: ModelParams {
            u0: -p.params.u0,
            ..p.params
        },
        samples: p
            .samples
            .iter()
            .map(|s| PhaseState::new(s.r, -s.u, -s.v))
            .collect(),
        step_stats: p.step_stats,
    }
}
