//! Qualitative checks on computed profiles.
//!
//! Every check evaluates an inequality on a grid and reports the smallest
//! slack (`rhs - lhs` for an inequality `lhs < rhs`), so a failure says how
//! far off it was and where.

mod compare;
mod pendent;
mod sessile;

pub use compare::{
    compare_kappa_bvp, compare_kappa_ivp, compare_kappa_pendent, compare_u0, compare_u0_pendent,
};
pub use pendent::{
    first_zero, max_slope_closed_form, pendent_profile, pendent_summary, PendentSummary,
};
pub use sessile::{
    apriori_bounds_check, growth_bounds_check, origin_curvature_limit, sessile_shape_check,
    slope_gap_schedule, SessileShapeReport,
};

use serde::{Deserialize, Serialize};

use crate::tolerances::TOL_COMPARE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `u(r; u0, k1) < u(r; u0, k2)` and the same for slopes, `0 < k1 < k2`.
    KappaIvp,
    /// Solved boundary problems: `u1 > u2` on `[0, a]`, `u1' > u2'` on `(0, a)`.
    KappaBvp,
    /// `u(r; u0 + delta) - delta > u(r; u0)` for `kappa > 0`.
    InitialHeightShift,
    /// `u(r; u0, k1) > u(r; u0, k2)` near `r = 0` for `k1 < k2 < 0`.
    PendentKappaNearOrigin,
    /// `u(r; u0 - delta) + delta >= u(r; u0)` near `r = 0` for `kappa < 0`.
    PendentHeightNearOrigin,
    /// `kappa u0 < sinh(psi(r)) / r < kappa u(r)` on a sessile profile.
    SessileGrowth,
    /// `|u(r)| < |u0| + r` and `|v(r)| <= |kappa| r (|u0| + r/2)`.
    APriori,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonVerdict {
    pub relation: Relation,
    pub grid: Vec<f64>,
    pub min_slack: f64,
    /// Grid point where the minimum slack occurs.
    pub argmin: f64,
    pub passed: bool,
    /// Set when the check window is a default choice rather than part of the statement.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ComparisonVerdict {
    pub(crate) fn from_slacks(relation: Relation, grid: Vec<f64>, slacks: &[f64]) -> Self {
        let (argmin, min_slack) =
            grid.iter()
                .zip(slacks)
                .fold((f64::NAN, f64::INFINITY), |acc, (&r, &s)| {
                    if s < acc.1 || s.is_nan() {
                        (r, s)
                    } else {
                        acc
                    }
                });
        Self {
            relation,
            grid,
            min_slack,
            argmin,
            passed: min_slack >= -TOL_COMPARE,
            note: None,
        }
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// `n` points evenly spread over `(lo, hi]`.
pub fn open_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (1..=n)
        .map(|i| (lo + (hi - lo) * i as f64 / n as f64).min(hi))
        .collect()
}
