use super::{open_grid, ComparisonVerdict, Relation};
use crate::analysis::pendent::first_zero;
use crate::error::{Error, Result};
use crate::ode::{integrate_ivp, IntegratorCtrl, ModelParams, Profile};
use crate::shooting::{solve_bvp_with, BvpProblem, ShootingOptions};

fn reach(grid: &[f64]) -> Result<f64> {
    let r = grid.iter().map(|r| r.abs()).fold(0.0, f64::max);
    if grid.is_empty() || !r.is_finite() {
        return Err(Error::domain(
            "comparison grid must be non-empty and finite",
        ));
    }
    Ok(r.max(1e-3))
}

fn pair(
    a: &ModelParams,
    b: &ModelParams,
    grid: &[f64],
    ctrl: &IntegratorCtrl,
) -> Result<(Profile, Profile)> {
    let r = reach(grid)?;
    Ok((integrate_ivp(a, r, ctrl)?, integrate_ivp(b, r, ctrl)?))
}

/// Same `u0 > 0`, `0 < k1 < k2`: `u1 < u2` for `r != 0` and `u1' < u2'` for `r > 0`.
///
/// Grid points are taken by absolute value (profiles are even); a point at
/// `r = 0` contributes the equality `u1(0) = u2(0)` with slack `-|u1 - u2|`.
pub fn compare_kappa_ivp(
    u0: f64,
    k1: f64,
    k2: f64,
    grid: &[f64],
    ctrl: &IntegratorCtrl,
) -> Result<ComparisonVerdict> {
    if !(0.0 < k1 && k1 < k2) {
        return Err(Error::precondition(format!(
            "need 0 < k1 < k2, got k1 = {k1}, k2 = {k2}"
        )));
    }
    if u0 <= 0.0 {
        return Err(Error::precondition("kappa comparison uses u0 > 0"));
    }
    let (p1, p2) = pair(
        &ModelParams::new(k1, u0),
        &ModelParams::new(k2, u0),
        grid,
        ctrl,
    )?;
    let slacks = grid
        .iter()
        .map(|&r| {
            let (s1, s2) = (p1.eval(r.abs())?, p2.eval(r.abs())?);
            Ok(if r == 0.0 {
                -(s2.u - s1.u).abs()
            } else {
                (s2.u - s1.u).min(s2.slope() - s1.slope())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonVerdict::from_slacks(
        Relation::KappaIvp,
        grid.to_vec(),
        &slacks,
    ))
}

/// Solved boundary problems with the same `(a, beta)` and `0 < k1 < k2`:
/// `u1 > u2` on `[0, a]` and `u1' > u2'` on `(0, a)`.
pub fn compare_kappa_bvp(
    a: f64,
    beta: f64,
    k1: f64,
    k2: f64,
    grid: &[f64],
    opts: &ShootingOptions,
) -> Result<ComparisonVerdict> {
    if !(0.0 < k1 && k1 < k2) {
        return Err(Error::precondition(format!(
            "need 0 < k1 < k2, got k1 = {k1}, k2 = {k2}"
        )));
    }
    if beta <= 0.0 {
        return Err(Error::precondition(
            "kappa comparison of boundary problems needs beta > 0",
        ));
    }
    let s1 = solve_bvp_with(&BvpProblem::new(a, beta, k1), opts)?;
    let s2 = solve_bvp_with(&BvpProblem::new(a, beta, k2), opts)?;
    let grid: Vec<f64> = grid
        .iter()
        .copied()
        .filter(|r| (0.0..=a).contains(r))
        .collect();
    let slacks = grid
        .iter()
        .map(|&r| {
            let (x1, x2) = (s1.profile.eval(r)?, s2.profile.eval(r)?);
            let du = x1.u - x2.u;
            Ok(if r > 0.0 && r < a {
                du.min(x1.slope() - x2.slope())
            } else {
                du
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonVerdict::from_slacks(
        Relation::KappaBvp,
        grid,
        &slacks,
    ))
}

/// `kappa > 0`, `delta > 0`: `u(r; u0 + delta) - delta > u(r; u0)` for `r != 0`.
pub fn compare_u0(
    kappa: f64,
    u0: f64,
    delta: f64,
    grid: &[f64],
    ctrl: &IntegratorCtrl,
) -> Result<ComparisonVerdict> {
    if kappa <= 0.0 {
        return Err(Error::precondition("height comparison needs kappa > 0"));
    }
    if delta <= 0.0 {
        return Err(Error::precondition("delta must be positive"));
    }
    let (lo, hi) = pair(
        &ModelParams::new(kappa, u0),
        &ModelParams::new(kappa, u0 + delta),
        grid,
        ctrl,
    )?;
    let slacks = grid
        .iter()
        .map(|&r| {
            let gap = hi.u_at(r.abs())? - delta - lo.u_at(r.abs())?;
            Ok(if r == 0.0 { -gap.abs() } else { gap })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonVerdict::from_slacks(
        Relation::InitialHeightShift,
        grid.to_vec(),
        &slacks,
    ))
}

const PENDENT_WINDOW_NOTE: &str =
    "pendent monotonicity holds only near r = 0; default window is (0, min r_o / 2]";

fn pendent_window(window: Option<f64>, zeros: [f64; 2]) -> (f64, bool) {
    match window {
        Some(w) => (w, false),
        None => (0.5 * zeros[0].min(zeros[1]), true),
    }
}

/// Pendent profiles with the same `u0 < 0` and `k1 < k2 < 0`:
/// `u(r; k1) > u(r; k2)` on `(0, window]`.
pub fn compare_kappa_pendent(
    u0: f64,
    k1: f64,
    k2: f64,
    window: Option<f64>,
    n: usize,
    ctrl: &IntegratorCtrl,
) -> Result<ComparisonVerdict> {
    if !(k1 < k2 && k2 < 0.0) {
        return Err(Error::precondition(format!(
            "need k1 < k2 < 0, got k1 = {k1}, k2 = {k2}"
        )));
    }
    let (p1, p2) = (ModelParams::new(k1, u0), ModelParams::new(k2, u0));
    let (z1, _) = first_zero(&p1, ctrl)?;
    let (z2, _) = first_zero(&p2, ctrl)?;
    let (w, default) = pendent_window(window, [z1, z2]);
    let grid = open_grid(0.0, w, n);
    let (a, b) = pair(&p1, &p2, &grid, ctrl)?;
    let slacks = grid
        .iter()
        .map(|&r| Ok(a.u_at(r)? - b.u_at(r)?))
        .collect::<Result<Vec<_>>>()?;
    let v = ComparisonVerdict::from_slacks(Relation::PendentKappaNearOrigin, grid, &slacks);
    Ok(if default {
        v.with_note(PENDENT_WINDOW_NOTE)
    } else {
        v
    })
}

/// Pendent profiles with `kappa < 0`, `u0 < 0`, `delta > 0`:
/// `u(r; u0 - delta) + delta >= u(r; u0)` on `(0, window]`.
pub fn compare_u0_pendent(
    kappa: f64,
    u0: f64,
    delta: f64,
    window: Option<f64>,
    n: usize,
    ctrl: &IntegratorCtrl,
) -> Result<ComparisonVerdict> {
    if delta <= 0.0 {
        return Err(Error::precondition("delta must be positive"));
    }
    let (base, deep) = (
        ModelParams::new(kappa, u0),
        ModelParams::new(kappa, u0 - delta),
    );
    let (z1, _) = first_zero(&base, ctrl)?;
    let (z2, _) = first_zero(&deep, ctrl)?;
    let (w, default) = pendent_window(window, [z1, z2]);
    let grid = open_grid(0.0, w, n);
    let (a, b) = pair(&deep, &base, &grid, ctrl)?;
    let slacks = grid
        .iter()
        .map(|&r| Ok(a.u_at(r)? + delta - b.u_at(r)?))
        .collect::<Result<Vec<_>>>()?;
    let v = ComparisonVerdict::from_slacks(Relation::PendentHeightNearOrigin, grid, &slacks);
    Ok(if default {
        v.with_note(PENDENT_WINDOW_NOTE)
    } else {
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_ivp_ordering() {
        let grid = open_grid(0.0, 3.0, 60);
        let v = compare_kappa_ivp(1.0, 1.0, 2.0, &grid, &IntegratorCtrl::default()).unwrap();
        assert!(v.passed && v.min_slack > 0.0, "{v:?}");
    }

    #[test]
    fn shared_initial_condition_is_an_equality() {
        let v = compare_kappa_ivp(1.0, 1.0, 2.0, &[0.0], &IntegratorCtrl::default()).unwrap();
        assert_eq!(v.min_slack, 0.0);
        let v = compare_u0(1.0, 1.0, 1.0, &[0.0], &IntegratorCtrl::default()).unwrap();
        assert_eq!(v.min_slack, 0.0);
    }

    #[test]
    fn unordered_kappa_is_rejected() {
        let ctrl = IntegratorCtrl::default();
        assert!(compare_kappa_ivp(1.0, 2.0, 1.0, &[1.0], &ctrl).is_err());
        assert!(compare_kappa_ivp(1.0, -1.0, 1.0, &[1.0], &ctrl).is_err());
        assert!(compare_kappa_pendent(-1.0, -1.0, -2.0, None, 10, &ctrl).is_err());
    }

    #[test]
    fn kappa_bvp_reverses_order() {
        let grid: Vec<f64> = (0..=40).map(|i| i as f64 / 40.0).collect();
        let v = compare_kappa_bvp(1.0, 1.0, 1.0, 2.0, &grid, &ShootingOptions::default()).unwrap();
        assert!(v.passed && v.min_slack > 0.0, "{v:?}");
        assert_eq!(v.grid.len(), 41);
    }

    #[test]
    fn height_shift_slack_grows() {
        let grid = open_grid(0.0, 3.0, 30);
        let v = compare_u0(1.0, 1.0, 1.0, &grid, &IntegratorCtrl::default()).unwrap();
        assert!(v.passed && v.min_slack > 0.0);
        // Smallest slack is at the smallest r: the gap increases monotonically.
        assert_eq!(v.argmin, grid[0]);
    }

    #[test]
    fn pendent_orderings_near_origin() {
        let ctrl = IntegratorCtrl::default();
        let v = compare_kappa_pendent(-1.0, -2.0, -1.0, None, 50, &ctrl).unwrap();
        assert!(v.passed && v.min_slack > 0.0, "{v:?}");
        assert!(v.note.is_some());
        let v = compare_u0_pendent(-1.0, -1.0, 0.5, None, 50, &ctrl).unwrap();
        assert!(v.passed, "{v:?}");
    }
}
