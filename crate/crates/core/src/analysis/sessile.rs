use serde::{Deserialize, Serialize};

use super::{ComparisonVerdict, Relation};
use crate::error::{Error, Result};
use crate::ode::Profile;

/// Shape of a sessile profile (`kappa > 0`, `u0 > 0`) on `[0, r_max]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessileShapeReport {
    /// Smallest rise `u(r_{i+1}) - u(r_i)` between consecutive samples.
    pub min_rise: f64,
    /// Smallest increase of the slope between consecutive samples.
    pub min_slope_increase: f64,
    /// Smallest `u''` over the samples (convexity).
    pub min_second_derivative: f64,
    /// `u''(0)`, equal to `kappa u0`.
    pub origin_second_derivative: f64,
    /// Abscissa of the lowest sample.
    pub minimum_at: f64,
    pub final_slope: f64,
    /// Guaranteed bound on `1 - u'(r_max)`, see [`slope_gap_schedule`].
    pub slope_gap_bound: f64,
    /// Largest increase of `u''` after its peak (should not be positive).
    pub tail_curvature_increase: f64,
    pub passed: bool,
}

/// Upper bound on `1 - u'(r)` for the sessile profile `u(r; u0)`.
///
/// The profile lies above the hyperbola through `(0, u0)` with curvature
/// `kappa u0`, so `u(r) >= u0 - mu + sqrt(r^2 + mu^2)`, `mu = 1/(kappa u0)`.
/// The first integral turns that into `cosh(psi) >= C` and
/// `1 - u' = 1 - sqrt(1 - 1/cosh^2) <= 1/C^2`.
pub fn slope_gap_schedule(kappa: f64, u0: f64, r: f64) -> f64 {
    let mu = 1.0 / (kappa * u0);
    let u_low = (u0 - mu + r.hypot(mu)).max(u0);
    let c = 1.0 + 0.5 * kappa * (u_low * u_low - u0 * u0);
    1.0 / (c * c)
}

fn require_sessile(p: &Profile) -> Result<()> {
    let params = p.params();
    if params.kappa <= 0.0 || params.u0 <= 0.0 {
        return Err(Error::precondition(format!(
            "sessile checks need kappa > 0 and u0 > 0 (got kappa = {}, u0 = {})",
            params.kappa, params.u0
        )));
    }
    if p.r_start() != 0.0 {
        return Err(Error::precondition(
            "sessile checks need a profile starting at r = 0",
        ));
    }
    Ok(())
}

pub fn sessile_shape_check(p: &Profile) -> Result<SessileShapeReport> {
    require_sessile(p)?;
    let kappa = p.kappa();
    let s = p.samples();

    let min_rise = s
        .windows(2)
        .map(|w| w[1].u - w[0].u)
        .fold(f64::INFINITY, f64::min);
    let min_slope_increase = s
        .windows(2)
        .map(|w| w[1].slope() - w[0].slope())
        .fold(f64::INFINITY, f64::min);
    let curv: Vec<f64> = s.iter().map(|x| x.second_derivative(kappa)).collect();
    let min_second_derivative = curv.iter().copied().fold(f64::INFINITY, f64::min);
    let peak =
        curv.iter().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |acc, (i, &c)| if c > acc.1 { (i, c) } else { acc },
        );
    let tail_curvature_increase = curv[peak.0..]
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max)
        .max(0.0);
    let minimum_at = s.iter().fold(&s[0], |m, x| if x.u < m.u { x } else { m }).r;
    let final_slope = p.last().slope();
    let slope_gap_bound = slope_gap_schedule(kappa, p.params().u0, p.r_end());

    let passed = min_rise > 0.0
        && min_slope_increase > 0.0
        && min_second_derivative > 0.0
        && minimum_at == 0.0
        && 1.0 - final_slope <= slope_gap_bound
        && tail_curvature_increase <= 1e-12 * peak.1;

    Ok(SessileShapeReport {
        min_rise,
        min_slope_increase,
        min_second_derivative,
        origin_second_derivative: curv[0],
        minimum_at,
        final_slope,
        slope_gap_bound,
        tail_curvature_increase,
        passed,
    })
}

/// `kappa u0 < v(r)/r < kappa u(r)` at every sample with `r > 0`.
pub fn growth_bounds_check(p: &Profile) -> Result<ComparisonVerdict> {
    require_sessile(p)?;
    let kappa = p.kappa();
    let u0 = p.params().u0;
    let (grid, slacks): (Vec<f64>, Vec<f64>) = p
        .samples()
        .iter()
        .filter(|s| s.r > 0.0)
        .map(|s| {
            let q = s.v / s.r;
            (s.r, (q - kappa * u0).min(kappa * s.u - q))
        })
        .unzip();
    Ok(ComparisonVerdict::from_slacks(
        Relation::SessileGrowth,
        grid,
        &slacks,
    ))
}

/// Richardson estimate of `lim_{r -> 0} v(r) / r`, which equals `kappa u0`.
///
/// `v` is odd in `r`, so `v(r)/r = kappa u0 + O(r^2)` and one extrapolation
/// step removes the quadratic term.
pub fn origin_curvature_limit(p: &Profile) -> Result<f64> {
    if p.r_start() != 0.0 {
        return Err(Error::precondition("profile must start at r = 0"));
    }
    let h = (p.r_end() / 2.0).min(1e-2);
    let q = |r: f64| p.eval(r).map(|s| s.v / r);
    Ok((4.0 * q(h / 2.0)? - q(h)?) / 3.0)
}

/// The a-priori growth bounds `|u(r)| < |u0| + r`, `|v(r)| <= |kappa| r (|u0| + r/2)`
/// that rule out finite-r blow-up.
pub fn apriori_bounds_check(p: &Profile) -> ComparisonVerdict {
    let k = p.kappa().abs();
    let u0 = p.params().u0.abs();
    let (grid, slacks): (Vec<f64>, Vec<f64>) = p
        .samples()
        .iter()
        .filter(|s| s.r > 0.0)
        .map(|s| {
            let a = u0 + s.r - s.u.abs();
            let b = k * s.r * (u0 + 0.5 * s.r) - s.v.abs();
            (s.r, a.min(b))
        })
        .unzip();
    ComparisonVerdict::from_slacks(Relation::APriori, grid, &slacks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode::{integrate_ivp, IntegratorCtrl, ModelParams};

    fn profile(kappa: f64, u0: f64, r_max: f64) -> Profile {
        integrate_ivp(
            &ModelParams::new(kappa, u0),
            r_max,
            &IntegratorCtrl::default(),
        )
        .unwrap()
    }

    #[test]
    fn unit_profile_shape() {
        let p = profile(1.0, 1.0, 20.0);
        let rep = sessile_shape_check(&p).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(rep.final_slope > 0.99);
        assert_eq!(rep.minimum_at, 0.0);
        assert_eq!(rep.origin_second_derivative, 1.0);
    }

    #[test]
    fn shape_check_rejects_pendent() {
        let p = profile(-1.0, -1.0, 1.0);
        assert!(matches!(
            sessile_shape_check(&p),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn growth_bounds_hold() {
        for (k, u0) in [(0.5, 0.1), (1.0, 1.0), (2.0, 5.0)] {
            let p = profile(k, u0, 5.0);
            let v = growth_bounds_check(&p).unwrap();
            assert!(v.passed, "{k} {u0}: {v:?}");
        }
    }

    #[test]
    fn origin_limit_is_kappa_u0() {
        for (k, u0) in [(0.5, 0.1), (1.0, 1.0), (2.0, 5.0)] {
            let p = profile(k, u0, 1.0);
            let lim = origin_curvature_limit(&p).unwrap();
            assert!(
                (lim - k * u0).abs() < 1e-7 * (k * u0).max(1.0),
                "{lim} vs {}",
                k * u0
            );
        }
    }

    #[test]
    fn apriori_bounds_hold_both_signs() {
        for (k, u0) in [(1.0, 1.0), (-2.0, -1.5), (2.0, -0.3)] {
            assert!(apriori_bounds_check(&profile(k, u0, 10.0)).passed);
        }
    }

    #[test]
    fn schedule_tightens_with_r() {
        let a = slope_gap_schedule(1.0, 1.0, 5.0);
        let b = slope_gap_schedule(1.0, 1.0, 20.0);
        assert!(b < a && b < 1e-4);
        assert_eq!(slope_gap_schedule(1.0, 1.0, 0.0), 1.0);
    }
}
