//! Comparison hyperbolas and the estimates built on them.
//!
//! A hyperbola `y = c + sqrt(r^2 + m^2)` has constant curvature
//! `y'' / (1 - y'^2)^{3/2} = 1/m`. Solutions of the profile equation are
//! compared against such curves: a sessile profile has curvature `kappa u`,
//! which is at least `kappa u0` and at most `kappa u(a)` on `[0, a]`.
//!
//! All checkers return [`InequalityRecord`]s with the convention
//! `lhs < rhs`, `slack = rhs - lhs`.

use serde::{Deserialize, Serialize};

use crate::analysis::{first_zero, open_grid};
use crate::error::{Error, Result};
use crate::ode::{reflect_sign, IntegratorCtrl, ModelParams, Profile};
use crate::shooting::{solve_bvp_with, Branch, BvpProblem, ShootingOptions, ShootingResult};
use crate::tolerances::TOL_COMPARE;

/// Interior grid resolution used by the grid-wise checks.
const GRID_POINTS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyperbola {
    /// Vertical offset.
    pub c: f64,
    /// Waist parameter; the vertex is at `(0, c + m)`.
    pub m: f64,
}

impl Hyperbola {
    pub fn new(c: f64, m: f64) -> Result<Self> {
        if !(c.is_finite() && m.is_finite()) {
            return Err(Error::NonFinite("hyperbola"));
        }
        if m <= 0.0 {
            return Err(Error::domain(format!(
                "hyperbola waist must be positive, got {m}"
            )));
        }
        Ok(Self { c, m })
    }

    /// The hyperbola with vertex `(0, height)` and curvature `curvature > 0`.
    pub fn with_vertex(height: f64, curvature: f64) -> Result<Self> {
        if curvature <= 0.0 {
            return Err(Error::domain(format!(
                "curvature must be positive, got {curvature}"
            )));
        }
        let m = 1.0 / curvature;
        Self::new(height - m, m)
    }

    pub fn value(&self, r: f64) -> f64 {
        self.c + r.hypot(self.m)
    }

    pub fn slope(&self, r: f64) -> f64 {
        r / r.hypot(self.m)
    }

    pub fn second_derivative(&self, r: f64) -> f64 {
        let h = r.hypot(self.m);
        self.m * self.m / (h * h * h)
    }

    /// `y'' / (1 - y'^2)^{3/2}`, evaluated from the derivatives.
    pub fn curvature_at(&self, r: f64) -> f64 {
        let s = self.slope(r);
        self.second_derivative(r) / (1.0 - s * s).powf(1.5)
    }

    pub fn curvature(&self) -> f64 {
        1.0 / self.m
    }

    /// `integral_0^a y(r) dr`.
    pub fn integral(&self, a: f64) -> Result<f64> {
        hyperbola_integral(self.c, self.m, a)
    }

    /// The same hyperbola moved vertically so that it passes through `(r, height)`.
    pub fn through(&self, r: f64, height: f64) -> Self {
        Self {
            c: height - r.hypot(self.m),
            m: self.m,
        }
    }
}

/// `F(c, m, a) = a c + (a/2) sqrt(a^2 + m^2) + (m^2/2) log((a + sqrt(a^2 + m^2)) / m)`,
/// the integral of `c + sqrt(r^2 + m^2)` over `[0, a]`.
pub fn hyperbola_integral(c: f64, m: f64, a: f64) -> Result<f64> {
    if !(c.is_finite() && m.is_finite() && a.is_finite()) {
        return Err(Error::NonFinite("hyperbola integral"));
    }
    if m <= 0.0 {
        return Err(Error::domain(format!("F needs m > 0, got {m}")));
    }
    if a < 0.0 {
        return Err(Error::domain(format!("F needs a >= 0, got {a}")));
    }
    if a == 0.0 {
        return Ok(0.0);
    }
    // log((a + sqrt(a^2 + m^2)) / m) = asinh(a / m)
    Ok(a * c + 0.5 * a * a.hypot(m) + 0.5 * m * m * (a / m).asinh())
}

/// The band `y = sqrt(r^2 + 1/m^2)` of constant curvature `m`.
pub fn hyperbolic_cylinder(m: f64) -> Result<Hyperbola> {
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::domain(format!(
            "hyperbolic cylinder needs m > 0, got {m}"
        )));
    }
    Hyperbola::new(0.0, 1.0 / m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Passed,
    Failed,
    /// Not evaluated: the bound is singular for a flat contact angle.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityRecord {
    pub name: String,
    pub theorem: String,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub slack: Option<f64>,
    pub status: Status,
    /// Where the smallest slack occurs, for grid-wise inequalities.
    pub at_r: Option<f64>,
}

impl InequalityRecord {
    fn scalar(name: &str, theorem: &str, lhs: f64, rhs: f64) -> Self {
        let slack = rhs - lhs;
        Self {
            name: name.into(),
            theorem: theorem.into(),
            lhs: Some(lhs),
            rhs: Some(rhs),
            slack: Some(slack),
            status: status_of(slack),
            at_r: None,
        }
    }

    /// `lhs(r) < rhs(r)` over `grid`; reports the values at the worst point.
    fn on_grid(
        name: &str,
        theorem: &str,
        grid: &[f64],
        mut pair: impl FnMut(f64) -> Result<(f64, f64)>,
    ) -> Result<Self> {
        let mut worst = Self::scalar(name, theorem, 0.0, f64::INFINITY);
        for &r in grid {
            let (l, h) = pair(r)?;
            let s = h - l;
            if !(s >= worst.slack.unwrap_or(f64::INFINITY)) {
                worst = Self::scalar(name, theorem, l, h);
                worst.at_r = Some(r);
            }
        }
        Ok(worst)
    }

    fn degenerate(name: &str, theorem: &str) -> Self {
        Self {
            name: name.into(),
            theorem: theorem.into(),
            lhs: None,
            rhs: None,
            slack: None,
            status: Status::Degenerate,
            at_r: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Failed
    }
}

fn status_of(slack: f64) -> Status {
    if slack >= -TOL_COMPARE {
        Status::Passed
    } else {
        Status::Failed
    }
}

const ENVELOPE: &str = "sessile hyperbola envelope";
const HEIGHT: &str = "sessile boundary height estimate";
const LAPLACE: &str = "sessile initial height estimate";
const MENISCUS: &str = "sessile meniscus estimate";
const PENDENT: &str = "pendent hyperbola estimate";
const PENDENT_ZERO: &str = "pendent first zero bound";

/// A solved problem in its canonical orientation (`beta >= 0`).
struct Canonical {
    a: f64,
    beta: f64,
    kappa: f64,
    u0: f64,
    profile: Profile,
}

impl Canonical {
    fn new(solved: &ShootingResult) -> Self {
        let p = solved.problem;
        if solved.reflected {
            Self {
                a: p.a,
                beta: -p.beta,
                kappa: p.kappa,
                u0: -solved.u0,
                profile: reflect_sign(&solved.profile),
            }
        } else {
            Self {
                a: p.a,
                beta: p.beta,
                kappa: p.kappa,
                u0: solved.u0,
                profile: solved.profile.clone(),
            }
        }
    }

    fn u_a(&self) -> f64 {
        self.profile.last().u
    }

    fn flat(&self) -> bool {
        self.beta == 0.0
    }
}

fn require_sessile(solved: &ShootingResult) -> Result<Canonical> {
    if solved.problem.kappa <= 0.0 {
        return Err(Error::precondition("sessile estimates need kappa > 0"));
    }
    Ok(Canonical::new(solved))
}

/// Lower comparison hyperbola `y1` (curvature `kappa u0`) and upper `y2`
/// (curvature `sinh(beta) / a`), both through `(0, u0)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessileEnvelope {
    pub y1: Option<Hyperbola>,
    pub y2: Option<Hyperbola>,
    pub lower: InequalityRecord,
    pub upper: InequalityRecord,
}

pub fn envelope_sessile(solved: &ShootingResult) -> Result<SessileEnvelope> {
    let s = require_sessile(solved)?;
    if s.flat() {
        return Ok(SessileEnvelope {
            y1: None,
            y2: None,
            lower: InequalityRecord::degenerate("y1_below_u", ENVELOPE),
            upper: InequalityRecord::degenerate("u_below_y2", ENVELOPE),
        });
    }
    let y1 = Hyperbola::with_vertex(s.u0, s.kappa * s.u0)?;
    let y2 = Hyperbola::with_vertex(s.u0, s.beta.sinh() / s.a)?;
    let grid = open_grid(0.0, s.a, GRID_POINTS);
    let lower = InequalityRecord::on_grid("y1_below_u", ENVELOPE, &grid, |r| {
        Ok((y1.value(r), s.profile.u_at(r)?))
    })?;
    let upper = InequalityRecord::on_grid("u_below_y2", ENVELOPE, &grid, |r| {
        Ok((s.profile.u_at(r)?, y2.value(r)))
    })?;
    Ok(SessileEnvelope {
        y1: Some(y1),
        y2: Some(y2),
        lower,
        upper,
    })
}

/// Two-sided bound on the boundary height `u(a)`.
pub fn check_es1(solved: &ShootingResult) -> Result<Vec<InequalityRecord>> {
    let s = require_sessile(solved)?;
    if s.flat() {
        return Ok(vec![
            InequalityRecord::degenerate("boundary_height_lower", HEIGHT),
            InequalityRecord::degenerate("boundary_height_upper", HEIGHT),
        ]);
    }
    let mu = 1.0 / (s.kappa * s.u0);
    let lower = s.u0 - mu + s.a.hypot(mu);
    let upper = s.u0 + s.a * cosh_minus_one_over_sinh(s.beta);
    Ok(vec![
        InequalityRecord::scalar("boundary_height_lower", HEIGHT, lower, s.u_a()),
        InequalityRecord::scalar("boundary_height_upper", HEIGHT, s.u_a(), upper),
    ])
}

/// `(cosh b - 1) / sinh b = tanh(b / 2)`.
fn cosh_minus_one_over_sinh(b: f64) -> f64 {
    (0.5 * b).tanh()
}

/// Lower bound on `u0` as a function of `(a, beta, kappa)` alone.
pub fn initial_height_lower_bound(a: f64, beta: f64, kappa: f64) -> f64 {
    let sh = beta.sinh();
    sh / (a * kappa) + a / sh - 0.5 * a / beta.tanh() - 0.5 * a * beta / (sh * sh)
}

/// Upper bound on `u(a)` as a function of `(a, beta, kappa)` alone.
pub fn boundary_height_upper_bound(a: f64, beta: f64, kappa: f64) -> f64 {
    let sh = beta.sinh();
    sh / (kappa * a) + 0.5 * a / beta.tanh() - 0.5 * a * beta / (sh * sh)
}

/// Two-sided bound on `u0` and the integral inequalities behind it:
/// `kappa F(y1) < sinh(beta) < kappa F(y2)`.
pub fn check_es2(solved: &ShootingResult) -> Result<Vec<InequalityRecord>> {
    let s = require_sessile(solved)?;
    let names = [
        "initial_height_lower",
        "initial_height_upper",
        "integral_y1_below",
        "integral_y2_above",
    ];
    if s.flat() {
        return Ok(names
            .iter()
            .map(|n| InequalityRecord::degenerate(n, LAPLACE))
            .collect());
    }
    let sh = s.beta.sinh();
    let y1 = Hyperbola::with_vertex(s.u0, s.kappa * s.u0)?;
    let y2 = Hyperbola::with_vertex(s.u0, sh / s.a)?;
    Ok(vec![
        InequalityRecord::scalar(
            names[0],
            LAPLACE,
            initial_height_lower_bound(s.a, s.beta, s.kappa),
            s.u0,
        ),
        InequalityRecord::scalar(names[1], LAPLACE, s.u0, sh / (s.a * s.kappa)),
        InequalityRecord::scalar(names[2], LAPLACE, s.kappa * y1.integral(s.a)?, sh),
        InequalityRecord::scalar(names[3], LAPLACE, sh, s.kappa * y2.integral(s.a)?),
    ])
}

/// The translated hyperbola `y3` (the upper one moved down to touch the
/// profile at `r = a`) lies below `u` on `[0, a)`, which gives an upper
/// bound on `u(a)` free of `u0`.
pub fn check_meniscus_ua(solved: &ShootingResult) -> Result<Vec<InequalityRecord>> {
    let s = require_sessile(solved)?;
    if s.flat() {
        return Ok(vec![
            InequalityRecord::degenerate("y3_below_u", MENISCUS),
            InequalityRecord::degenerate("boundary_height_free_upper", MENISCUS),
        ]);
    }
    let y3 = Hyperbola::with_vertex(0.0, s.beta.sinh() / s.a)?.through(s.a, s.u_a());
    let grid: Vec<f64> = (0..GRID_POINTS)
        .map(|i| s.a * i as f64 / GRID_POINTS as f64)
        .collect();
    let below = InequalityRecord::on_grid("y3_below_u", MENISCUS, &grid, |r| {
        Ok((y3.value(r), s.profile.u_at(r)?))
    })?;
    let ua = InequalityRecord::scalar(
        "boundary_height_free_upper",
        MENISCUS,
        s.u_a(),
        boundary_height_upper_bound(s.a, s.beta, s.kappa),
    );
    Ok(vec![below, ua])
}

/// Upper hyperbola `y4` through `(0, u0)` with curvature `kappa u0` for a
/// pendent profile (`kappa < 0`, `u0 < 0`), checked against `u` on
/// `(0, min(r_end, r_o)]`.
pub fn envelope_pendent(
    params: &ModelParams,
    r_end: f64,
    ctrl: &IntegratorCtrl,
) -> Result<(Hyperbola, InequalityRecord)> {
    let (r_o, p) = first_zero(params, ctrl)?;
    let y4 = Hyperbola::with_vertex(params.u0, params.kappa * params.u0)?;
    let grid = open_grid(0.0, r_end.min(r_o), GRID_POINTS);
    let rec = InequalityRecord::on_grid("u_below_y4", PENDENT, &grid, |r| {
        Ok((p.u_at(r)?, y4.value(r)))
    })?;
    Ok((y4, rec))
}

/// Pendent estimates on `[0, a]` with `a <= r_o`: `u < y4`, the resulting
/// bound on `u(a)`, `sinh(beta)/kappa < F(y4)` and the lower bounds on `r_o`.
pub fn check_pendent_bounds(
    solved: &ShootingResult,
    ctrl: &IntegratorCtrl,
) -> Result<Vec<InequalityRecord>> {
    if solved.problem.kappa >= 0.0 {
        return Err(Error::precondition("pendent estimates need kappa < 0"));
    }
    let s = Canonical::new(solved);
    if s.flat() {
        return Ok(vec![
            InequalityRecord::degenerate("u_below_y4", PENDENT),
            InequalityRecord::degenerate("boundary_height_upper", PENDENT),
            InequalityRecord::degenerate("integral_y4_above", PENDENT),
            InequalityRecord::degenerate("zero_lower_bound_ordering", PENDENT_ZERO),
            InequalityRecord::degenerate("zero_above_y4_zero", PENDENT_ZERO),
        ]);
    }
    let params = ModelParams::new(s.kappa, s.u0);
    let (r_o, _) = first_zero(&params, ctrl)?;
    if s.a > r_o {
        return Err(Error::OutOfRegime(format!(
            "half-width {} exceeds the first zero r_o = {r_o}",
            s.a
        )));
    }
    let y4 = Hyperbola::with_vertex(s.u0, s.kappa * s.u0)?;
    let grid = open_grid(0.0, s.a, GRID_POINTS);
    let below = InequalityRecord::on_grid("u_below_y4", PENDENT, &grid, |r| {
        Ok((s.profile.u_at(r)?, y4.value(r)))
    })?;
    let (b1, b2) = (
        (-2.0 / s.kappa).sqrt(),
        (s.u0 * s.u0 - 2.0 / s.kappa).sqrt(),
    );
    Ok(vec![
        below,
        InequalityRecord::scalar("boundary_height_upper", PENDENT, s.u_a(), y4.value(s.a)),
        InequalityRecord::scalar(
            "integral_y4_above",
            PENDENT,
            s.beta.sinh() / s.kappa,
            y4.integral(s.a)?,
        ),
        InequalityRecord::scalar("zero_lower_bound_ordering", PENDENT_ZERO, b1, b2),
        InequalityRecord::scalar("zero_above_y4_zero", PENDENT_ZERO, b2, r_o),
    ])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub problem: BvpProblem,
    pub branch: Branch,
    pub u0: f64,
    pub boundary_height: f64,
    /// Interior points used by the grid-wise checks.
    pub grid_points: usize,
    pub records: Vec<InequalityRecord>,
    pub passed: bool,
}

/// Every estimate that applies to an already solved problem.
pub fn bounds_report_for(solved: &ShootingResult, ctrl: &IntegratorCtrl) -> Result<BoundsReport> {
    let records = match solved.branch {
        Branch::Sessile => {
            let env = envelope_sessile(solved)?;
            let mut r = vec![env.lower, env.upper];
            r.extend(check_es1(solved)?);
            r.extend(check_es2(solved)?);
            r.extend(check_meniscus_ua(solved)?);
            r
        }
        Branch::PendentNegative => check_pendent_bounds(solved, ctrl)?,
    };
    Ok(BoundsReport {
        problem: solved.problem,
        branch: solved.branch,
        u0: solved.u0,
        boundary_height: solved.boundary_height(),
        grid_points: GRID_POINTS,
        passed: records.iter().all(InequalityRecord::passed),
        records,
    })
}

/// Solves `problem` and runs [`bounds_report_for`].
pub fn bounds_report(problem: &BvpProblem, opts: &ShootingOptions) -> Result<BoundsReport> {
    let solved = solve_bvp_with(problem, opts)?;
    bounds_report_for(&solved, &opts.ctrl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shooting::solve_bvp;
    use crate::tolerances::TOL_BVP;

    fn solve(a: f64, beta: f64, kappa: f64) -> ShootingResult {
        solve_bvp(&BvpProblem::new(a, beta, kappa), TOL_BVP).unwrap()
    }

    fn all_pass(recs: &[InequalityRecord]) -> bool {
        recs.iter()
            .all(|r| r.status == Status::Passed && r.slack.unwrap() > 0.0)
    }

    #[test]
    fn hyperbola_has_constant_curvature() {
        for m in [0.1, 1.0, 7.5] {
            let y = Hyperbola::new(-3.0, m).unwrap();
            for i in 0..=100 {
                let r = i as f64 * 0.1 - 5.0;
                assert!(
                    (y.curvature_at(r) * m - 1.0).abs() < 1e-10,
                    "m = {m}, r = {r}"
                );
                assert!(y.slope(r).abs() < 1.0);
            }
        }
    }

    #[test]
    fn cylinder_examples() {
        let y = hyperbolic_cylinder(1.0).unwrap();
        assert_eq!(y.value(0.0), 1.0);
        assert_eq!(y.slope(0.0), 0.0);
        assert!(y.slope(1e6) > 1.0 - 1e-11);
        let y = hyperbolic_cylinder(2.5).unwrap();
        assert!((y.curvature_at(0.7) - 2.5).abs() < 1e-12);
        assert!(hyperbolic_cylinder(0.0).is_err());
        assert!(hyperbolic_cylinder(-1.0).is_err());
    }

    #[test]
    fn integral_examples() {
        assert_eq!(hyperbola_integral(1.0, 1.0, 0.0).unwrap(), 0.0);
        assert!(hyperbola_integral(0.0, 1.0, 1e-12).unwrap() < 2e-12);
        let f = hyperbola_integral(0.0, 1.0, 1.0).unwrap();
        let expected = 0.5 * 2f64.sqrt() + 0.5 * (1.0 + 2f64.sqrt()).ln();
        assert!((f - expected).abs() < 1e-15);
        assert!((f - 1.147793).abs() < 1e-6);
        let d =
            hyperbola_integral(1.0, 2.0, 3.0).unwrap() - hyperbola_integral(0.0, 2.0, 3.0).unwrap();
        assert!((d - 3.0).abs() < 1e-13);
        assert!(hyperbola_integral(0.0, 0.0, 1.0).is_err());
        assert!(hyperbola_integral(0.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn unit_sessile_sandwich() {
        let s = solve(1.0, 1.0, 1.0);
        let env = envelope_sessile(&s).unwrap();
        let (y1, y2) = (env.y1.unwrap(), env.y2.unwrap());
        assert!((y1.value(0.0) - s.u0).abs() < 1e-15);
        assert!((y2.value(0.0) - s.u0).abs() < 1e-15);
        assert!(y2.curvature() > y1.curvature());
        assert!(all_pass(&[env.lower, env.upper]));
    }

    #[test]
    fn unit_sessile_estimates() {
        let s = solve(1.0, 1.0, 1.0);
        assert!(all_pass(&check_es1(&s).unwrap()));
        let es2 = check_es2(&s).unwrap();
        assert!(all_pass(&es2));
        assert!(s.u0 < 1f64.sinh());
        let m = check_meniscus_ua(&s).unwrap();
        assert!(all_pass(&m));
        let sh = 1f64.sinh();
        let expected = sh + 0.5 / 1f64.tanh() - 0.5 / (sh * sh);
        assert!((m[1].rhs.unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn meniscus_touches_at_boundary() {
        let s = solve(1.0, 1.0, 1.0);
        let y3 = Hyperbola::with_vertex(0.0, 1f64.sinh())
            .unwrap()
            .through(1.0, s.boundary_height());
        assert!((y3.value(1.0) - s.boundary_height()).abs() < 1e-14);
    }

    #[test]
    fn height_upper_bound_ignores_kappa() {
        // rhs - u0 depends only on (a, beta)
        let rise = |kappa: f64| {
            let s = solve(1.0, 1.0, kappa);
            check_es1(&s).unwrap()[1].rhs.unwrap() - s.u0
        };
        assert!((rise(0.5) - rise(2.0)).abs() < 1e-14);
    }

    #[test]
    fn es2_slack_shrinks_with_a() {
        let slack = |a: f64| {
            let r = check_es2(&solve(a, 1.0, 1.0)).unwrap();
            r[0].slack.unwrap() + r[1].slack.unwrap()
        };
        let (s1, s2, s3) = (slack(1.0), slack(0.5), slack(0.25));
        assert!(s1 > s2 && s2 > s3 && s3 > 0.0, "{s1} {s2} {s3}");
    }

    #[test]
    fn flat_contact_is_degenerate() {
        let s = solve(1.0, 0.0, 1.0);
        let rep = bounds_report_for(&s, &IntegratorCtrl::default()).unwrap();
        assert!(rep.passed);
        assert!(rep.records.iter().all(|r| r.status == Status::Degenerate));
    }

    #[test]
    fn negative_contact_angle_uses_mirror() {
        let rep = bounds_report(
            &BvpProblem::new(1.0, -1.0, 1.0),
            &ShootingOptions::default(),
        )
        .unwrap();
        assert!(rep.passed && rep.u0 < 0.0);
        assert!(rep.records.iter().all(|r| r.status == Status::Passed));
    }

    #[test]
    fn unit_pendent_estimates() {
        let s = solve(1.0, 1.0, -1.0);
        let recs = check_pendent_bounds(&s, &IntegratorCtrl::default()).unwrap();
        assert_eq!(recs.len(), 5);
        assert!(all_pass(&recs), "{recs:?}");
    }

    #[test]
    fn y4_vanishes_where_predicted() {
        let p = ModelParams::new(-1.0, -1.0);
        let (y4, rec) = envelope_pendent(&p, 10.0, &IntegratorCtrl::default()).unwrap();
        assert_eq!(y4.value(0.0), -1.0);
        assert!(y4.value(3f64.sqrt()).abs() < 1e-15);
        assert_eq!(rec.status, Status::Passed);
    }

    #[test]
    fn pendent_zero_bound_for_kappa_minus_two() {
        let (r_o, _) =
            first_zero(&ModelParams::new(-2.0, -1.0), &IntegratorCtrl::default()).unwrap();
        assert!(r_o > 1.0 && r_o > 2f64.sqrt());
    }

    #[test]
    fn wide_pendent_strip_is_out_of_regime() {
        let opts = ShootingOptions::default();
        let s = solve_bvp_with(&BvpProblem::new(1.0, 1.0, -1.0), &opts).unwrap();
        let mut wide = s.clone();
        wide.problem.a = 10.0;
        assert!(matches!(
            check_pendent_bounds(&wide, &opts.ctrl),
            Err(Error::OutOfRegime(_))
        ));
    }

    #[test]
    fn wrong_regime_is_rejected() {
        let s = solve(1.0, 1.0, -1.0);
        assert!(check_es1(&s).is_err());
        let s = solve(1.0, 1.0, 1.0);
        assert!(check_pendent_bounds(&s, &IntegratorCtrl::default()).is_err());
    }
}
