//! Shooting on the initial height `u0`.
//!
//! The Young-condition problem on the strip `|r| < a` asks for an even
//! profile with `u'(a) = tanh(beta)`. Every even solution is `u(r; u0)` for
//! some `u0`, so the problem becomes a scalar root-finding problem in `u0`.
//!
//! For `kappa > 0` the map `u0 -> u'(a; u0)` is strictly increasing, and
//! `u0 = sinh(beta) / (a kappa)` already overshoots (the profile's slope at
//! `a` exceeds that of the comparison hyperbola with curvature `kappa u0`), so
//! bisection on `[0, sinh(beta) / (a kappa)]` is guaranteed to converge.
//!
//! For `kappa < 0` solutions are periodic and the root is not unique. The
//! solver scans `u0 = -s, -s g, -s g^2, ...` and bisects the first sign change
//! among scan points whose profile stays negative on `[0, a)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ode::{integrate_ivp, reflect_sign, IntegratorCtrl, ModelParams, Profile};
use crate::root::bisect;
use crate::tolerances::{MAX_BISECTION_ITERATIONS, TOL_BVP, TOL_SHOOT_U0};

/// Young-condition problem on the strip of half-width `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BvpProblem {
    pub a: f64,
    pub beta: f64,
    pub kappa: f64,
}

impl BvpProblem {
    pub fn new(a: f64, beta: f64, kappa: f64) -> Self {
        Self { a, beta, kappa }
    }

    fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.beta.is_finite() && self.kappa.is_finite()) {
            return Err(Error::NonFinite("boundary value problem"));
        }
        if self.a <= 0.0 {
            return Err(Error::domain(format!(
                "half-width a must be positive, got {}",
                self.a
            )));
        }
        if self.kappa == 0.0 {
            return Err(Error::Unsupported("kappa = 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Sessile,
    /// `kappa < 0`, profile negative on `[0, a)` (before any sign reflection).
    PendentNegative,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShootingResult {
    pub problem: BvpProblem,
    pub u0: f64,
    pub profile: Profile,
    pub young_residual: f64,
    /// Final bisection interval (in the frame of `|beta|`, before reflection).
    pub bracket: (f64, f64),
    pub iterations: usize,
    pub branch: Branch,
    /// `beta < 0`: the solution was computed for `|beta|` and sign-reflected.
    pub reflected: bool,
}

impl ShootingResult {
    pub fn params(&self) -> ModelParams {
        ModelParams::new(self.problem.kappa, self.u0)
    }

    /// Height at the boundary, `u(a)`.
    pub fn boundary_height(&self) -> f64 {
        self.profile.last().u
    }
}

/// One trial of the pendent scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub u0: f64,
    pub residual: f64,
    /// The profile stays negative on `[0, a)`.
    pub negative: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingOptions {
    pub tol_bvp: f64,
    pub u0_rel_tol: f64,
    pub max_iterations: usize,
    pub ctrl: IntegratorCtrl,
    /// First `|u0|` of the pendent scan.
    pub scan_start: f64,
    /// Geometric growth factor of the pendent scan.
    pub scan_growth: f64,
    /// Largest `|u0|` tried by the pendent scan.
    pub scan_limit: f64,
}

impl Default for ShootingOptions {
    fn default() -> Self {
        Self {
            tol_bvp: TOL_BVP,
            u0_rel_tol: TOL_SHOOT_U0,
            max_iterations: MAX_BISECTION_ITERATIONS,
            ctrl: IntegratorCtrl::default(),
            scan_start: 1e-4,
            scan_growth: 1.25,
            scan_limit: 1e6,
        }
    }
}

/// `u'(a) - tanh(beta)` read off a profile.
pub fn young_residual(p: &Profile, a: f64, beta: f64) -> Result<f64> {
    Ok(p.slope_at(a)? - beta.tanh())
}

pub fn solve_bvp(prob: &BvpProblem, tol_bvp: f64) -> Result<ShootingResult> {
    solve_bvp_with(
        prob,
        &ShootingOptions {
            tol_bvp,
            ..ShootingOptions::default()
        },
    )
}

pub fn solve_bvp_with(prob: &BvpProblem, opts: &ShootingOptions) -> Result<ShootingResult> {
    prob.validate()?;
    let branch = if prob.kappa > 0.0 {
        Branch::Sessile
    } else {
        Branch::PendentNegative
    };

    if prob.beta == 0.0 {
        let profile = integrate_ivp(&ModelParams::new(prob.kappa, 0.0), prob.a, &opts.ctrl)?;
        return Ok(ShootingResult {
            problem: *prob,
            u0: 0.0,
            profile,
            young_residual: 0.0,
            bracket: (0.0, 0.0),
            iterations: 0,
            branch,
            reflected: false,
        });
    }

    let reflected = prob.beta < 0.0;
    let positive = BvpProblem {
        beta: prob.beta.abs(),
        ..*prob
    };
    let mut res = match branch {
        Branch::Sessile => shoot_sessile(&positive, opts)?,
        Branch::PendentNegative => shoot_pendent(&positive, opts)?,
    };
    if reflected {
        res.profile = reflect_sign(&res.profile);
        res.u0 = -res.u0;
        res.young_residual = young_residual(&res.profile, prob.a, prob.beta)?;
        res.problem = *prob;
        res.reflected = true;
    }
    Ok(res)
}

fn slope_residual(prob: &BvpProblem, u0: f64, ctrl: &IntegratorCtrl) -> Result<(f64, Profile)> {
    let p = integrate_ivp(&ModelParams::new(prob.kappa, u0), prob.a, ctrl)?;
    Ok((p.last().slope() - prob.beta.tanh(), p))
}

fn finish(
    prob: &BvpProblem,
    opts: &ShootingOptions,
    root: crate::root::Bracketed,
    branch: Branch,
) -> Result<ShootingResult> {
    let (residual, profile) = slope_residual(prob, root.root, &opts.ctrl)?;
    if residual.abs() > opts.tol_bvp {
        return Err(Error::NotConverged {
            lo: root.lo,
            hi: root.hi,
            iterations: root.iterations,
        });
    }
    Ok(ShootingResult {
        problem: *prob,
        u0: root.root,
        profile,
        young_residual: residual,
        bracket: (root.lo, root.hi),
        iterations: root.iterations,
        branch,
        reflected: false,
    })
}

fn shoot_sessile(prob: &BvpProblem, opts: &ShootingOptions) -> Result<ShootingResult> {
    let f = |u0: f64| slope_residual(prob, u0, &opts.ctrl).map(|(g, _)| g);
    let lo = 0.0;
    let f_lo = -prob.beta.tanh();
    let mut hi = prob.beta.sinh() / (prob.a * prob.kappa);
    let mut f_hi = f(hi)?;
    let mut expansions = 0;
    while f_hi <= 0.0 {
        // Not expected: the comparison bound above is strict.
        expansions += 1;
        if expansions > 60 {
            return Err(Error::NoBracket { trace: Vec::new() });
        }
        hi *= 2.0;
        f_hi = f(hi)?;
    }
    let root = bisect(f, lo, hi, f_lo, f_hi, opts.u0_rel_tol, opts.max_iterations)?;
    finish(prob, opts, root, Branch::Sessile)
}

fn negative_on_open_strip(p: &Profile, a: f64) -> bool {
    p.samples().iter().filter(|s| s.r < a).all(|s| s.u < 0.0)
}

/// Scan trace of the pendent search, useful when no bracket exists.
pub fn pendent_scan(prob: &BvpProblem, opts: &ShootingOptions) -> Result<Vec<ScanPoint>> {
    prob.validate()?;
    let mut trace = Vec::new();
    let mut s = opts.scan_start;
    while s <= opts.scan_limit {
        let (g, p) = slope_residual(prob, -s, &opts.ctrl)?;
        trace.push(ScanPoint {
            u0: -s,
            residual: g,
            negative: negative_on_open_strip(&p, prob.a),
        });
        s *= opts.scan_growth;
    }
    Ok(trace)
}

fn shoot_pendent(prob: &BvpProblem, opts: &ShootingOptions) -> Result<ShootingResult> {
    let mut trace: Vec<ScanPoint> = Vec::new();
    let mut s = opts.scan_start;
    while s <= opts.scan_limit {
        let (g, p) = slope_residual(prob, -s, &opts.ctrl)?;
        let point = ScanPoint {
            u0: -s,
            residual: g,
            negative: negative_on_open_strip(&p, prob.a),
        };
        if let Some(prev) = trace.last() {
            if prev.negative && point.negative && prev.residual.signum() != g.signum() {
                let f = |u0: f64| slope_residual(prob, u0, &opts.ctrl).map(|(g, _)| g);
                // Bracket in increasing order: [point.u0, prev.u0].
                let root = bisect(
                    f,
                    point.u0,
                    prev.u0,
                    point.residual,
                    prev.residual,
                    opts.u0_rel_tol,
                    opts.max_iterations,
                )?;
                let res = finish(prob, opts, root, Branch::PendentNegative)?;
                if !negative_on_open_strip(&res.profile, prob.a) {
                    return Err(Error::OutOfRegime(format!(
                        "root u0 = {} leaves the negative branch before r = a",
                        res.u0
                    )));
                }
                return Ok(res);
            }
        }
        trace.push(point);
        s *= opts.scan_growth;
    }
    Err(Error::NoBracket { trace })
}

/// A leaf of the sessile foliation through the point `(a, b)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoliationLeaf {
    pub a: f64,
    pub b: f64,
    pub kappa: f64,
    pub u0: f64,
    /// `u(a; u0) - b`.
    pub residual: f64,
    pub iterations: usize,
}

/// Finds the unique `u0` with `u(a; u0) = b` for `kappa > 0`.
///
/// For `b > 0` the root lies in `[0, b]` because sessile profiles rise from
/// their minimum; `b < 0` is the sign reflection of `-b`.
pub fn solve_foliation(a: f64, b: f64, kappa: f64) -> Result<FoliationLeaf> {
    solve_foliation_with(a, b, kappa, &ShootingOptions::default())
}

pub fn solve_foliation_with(
    a: f64,
    b: f64,
    kappa: f64,
    opts: &ShootingOptions,
) -> Result<FoliationLeaf> {
    if !(a.is_finite() && b.is_finite() && kappa.is_finite()) {
        return Err(Error::NonFinite("foliation input"));
    }
    if kappa <= 0.0 {
        return Err(Error::precondition("foliation requires kappa > 0"));
    }
    if a < 0.0 {
        return Err(Error::domain(
            "foliation abscissa must be non-negative (use symmetry)",
        ));
    }
    let leaf = |u0: f64, residual: f64, iterations: usize| FoliationLeaf {
        a,
        b,
        kappa,
        u0,
        residual,
        iterations,
    };
    if b == 0.0 {
        return Ok(leaf(0.0, 0.0, 0));
    }
    if a == 0.0 {
        return Ok(leaf(b, 0.0, 0));
    }
    if b < 0.0 {
        let mirror = solve_foliation_with(a, -b, kappa, opts)?;
        return Ok(leaf(-mirror.u0, -mirror.residual, mirror.iterations));
    }

    let height = |u0: f64| -> Result<f64> {
        Ok(integrate_ivp(&ModelParams::new(kappa, u0), a, &opts.ctrl)?
            .last()
            .u
            - b)
    };
    let f_hi = height(b)?;
    let root = bisect(
        height,
        0.0,
        b,
        -b,
        f_hi,
        opts.u0_rel_tol,
        opts.max_iterations,
    )?;
    let residual = height(root.root)?;
    if residual.abs() > opts.tol_bvp {
        return Err(Error::NotConverged {
            lo: root.lo,
            hi: root.hi,
            iterations: root.iterations,
        });
    }
    Ok(leaf(root.root, residual, root.iterations))
}
