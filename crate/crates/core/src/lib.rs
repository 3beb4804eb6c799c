//! Solvers for stationary bands in Lorentz-Minkowski space.
//!
//! A stationary band is a spacelike cylindrical surface whose mean curvature
//! is linear in the time coordinate, `2H = kappa * x3 + lambda`. Its rulings
//! are horizontal, so the surface is the graph `x3 = u(x1)` and everything
//! reduces to the directrix equation
//! `u'' / (1 - u'^2)^{3/2} = kappa * u` (after removing `lambda`).
//!
//! - [`ode`]: the profile system, its integrator and first integral.
//! - [`shooting`]: the Young-condition problem and the sessile foliation.
//! - [`analysis`]: qualitative checks (convexity, periodicity, comparison).
//! - [`bounds`]: comparison hyperbolas and the height estimates built on them.
//! - [`io`]: CSV / JSON profile records, OBJ meshes and SVG plots.

pub mod analysis;
pub mod bounds;
pub mod error;
pub mod io;
pub mod ode;
pub mod root;
pub mod shooting;
pub mod tolerances;

pub use analysis::{pendent_summary, ComparisonVerdict, PendentSummary};
pub use bounds::{bounds_report, hyperbola_integral, hyperbolic_cylinder, BoundsReport, Hyperbola};
pub use error::{Error, Result};
pub use io::{ProfileRecord, SurfaceMesh};
pub use ode::{
    canonicalize_sign, extend_by_symmetry, first_integral_residual, height_at_angle, integrate_ivp,
    normalize_lambda, reflect_sign, rhs, IntegratorCtrl, ModelParams, PhaseState, Profile,
    StepStats, Stepping,
};
pub use shooting::{
    solve_bvp, solve_bvp_with, solve_foliation, solve_foliation_with, young_residual, Branch, BvpProblem, FoliationLeaf,
    ShootingOptions, ShootingResult,
};
