//! Numerical tolerances shared by the solvers, checkers and test suites.

/// Bound on the relative first-integral residual of an integrated profile.
pub const TOL_CONSERVE: f64 = 1e-8;

/// Bound on the Young-condition residual `u'(a) - tanh(beta)` of a solved BVP.
pub const TOL_BVP: f64 = 1e-9;

/// A comparison or inequality passes when its slack is at least `-TOL_COMPARE`.
pub const TOL_COMPARE: f64 = 1e-9;

/// Default absolute and relative tolerance of the adaptive integrator.
pub const TOL_INTEGRATOR: f64 = 1e-10;

/// Relative width at which shooting bisection on `u0` stops.
pub const TOL_SHOOT_U0: f64 = 1e-12;

/// Iteration cap for the bisection root finder.
pub const MAX_BISECTION_ITERATIONS: usize = 200;

/// Height below which a pendent sample is treated as a zero of `u`.
pub const TOL_ZERO_HEIGHT: f64 = 1e-8;

/// Absolute tolerance used when locating zeros and extrema along a profile.
pub const TOL_LOCATE: f64 = 1e-12;
