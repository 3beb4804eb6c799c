//! Independent reference values, computed by quadrature rather than by
//! integrating the profile system.
#![allow(dead_code)]

pub fn quad(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    quadrature::double_exponential::integrate(f, a, b, 1e-14).integral
}

/// `cosh(psi)` as a function of height, from the first integral.
fn cosh_at(kappa: f64, u0: f64, u: f64) -> f64 {
    1.0 + 0.5 * kappa * (u * u - u0 * u0)
}

/// `dr/du = C / sqrt(C^2 - 1)` after `u = u0 + s^2`, which removes the
/// inverse square-root singularity at the vertex.
fn vertex_integrand(kappa: f64, u0: f64, s: f64) -> f64 {
    let u = u0 + s * s;
    let c = cosh_at(kappa, u0, u);
    let q = kappa * (2.0 * u0 + s * s) * (c + 1.0) / 2.0;
    2.0 * c / q.sqrt()
}

/// First zero of the pendent profile: `r_o = int_{u0}^{0} dr/du du`.
pub fn pendent_first_zero(kappa: f64, u0: f64) -> f64 {
    assert!(kappa < 0.0 && u0 < 0.0);
    quad(|s| vertex_integrand(kappa, u0, s), 0.0, (-u0).sqrt())
}

/// Abscissa where the sessile profile `u(.; u0)` reaches height `u > u0`.
pub fn sessile_radius_at_height(kappa: f64, u0: f64, u: f64) -> f64 {
    assert!(kappa > 0.0 && u0 > 0.0 && u > u0);
    quad(|s| vertex_integrand(kappa, u0, s), 0.0, (u - u0).sqrt())
}

/// Height at the boundary of a solved strip problem, from the first integral.
pub fn boundary_height_closed_form(kappa: f64, u0: f64, beta: f64) -> f64 {
    let h = (u0 * u0 + 2.0 / kappa * (beta.cosh() - 1.0)).sqrt();
    if u0 < 0.0 {
        -h
    } else {
        h
    }
}

/// `int_0^a (c + sqrt(r^2 + m^2)) dr` by quadrature.
pub fn hyperbola_integral_quad(c: f64, m: f64, a: f64) -> f64 {
    quad(|r| c + r.hypot(m), 0.0, a)
}

/// Closed-form largest pendent slope.
pub fn pendent_max_slope(kappa: f64, u0: f64) -> f64 {
    (-u0 / (2.0 - kappa * u0 * u0)) * (kappa * kappa * u0 * u0 - 4.0 * kappa).sqrt()
}
