use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::write_atomic;
use crate::error::{Error, Result};
use crate::ode::Profile;

/// The band `x(s, t) = (r(s), t, u(r(s)))` over `|t| <= half_width`.
///
/// Vertices are stored ruling by ruling: ruling `i` sits at `x1 = r_i` and
/// holds `segments + 1` vertices along `x2`, all with the same `x3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceMesh {
    pub vertices: Vec<[f64; 3]>,
    /// Quads as zero-based vertex indices, counter-clockwise seen from `+x3`.
    pub faces: Vec<[usize; 4]>,
    pub rulings: usize,
    pub segments: usize,
    pub half_width: f64,
}

impl SurfaceMesh {
    /// Samples the profile at `n_rulings` evenly spaced abscissae across its
    /// range. `shift` is subtracted from every height.
    pub fn from_profile(
        p: &Profile,
        half_width: f64,
        n_rulings: usize,
        segments: usize,
        shift: f64,
    ) -> Result<Self> {
        if n_rulings < 2 {
            return Err(Error::domain("a mesh needs at least two rulings"));
        }
        if segments < 1 {
            return Err(Error::domain("a ruling needs at least one segment"));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::domain("half_width must be positive"));
        }
        let (r0, r1) = (p.r_start(), p.r_end());
        let step = (r1 - r0) / (n_rulings - 1) as f64;
        let xs: Vec<f64> = (0..segments + 1)
            .map(|j| half_width * (2.0 * j as f64 / segments as f64 - 1.0))
            .collect();
        let mut vertices = Vec::with_capacity(n_rulings * xs.len());
        for i in 0..n_rulings {
            let r = if i + 1 == n_rulings {
                r1
            } else {
                r0 + step * i as f64
            };
            let x3 = p.u_at(r)? - shift;
            vertices.extend(xs.iter().map(|&x2| [r, x2, x3]));
        }
        let w = segments + 1;
        let mut faces = Vec::with_capacity((n_rulings - 1) * segments);
        for i in 0..n_rulings - 1 {
            for j in 0..segments {
                let a = i * w + j;
                faces.push([a, a + w, a + w + 1, a + 1]);
            }
        }
        Ok(Self {
            vertices,
            faces,
            rulings: n_rulings,
            segments,
            half_width,
        })
    }

    /// `(x1, x3)` of each ruling, read from its first vertex.
    pub fn directrix(&self) -> Vec<(f64, f64)> {
        self.vertices
            .iter()
            .step_by(self.segments + 1)
            .map(|v| (v[0], v[2]))
            .collect()
    }

    /// Every ruling has bit-identical `x3` along its length.
    pub fn rulings_horizontal(&self) -> bool {
        self.vertices
            .chunks(self.segments + 1)
            .all(|c| c.iter().all(|v| v[2].to_bits() == c[0][2].to_bits()))
    }

    /// `(min x3, max x3)` with the `x1` where each is attained.
    pub fn height_extremes(&self) -> ((f64, f64), (f64, f64)) {
        let d = self.directrix();
        let lo = d.iter().fold(d[0], |m, &p| if p.1 < m.1 { p } else { m });
        let hi = d.iter().fold(d[0], |m, &p| if p.1 > m.1 { p } else { m });
        (lo, hi)
    }

    /// Wavefront OBJ text.
    pub fn to_obj(&self) -> String {
        let mut out = String::with_capacity(48 * self.vertices.len() + 24 * self.faces.len());
        let _ = writeln!(
            out,
            "# band mesh: {} rulings x {} segments, half width {}",
            self.rulings, self.segments, self.half_width
        );
        for v in &self.vertices {
            let _ = writeln!(out, "v {} {} {}", v[0], v[1], v[2]);
        }
        for f in &self.faces {
            let _ = writeln!(out, "f {} {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1, f[3] + 1);
        }
        out
    }

    pub fn write_obj(&self, path: impl AsRef<Path>) -> Result<()> {
        write_atomic(path, self.to_obj().as_bytes())
    }
}

/// Largest `|u''_h / (1 - u'_h^2)^{3/2} - (kappa x3 + lambda)|` over interior
/// rulings, with second-order central differences along the directrix.
pub fn curvature_residual(mesh: &SurfaceMesh, kappa: f64, lambda: f64) -> Result<f64> {
    let d = mesh.directrix();
    if d.len() < 3 {
        return Err(Error::domain(
            "curvature residual needs at least three rulings",
        ));
    }
    let h = (d[d.len() - 1].0 - d[0].0) / (d.len() - 1) as f64;
    let uneven = d
        .windows(2)
        .any(|w| ((w[1].0 - w[0].0) - h).abs() > 1e-9 * h.abs().max(1.0));
    if uneven {
        return Err(Error::domain(
            "curvature residual needs evenly spaced rulings",
        ));
    }
    let mut worst = 0.0f64;
    for w in d.windows(3) {
        let (um, u, up) = (w[0].1, w[1].1, w[2].1);
        let du = (up - um) / (2.0 * h);
        let ddu = (up - 2.0 * u + um) / (h * h);
        let c = ddu / (1.0 - du * du).powf(1.5);
        worst = worst.max((c - (kappa * u + lambda)).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode::{integrate_ivp, IntegratorCtrl, ModelParams};

    fn mesh(kappa: f64, u0: f64, r_max: f64, n: usize) -> SurfaceMesh {
        let p = integrate_ivp(
            &ModelParams::new(kappa, u0),
            r_max,
            &IntegratorCtrl::default(),
        )
        .unwrap();
        SurfaceMesh::from_profile(&p, 1.0, n, 4, 0.0).unwrap()
    }

    #[test]
    fn plane_mesh_is_flat() {
        let m = mesh(1.0, 0.0, 2.0, 11);
        assert!(m.vertices.iter().all(|v| v[2] == 0.0));
        assert_eq!(m.vertices.len(), 11 * 5);
        assert_eq!(m.faces.len(), 10 * 4);
    }

    #[test]
    fn sessile_minimum_on_first_ruling() {
        let m = mesh(1.0, 1.0, 2.0, 21);
        let ((r, lo), _) = m.height_extremes();
        assert_eq!(r, 0.0);
        assert_eq!(lo, 1.0);
        assert!(m.rulings_horizontal());
    }

    #[test]
    fn residual_is_second_order() {
        let e1 = curvature_residual(&mesh(1.0, 1.0, 1.0, 11), 1.0, 0.0).unwrap();
        let e2 = curvature_residual(&mesh(1.0, 1.0, 1.0, 21), 1.0, 0.0).unwrap();
        let order = (e1 / e2).log2();
        assert!(order > 1.9, "{e1} {e2} {order}");
    }

    #[test]
    fn obj_layout() {
        let obj = mesh(1.0, 1.0, 1.0, 3).to_obj();
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 15);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 8);
        assert!(obj.contains("\nf 1 6 7 2\n"));
    }

    #[test]
    fn rejects_single_ruling() {
        let p =
            integrate_ivp(&ModelParams::new(1.0, 1.0), 1.0, &IntegratorCtrl::default()).unwrap();
        assert!(SurfaceMesh::from_profile(&p, 1.0, 1, 4, 0.0).is_err());
    }
}
