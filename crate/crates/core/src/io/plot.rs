use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bounds::Hyperbola;
use crate::ode::Profile;

const PALETTE: [&str; 6] = [
    "#1f4e9a", "#b8322f", "#2f8a3b", "#8a5a9e", "#c17d11", "#3a3a3a",
];
const OVERLAY_POINTS: usize = 200;
const MARGIN: f64 = 48.0;

/// A polyline in the `(r, u)` plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn from_profile(label: impl Into<String>, p: &Profile, shift: f64) -> Self {
        Self {
            label: label.into(),
            points: p.samples().iter().map(|s| (s.r, s.u - shift)).collect(),
        }
    }
}

/// A comparison hyperbola drawn dashed over `[r_lo, r_hi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Overlay {
    pub label: String,
    pub hyperbola: Hyperbola,
    pub range: (f64, f64),
}

/// Region between two hyperbolas, shaded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub lower: Hyperbola,
    pub upper: Hyperbola,
    pub range: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotOptions {
    pub width: f64,
    pub height: f64,
    pub title: Option<String>,
}

impl Default for PlotOptions {
    fn default() -> Self {
        Self {
            width: 640.0,
            height: 420.0,
            title: None,
        }
    }
}

fn trace(h: &Hyperbola, (lo, hi): (f64, f64)) -> Vec<(f64, f64)> {
    (0..=OVERLAY_POINTS)
        .map(|i| {
            let r = lo + (hi - lo) * i as f64 / OVERLAY_POINTS as f64;
            (r, h.value(r))
        })
        .collect()
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    w: f64,
    h: f64,
}

impl Frame {
    fn px(&self, (x, y): (f64, f64)) -> (f64, f64) {
        let sx = MARGIN + (x - self.x0) / (self.x1 - self.x0) * (self.w - 2.0 * MARGIN);
        let sy = self.h - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (self.h - 2.0 * MARGIN);
        (sx, sy)
    }

    fn path(&self, pts: &[(f64, f64)]) -> String {
        let mut d = String::new();
        for (i, &p) in pts.iter().enumerate() {
            let (x, y) = self.px(p);
            let _ = write!(d, "{}{:.2},{:.2}", if i == 0 { "M" } else { " L" }, x, y);
        }
        d
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// SVG plot of profiles with optional hyperbola overlays and a shaded envelope.
pub fn plot_profiles(
    series: &[Series],
    overlays: &[Overlay],
    envelope: Option<&Envelope>,
    opts: &PlotOptions,
) -> String {
    let overlay_pts: Vec<Vec<(f64, f64)>> = overlays
        .iter()
        .map(|o| trace(&o.hyperbola, o.range))
        .collect();
    let env_pts = envelope.map(|e| (trace(&e.lower, e.range), trace(&e.upper, e.range)));

    let all = series
        .iter()
        .flat_map(|s| s.points.iter())
        .chain(overlay_pts.iter().flatten())
        .chain(env_pts.iter().flat_map(|(a, b)| a.iter().chain(b.iter())))
        .filter(|p| p.0.is_finite() && p.1.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !(x0 < x1) {
        x0 = if x0.is_finite() { x0 - 1.0 } else { -1.0 };
        x1 = x0 + 2.0;
    }
    if !(y0 < y1) {
        y0 = if y0.is_finite() { y0 - 1.0 } else { -1.0 };
        y1 = y0 + 2.0;
    }
    let pad = 0.05 * (y1 - y0);
    let f = Frame {
        x0,
        x1,
        y0: y0 - pad,
        y1: y1 + pad,
        w: opts.width,
        h: opts.height,
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = opts.width,
        h = opts.height
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if let Some(t) = &opts.title {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="24" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
            opts.width / 2.0,
            escape(t)
        );
    }

    if let Some((lo, hi)) = &env_pts {
        let mut poly: Vec<(f64, f64)> = lo.clone();
        poly.extend(hi.iter().rev());
        let _ = writeln!(
            out,
            r##"<path class="envelope" d="{} Z" fill="#9ab3d5" fill-opacity="0.35" stroke="none"/>"##,
            f.path(&poly)
        );
    }

    // axes: r = 0 and u = 0 when in view, otherwise the frame edges
    let ax = if f.x0 <= 0.0 && 0.0 <= f.x1 {
        0.0
    } else {
        f.x0
    };
    let ay = if f.y0 <= 0.0 && 0.0 <= f.y1 {
        0.0
    } else {
        f.y0
    };
    let _ = writeln!(
        out,
        r##"<path class="axis" d="{} {}" stroke="#888" stroke-width="1" fill="none"/>"##,
        f.path(&[(f.x0, ay), (f.x1, ay)]),
        f.path(&[(ax, f.y0), (ax, f.y1)])
    );
    for (v, anchor, pos) in [
        (f.x0, "start", f.px((f.x0, f.y0))),
        (f.x1, "end", f.px((f.x1, f.y0))),
    ] {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="{anchor}" font-family="sans-serif" font-size="11">r = {:.3}</text>"#,
            pos.0,
            pos.1 + 16.0,
            v
        );
    }
    for (v, pos) in [(f.y0, f.px((f.x0, f.y0))), (f.y1, f.px((f.x0, f.y1)))] {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="11">{:.3}</text>"#,
            pos.0 - 4.0,
            pos.1 + 4.0,
            v
        );
    }

    for (i, (o, pts)) in overlays.iter().zip(&overlay_pts).enumerate() {
        let color = PALETTE[(i + 1) % PALETTE.len()];
        let _ = writeln!(
            out,
            r#"<path class="overlay" d="{}" stroke="{color}" stroke-width="1.2" stroke-dasharray="5 3" fill="none"><title>{}</title></path>"#,
            f.path(pts),
            escape(&o.label)
        );
    }
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(
            out,
            r#"<path class="profile" d="{}" stroke="{color}" stroke-width="2" fill="none"><title>{}</title></path>"#,
            f.path(&s.points),
            escape(&s.label)
        );
    }

    let labels = series
        .iter()
        .map(|s| (s.label.as_str(), false))
        .chain(overlays.iter().map(|o| (o.label.as_str(), true)));
    for (k, (label, dashed)) in labels.enumerate() {
        let color = if dashed {
            PALETTE[(k - series.len() + 1) % PALETTE.len()]
        } else {
            PALETTE[k % PALETTE.len()]
        };
        let y = MARGIN + 14.0 * k as f64;
        let x = opts.width - MARGIN - 120.0;
        let _ = writeln!(
            out,
            r#"<path d="M{:.2},{:.2} L{:.2},{:.2}" stroke="{color}" stroke-width="2"{}/><text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11">{}</text>"#,
            x,
            y,
            x + 18.0,
            y,
            if dashed {
                r#" stroke-dasharray="5 3""#
            } else {
                ""
            },
            x + 24.0,
            y + 4.0,
            escape(label)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode::{integrate_ivp, IntegratorCtrl, ModelParams};

    fn unit() -> Series {
        let p =
            integrate_ivp(&ModelParams::new(1.0, 1.0), 1.0, &IntegratorCtrl::default()).unwrap();
        Series::from_profile("u", &p, 0.0)
    }

    #[test]
    fn single_profile_single_polyline() {
        let svg = plot_profiles(&[unit()], &[], None, &PlotOptions::default());
        assert_eq!(svg.matches(r#"class="profile""#).count(), 1);
        assert!(!svg.contains("overlay") && !svg.contains("envelope"));
    }

    #[test]
    fn output_is_deterministic() {
        let h = Hyperbola::with_vertex(1.0, 1.0).unwrap();
        let o = [Overlay {
            label: "y1".into(),
            hyperbola: h,
            range: (0.0, 1.0),
        }];
        let e = Envelope {
            lower: h,
            upper: Hyperbola::with_vertex(1.0, 1.5).unwrap(),
            range: (0.0, 1.0),
        };
        let a = plot_profiles(&[unit()], &o, Some(&e), &PlotOptions::default());
        let b = plot_profiles(&[unit()], &o, Some(&e), &PlotOptions::default());
        assert_eq!(a, b);
        assert_eq!(a.matches(r#"class="overlay""#).count(), 1);
        assert_eq!(a.matches(r#"class="envelope""#).count(), 1);
    }

    #[test]
    fn empty_plot_is_valid() {
        let svg = plot_profiles(&[], &[], None, &PlotOptions::default());
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }
}
