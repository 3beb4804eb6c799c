use bandsolve::analysis::{first_zero, pendent_profile};
use bandsolve::bounds::envelope_sessile;
use bandsolve::io::{
    curvature_residual, export_csv, import_json, plot_profiles, profile_record, Envelope, Overlay,
    PlotOptions, Series, SurfaceMesh, CSV_HEADER,
};
use bandsolve::{
    extend_by_symmetry, integrate_ivp, normalize_lambda, solve_bvp, BvpProblem, IntegratorCtrl,
    ModelParams,
};

#[test]
fn csv_file_round_trip_columns() {
    let p = integrate_ivp(&ModelParams::new(1.0, 1.0), 3.0, &IntegratorCtrl::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("profile.csv");
    export_csv(&p, 0.0, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), p.samples().len());
    for (row, s) in rows.iter().zip(p.samples()) {
        assert!((row[0] - s.r).abs() <= 1e-9 * s.r.abs().max(1e-300));
        assert!((row[1] - s.u).abs() <= 1e-9 * s.u.abs());
        assert!(row[5].abs() < 1e-8);
    }
}

#[test]
fn json_file_round_trip() {
    let ctrl = IntegratorCtrl::default().with_output_step(0.1);
    let p = integrate_ivp(&ModelParams::new(2.0, 0.3), 5.0, &ctrl).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("profile.json");
    profile_record(&p, Some(ctrl), 0.0).write(&path).unwrap();
    let first = std::fs::read(&path).unwrap();
    let (rec, q) = import_json(&path).unwrap();
    assert_eq!(q, p);
    rec.write(&path).unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), first);
}

#[test]
fn sessile_mesh_lowest_on_axis() {
    let p = integrate_ivp(&ModelParams::new(1.0, 0.7), 2.0, &IntegratorCtrl::default()).unwrap();
    let full = extend_by_symmetry(&p).unwrap();
    let m = SurfaceMesh::from_profile(&full, 2.0, 81, 6, 0.0).unwrap();
    let ((r, lo), _) = m.height_extremes();
    assert_eq!(r, 0.0);
    assert_eq!(lo, 0.7);
    assert!(m.rulings_horizontal());
}

#[test]
fn pendent_mesh_spans_amplitude() {
    let params = ModelParams::new(-1.0, -1.0);
    let ctrl = IntegratorCtrl::default();
    let (r_o, _) = first_zero(&params, &ctrl).unwrap();
    let p = pendent_profile(&params, 1.0, &ctrl).unwrap();
    assert!((p.r_end() - 4.0 * r_o).abs() < 1e-12);
    let m = SurfaceMesh::from_profile(&p, 1.0, 401, 4, 0.0).unwrap();
    let ((_, lo), (r_hi, hi)) = m.height_extremes();
    assert_eq!(lo, -1.0);
    assert!((hi - 1.0).abs() < 1e-8, "{hi}");
    assert!((r_hi - 2.0 * r_o).abs() < 1e-9);
}

#[test]
fn lambda_shift_moves_mesh() {
    let raw = ModelParams::new(2.0, 0.5).with_lambda(4.0);
    let (norm, shift) = normalize_lambda(&raw).unwrap();
    assert_eq!(shift, 2.0);
    let p = integrate_ivp(&norm, 1.0, &IntegratorCtrl::default()).unwrap();
    let m = SurfaceMesh::from_profile(&p, 1.0, 101, 2, shift).unwrap();
    assert_eq!(m.vertices[0][2], raw.u0);
    // against the original lambda the shifted mesh has the discretization
    // error of the unshifted one
    let unshifted = SurfaceMesh::from_profile(&p, 1.0, 101, 2, 0.0).unwrap();
    let e = curvature_residual(&m, raw.kappa, raw.lambda).unwrap();
    let e0 = curvature_residual(&unshifted, raw.kappa, 0.0).unwrap();
    assert!((e - e0).abs() < 1e-9 * e0, "{e} vs {e0}");
}

#[test]
fn mesh_file_is_deterministic() {
    let p = integrate_ivp(&ModelParams::new(1.0, 1.0), 1.0, &IntegratorCtrl::default()).unwrap();
    let m = SurfaceMesh::from_profile(&p, 0.5, 11, 3, 0.0).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.obj"), dir.path().join("b.obj"));
    m.write_obj(&a).unwrap();
    m.write_obj(&b).unwrap();
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn sessile_plot_with_envelope() {
    let s = solve_bvp(&BvpProblem::new(1.0, 1.0, 1.0), 1e-9).unwrap();
    let env = envelope_sessile(&s).unwrap();
    let (y1, y2) = (env.y1.unwrap(), env.y2.unwrap());
    assert!(env.lower.slack.unwrap() > 0.0 && env.upper.slack.unwrap() > 0.0);
    let overlays = [
        Overlay {
            label: "y1".into(),
            hyperbola: y1,
            range: (0.0, 1.0),
        },
        Overlay {
            label: "y2".into(),
            hyperbola: y2,
            range: (0.0, 1.0),
        },
    ];
    let envelope = Envelope {
        lower: y1,
        upper: y2,
        range: (0.0, 1.0),
    };
    let svg = plot_profiles(
        &[Series::from_profile("u", &s.profile, 0.0)],
        &overlays,
        Some(&envelope),
        &PlotOptions::default(),
    );
    assert_eq!(svg.matches(r#"class="overlay""#).count(), 2);
    assert_eq!(svg.matches(r#"class="profile""#).count(), 1);
    assert!(svg.contains(r#"class="envelope""#));
}

#[test]
fn pendent_plot_over_two_periods() {
    let params = ModelParams::new(-1.0, -1.0);
    let p = pendent_profile(&params, 2.0, &IntegratorCtrl::default()).unwrap();
    let zeros = p.crossings(|s| s.u);
    assert_eq!(zeros.len(), 4);
    let svg = plot_profiles(
        &[Series::from_profile("pendent", &p, 0.0)],
        &[],
        None,
        &PlotOptions::default(),
    );
    assert_eq!(svg.matches(r#"class="profile""#).count(), 1);
}
