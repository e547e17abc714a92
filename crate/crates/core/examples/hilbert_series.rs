//! Hilbert functions of Milnor algebras: the two Pappus arrangements have the
//! same combinatorics but different series.
use std::path::Path;

use plane_curves::cli::CurveSpecFile;
use plane_curves::milnor::{smooth_reference_dim, threshold_line, Jacobian};
use plane_curves::poly::build_curve;

fn main() {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut series = Vec::new();
    for name in ["pappus_a1", "pappus_a2"] {
        let spec = CurveSpecFile::load(&fixtures.join(format!("{name}.curve"))).unwrap();
        let lines: Vec<_> = spec.factors.iter().map(|f| f.text.as_str()).collect();
        let curve = build_curve(&spec.curve_spec()).unwrap();
        let jac = Jacobian::new(&curve.f).unwrap();
        let h = jac.hilbert_series(None).unwrap();
        println!("{name}: lines {}", lines.join(", "));
        println!("  HP = {}", h.series_string());
        println!("  {}", threshold_line(&h));
        series.push(h);
    }
    let diff: Vec<String> = (0..30)
        .filter_map(|k| {
            let d = series[0].dim(k) as i64 - series[1].dim(k) as i64;
            (d != 0).then(|| format!("{d}t^{k}"))
        })
        .collect();
    println!("HP(A1) - HP(A2) = {}", diff.join(" + "));

    let smooth: Vec<usize> = (0..=7).map(|k| smooth_reference_dim(4, k)).collect();
    let fermat = Jacobian::new(&plane_curves::poly::parse_polynomial("x^4+y^4+z^4").unwrap()).unwrap();
    let direct: Vec<usize> = (0..=7).map(|k| fermat.milnor_dim(k).unwrap()).collect();
    println!("smooth quartic: reference {smooth:?}, direct {direct:?}");
}
