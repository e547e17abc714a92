//! Builds the complete report for a curve spec given as JSON, as the CLI does.
use plane_curves::cli::{build_report, render_report_text, CurveSpecFile, RunOptions};

fn main() {
    let spec = CurveSpecFile::from_json(
        r#"{
            "name": "seven lines",
            "factors": [{"poly": "x"}, {"poly": "y"}, {"poly": "z"}, {"poly": "x+y"},
                        {"poly": "x+z"}, {"poly": "y+z"}, {"poly": "x+y+z"}]
        }"#,
    )
    .unwrap();
    let report = build_report(&spec, &RunOptions::default()).unwrap();
    print!("{}", render_report_text(&report));
}
