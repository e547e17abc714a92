//! Exact singular points of line arrangements, with the consistency checks.
use plane_curves::geometry::{analyze_arrangement, validate_profile};
use plane_curves::milnor::tau;
use plane_curves::poly::{build_curve, parse_polynomial, CurveSpec};

fn main() {
    let arrangements: [&[&str]; 3] = [
        &["x", "y", "z", "x+y+z"],
        &["x-y", "x+y", "y-z", "y+z", "x-z", "x+z"],
        &["x", "y", "z", "x+y", "x+z", "y+z", "x+y+z"],
    ];
    for lines in arrangements {
        let polys: Vec<_> = lines.iter().map(|l| parse_polynomial(l).unwrap()).collect();
        let p = analyze_arrangement(&polys).unwrap();
        println!("{}", lines.join(" · "));
        println!("  r={} n={} t={} (s={}, t'={})", p.r, p.n, p.t, p.s, p.t_prime);
        for q in &p.points {
            println!("    {} {:?} on lines {:?}", q.location, q.kind, q.components);
        }
        let f = build_curve(&CurveSpec::new(lines.iter().copied())).unwrap().f;
        let report = validate_profile(tau(&f).unwrap(), &p);
        for c in &report.checks {
            println!("  [{}] {c}", if c.pass { "ok" } else { "FAIL" });
        }
    }

    let four_fold = ["x", "y", "x+y", "x-y"].map(|l| parse_polynomial(l).unwrap());
    if let Err(e) = analyze_arrangement(&four_fold) {
        println!("four concurrent lines: {e}");
    }
}
