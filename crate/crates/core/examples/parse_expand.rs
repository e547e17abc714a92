//! Parsing curve equations and basic polynomial arithmetic.
use plane_curves::poly::{build_curve, parse_polynomial, CurveSpec, Var};

fn main() {
    for text in ["xyz(x+y+z)", "(x^2-y^2)(y^2-z^2)(x^2-z^2)", "xy(x+y)z^2+x^5+2y^5", "1/2x^3 - 3/4 y^2z"] {
        let f = parse_polynomial(text).unwrap();
        println!("{text:<30} = {f}");
        println!("{:<30}   degree {:?}, {} terms", "", f.homogeneous_degree(), f.num_terms());
    }

    let f = parse_polynomial("x(x^3+y^3+z^3)").unwrap();
    for v in Var::ALL {
        println!("d/d{} {f} = {}", v.name(), f.partial_derivative(v));
    }

    let curve = build_curve(&CurveSpec::new(["x", "x^3+y^3+z^3"])).unwrap();
    println!("curve of degree {} with {} components: {}", curve.degree(), curve.num_factors(), curve.f);

    match parse_polynomial("x^2 + * y") {
        Err(e) => println!("syntax error at {}: {e}", e.position()),
        Ok(_) => unreachable!(),
    }
    match build_curve(&CurveSpec::new(["x", "2x"])) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
