//! The two-sided bounds on dim M(f)_{2N-3} - tau and dim ER(f)_{N-2}, and the
//! test for F^2 H^2(U) = P^2 H^2(U).
use plane_curves::geometry::{curve_profile, Component, DeclaredProfile};
use plane_curves::milnor::Jacobian;
use plane_curves::poly::{build_curve, CurveSpec};

fn run(name: &str, factors: &[&str], declared: Option<DeclaredProfile>) {
    let curve = build_curve(&CurveSpec::new(factors.iter().copied())).unwrap();
    let profile = curve_profile(&curve, declared.as_ref()).unwrap();
    let jac = Jacobian::new(&curve.f).unwrap();
    let h = jac.hilbert_series(None).unwrap();
    let t2 = jac.theorem2_report(&h, &profile).unwrap();
    println!("{name} (N={}, tau={})", profile.degree, h.tau);
    println!("  part A: {}   F^2 = P^2: {}", t2.part_a, t2.f2_equals_p2);
    println!("  part B: {}", t2.part_b);
    for c in &t2.identities {
        println!("  [{}] {c}", if c.pass { "ok" } else { "FAIL" });
    }
}

fn main() {
    run("four lines", &["x", "y", "z", "x+y+z"], None);
    run(
        "quintic with a D4 point",
        &["xy(x+y)z^2+x^5+2y^5"],
        Some(DeclaredProfile {
            n: 0,
            t: 1,
            components: Some(vec![Component { degree: 5, genus: 3, n: 0, t: 1 }]),
            s: None,
            t_prime: None,
        }),
    );
    let cubic = Component { degree: 3, genus: 1, n: 0, t: 0 };
    run(
        "three cubics in a pencil",
        &["(x^3+y^3+z^3)^3+(x^3+2y^3+3z^3)^3"],
        Some(DeclaredProfile { n: 0, t: 9, components: Some(vec![cubic; 3]), s: None, t_prime: None }),
    );
}
