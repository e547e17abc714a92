//! Hodge-Deligne polynomials and the mixed Hodge numbers of H^2(U).
use plane_curves::geometry::{curve_profile, DeclaredProfile};
use plane_curves::hodge::mixed_hodge_numbers;
use plane_curves::poly::{build_curve, CurveSpec, FactorSpec};

fn main() {
    // a triangle and a smooth cubic through its vertices
    let spec = CurveSpec {
        factors: vec![
            FactorSpec::new("x"),
            FactorSpec::new("y"),
            FactorSpec::new("z"),
            FactorSpec::with_genus("x^2y+x^2z+y^2x+y^2z+z^2x+z^2y", 1),
        ],
    };
    let curve = build_curve(&spec).unwrap();
    let declared = DeclaredProfile { n: 3, t: 3, components: None, s: None, t_prime: None };
    let profiles = [
        ("triangle + cubic", curve_profile(&curve, Some(&declared)).unwrap()),
        (
            "six lines",
            curve_profile(&build_curve(&CurveSpec::new(["x-y", "x+y", "y-z", "y+z", "x-z", "x+z"])).unwrap(), None)
                .unwrap(),
        ),
        (
            "four lines",
            curve_profile(&build_curve(&CurveSpec::new(["x", "y", "z", "x+y+z"])).unwrap(), None).unwrap(),
        ),
    ];
    for (name, profile) in profiles {
        let h = mixed_hodge_numbers(&profile).unwrap();
        println!("{name}: N={} r={} n={} t={} sum g_j={}", profile.degree, profile.r, profile.n, profile.t, profile.total_genus());
        println!("  P(C) = {}", h.p_curve);
        println!("  P(U) = {}", h.p_complement);
        println!("  gr1={} gr2={} h21=h12={} h22={} b2={} pure={}", h.gr1, h.gr2, h.h21, h.h22, h.b2, h.pure);
    }
}
