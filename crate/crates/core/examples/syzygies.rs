//! Koszul cohomology and explicit essential syzygies a f_x + b f_y + c f_z = 0.
use plane_curves::koszul::trivial_syzygy_dim;
use plane_curves::milnor::Jacobian;
use plane_curves::poly::parse_polynomial;

fn show(text: &str, degrees: std::ops::RangeInclusive<i64>) {
    let f = parse_polynomial(text).unwrap();
    let jac = Jacobian::new(&f).unwrap();
    let n = jac.degree();
    let h = jac.hilbert_series(None).unwrap();
    println!("f = {f}   (N = {n}, mdr = {:?})", h.mdr);
    for m in degrees {
        let er = jac.er_dim(m).unwrap();
        println!("  degree {m}: dim ER = {er}, trivial syzygies {}", trivial_syzygy_dim(n, m));
        for class in jac.syzygy_basis(m).unwrap() {
            assert!(class.evaluate(jac.gradient()).is_zero());
            println!("    {class}");
        }
    }
    let k = 2 * n as i64;
    let dims: Vec<usize> = (0..=3).map(|i| jac.koszul_h_dim(i, k).unwrap()).collect();
    println!("  H^0..H^3 in degree {k}: {dims:?}");
}

fn main() {
    show("xy^2+z^3", 0..=1);
    show("xyz(x+y+z)", 1..=2);
    show("x(x^3+y^3+z^3)", 1..=3);
}
