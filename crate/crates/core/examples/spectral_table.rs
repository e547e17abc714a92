//! The E_1 table of the pole order spectral sequence on the lines p+q = 2, 3.
use plane_curves::milnor::Jacobian;
use plane_curves::poly::parse_polynomial;

fn main() {
    for text in ["x^4+y^4+z^4", "xyz(x+y+z)", "xy(x+y)z^2+x^5+2y^5", "(x^3+y^3+z^3)^3+(x^3+2y^3+3z^3)^3"] {
        let jac = Jacobian::new(&parse_polynomial(text).unwrap()).unwrap();
        let table = jac.spectral_table().unwrap();
        println!("{text}");
        for total in [2u8, 3] {
            let row: Vec<String> = (0..=2u8)
                .map(|q| format!("E1^{{{},{q}}}={}", total - q, table.get(total - q, q).unwrap()))
                .collect();
            println!("  {}", row.join("  "));
        }
        println!("  E2^{{2,1}} = dim M_(2N-3) - tau = {}", table.e2_21);
    }
}
