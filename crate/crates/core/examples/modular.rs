//! Modular ranks as a cross-checked accelerator, and how an unlucky prime is caught.
use std::time::Instant;

use plane_curves::exactla::{modular_rank_with_check, rank, ExactMatrix, Field};
use plane_curves::milnor::Jacobian;
use plane_curves::poly::parse_polynomial;

fn main() {
    let p = 1_048_583;
    let unlucky = ExactMatrix::from_rows(&[vec![1, 1], vec![1, 1 + p as i64]]);
    let r = modular_rank_with_check(&unlucky, &[p, 1_048_589]).unwrap();
    println!("rational rank {}, per prime {:?}, unlucky {:?}", rank(&unlucky), r.per_prime, r.unlucky);

    let f = parse_polynomial("(x^3-y^3)(y^3-z^3)(x^3-z^3)").unwrap();
    for field in [Field::Rational, Field::Modular(vec![1_073_741_789, 1_073_741_783, 1_073_741_741])] {
        let start = Instant::now();
        let jac = Jacobian::with_field(&f, field.clone()).unwrap();
        let h = jac.hilbert_series(None).unwrap();
        println!("{:?}: {} in {:.2?}", field, h.series_string(), start.elapsed());
    }
}
