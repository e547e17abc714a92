use num_bigint::BigInt;
use num_rational::BigRational;
use plane_curves::exactla::{rank, rank_mod_p, ExactMatrix};
use plane_curves::geometry::analyze_arrangement;
use plane_curves::milnor::smooth_reference_dim;
use plane_curves::poly::{parse_polynomial, Monomial, Polynomial, Var};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn monomial(max_deg: u32) -> impl Strategy<Value = Monomial> {
    (0..=max_deg, 0..=max_deg, 0..=max_deg).prop_map(|(a, b, c)| Monomial::new(a, b, c))
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(4), rational()), 0..7).prop_map(build)
}

fn homogeneous(d: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((0..=d, 0..=d, rational()), 1..8).prop_map(move |terms| {
        build(terms.into_iter().map(|(a, b, c)| {
            let a = a.min(d);
            let b = b.min(d - a);
            (Monomial::new(a, b, d - a - b), c)
        }))
    })
}

fn build(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Polynomial {
    let mut p = Polynomial::zero();
    for (m, c) in terms {
        p.add_term(m, c);
    }
    p
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..=4], c), r)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_then_parse_round_trips(p in polynomial()) {
        let again = parse_polynomial(&p.to_string()).unwrap();
        prop_assert_eq!(&again, &p);
        prop_assert_eq!(parse_polynomial(&again.to_string()).unwrap(), again);
    }

    #[test]
    fn euler_identity((d, p) in (0u32..6).prop_flat_map(|d| (Just(d), homogeneous(d)))) {
        let mut lhs = Polynomial::zero();
        for v in Var::ALL {
            lhs += &(&Polynomial::var(v) * &p.partial_derivative(v));
        }
        prop_assert_eq!(lhs, p.scale(&BigRational::from_integer(d.into())));
    }

    #[test]
    fn ring_laws(a in polynomial(), b in polynomial(), c in polynomial()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
    }

    #[test]
    fn expansion_of_product_is_product_of_expansions(a in polynomial(), b in polynomial()) {
        let text = format!("({})({})", a, b);
        prop_assert_eq!(parse_polynomial(&text).unwrap(), &a * &b);
    }

    #[test]
    fn rank_equals_rank_of_transpose(rows in matrix()) {
        let m = ExactMatrix::from_rows(&rows);
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rank_invariant_under_permutation_and_scaling(
        rows in matrix(),
        shuffle in any::<u64>(),
        scale in (1i64..9, 1i64..9, any::<bool>()),
    ) {
        let m = ExactMatrix::from_rows(&rows);
        let r = rank(&m);
        let perm = |n: usize| {
            let mut p: Vec<usize> = (0..n).collect();
            let mut s = shuffle;
            for i in (1..n).rev() {
                p.swap(i, (s % (i as u64 + 1)) as usize);
                s /= i as u64 + 1;
            }
            p
        };
        prop_assert_eq!(rank(&m.permute_rows(&perm(m.rows()))), r);
        prop_assert_eq!(rank(&m.permute_cols(&perm(m.cols()))), r);
        let mut scaled = m.clone();
        let c = BigRational::new(
            BigInt::from(if scale.2 { -scale.0 } else { scale.0 }),
            BigInt::from(scale.1),
        );
        for j in 0..scaled.cols() {
            scaled.scale_column(j, &c);
        }
        prop_assert_eq!(rank(&scaled), r);
    }

    #[test]
    fn modular_rank_never_exceeds_rational(rows in matrix(), p in prop::sample::select(vec![2u64, 3, 5, 7, 1_048_583])) {
        let m = ExactMatrix::from_rows(&rows);
        prop_assert!(rank_mod_p(&m, p) <= rank(&m));
    }

    #[test]
    fn smooth_reference_is_symmetric(n in 2u32..20) {
        let top = 3 * n as i64 - 6;
        for k in 0..=top {
            prop_assert_eq!(smooth_reference_dim(n, k), smooth_reference_dim(n, top - k));
        }
        prop_assert_eq!(smooth_reference_dim(n, 0), 1);
        prop_assert_eq!(smooth_reference_dim(n, top + 1), 0);
    }

    #[test]
    fn arrangement_invariant_under_rescaling_and_permutation(
        coeffs in prop::collection::vec((-3i64..=3, -3i64..=3, -3i64..=3), 3..7),
        scales in prop::collection::vec(prop_oneof![-3i64..=-1, 1i64..=3], 7),
        rotate in 0usize..7,
    ) {
        let line = |(a, b, c): (i64, i64, i64), s: i64| {
            Polynomial::from_int_terms([(a * s, [1, 0, 0]), (b * s, [0, 1, 0]), (c * s, [0, 0, 1])])
        };
        prop_assume!(coeffs.iter().all(|&c| c != (0, 0, 0)));
        let lines: Vec<_> = coeffs.iter().map(|&c| line(c, 1)).collect();
        let Ok(base) = analyze_arrangement(&lines) else { return Ok(()) };
        let mut moved: Vec<_> = coeffs.iter().zip(&scales).map(|(&c, &s)| line(c, s)).collect();
        let k = rotate % moved.len();
        moved.rotate_left(k);
        let other = analyze_arrangement(&moved).unwrap();
        prop_assert_eq!((base.n, base.t, base.s, base.t_prime), (other.n, other.t, other.s, other.t_prime));
        let locations = |p: &plane_curves::geometry::SingularityProfile| {
            let mut v: Vec<_> = p.points.iter().map(|q| (q.location.clone(), q.multiplicity)).collect();
            v.sort();
            v
        };
        prop_assert_eq!(locations(&base), locations(&other));
        // a relabelled line keeps its incidences
        let r = lines.len();
        for po in &other.points {
            let map = |i: usize| (i + k) % r;
            let mut relabelled: Vec<_> = po.components.iter().map(|&i| map(i)).collect();
            relabelled.sort();
            let found = base.points.iter().find(|q| q.location == po.location).unwrap();
            prop_assert_eq!(&found.components, &relabelled);
        }
        prop_assert_eq!(base.t, base.s + base.t_prime);
        prop_assert!(base.components.iter().all(|c| c.t == 0));
    }
}
