use num_bigint::BigInt;
use proptest::prelude::*;

use cubical_core::builders::{catalogue, zonotope_boundary, Arrangement};
use cubical_core::derivative::DerivativeComplex;
use cubical_core::json::{parse_poset, poset_to_value};
use cubical_core::lattice::{mine_modular_equations, zonotope_f, FPolynomial};
use cubical_core::mod2::{BitMatrix, BitVec, Mod2Error};
use cubical_core::poset::is_isomorphism;

const SMALL: &[&str] = &[
    "edge",
    "square",
    "4gon",
    "6gon",
    "cube3",
    "zono(2,3)",
    "zono(3,4)",
    "solidcube3",
];

fn small() -> impl Strategy<Value = &'static str> {
    prop::sample::select(SMALL)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn product_multiplies_f_polynomials(a in small(), b in small()) {
        let (k1, k2) = (catalogue(a).unwrap(), catalogue(b).unwrap());
        let p = k1.product(&k2).unwrap();
        prop_assert_eq!(p.f_polynomial(), &k1.f_polynomial() * &k2.f_polynomial());
    }

    #[test]
    fn derivative_of_products(a in small(), b in small()) {
        let p = catalogue(&format!("{a}*{b}")).unwrap();
        let d = DerivativeComplex::build(&p).unwrap();
        prop_assert_eq!(d.dk.f_polynomial(), p.f_polynomial().derivative());
        prop_assert!(d.check_involution());
    }

    #[test]
    fn dual_is_an_involution(a in small()) {
        let k = catalogue(a).unwrap();
        let back = k.poset().dual().dual();
        prop_assert!(back.same_hasse_diagram(k.poset()));
        let identity: Vec<usize> = (0..k.len()).collect();
        prop_assert!(is_isomorphism(&back, k.poset(), &identity));
    }

    #[test]
    fn poset_json_round_trip(a in small()) {
        let k = catalogue(a).unwrap();
        let text = poset_to_value(k.poset()).to_string();
        let (p, ids) = parse_poset(&text).unwrap();
        prop_assert!(p.same_hasse_diagram(k.poset()));
        prop_assert_eq!(ids, (0..k.len() as i64).collect::<Vec<_>>());
    }

    #[test]
    fn random_arrangements_follow_the_recursion(dim in 2usize..=3, extra in 0usize..=3, seed in 0u64..1000) {
        let zones = dim + extra;
        let z = zonotope_boundary(&Arrangement::random_generic(dim, zones, seed)).unwrap();
        let expected = zonotope_f(dim - 1, zones - dim);
        prop_assert_eq!(z.complex.f_polynomial(), expected);
    }

    #[test]
    fn mined_equations_hold(rows in prop::collection::vec(prop::collection::vec(-20i64..20, 3), 1..5)) {
        let vectors: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let eqs = mine_modular_equations(&vectors).unwrap();
        for e in &eqs {
            for v in &vectors {
                prop_assert!(e.holds_for(v));
            }
        }
    }

    #[test]
    fn gf2_solve_is_exact(entries in prop::collection::vec((0usize..6, 0usize..7), 0..25), x in prop::collection::vec(any::<bool>(), 7)) {
        let m = BitMatrix::from_entries(6, 7, entries);
        let sol = BitVec::from_indices(7, x.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i));
        let b = m.mul_vec(&sol).unwrap();
        let y = m.solve(&b).unwrap();
        prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn gf2_certificates_separate(entries in prop::collection::vec((0usize..5, 0usize..3), 0..10), target in prop::collection::vec(any::<bool>(), 5)) {
        let m = BitMatrix::from_entries(5, 3, entries);
        let b = BitVec::from_indices(5, target.iter().enumerate().filter(|(_, &t)| t).map(|(i, _)| i));
        match m.solve(&b) {
            Ok(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), b),
            Err(Mod2Error::NoSolution { certificate }) => {
                prop_assert!(m.transpose().mul_vec(&certificate).unwrap().is_zero());
                prop_assert!(certificate.dot(&b));
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn evaluation_at_minus_one() {
    for d in 0..=8 {
        let expected = if d % 2 == 0 { 2 } else { 0 };
        assert_eq!(zonotope_f(d, 0).eval_at_minus_one(), BigInt::from(expected));
        let p = zonotope_f(d, 2);
        assert_eq!(
            (&p * &FPolynomial::one_plus_t()).eval_at_minus_one(),
            BigInt::from(0)
        );
    }
}
