mod common;

use cubic_pcf::cubicdyn::degree_bound;
use cubic_pcf::exactpoly::{BivarPoly, ModBivarPoly, ModUniPoly, UniPoly};
use cubic_pcf::frobres::FrobeniusOperator;
use cubic_pcf::sylvester::{build_sylvester, determinant_eval_interp, determinant_fraction_free};
use num_bigint::{BigInt, Sign};
use proptest::prelude::*;

fn big() -> impl Strategy<Value = BigInt> {
    (any::<bool>(), prop::collection::vec(any::<u32>(), 1..5))
        .prop_map(|(neg, digits)| BigInt::from_slice(if neg { Sign::Minus } else { Sign::Plus }, &digits))
}

fn bivar(max_deg: u32, max_terms: usize) -> impl Strategy<Value = BivarPoly> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg), big()), 0..=max_terms).prop_map(BivarPoly::from_terms)
}

fn small_bivar(max_deg: u32, max_terms: usize) -> impl Strategy<Value = BivarPoly> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg), -5i64..=5), 0..=max_terms)
        .prop_map(|t| BivarPoly::from_i64_terms(&t))
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 101])
}

fn mod_bivar(p: u64) -> impl Strategy<Value = ModBivarPoly> {
    prop::collection::vec(((0u32..=4, 0u32..=4), 0..p), 0..=6)
        .prop_map(move |t| ModBivarPoly::from_terms(p, t))
}

fn mod_uni(p: u64) -> impl Strategy<Value = ModUniPoly> {
    prop::collection::vec(0..p, 0..=4).prop_map(move |c| ModUniPoly::new(p, c))
}

fn operator() -> impl Strategy<Value = FrobeniusOperator> {
    prop::collection::vec(-3i64..=3, 0..=3).prop_map(|c| FrobeniusOperator::from_i64(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integer_ring_laws(a in bivar(4, 6), b in bivar(4, 6), c in bivar(4, 6)) {
        prop_assert_eq!(common::ring_laws_z(&a, &b, &c), Ok(()));
    }

    #[test]
    fn prime_field_ring_laws((a, b, c) in prime().prop_flat_map(|p| (mod_bivar(p), mod_bivar(p), mod_bivar(p)))) {
        prop_assert_eq!(common::ring_laws_fp(&a, &b, &c), Ok(()));
    }

    #[test]
    fn reduction_is_a_homomorphism(a in bivar(4, 6), b in bivar(4, 6), p in prime()) {
        prop_assert_eq!(common::reduction_homomorphism(&a, &b, p), Ok(()));
    }

    #[test]
    fn substitution_composes(a in small_bivar(3, 4), r in small_bivar(2, 3), s in small_bivar(2, 3)) {
        prop_assert_eq!(common::substitution_composition(&a, &r, &s), Ok(()));
    }

    #[test]
    fn leibniz_rule(a in bivar(5, 6), b in bivar(5, 6)) {
        prop_assert_eq!(common::leibniz(&a, &b), Ok(()));
    }

    #[test]
    fn operator_action_laws(
        (f, g) in prop::sample::select(vec![2u64, 3, 5]).prop_flat_map(|p| (mod_uni(p), mod_uni(p))),
        s in operator(),
        t in operator(),
    ) {
        prop_assert_eq!(common::operator_action(&s, &t, &f, &g), Ok(()));
    }

    #[test]
    fn operator_division_inverts_multiplication(s in operator(), t in operator()) {
        prop_assume!(!t.is_zero());
        let product = &s * &t;
        prop_assert_eq!(product.op_divide_exact(&t).unwrap(), s);
    }

    #[test]
    fn floor_superadditive(t in prop::array::uniform3(-1.0e6f64..1.0e6)) {
        prop_assert_eq!(common::floor_inequality(t), Ok(()));
    }

    #[test]
    fn degree_bound_superadditive(k1 in 0u64..10_000, k2 in 0u64..10_000, k3 in 0u64..10_000) {
        prop_assert!(degree_bound(k1) + degree_bound(k2) + degree_bound(k3) <= degree_bound(k1 + k2 + k3));
    }

    #[test]
    fn determinant_methods_agree(
        f in prop::collection::vec(prop::collection::vec(-9i64..=9, 0..=3), 2..=5),
        g in prop::collection::vec(prop::collection::vec(-9i64..=9, 0..=3), 2..=5),
    ) {
        let to_poly = |rows: &[Vec<i64>]| {
            BivarPoly::from_terms(rows.iter().enumerate().flat_map(|(ex, ys)| {
                ys.iter().enumerate().map(move |(ey, &c)| ((ex as u32, ey as u32), BigInt::from(c)))
            }))
        };
        let (f, g) = (to_poly(&f), to_poly(&g));
        prop_assume!(f.deg_x().finite().is_some_and(|d| d >= 1) && g.deg_x().finite().is_some_and(|d| d >= 1));
        let s = build_sylvester(&f, &g).unwrap();
        let ff = determinant_fraction_free(&s).unwrap();
        let ei = determinant_eval_interp(&s, s.generic_degree_bound()).unwrap();
        prop_assert_eq!(&ff, &ei);
        // Specializing y commutes with taking the determinant.
        for y0 in [-2i64, 0, 3] {
            let y0 = BigInt::from(y0);
            let at = s.map(|e: &UniPoly| e.eval(&y0));
            prop_assert_eq!(at.determinant().unwrap(), ff.eval(&y0));
        }
    }
}
