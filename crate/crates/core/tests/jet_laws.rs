//! Randomized laws of the jet group, the jet bracket and both oracles.

use std::sync::Arc;

use proptest::prelude::*;
use weil_core::bch_engine::bch_mul;
use weil_core::lie_core::{free_nilpotent, h3, sl2, so3, LieAlgebraSpec, LieElement};
use weil_core::matrix_oracle::{matrix_mul, weil_exp, weil_log, MatrixRep};
use weil_core::scalar_ring::{ratio, Rational, RingSignature, WeilScalar};
use weil_core::{CoordinateSystem, Jet};

fn algebras() -> Vec<Arc<LieAlgebraSpec>> {
    vec![h3(), sl2(), so3(), free_nilpotent(2, 3).unwrap()]
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-3i64..=3, 1i64..=3).prop_map(|(p, q)| ratio(p, q))
}

/// Three jets of the same order over one of the built-in algebras.
fn jet_triple() -> impl Strategy<Value = (Jet, Jet, Jet)> {
    (0..4usize, 1..=3usize).prop_flat_map(|(which, order)| {
        let alg = algebras()[which].clone();
        let len = alg.dimension() * order;
        proptest::collection::vec(small_rational(), 3 * len).prop_map(move |vals| {
            let q = RingSignature::rationals();
            let jets: Vec<Jet> = vals
                .chunks(len)
                .map(|chunk| {
                    let coords = chunk
                        .chunks(alg.dimension())
                        .map(|c| LieElement::from_rationals(&alg, &q, c).unwrap())
                        .collect();
                    Jet::new(CoordinateSystem::Exp, coords).unwrap()
                })
                .collect();
            (jets[0].clone(), jets[1].clone(), jets[2].clone())
        })
    })
}

fn mono(j: &Jet) -> Jet {
    j.convert(CoordinateSystem::Monomial)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative((a, b, c) in jet_triple()) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn unit_and_inverse((a, _, _) in jet_triple()) {
        let id = Jet::identity(a.algebra(), a.ring(), a.order()).unwrap();
        prop_assert_eq!(id.mul(&a).unwrap(), a.clone());
        prop_assert!(a.mul(&a.inverse().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn series_product_agrees((a, b, _) in jet_triple()) {
        prop_assert_eq!(bch_mul(&a, &b).unwrap(), a.mul(&b).unwrap());
    }

    #[test]
    fn matrix_product_agrees((a, b, _) in jet_triple()) {
        if let Some(rep) = MatrixRep::builtin(a.algebra().name()) {
            prop_assert_eq!(matrix_mul(&rep, &a, &b).unwrap(), a.mul(&b).unwrap());
        }
    }

    #[test]
    fn conversion_round_trips((a, _, _) in jet_triple()) {
        prop_assert_eq!(mono(&a).convert(CoordinateSystem::Exp), a.clone());
        let m = mono(&a);
        prop_assert_eq!(m.convert(CoordinateSystem::Exp).convert(CoordinateSystem::Monomial), m);
    }

    #[test]
    fn bracket_is_a_lie_bracket((a, b, c) in jet_triple(), s in small_rational()) {
        let (a, b, c) = (mono(&a), mono(&b), mono(&c));
        let ab = a.bracket(&b).unwrap();
        let ba = b.bracket(&a).unwrap();
        let sum: Vec<LieElement> = ab.coords().iter().zip(ba.coords()).map(|(x, y)| x + y).collect();
        prop_assert!(sum.iter().all(LieElement::is_zero));

        let jacobi = [
            a.bracket(&b.bracket(&c).unwrap()).unwrap(),
            b.bracket(&c.bracket(&a).unwrap()).unwrap(),
            c.bracket(&a.bracket(&b).unwrap()).unwrap(),
        ];
        for k in 0..a.order() {
            let total = &(&jacobi[0].coords()[k] + &jacobi[1].coords()[k]) + &jacobi[2].coords()[k];
            prop_assert!(total.is_zero());
        }

        let scaled = Jet::new(
            CoordinateSystem::Monomial,
            a.coords().iter().map(|x| x.scale_rational(&s)).collect(),
        )
        .unwrap();
        let lhs = scaled.bracket(&b).unwrap();
        let rhs: Vec<LieElement> = ab.coords().iter().map(|x| x.scale_rational(&s)).collect();
        prop_assert_eq!(lhs.coords(), &rhs[..]);
    }

    #[test]
    fn bracket_independent_of_starting_coordinates((a, b, _) in jet_triple()) {
        let from_exp = mono(&a).bracket(&mono(&b)).unwrap();
        let from_mono = mono(&mono(&a)).bracket(&mono(&b)).unwrap();
        prop_assert_eq!(from_exp, from_mono);
    }

    #[test]
    fn truncation_commutes_with_product((a, b, _) in jet_triple()) {
        for k in 1..=a.order() {
            prop_assert_eq!(
                a.mul(&b).unwrap().truncate(k).unwrap(),
                a.truncate(k).unwrap().mul(&b.truncate(k).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn exp_log_are_inverse(vals in proptest::collection::vec(small_rational(), 3), order in 1u32..=3) {
        let rep = MatrixRep::sl2();
        let ring = RingSignature::new([("d", order)]).unwrap();
        let d = WeilScalar::generator(&ring, "d").unwrap();
        let x = LieElement::from_rationals(rep.algebra(), &ring, &vals).unwrap().scale(&d).unwrap();
        let m = rep.image(&x).unwrap();
        let e = weil_exp(&m).unwrap();
        prop_assert_eq!(weil_log(&e).unwrap(), m.clone());
        prop_assert_eq!(weil_exp(&weil_log(&e).unwrap()).unwrap(), e.clone());
        let back = weil_exp(&m.scale_rational(&ratio(-1, 1))).unwrap();
        prop_assert_eq!(e.mul(&back).unwrap(), identity_2x2(&ring));
    }
}

fn identity_2x2(ring: &weil_core::Ring) -> weil_core::matrix_oracle::WeilMatrix {
    weil_core::matrix_oracle::WeilMatrix::identity(ring, 2)
}
