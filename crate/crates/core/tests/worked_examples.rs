//! Hand-computed instances of the group law, the bracket and the commutator,
//! each compared with independently derived values.

use weil_core::bch_engine::bch_mul;
use weil_core::lie_core::{free_nilpotent, generic_elements, h3, LieAlgebraSpec, LieElement};
use weil_core::matrix_oracle::{verify_matrix_bch, MatrixRep};
use weil_core::scalar_ring::{rat, ratio, Ring, RingSignature, WeilScalar};
use weil_core::{CoordinateSystem, Jet};

use std::sync::Arc;

fn basis(alg: &Arc<LieAlgebraSpec>, ring: &Ring, name: &str) -> LieElement {
    LieElement::basis_named(alg, ring, name).unwrap()
}

fn exp_jet(coords: Vec<LieElement>) -> Jet {
    Jet::new(CoordinateSystem::Exp, coords).unwrap()
}

#[test]
fn heisenberg_products_at_each_order() {
    let alg = h3();
    let q = RingSignature::rationals();
    let (p, qq, z) = (
        basis(&alg, &q, "p"),
        basis(&alg, &q, "q"),
        basis(&alg, &q, "z"),
    );
    let zero = LieElement::zero(&alg, &q);
    for n in 1..=3 {
        let mut a = vec![p.clone()];
        let mut b = vec![qq.clone()];
        a.resize(n, zero.clone());
        b.resize(n, zero.clone());
        let (a, b) = (exp_jet(a), exp_jet(b));
        // [p, q] = z and [p - q, z] = 0
        let mut expected = vec![&p + &qq, z.clone(), zero.clone()];
        expected.truncate(n);
        assert_eq!(a.mul(&b).unwrap().coords(), &expected[..]);
        assert_eq!(bch_mul(&a, &b).unwrap().coords(), &expected[..]);
    }
}

#[test]
fn inverse_negates_every_coordinate() {
    let alg = h3();
    let q = RingSignature::rationals();
    let (p, qq, z) = (
        basis(&alg, &q, "p"),
        basis(&alg, &q, "q"),
        basis(&alg, &q, "z"),
    );
    let a = exp_jet(vec![p.clone(), qq.clone(), z.clone()]);
    assert_eq!(a.inverse().unwrap().coords(), &[-&p, -&qq, -&z]);
}

#[test]
fn order_one_bracket_vanishes() {
    let ring = RingSignature::new([("e1", 1), ("e2", 1)]).unwrap();
    let alg = h3();
    let e1 = WeilScalar::generator(&ring, "e1").unwrap();
    let e2 = WeilScalar::generator(&ring, "e2").unwrap();
    let a = Jet::new(
        CoordinateSystem::Monomial,
        vec![basis(&alg, &ring, "p").scale(&e1).unwrap()],
    )
    .unwrap();
    let b = Jet::new(
        CoordinateSystem::Monomial,
        vec![basis(&alg, &ring, "q").scale(&e2).unwrap()],
    )
    .unwrap();
    assert!(a.bracket(&b).unwrap().is_identity());
    let ea = a.convert(CoordinateSystem::Exp);
    let eb = b.convert(CoordinateSystem::Exp);
    assert!(ea.group_commutator(&eb).unwrap().is_identity());
}

#[test]
fn order_two_commutator_is_twice_the_bracket_in_exp_coordinates() {
    let ring = RingSignature::new([("e1", 1), ("e2", 1)]).unwrap();
    let alg = h3();
    let e1 = WeilScalar::generator(&ring, "e1").unwrap();
    let e2 = WeilScalar::generator(&ring, "e2").unwrap();
    let zero = LieElement::zero(&alg, &ring);
    let a = exp_jet(vec![
        basis(&alg, &ring, "p").scale(&e1).unwrap(),
        zero.clone(),
    ]);
    let b = exp_jet(vec![
        basis(&alg, &ring, "q").scale(&e2).unwrap(),
        zero.clone(),
    ]);
    let c = a.group_commutator(&b).unwrap();
    let e = &e1 * &e2;
    let z = basis(&alg, &ring, "z");
    assert_eq!(
        c.coords(),
        &[zero.clone(), z.scale(&e.scale(&rat(2))).unwrap()]
    );
    // monomial view: d² e1e2 z
    assert_eq!(
        c.convert(CoordinateSystem::Monomial).coords(),
        &[zero, z.scale(&e).unwrap()]
    );
}

#[test]
fn order_three_commutator_of_generic_jets() {
    let alg = free_nilpotent(2, 3).unwrap();
    let (ring, v) = generic_elements(
        &alg,
        &["x1", "x2", "x3", "y1", "y2", "y3"],
        &[("e1", 1), ("e2", 1)],
    )
    .unwrap();
    let e1 = WeilScalar::generator(&ring, "e1").unwrap();
    let e2 = WeilScalar::generator(&ring, "e2").unwrap();
    let a = exp_jet(v[..3].to_vec()).scale(&e1).unwrap();
    let b = exp_jet(v[3..].to_vec()).scale(&e2).unwrap();
    let c = a
        .group_commutator(&b)
        .unwrap()
        .convert(CoordinateSystem::Monomial);

    let e = &e1 * &e2;
    let (x, y) = (&v[..3], &v[3..]);
    let d2 = x[0].bracket(&y[0]).unwrap().scale(&e).unwrap();
    let d3 = (&x[0].bracket(&y[1]).unwrap() + &x[1].bracket(&y[0]).unwrap())
        .scale(&e)
        .unwrap()
        .scale_rational(&ratio(1, 2));
    assert!(c.coords()[0].is_zero());
    assert_eq!(c.coords()[1], d2);
    assert_eq!(c.coords()[2], d3);
    assert!(!d3.is_zero());
}

#[test]
fn second_order_matrix_identity_in_h3() {
    assert!(verify_matrix_bch(2, &MatrixRep::h3(), 25, 7).passed());
}

#[test]
fn jet_json_matches_documented_shape() {
    let alg = h3();
    let q = RingSignature::rationals();
    let a = exp_jet(vec![basis(&alg, &q, "p"), LieElement::zero(&alg, &q)]);
    let json = a.to_json();
    assert_eq!(json["algebra"], "h3");
    assert_eq!(json["order"], 2);
    assert_eq!(json["coordinates"], "exp");
    assert_eq!(
        json["coords"][0]["coords"]["p"]["terms"],
        serde_json::json!([[[], "1"]])
    );
    let algebra_json = alg.to_json();
    assert_eq!(
        algebra_json,
        serde_json::json!({"name":"h3","basis":["p","q","z"],
            "brackets":[{"left":"p","right":"q","value":[["z","1"]]}]})
    );
}
