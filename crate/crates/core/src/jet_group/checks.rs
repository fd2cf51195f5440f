//! Verification drivers for the jet group: associativity, unit and inverse
//! laws, tower compatibility, the cubic bracket identity used in the order-3
//! associativity proof, and bracket recovery from group commutators.

use std::sync::Arc;

use super::{CoordinateSystem, Jet, JetError};
use crate::lie_core::{free_nilpotent, generic_elements, LieAlgebraSpec, LieElement};
use crate::random::{random_jet, trial_rng};
use crate::report::{finish, CheckReport};
use crate::scalar_ring::{ratio, Ring, RingSignature, WeilScalar};

type Outcome = Result<Option<String>, JetError>;

fn names(prefix: &str, order: usize) -> Vec<String> {
    (1..=order).map(|i| format!("{prefix}{i}")).collect()
}

/// Generic exp-coordinate jets, one per prefix, over a shared symbolic ring.
fn generic_jets(
    algebra: &Arc<LieAlgebraSpec>,
    prefixes: &[&str],
    order: usize,
    extra: &[(&str, u32)],
) -> Result<(Ring, Vec<Jet>), JetError> {
    if !(1..=super::MAX_ORDER).contains(&order) {
        return Err(JetError::OrderOutOfRange(order));
    }
    let all: Vec<String> = prefixes.iter().flat_map(|p| names(p, order)).collect();
    let refs: Vec<&str> = all.iter().map(String::as_str).collect();
    let (ring, elements) = generic_elements(algebra, &refs, extra)?;
    let jets = elements
        .chunks(order)
        .map(|c| Jet::new(CoordinateSystem::Exp, c.to_vec()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((ring, jets))
}

fn assoc_outcome(a: &Jet, b: &Jet, c: &Jet) -> Outcome {
    let left = a.mul(b)?.mul(c)?;
    let right = a.mul(&b.mul(c)?)?;
    Ok((left != right)
        .then(|| format!("a = {a}, b = {b}, c = {c}: (ab)c = {left}, a(bc) = {right}")))
}

/// `(a·b)·c = a·(b·c)` for generic symbolic jets `a, b, c`.
pub fn associativity_generic(algebra: &Arc<LieAlgebraSpec>, order: usize) -> CheckReport {
    let id = format!("associativity-generic/{}/n{order}", algebra.name());
    let outcome = generic_jets(algebra, &["x", "y", "z"], order, &[])
        .and_then(|(_, j)| assoc_outcome(&j[0], &j[1], &j[2]));
    finish(&id, outcome, "generic symbolic jets".to_string())
}

/// `(a·b)·c = a·(b·c)` for seeded random rational jets.
pub fn associativity_random(
    algebra: &Arc<LieAlgebraSpec>,
    order: usize,
    trials: usize,
    seed: u64,
) -> CheckReport {
    let id = format!("associativity-random/{}/n{order}", algebra.name());
    let q = RingSignature::rationals();
    let mut rng = trial_rng(seed);
    let outcome = (|| -> Outcome {
        for _ in 0..trials {
            let a = random_jet(algebra, &q, order, &mut rng)?;
            let b = random_jet(algebra, &q, order, &mut rng)?;
            let c = random_jet(algebra, &q, order, &mut rng)?;
            if let Some(cx) = assoc_outcome(&a, &b, &c)? {
                return Ok(Some(cx));
            }
        }
        Ok(None)
    })();
    finish(&id, outcome, format!("{trials} trials, seed {seed}"))
}

fn axioms_outcome(a: &Jet) -> Outcome {
    let id = Jet::identity(a.algebra(), a.ring(), a.order())?;
    let inv = a.inverse()?;
    let cases = [
        ("1·a", id.mul(a)?, a.clone()),
        ("a·1", a.mul(&id)?, a.clone()),
        ("a·a⁻¹", a.mul(&inv)?, id.clone()),
        ("a⁻¹·a", inv.mul(a)?, id.clone()),
    ];
    for (label, got, want) in cases {
        if got != want {
            return Ok(Some(format!("a = {a}: {label} = {got}, expected {want}")));
        }
    }
    Ok(None)
}

/// Unit and inverse laws, on a generic jet and on seeded random jets.
pub fn group_axioms(
    algebra: &Arc<LieAlgebraSpec>,
    order: usize,
    trials: usize,
    seed: u64,
) -> CheckReport {
    let id = format!("group-axioms/{}/n{order}", algebra.name());
    let q = RingSignature::rationals();
    let mut rng = trial_rng(seed);
    let outcome = (|| -> Outcome {
        let (_, generic) = generic_jets(algebra, &["x"], order, &[])?;
        if let Some(cx) = axioms_outcome(&generic[0])? {
            return Ok(Some(cx));
        }
        for _ in 0..trials {
            if let Some(cx) = axioms_outcome(&random_jet(algebra, &q, order, &mut rng)?)? {
                return Ok(Some(cx));
            }
        }
        Ok(None)
    })();
    finish(
        &id,
        outcome,
        format!("generic + {trials} trials, seed {seed}"),
    )
}

fn tower_outcome(a: &Jet, b: &Jet) -> Outcome {
    let mut product = a.mul(b)?;
    let (mut a, mut b) = (a.clone(), b.clone());
    while product.order() > 1 {
        let k = product.order() - 1;
        a = a.truncate(k)?;
        b = b.truncate(k)?;
        let low = a.mul(&b)?;
        let cut = product.truncate(k)?;
        if low != cut {
            return Ok(Some(format!(
                "a = {a}, b = {b}: order-{k} product {low}, truncated product {cut}"
            )));
        }
        product = low;
    }
    Ok(None)
}

/// Truncating an order-3 product equals the lower-order product of the
/// truncated inputs, for 3 → 2 → 1.
pub fn tower_compatibility(algebra: &Arc<LieAlgebraSpec>, trials: usize, seed: u64) -> CheckReport {
    let id = format!("tower/{}", algebra.name());
    let q = RingSignature::rationals();
    let mut rng = trial_rng(seed);
    let outcome = (|| -> Outcome {
        let (_, g) = generic_jets(algebra, &["x", "y"], 3, &[])?;
        if let Some(cx) = tower_outcome(&g[0], &g[1])? {
            return Ok(Some(cx));
        }
        for _ in 0..trials {
            let a = random_jet(algebra, &q, 3, &mut rng)?;
            let b = random_jet(algebra, &q, 3, &mut rng)?;
            if let Some(cx) = tower_outcome(&a, &b)? {
                return Ok(Some(cx));
            }
        }
        Ok(None)
    })();
    finish(
        &id,
        outcome,
        format!("generic + {trials} trials, seed {seed}"),
    )
}

/// The cubic identity
/// `(3/2)[[X,Y],Z] + (1/2)([X,[Y,Z]] + [Y,[X,Z]]) - (3/2)[X,[Y,Z]] + (1/2)([Y,[X,Z]] + [Z,[X,Y]]) = 0`
/// for generic `X, Y, Z`.
pub fn cubic_bracket_identity(algebra: &Arc<LieAlgebraSpec>) -> CheckReport {
    let id = format!("lemma-6.3.1/{}", algebra.name());
    let outcome = (|| -> Outcome {
        let (_, v) = generic_elements(algebra, &["X", "Y", "Z"], &[])?;
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let xy_z = x.bracket(y)?.bracket(z)?;
        let x_yz = x.bracket(&y.bracket(z)?)?;
        let y_xz = y.bracket(&x.bracket(z)?)?;
        let z_xy = z.bracket(&x.bracket(y)?)?;
        let half = ratio(1, 2);
        let three_halves = ratio(3, 2);
        let total = &(&(&xy_z.scale_rational(&three_halves)
            + &(&x_yz + &y_xz).scale_rational(&half))
            - &x_yz.scale_rational(&three_halves))
            + &(&y_xz + &z_xy).scale_rational(&half);
        Ok((!total.is_zero()).then(|| format!("identity evaluates to {total}")))
    })();
    finish(&id, outcome, "generic symbolic X, Y, Z".to_string())
}

/// The expected commutator of `e1·a` and `e2·b` in monomial coordinates:
/// `d²e1e2[X1,Y1] + (1/2)d³e1e2([X1,Y2] + [X2,Y1])`, truncated at the jet order.
fn expected_commutator(a: &Jet, b: &Jet, e1e2: &WeilScalar) -> Result<Jet, JetError> {
    let n = a.order();
    let x = a.coords();
    let y = b.coords();
    let zero = LieElement::zero(a.algebra(), a.ring());
    let mut coords = vec![zero; n];
    if n >= 2 {
        coords[1] = x[0].bracket(&y[0])?.scale(e1e2)?;
    }
    if n >= 3 {
        let mixed = &x[0].bracket(&y[1])? + &x[1].bracket(&y[0])?;
        coords[2] = mixed.scale(e1e2)?.scale_rational(&ratio(1, 2));
    }
    Jet::new(CoordinateSystem::Monomial, coords)
}

/// Adjoins square-zero `e1, e2` (if absent) and compares the group commutator
/// of `e1·a, e2·b` with their jet bracket and with the closed form.
fn recovery_outcome(a: &Jet, b: &Jet) -> Outcome {
    let ring = if a.ring().index_of("e1").is_some() {
        a.ring().clone()
    } else {
        a.ring().extend([("e1", 1), ("e2", 1)])?
    };
    let e1 = WeilScalar::generator(&ring, "e1")?;
    let e2 = WeilScalar::generator(&ring, "e2")?;
    let a = a.embed(&ring)?;
    let b = b.embed(&ring)?;
    let sa = a.scale(&e1)?;
    let sb = b.scale(&e2)?;
    let commutator = sa
        .group_commutator(&sb)?
        .convert(CoordinateSystem::Monomial);
    let bracket = sa
        .convert(CoordinateSystem::Monomial)
        .bracket(&sb.convert(CoordinateSystem::Monomial))?;
    if commutator != bracket {
        return Ok(Some(format!(
            "a = {a}, b = {b}: commutator {commutator}, jet bracket {bracket}"
        )));
    }
    let expected = expected_commutator(&a, &b, &(&e1 * &e2))?;
    if commutator != expected {
        return Ok(Some(format!(
            "a = {a}, b = {b}: commutator {commutator}, closed form {expected}"
        )));
    }
    Ok(None)
}

/// Group commutators of infinitesimally scaled jets recover the jet bracket.
/// Checked for generic jets of `free_nilpotent(2, 3)` and for seeded random
/// jets of `algebra`.
pub fn verify_bracket_recovery(
    algebra: &Arc<LieAlgebraSpec>,
    order: usize,
    trials: usize,
    seed: u64,
) -> CheckReport {
    let id = format!("bracket-recovery/{}/n{order}", algebra.name());
    let q = RingSignature::rationals();
    let mut rng = trial_rng(seed);
    let outcome = (|| -> Outcome {
        let free = free_nilpotent(2, 3)?;
        let (_, g) = generic_jets(&free, &["x", "y"], order, &[("e1", 1), ("e2", 1)])?;
        if let Some(cx) = recovery_outcome(&g[0], &g[1])? {
            return Ok(Some(format!("generic: {cx}")));
        }
        for _ in 0..trials {
            let a = random_jet(algebra, &q, order, &mut rng)?;
            let b = random_jet(algebra, &q, order, &mut rng)?;
            if let Some(cx) = recovery_outcome(&a, &b)? {
                return Ok(Some(cx));
            }
        }
        Ok(None)
    })();
    finish(
        &id,
        outcome,
        format!("generic in free-nilpotent-2-3 + {trials} trials, seed {seed}"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::{h3, sl2, so3};

    #[test]
    fn associativity_holds_generically_in_small_algebras() {
        for alg in [h3(), sl2(), free_nilpotent(2, 3).unwrap()] {
            for n in 1..=3 {
                let r = associativity_generic(&alg, n);
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn random_drivers_pass() {
        for alg in [h3(), sl2(), so3()] {
            for n in 1..=3 {
                assert!(associativity_random(&alg, n, 20, 1).passed());
                assert!(group_axioms(&alg, n, 20, 1).passed());
                assert!(verify_bracket_recovery(&alg, n, 10, 1).passed());
            }
            assert!(tower_compatibility(&alg, 20, 1).passed());
        }
    }

    #[test]
    fn cubic_identity_vanishes() {
        assert!(cubic_bracket_identity(&free_nilpotent(3, 3).unwrap()).passed());
        assert!(cubic_bracket_identity(&sl2()).passed());
    }

    #[test]
    fn recovery_outcome_sees_nontrivial_commutators() {
        let alg = h3();
        let q = RingSignature::rationals();
        let p = LieElement::basis_named(&alg, &q, "p").unwrap();
        let qq = LieElement::basis_named(&alg, &q, "q").unwrap();
        let zero = LieElement::zero(&alg, &q);
        let a = Jet::new(CoordinateSystem::Exp, vec![p, zero.clone()]).unwrap();
        let b = Jet::new(CoordinateSystem::Exp, vec![qq, zero]).unwrap();
        assert_eq!(recovery_outcome(&a, &b).unwrap(), None);
        // the closed form is not vacuous here: [p, q] = z is nonzero
        let ring = q.extend([("e1", 1), ("e2", 1)]).unwrap();
        let e1e2 = &WeilScalar::generator(&ring, "e1").unwrap()
            * &WeilScalar::generator(&ring, "e2").unwrap();
        let expected =
            expected_commutator(&a.embed(&ring).unwrap(), &b.embed(&ring).unwrap(), &e1e2).unwrap();
        assert!(!expected.is_identity());
    }

    #[test]
    fn order_out_of_range_is_reported_as_failure() {
        let r = associativity_generic(&h3(), 4);
        assert!(!r.passed());
        assert!(r.counterexample.unwrap().contains("error"));
    }
}
