//! The groups `(g^{D_n})_0` for `n = 1, 2, 3`.
//!
//! A [`Jet`] of order `n` is a map `d ↦ dX_1 + (1/2)d²X_2 + (1/6)d³X_3`
//! (truncated at `n`) with values in `g ⊗ W`. The group law is the closed-form
//! truncated BCH product, written out per order:
//!
//! ```text
//! Z_1 = X_1 + Y_1
//! Z_2 = X_2 + Y_2 + [X_1, Y_1]
//! Z_3 = X_3 + Y_3 + (3/2)([X_1, Y_2] + [X_2, Y_1]) + (1/2)[X_1 - Y_1, [X_1, Y_1]]
//! ```
//!
//! The unit is the zero jet and the inverse is coordinatewise negation.
//! Jets are stored in exp coordinates; monomial coordinates (`d ↦ Σ d^i X_i`)
//! exist for the jet bracket `[Σ X_i d^i, Σ Y_j d^j] = Σ_k Σ_{i+j=k} [X_i, Y_j] d^k`.

mod checks;

pub use checks::{
    associativity_generic, associativity_random, cubic_bracket_identity, group_axioms,
    tower_compatibility, verify_bracket_recovery,
};

use std::fmt;
use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie_core::{LieAlgebraSpec, LieElement, LieError};
use crate::scalar_ring::{factorial, ratio, Rational, Ring, RingError, RingSignature, WeilScalar};

/// Highest supported jet order.
pub const MAX_ORDER: usize = 3;

/// Name of the infinitesimal adjoined when a jet is written as a series.
pub const SERIES_VARIABLE: &str = "d";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("jet order {0} is outside 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("expected {expected:?} coordinates, found {found:?}")]
    CoordinateSystem {
        expected: CoordinateSystem,
        found: CoordinateSystem,
    },
    #[error("malformed jet: {0}")]
    Malformed(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// How the coordinates `X_i` of a jet are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoordinateSystem {
    /// `d ↦ Σ d^i X_i / i!`
    Exp,
    /// `d ↦ Σ d^i X_i`
    Monomial,
}

/// An element of `(g^{D_n})_0` over a coefficient ring.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    system: CoordinateSystem,
    coords: Vec<LieElement>,
}

impl Jet {
    /// Builds a jet whose order is the number of coordinates.
    pub fn new(system: CoordinateSystem, coords: Vec<LieElement>) -> Result<Self, JetError> {
        let order = coords.len();
        if !(1..=MAX_ORDER).contains(&order) {
            return Err(JetError::OrderOutOfRange(order));
        }
        let (head, rest) = coords.split_first().expect("non-empty");
        for x in rest {
            LieAlgebraSpec::ensure_same(head.algebra(), x.algebra())?;
            RingSignature::ensure_same(head.ring(), x.ring())?;
        }
        Ok(Jet { system, coords })
    }

    /// The unit: all coordinates zero.
    pub fn identity(
        algebra: &Arc<LieAlgebraSpec>,
        ring: &Ring,
        order: usize,
    ) -> Result<Self, JetError> {
        if !(1..=MAX_ORDER).contains(&order) {
            return Err(JetError::OrderOutOfRange(order));
        }
        Jet::new(
            CoordinateSystem::Exp,
            vec![LieElement::zero(algebra, ring); order],
        )
    }

    pub fn order(&self) -> usize {
        self.coords.len()
    }

    pub fn system(&self) -> CoordinateSystem {
        self.system
    }

    pub fn coords(&self) -> &[LieElement] {
        &self.coords
    }

    pub fn algebra(&self) -> &Arc<LieAlgebraSpec> {
        self.coords[0].algebra()
    }

    pub fn ring(&self) -> &Ring {
        self.coords[0].ring()
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(LieElement::is_zero)
    }

    fn ensure_compatible(&self, other: &Jet) -> Result<(), JetError> {
        if self.order() != other.order() {
            return Err(JetError::OrderMismatch(self.order(), other.order()));
        }
        LieAlgebraSpec::ensure_same(self.algebra(), other.algebra())?;
        RingSignature::ensure_same(self.ring(), other.ring())?;
        Ok(())
    }

    fn require(&self, system: CoordinateSystem) -> Result<(), JetError> {
        if self.system == system {
            Ok(())
        } else {
            Err(JetError::CoordinateSystem {
                expected: system,
                found: self.system,
            })
        }
    }

    /// Rescales between coordinate systems: monomial `X_i` = exp `X_i / i!`.
    pub fn convert(&self, target: CoordinateSystem) -> Jet {
        if target == self.system {
            return self.clone();
        }
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let f = factorial(i + 1);
                match target {
                    CoordinateSystem::Monomial => x.scale_rational(&(Rational::one() / f)),
                    CoordinateSystem::Exp => x.scale_rational(&f),
                }
            })
            .collect();
        Jet {
            system: target,
            coords,
        }
    }

    /// Restriction along `D_k ⊂ D_n`: keeps the first `order` coordinates.
    pub fn truncate(&self, order: usize) -> Result<Jet, JetError> {
        if order == 0 || order > self.order() {
            return Err(JetError::OrderOutOfRange(order));
        }
        Ok(Jet {
            system: self.system,
            coords: self.coords[..order].to_vec(),
        })
    }

    /// The group law. Both operands must be in exp coordinates.
    pub fn mul(&self, other: &Jet) -> Result<Jet, JetError> {
        self.ensure_compatible(other)?;
        self.require(CoordinateSystem::Exp)?;
        other.require(CoordinateSystem::Exp)?;
        let x = &self.coords;
        let y = &other.coords;
        let mut z = Vec::with_capacity(x.len());
        z.push(&x[0] + &y[0]);
        if x.len() >= 2 {
            let x1y1 = x[0].bracket(&y[0])?;
            z.push(&(&x[1] + &y[1]) + &x1y1);
            if x.len() >= 3 {
                let mixed = &x[0].bracket(&y[1])? + &x[1].bracket(&y[0])?;
                let cubic = (&x[0] - &y[0]).bracket(&x1y1)?;
                let z3 = &(&(&x[2] + &y[2]) + &mixed.scale_rational(&ratio(3, 2)))
                    + &cubic.scale_rational(&ratio(1, 2));
                z.push(z3);
            }
        }
        Ok(Jet {
            system: CoordinateSystem::Exp,
            coords: z,
        })
    }

    /// Coordinatewise negation (exp coordinates).
    pub fn inverse(&self) -> Result<Jet, JetError> {
        self.require(CoordinateSystem::Exp)?;
        Ok(Jet {
            system: CoordinateSystem::Exp,
            coords: self.coords.iter().map(|x| -x).collect(),
        })
    }

    /// The jet bracket in monomial coordinates, truncated at the jet order.
    pub fn bracket(&self, other: &Jet) -> Result<Jet, JetError> {
        self.ensure_compatible(other)?;
        self.require(CoordinateSystem::Monomial)?;
        other.require(CoordinateSystem::Monomial)?;
        let n = self.order();
        let mut z = vec![LieElement::zero(self.algebra(), self.ring()); n];
        // coords[i] multiplies d^(i+1); [d^i, d^j] lands in d^(i+j)
        for i in 1..=n {
            for j in 1..=n {
                if i + j <= n {
                    let term = self.coords[i - 1].bracket(&other.coords[j - 1])?;
                    z[i + j - 1] = &z[i + j - 1] + &term;
                }
            }
        }
        Ok(Jet {
            system: CoordinateSystem::Monomial,
            coords: z,
        })
    }

    /// `a · b · a⁻¹ · b⁻¹`.
    pub fn group_commutator(&self, other: &Jet) -> Result<Jet, JetError> {
        self.mul(other)?
            .mul(&self.inverse()?)?
            .mul(&other.inverse()?)
    }

    /// Multiplies every coordinate by a ring scalar (e.g. an infinitesimal `e`).
    pub fn scale(&self, factor: &WeilScalar) -> Result<Jet, JetError> {
        let coords = self
            .coords
            .iter()
            .map(|x| x.scale(factor))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Jet {
            system: self.system,
            coords,
        })
    }

    pub fn embed(&self, ring: &Ring) -> Result<Jet, JetError> {
        let coords = self
            .coords
            .iter()
            .map(|x| x.embed(ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Jet {
            system: self.system,
            coords,
        })
    }

    /// Writes the jet as one element of `g ⊗ W[d]/(d^{n+1})`, returning the extended ring.
    pub fn to_series(&self) -> Result<(Ring, LieElement), JetError> {
        let n = self.order();
        let ring = self.ring().extend([(SERIES_VARIABLE, n as u32)])?;
        let d = WeilScalar::generator(&ring, SERIES_VARIABLE)?;
        let mut acc = LieElement::zero(self.algebra(), &ring);
        for (i, x) in self.coords.iter().enumerate() {
            let power = d.pow(i as u32 + 1);
            let weight = match self.system {
                CoordinateSystem::Exp => power.scale(&(Rational::one() / factorial(i + 1))),
                CoordinateSystem::Monomial => power,
            };
            acc = &acc + &x.embed(&ring)?.scale(&weight)?;
        }
        Ok((ring, acc))
    }

    /// Reads exp coordinates back from a series in `d` over `base`.
    /// The `d⁰` component must vanish.
    pub fn from_series(series: &LieElement, base: &Ring, order: usize) -> Result<Jet, JetError> {
        if !(1..=MAX_ORDER).contains(&order) {
            return Err(JetError::OrderOutOfRange(order));
        }
        let constant = series.coefficient_of(SERIES_VARIABLE, 0, base)?;
        if !constant.is_zero() {
            return Err(JetError::Malformed(format!(
                "series has nonzero value at d = 0: {constant}"
            )));
        }
        let coords = (1..=order)
            .map(|i| {
                Ok(series
                    .coefficient_of(SERIES_VARIABLE, i as u8, base)?
                    .scale_rational(&factorial(i)))
            })
            .collect::<Result<Vec<_>, JetError>>()?;
        Jet::new(CoordinateSystem::Exp, coords)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "algebra": self.algebra().name(),
            "order": self.order(),
            "coordinates": self.system,
            "coords": self.coords.iter().map(LieElement::to_json).collect::<Vec<_>>(),
        })
    }

    /// Parses a jet; `resolve` maps the algebra name to its spec.
    pub fn from_json<F>(value: &serde_json::Value, resolve: F) -> Result<Jet, JetError>
    where
        F: Fn(&str) -> Option<Arc<LieAlgebraSpec>>,
    {
        let obj = value
            .as_object()
            .ok_or_else(|| JetError::Malformed("jet must be an object".into()))?;
        let name = obj
            .get("algebra")
            .and_then(|v| v.as_str())
            .ok_or_else(|| JetError::Malformed("missing `algebra`".into()))?;
        let algebra = resolve(name)
            .ok_or_else(|| JetError::Malformed(format!("unknown algebra `{name}`")))?;
        let system = match obj.get("coordinates") {
            Some(v) => serde_json::from_value(v.clone())
                .map_err(|e| JetError::Malformed(format!("coordinates: {e}")))?,
            None => CoordinateSystem::Exp,
        };
        let coords = obj
            .get("coords")
            .and_then(|v| v.as_array())
            .ok_or_else(|| JetError::Malformed("missing `coords` array".into()))?
            .iter()
            .map(|c| LieElement::from_json(&algebra, c))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(order) = obj.get("order") {
            let order = order
                .as_u64()
                .ok_or_else(|| JetError::Malformed("`order` must be an integer".into()))?
                as usize;
            if order != coords.len() {
                return Err(JetError::Malformed(format!(
                    "order {order} but {} coordinates",
                    coords.len()
                )));
            }
        }
        Jet::new(system, coords)
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        let tag = match self.system {
            CoordinateSystem::Exp => "exp",
            CoordinateSystem::Monomial => "monomial",
        };
        write!(f, "({}) [{tag}]", parts.join("; "))
    }
}
