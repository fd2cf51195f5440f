//! Exact truncated polynomial rings `Q[t_1,..,t_k]/(t_1^{m_1+1},..,t_k^{m_k+1})`.
//!
//! These rings model infinitesimal objects: `Q[d]/(d^{n+1})` is the coordinate
//! ring of `D_n`, and adjoining several generators gives product objects such
//! as `D_n x D` or `D x D x D`. A function on such an object with values in a
//! vector space is a vector of [`WeilScalar`] coefficients.
//!
//! All arithmetic is over arbitrary-precision rationals; nothing is rounded.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact rational number, always held in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Shared handle to a ring signature. Scalars over the same ring share one.
pub type Ring = Arc<RingSignature>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("invalid ring signature: {0}")]
    InvalidSignature(String),
    #[error("ring mismatch: {left} vs {right}")]
    SignatureMismatch { left: String, right: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("malformed scalar: {0}")]
    Malformed(String),
}

/// Builds a rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<Rational, RingError> {
    Rational::from_str(text.trim()).map_err(|_| RingError::BadRational(text.to_string()))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// `k!` as a rational.
pub fn factorial(k: usize) -> Rational {
    (1..=k).fold(Rational::one(), |acc, i| acc * rat(i as i64))
}

/// One generator `t` of a truncated ring, with `t^(order+1) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    name: String,
    order: u8,
}

impl Generator {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Highest surviving power of this generator.
    pub fn order(&self) -> u8 {
        self.order
    }
}

/// The ordered list of generators and nilpotency orders defining a ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RingSignature {
    generators: Vec<Generator>,
}

impl RingSignature {
    /// Creates a ring handle. Generator names must be unique and orders in `1..=255`.
    pub fn new<I, S>(generators: I) -> Result<Ring, RingError>
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut out: Vec<Generator> = Vec::new();
        for (name, order) in generators {
            let name = name.into();
            if name.is_empty() {
                return Err(RingError::InvalidSignature("empty generator name".into()));
            }
            if order == 0 || order > u8::MAX as u32 {
                return Err(RingError::InvalidSignature(format!(
                    "generator `{name}` has nilpotency order {order}, expected 1..=255"
                )));
            }
            if out.iter().any(|g| g.name == name) {
                return Err(RingError::InvalidSignature(format!(
                    "duplicate generator `{name}`"
                )));
            }
            out.push(Generator {
                name,
                order: order as u8,
            });
        }
        Ok(Arc::new(RingSignature { generators: out }))
    }

    /// The plain rationals: no generators.
    pub fn rationals() -> Ring {
        Arc::new(RingSignature::default())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Appends generators, returning the larger ring.
    pub fn extend<I, S>(&self, extra: I) -> Result<Ring, RingError>
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let current = self
            .generators
            .iter()
            .map(|g| (g.name.clone(), g.order as u32));
        let added: Vec<(String, u32)> = extra.into_iter().map(|(n, o)| (n.into(), o)).collect();
        RingSignature::new(current.chain(added))
    }

    /// The ring with one generator removed.
    pub fn without(&self, name: &str) -> Result<Ring, RingError> {
        let idx = self
            .index_of(name)
            .ok_or_else(|| RingError::UnknownGenerator(name.to_string()))?;
        let mut generators = self.generators.clone();
        generators.remove(idx);
        Ok(Arc::new(RingSignature { generators }))
    }

    /// Upper bound on the number of monomials of the ring.
    pub fn monomial_count(&self) -> usize {
        self.generators
            .iter()
            .map(|g| g.order as usize + 1)
            .product()
    }

    pub fn same(a: &Ring, b: &Ring) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    pub fn ensure_same(a: &Ring, b: &Ring) -> Result<(), RingError> {
        if RingSignature::same(a, b) {
            Ok(())
        } else {
            Err(RingError::SignatureMismatch {
                left: a.to_string(),
                right: b.to_string(),
            })
        }
    }
}

impl fmt::Display for RingSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "Q");
        }
        let names: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        let ideal: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("{}^{}", g.name, g.order as u32 + 1))
            .collect();
        write!(f, "Q[{}]/({})", names.join(","), ideal.join(","))
    }
}

impl Serialize for RingSignature {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(&str, u32)> = self
            .generators
            .iter()
            .map(|g| (g.name.as_str(), g.order as u32))
            .collect();
        pairs.serialize(serializer)
    }
}

/// Deserializes `[["d",3],["e",1]]` into a validated ring handle.
pub fn deserialize_ring<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Ring, D::Error> {
    let pairs: Vec<(String, u32)> = Vec::deserialize(deserializer)?;
    RingSignature::new(pairs).map_err(serde::de::Error::custom)
}

/// Element of a truncated polynomial ring, stored as a sparse table of
/// exponent vectors to nonzero rational coefficients.
#[derive(Clone, Debug)]
pub struct WeilScalar {
    ring: Ring,
    terms: BTreeMap<Vec<u8>, Rational>,
}

impl PartialEq for WeilScalar {
    fn eq(&self, other: &Self) -> bool {
        RingSignature::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for WeilScalar {}

impl WeilScalar {
    pub fn zero(ring: &Ring) -> Self {
        WeilScalar {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        WeilScalar::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, value: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(vec![0; ring.len()], value);
        }
        WeilScalar {
            ring: ring.clone(),
            terms,
        }
    }

    /// The generator with the given name, as a scalar.
    pub fn generator(ring: &Ring, name: &str) -> Result<Self, RingError> {
        let idx = ring
            .index_of(name)
            .ok_or_else(|| RingError::UnknownGenerator(name.to_string()))?;
        let mut exps = vec![0u8; ring.len()];
        exps[idx] = 1;
        Ok(WeilScalar::monomial(ring, exps, Rational::one()))
    }

    /// `coeff * t^exps`; zero if any exponent exceeds its generator's order.
    pub fn monomial(ring: &Ring, exps: Vec<u8>, coeff: Rational) -> Self {
        assert_eq!(exps.len(), ring.len(), "exponent vector length");
        let mut out = WeilScalar::zero(ring);
        let in_bounds = exps
            .iter()
            .zip(&ring.generators)
            .all(|(e, g)| *e <= g.order);
        if in_bounds && !coeff.is_zero() {
            out.terms.insert(exps, coeff);
        }
        out
    }

    /// Builds a scalar from explicit terms. Repeated exponent vectors are summed;
    /// exponent vectors that violate a nilpotency bound are rejected.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = (Vec<u8>, Rational)>,
    {
        let mut out = WeilScalar::zero(ring);
        for (exps, coeff) in terms {
            if exps.len() != ring.len() {
                return Err(RingError::Malformed(format!(
                    "exponent vector {exps:?} has length {}, ring {} has {} generators",
                    exps.len(),
                    ring,
                    ring.len()
                )));
            }
            for (e, g) in exps.iter().zip(&ring.generators) {
                if *e > g.order {
                    return Err(RingError::Malformed(format!(
                        "exponent {e} of `{}` exceeds nilpotency order {}",
                        g.name, g.order
                    )));
                }
            }
            *out.terms.entry(exps).or_insert_with(Rational::zero) += coeff;
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Nonzero terms in canonical (exponent-vector) order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at the origin: the constant term.
    pub fn eval_zero(&self) -> Rational {
        self.terms
            .get(&vec![0u8; self.ring.len()])
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the monomial `t^exps`.
    pub fn coefficient(&self, exps: &[u8]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Smallest total degree among the stored terms, `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .min()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RingError> {
        RingSignature::ensure_same(&self.ring, &other.ring)?;
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RingError> {
        RingSignature::ensure_same(&self.ring, &other.ring)?;
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, RingError> {
        RingSignature::ensure_same(&self.ring, &other.ring)?;
        let mut out = WeilScalar::zero(&self.ring);
        out.add_scaled_product(&Rational::one(), self, other);
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return WeilScalar::zero(&self.ring);
        }
        WeilScalar {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * factor))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = WeilScalar::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `self += factor * other`. Rings must already agree.
    pub(crate) fn add_scaled(&mut self, other: &Self, factor: &Rational) {
        debug_assert!(RingSignature::same(&self.ring, &other.ring));
        for (e, c) in &other.terms {
            let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
            *slot += c * factor;
            if slot.is_zero() {
                self.terms.remove(e);
            }
        }
    }

    /// `self += factor * a * b`, dropping monomials beyond the nilpotency bounds.
    pub(crate) fn add_scaled_product(&mut self, factor: &Rational, a: &Self, b: &Self) {
        debug_assert!(RingSignature::same(&a.ring, &b.ring));
        debug_assert!(RingSignature::same(&self.ring, &a.ring));
        if factor.is_zero() {
            return;
        }
        let orders: Vec<u8> = self.ring.generators.iter().map(|g| g.order).collect();
        let mut exps = vec![0u8; orders.len()];
        for (ea, ca) in &a.terms {
            'inner: for (eb, cb) in &b.terms {
                for i in 0..orders.len() {
                    let s = ea[i] as u16 + eb[i] as u16;
                    if s > orders[i] as u16 {
                        continue 'inner;
                    }
                    exps[i] = s as u8;
                }
                let value = ca * cb * factor;
                match self.terms.get_mut(&exps) {
                    Some(slot) => {
                        *slot += value;
                        if slot.is_zero() {
                            self.terms.remove(&exps);
                        }
                    }
                    None => {
                        self.terms.insert(exps.clone(), value);
                    }
                }
            }
        }
    }

    /// Reinterprets the scalar in a ring whose generator list extends this one's.
    pub fn embed(&self, target: &Ring) -> Result<Self, RingError> {
        let prefix_ok = target.len() >= self.ring.len()
            && target.generators[..self.ring.len()] == self.ring.generators[..];
        if !prefix_ok {
            return Err(RingError::SignatureMismatch {
                left: self.ring.to_string(),
                right: target.to_string(),
            });
        }
        let pad = target.len() - self.ring.len();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut exps = e.clone();
                exps.extend(std::iter::repeat_n(0, pad));
                (exps, c.clone())
            })
            .collect();
        Ok(WeilScalar {
            ring: target.clone(),
            terms,
        })
    }

    /// Coefficient of `generator^power`, as a scalar over `base` (this ring with
    /// that generator removed).
    pub fn coefficient_of(
        &self,
        generator: &str,
        power: u8,
        base: &Ring,
    ) -> Result<Self, RingError> {
        let idx = self
            .ring
            .index_of(generator)
            .ok_or_else(|| RingError::UnknownGenerator(generator.to_string()))?;
        let expected = self.ring.without(generator)?;
        RingSignature::ensure_same(&expected, base)?;
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[idx] == power)
            .map(|(e, c)| {
                let mut exps = e.clone();
                exps.remove(idx);
                (exps, c.clone())
            })
            .collect();
        Ok(WeilScalar {
            ring: base.clone(),
            terms,
        })
    }
}

impl Add for &WeilScalar {
    type Output = WeilScalar;

    /// Panics on ring mismatch; use [`WeilScalar::checked_add`] for untrusted input.
    fn add(self, rhs: &WeilScalar) -> WeilScalar {
        self.checked_add(rhs)
            .expect("WeilScalar addition across rings")
    }
}

impl Sub for &WeilScalar {
    type Output = WeilScalar;

    fn sub(self, rhs: &WeilScalar) -> WeilScalar {
        self.checked_sub(rhs)
            .expect("WeilScalar subtraction across rings")
    }
}

impl Mul for &WeilScalar {
    type Output = WeilScalar;

    fn mul(self, rhs: &WeilScalar) -> WeilScalar {
        self.checked_mul(rhs)
            .expect("WeilScalar multiplication across rings")
    }
}

impl Neg for &WeilScalar {
    type Output = WeilScalar;

    fn neg(self) -> WeilScalar {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for WeilScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Vec<u8>, &Rational)> = self.terms.iter().collect();
        ordered.sort_by_key(|(e, _)| (e.iter().map(|&x| x as u32).sum::<u32>(), e.to_vec()));
        for (n, (exps, coeff)) in ordered.into_iter().enumerate() {
            let monomial: Vec<String> = exps
                .iter()
                .zip(&self.ring.generators)
                .filter(|(e, _)| **e > 0)
                .map(|(e, g)| {
                    if *e == 1 {
                        g.name.clone()
                    } else {
                        format!("{}^{}", g.name, e)
                    }
                })
                .collect();
            let magnitude = coeff.abs();
            let sign = if coeff.is_negative() { "-" } else { "+" };
            if n == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if monomial.is_empty() {
                write!(f, "{}", format_rational(&magnitude))?;
            } else if magnitude.is_one() {
                write!(f, "{}", monomial.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&magnitude), monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    ring: Vec<(String, u32)>,
    terms: Vec<(Vec<u32>, String)>,
}

impl WeilScalar {
    /// JSON-facing term list: `[[exponents], "p/q"]` in canonical order.
    fn term_repr(&self) -> Vec<(Vec<u32>, String)> {
        self.terms
            .iter()
            .map(|(e, c)| (e.iter().map(|&x| x as u32).collect(), format_rational(c)))
            .collect()
    }

    /// Parses a JSON term list against a known ring.
    pub(crate) fn from_term_repr(
        ring: &Ring,
        terms: Vec<(Vec<u32>, String)>,
    ) -> Result<Self, RingError> {
        let mut parsed = Vec::with_capacity(terms.len());
        for (exps, coeff) in terms {
            let exps = exps
                .into_iter()
                .map(|e| u8::try_from(e).map_err(|_| RingError::Malformed(format!("exponent {e}"))))
                .collect::<Result<Vec<u8>, _>>()?;
            parsed.push((exps, parse_rational(&coeff)?));
        }
        WeilScalar::from_terms(ring, parsed)
    }

    pub(crate) fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("scalar serializes")
    }
}

impl Serialize for WeilScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ScalarRepr {
            ring: self
                .ring
                .generators
                .iter()
                .map(|g| (g.name.clone(), g.order as u32))
                .collect(),
            terms: self.term_repr(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeilScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(deserializer)?;
        let ring = RingSignature::new(repr.ring).map_err(serde::de::Error::custom)?;
        WeilScalar::from_term_repr(&ring, repr.terms).map_err(serde::de::Error::custom)
    }
}

/// Parses a scalar given either as a full object or as a constant `"p/q"` string.
pub(crate) fn scalar_from_json(
    ring: &Ring,
    value: &serde_json::Value,
) -> Result<WeilScalar, RingError> {
    match value {
        serde_json::Value::String(s) => Ok(WeilScalar::constant(ring, parse_rational(s)?)),
        serde_json::Value::Number(n) => {
            Ok(WeilScalar::constant(ring, parse_rational(&n.to_string())?))
        }
        serde_json::Value::Object(map) => {
            if let Some(r) = map.get("ring") {
                let declared: Vec<(String, u32)> = serde_json::from_value(r.clone())
                    .map_err(|e| RingError::Malformed(e.to_string()))?;
                let declared = RingSignature::new(declared)?;
                RingSignature::ensure_same(&declared, ring)?;
            }
            let terms = map
                .get("terms")
                .ok_or_else(|| RingError::Malformed("scalar without `terms`".into()))?;
            let terms: Vec<(Vec<u32>, String)> = serde_json::from_value(terms.clone())
                .map_err(|e| RingError::Malformed(e.to_string()))?;
            WeilScalar::from_term_repr(ring, terms)
        }
        other => Err(RingError::Malformed(format!("unexpected scalar {other}"))),
    }
}
