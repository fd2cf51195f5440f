//! Finite-dimensional Lie algebras over `Q` given by structure constants, and
//! their elements with coefficients in a truncated ring (the scalar extension
//! `g ⊗ W`).
//!
//! Only brackets `[b_i, b_j]` with `i < j` are stored; `[b_j, b_i]` and
//! `[b_i, b_i]` are synthesized from antisymmetry. Nested brackets follow the
//! right-nesting convention: `[X, Y, Z]` means `[X, [Y, Z]]`.

mod catalog;
mod hall;

pub use catalog::{abelian, builtin, h3, sl2, so3, BUILTIN_NAMES};
pub use hall::{free_nilpotent, witt_dimension, HallBasis, HallTree};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::{CheckReport, Status};
use crate::scalar_ring::{
    format_rational, parse_rational, scalar_from_json, Rational, Ring, RingError, RingSignature,
    WeilScalar,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("duplicate basis element `{0}`")]
    DuplicateBasis(String),
    #[error("unknown basis element `{0}`")]
    UnknownBasis(String),
    #[error("bracket of `{0}` with itself cannot be specified")]
    SelfBracket(String),
    #[error("bracket [{0}, {1}] specified twice")]
    DuplicateBracket(String, String),
    #[error("algebra mismatch: `{left}` vs `{right}`")]
    AlgebraMismatch { left: String, right: String },
    #[error("expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("malformed Lie data: {0}")]
    Malformed(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Sparse vector `Σ c_k b_k` over the rationals, as `(basis index, coefficient)`.
pub type StructureEntry = Vec<(usize, Rational)>;

/// `(left, right, [(basis name, coefficient)])`.
pub type NamedBracket<'a> = (&'a str, &'a str, Vec<(&'a str, Rational)>);

/// A Lie algebra presented by basis names and rational structure constants.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraSpec {
    name: String,
    basis: Vec<String>,
    structure: BTreeMap<(usize, usize), StructureEntry>,
}

impl LieAlgebraSpec {
    /// Builds a spec from index-based brackets. A pair given as `(j, i)` with
    /// `j > i` is stored negated under `(i, j)`.
    pub fn new<I>(name: &str, basis: Vec<String>, brackets: I) -> Result<Arc<Self>, LieError>
    where
        I: IntoIterator<Item = (usize, usize, StructureEntry)>,
    {
        for (i, b) in basis.iter().enumerate() {
            if basis[..i].contains(b) {
                return Err(LieError::DuplicateBasis(b.clone()));
            }
        }
        let dim = basis.len();
        let mut structure = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for (left, right, value) in brackets {
            for idx in [left, right] {
                if idx >= dim {
                    return Err(LieError::UnknownBasis(format!("#{idx}")));
                }
            }
            if left == right {
                return Err(LieError::SelfBracket(basis[left].clone()));
            }
            let (key, sign) = if left < right {
                ((left, right), Rational::one())
            } else {
                ((right, left), -Rational::one())
            };
            if !seen.insert(key) {
                return Err(LieError::DuplicateBracket(
                    basis[key.0].clone(),
                    basis[key.1].clone(),
                ));
            }
            let mut dense: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, c) in value {
                if k >= dim {
                    return Err(LieError::UnknownBasis(format!("#{k}")));
                }
                *dense.entry(k).or_insert_with(Rational::zero) += c * &sign;
            }
            let entry: StructureEntry = dense.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !entry.is_empty() {
                structure.insert(key, entry);
            }
        }
        Ok(Arc::new(LieAlgebraSpec {
            name: name.to_string(),
            basis,
            structure,
        }))
    }

    /// Builds a spec from basis names, e.g. `("p", "q", &[("z", 1)])`.
    pub fn from_named(
        name: &str,
        basis: &[&str],
        brackets: &[NamedBracket],
    ) -> Result<Arc<Self>, LieError> {
        let basis: Vec<String> = basis.iter().map(|s| s.to_string()).collect();
        let lookup = |n: &str| {
            basis
                .iter()
                .position(|b| b == n)
                .ok_or_else(|| LieError::UnknownBasis(n.to_string()))
        };
        let mut indexed = Vec::with_capacity(brackets.len());
        for (left, right, value) in brackets {
            let entry = value
                .iter()
                .map(|(k, c)| Ok((lookup(k)?, c.clone())))
                .collect::<Result<StructureEntry, LieError>>()?;
            indexed.push((lookup(left)?, lookup(right)?, entry));
        }
        LieAlgebraSpec::new(name, basis, indexed)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    /// Stored structure constants, keyed by `(i, j)` with `i < j`.
    pub fn structure(&self) -> &BTreeMap<(usize, usize), StructureEntry> {
        &self.structure
    }

    /// `[b_i, b_j]` as a sign and a stored entry; `None` when the bracket vanishes.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Option<(bool, &StructureEntry)> {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => self.structure.get(&(i, j)).map(|e| (false, e)),
            std::cmp::Ordering::Greater => self.structure.get(&(j, i)).map(|e| (true, e)),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.is_empty()
    }

    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    pub fn ensure_same(a: &Arc<Self>, b: &Arc<Self>) -> Result<(), LieError> {
        if LieAlgebraSpec::same(a, b) {
            Ok(())
        } else {
            Err(LieError::AlgebraMismatch {
                left: a.name.clone(),
                right: b.name.clone(),
            })
        }
    }

    /// Bracket of two rational coordinate vectors, straight from the table.
    fn bracket_dense(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dimension()];
        for ((i, j), entry) in &self.structure {
            let c = &x[*i] * &y[*j] - &x[*j] * &y[*i];
            if c.is_zero() {
                continue;
            }
            for (k, v) in entry {
                out[*k] += &c * v;
            }
        }
        out
    }

    /// Checks the Jacobi identity on every basis triple `i < j < k`.
    ///
    /// The Jacobi sum is alternating once antisymmetry holds, so ordered
    /// triples cover everything.
    pub fn validate(&self) -> JacobiReport {
        let dim = self.dimension();
        let unit = |i: usize| {
            let mut v = vec![Rational::zero(); dim];
            v[i] = Rational::one();
            v
        };
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    let (bi, bj, bk) = (unit(i), unit(j), unit(k));
                    let t1 = self.bracket_dense(&bi, &self.bracket_dense(&bj, &bk));
                    let t2 = self.bracket_dense(&bj, &self.bracket_dense(&bk, &bi));
                    let t3 = self.bracket_dense(&bk, &self.bracket_dense(&bi, &bj));
                    let sum: Vec<Rational> = (0..dim).map(|n| &t1[n] + &t2[n] + &t3[n]).collect();
                    if sum.iter().any(|c| !c.is_zero()) {
                        let value = sum
                            .iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(n, c)| (self.basis[n].clone(), c.clone()))
                            .collect();
                        return JacobiReport {
                            algebra: self.name.clone(),
                            failing_triple: Some([
                                self.basis[i].clone(),
                                self.basis[j].clone(),
                                self.basis[k].clone(),
                            ]),
                            jacobi_value: value,
                        };
                    }
                }
            }
        }
        JacobiReport {
            algebra: self.name.clone(),
            failing_triple: None,
            jacobi_value: Vec::new(),
        }
    }
}

/// Outcome of [`LieAlgebraSpec::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiReport {
    pub algebra: String,
    pub failing_triple: Option<[String; 3]>,
    /// Nonzero coordinates of the Jacobi sum at the failing triple.
    pub jacobi_value: Vec<(String, Rational)>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.failing_triple.is_none()
    }

    pub fn to_check(&self) -> CheckReport {
        match &self.failing_triple {
            None => CheckReport::pass(format!("jacobi/{}", self.algebra)),
            Some([a, b, c]) => {
                let value: Vec<String> = self
                    .jacobi_value
                    .iter()
                    .map(|(n, v)| format!("{}*{}", format_rational(v), n))
                    .collect();
                CheckReport {
                    check: format!("jacobi/{}", self.algebra),
                    status: Status::Fail,
                    counterexample: Some(format!(
                        "triple ({a}, {b}, {c}): Jacobi sum = {}",
                        value.join(" + ")
                    )),
                    detail: None,
                }
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct BracketRepr {
    left: String,
    right: String,
    value: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraRepr {
    name: String,
    basis: Vec<String>,
    brackets: Vec<BracketRepr>,
}

impl LieAlgebraSpec {
    pub fn to_json(&self) -> serde_json::Value {
        let brackets = self
            .structure
            .iter()
            .map(|((i, j), entry)| BracketRepr {
                left: self.basis[*i].clone(),
                right: self.basis[*j].clone(),
                value: entry
                    .iter()
                    .map(|(k, c)| (self.basis[*k].clone(), format_rational(c)))
                    .collect(),
            })
            .collect();
        serde_json::to_value(AlgebraRepr {
            name: self.name.clone(),
            basis: self.basis.clone(),
            brackets,
        })
        .expect("algebra serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Arc<Self>, LieError> {
        let repr: AlgebraRepr = serde_json::from_value(value.clone())
            .map_err(|e| LieError::Malformed(e.to_string()))?;
        let mut brackets = Vec::with_capacity(repr.brackets.len());
        for b in &repr.brackets {
            let value = b
                .value
                .iter()
                .map(|(k, c)| Ok((k.as_str(), parse_rational(c)?)))
                .collect::<Result<Vec<_>, LieError>>()?;
            brackets.push((b.left.as_str(), b.right.as_str(), value));
        }
        let basis: Vec<&str> = repr.basis.iter().map(String::as_str).collect();
        LieAlgebraSpec::from_named(&repr.name, &basis, &brackets)
    }
}

/// An element of `g ⊗ W`: one ring coefficient per basis element.
#[derive(Debug, Clone)]
pub struct LieElement {
    algebra: Arc<LieAlgebraSpec>,
    ring: Ring,
    coords: Vec<WeilScalar>,
}

impl PartialEq for LieElement {
    fn eq(&self, other: &Self) -> bool {
        LieAlgebraSpec::same(&self.algebra, &other.algebra)
            && RingSignature::same(&self.ring, &other.ring)
            && self.coords == other.coords
    }
}

impl Eq for LieElement {}

impl LieElement {
    pub fn zero(algebra: &Arc<LieAlgebraSpec>, ring: &Ring) -> Self {
        LieElement {
            algebra: algebra.clone(),
            ring: ring.clone(),
            coords: vec![WeilScalar::zero(ring); algebra.dimension()],
        }
    }

    /// The basis element `b_index` with coefficient one.
    pub fn basis(algebra: &Arc<LieAlgebraSpec>, ring: &Ring, index: usize) -> Self {
        let mut out = LieElement::zero(algebra, ring);
        out.coords[index] = WeilScalar::one(ring);
        out
    }

    pub fn basis_named(
        algebra: &Arc<LieAlgebraSpec>,
        ring: &Ring,
        name: &str,
    ) -> Result<Self, LieError> {
        let idx = algebra
            .index_of(name)
            .ok_or_else(|| LieError::UnknownBasis(name.to_string()))?;
        Ok(LieElement::basis(algebra, ring, idx))
    }

    pub fn from_coords(
        algebra: &Arc<LieAlgebraSpec>,
        ring: &Ring,
        coords: Vec<WeilScalar>,
    ) -> Result<Self, LieError> {
        if coords.len() != algebra.dimension() {
            return Err(LieError::DimensionMismatch {
                expected: algebra.dimension(),
                found: coords.len(),
            });
        }
        for c in &coords {
            RingSignature::ensure_same(c.ring(), ring)?;
        }
        Ok(LieElement {
            algebra: algebra.clone(),
            ring: ring.clone(),
            coords,
        })
    }

    pub fn from_rationals(
        algebra: &Arc<LieAlgebraSpec>,
        ring: &Ring,
        coords: &[Rational],
    ) -> Result<Self, LieError> {
        let scalars = coords
            .iter()
            .map(|c| WeilScalar::constant(ring, c.clone()))
            .collect();
        LieElement::from_coords(algebra, ring, scalars)
    }

    pub fn algebra(&self) -> &Arc<LieAlgebraSpec> {
        &self.algebra
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coords(&self) -> &[WeilScalar] {
        &self.coords
    }

    pub fn coord(&self, index: usize) -> &WeilScalar {
        &self.coords[index]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(WeilScalar::is_zero)
    }

    fn ensure_compatible(&self, other: &Self) -> Result<(), LieError> {
        LieAlgebraSpec::ensure_same(&self.algebra, &other.algebra)?;
        RingSignature::ensure_same(&self.ring, &other.ring)?;
        Ok(())
    }

    /// The Lie bracket, extended bilinearly over the coefficient ring.
    pub fn bracket(&self, other: &Self) -> Result<Self, LieError> {
        self.ensure_compatible(other)?;
        let mut out = LieElement::zero(&self.algebra, &self.ring);
        for ((i, j), entry) in self.algebra.structure() {
            // [x_i b_i + x_j b_j, y_i b_i + y_j b_j] picks up (x_i y_j - x_j y_i)[b_i, b_j].
            let forward = !self.coords[*i].is_zero() && !other.coords[*j].is_zero();
            let backward = !self.coords[*j].is_zero() && !other.coords[*i].is_zero();
            if !forward && !backward {
                continue;
            }
            for (k, c) in entry {
                if forward {
                    out.coords[*k].add_scaled_product(c, &self.coords[*i], &other.coords[*j]);
                }
                if backward {
                    out.coords[*k].add_scaled_product(&-c, &self.coords[*j], &other.coords[*i]);
                }
            }
        }
        Ok(out)
    }

    /// Right-nested bracket `[x_1, [x_2, [..., x_k]]]`.
    pub fn nested(elements: &[&LieElement]) -> Result<Self, LieError> {
        let (last, rest) = elements
            .split_last()
            .ok_or_else(|| LieError::Malformed("empty nested bracket".into()))?;
        let mut acc = (*last).clone();
        for x in rest.iter().rev() {
            acc = x.bracket(&acc)?;
        }
        Ok(acc)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LieError> {
        self.ensure_compatible(other)?;
        let mut out = self.clone();
        for (a, b) in out.coords.iter_mut().zip(&other.coords) {
            a.add_scaled(b, &Rational::one());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, LieError> {
        self.ensure_compatible(other)?;
        let mut out = self.clone();
        for (a, b) in out.coords.iter_mut().zip(&other.coords) {
            a.add_scaled(b, &-Rational::one());
        }
        Ok(out)
    }

    pub fn scale_rational(&self, factor: &Rational) -> Self {
        LieElement {
            algebra: self.algebra.clone(),
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|c| c.scale(factor)).collect(),
        }
    }

    /// Multiplies every coordinate by a ring scalar.
    pub fn scale(&self, factor: &WeilScalar) -> Result<Self, LieError> {
        RingSignature::ensure_same(&self.ring, factor.ring())?;
        Ok(LieElement {
            algebra: self.algebra.clone(),
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|c| c * factor).collect(),
        })
    }

    /// Moves the element into a ring extending its current one.
    pub fn embed(&self, target: &Ring) -> Result<Self, LieError> {
        let coords = self
            .coords
            .iter()
            .map(|c| c.embed(target))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LieElement {
            algebra: self.algebra.clone(),
            ring: target.clone(),
            coords,
        })
    }

    /// Coefficient of `generator^power`, coordinatewise, over `base`.
    pub fn coefficient_of(
        &self,
        generator: &str,
        power: u8,
        base: &Ring,
    ) -> Result<Self, LieError> {
        let coords = self
            .coords
            .iter()
            .map(|c| c.coefficient_of(generator, power, base))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LieElement {
            algebra: self.algebra.clone(),
            ring: base.clone(),
            coords,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coords: serde_json::Map<String, serde_json::Value> = self
            .algebra
            .basis()
            .iter()
            .zip(&self.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(name, c)| (name.clone(), c.to_json_value()))
            .collect();
        serde_json::json!({
            "algebra": self.algebra.name(),
            "ring": self.ring.as_ref(),
            "coords": coords,
        })
    }

    /// Parses an element against a known algebra. `ring` may be omitted from the
    /// JSON (plain rationals); omitted coordinates are zero.
    pub fn from_json(
        algebra: &Arc<LieAlgebraSpec>,
        value: &serde_json::Value,
    ) -> Result<Self, LieError> {
        let obj = value
            .as_object()
            .ok_or_else(|| LieError::Malformed("Lie element must be an object".into()))?;
        if let Some(name) = obj.get("algebra").and_then(|v| v.as_str()) {
            if name != algebra.name() {
                return Err(LieError::AlgebraMismatch {
                    left: name.to_string(),
                    right: algebra.name().to_string(),
                });
            }
        }
        let ring = match obj.get("ring") {
            Some(r) => {
                let pairs: Vec<(String, u32)> = serde_json::from_value(r.clone())
                    .map_err(|e| LieError::Malformed(e.to_string()))?;
                RingSignature::new(pairs)?
            }
            None => RingSignature::rationals(),
        };
        let mut out = LieElement::zero(algebra, &ring);
        if let Some(coords) = obj.get("coords") {
            let coords = coords
                .as_object()
                .ok_or_else(|| LieError::Malformed("`coords` must be an object".into()))?;
            for (name, scalar) in coords {
                let idx = algebra
                    .index_of(name)
                    .ok_or_else(|| LieError::UnknownBasis(name.clone()))?;
                out.coords[idx] = scalar_from_json(&ring, scalar)?;
            }
        }
        Ok(out)
    }
}

impl Add for &LieElement {
    type Output = LieElement;

    /// Panics on algebra or ring mismatch.
    fn add(self, rhs: &LieElement) -> LieElement {
        self.checked_add(rhs).expect("LieElement addition mismatch")
    }
}

impl Sub for &LieElement {
    type Output = LieElement;

    fn sub(self, rhs: &LieElement) -> LieElement {
        self.checked_sub(rhs)
            .expect("LieElement subtraction mismatch")
    }
}

impl Neg for &LieElement {
    type Output = LieElement;

    fn neg(self) -> LieElement {
        self.scale_rational(&-Rational::one())
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .algebra
            .basis()
            .iter()
            .zip(&self.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(name, c)| {
                if c.term_count() == 1 {
                    format!("{c}*{name}")
                } else {
                    format!("({c})*{name}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Nilpotency order of the symbolic coefficients used for generic elements.
/// Every identity checked here is at most cubic in its inputs, so no
/// symbol power is ever truncated.
pub const GENERIC_SYMBOL_ORDER: u32 = 3;

/// Generic elements of `algebra`: each coordinate of each named element is an
/// independent symbol `name.basis`. The ring also carries `extra` generators
/// (appended after the symbols).
pub fn generic_elements(
    algebra: &Arc<LieAlgebraSpec>,
    names: &[&str],
    extra: &[(&str, u32)],
) -> Result<(Ring, Vec<LieElement>), LieError> {
    let mut generators: Vec<(String, u32)> = Vec::new();
    for n in names {
        for b in algebra.basis() {
            generators.push((format!("{n}.{b}"), GENERIC_SYMBOL_ORDER));
        }
    }
    generators.extend(extra.iter().map(|(n, o)| (n.to_string(), *o)));
    let ring = RingSignature::new(generators)?;
    let elements = names
        .iter()
        .map(|n| {
            let coords = algebra
                .basis()
                .iter()
                .map(|b| WeilScalar::generator(&ring, &format!("{n}.{b}")))
                .collect::<Result<Vec<_>, _>>()?;
            LieElement::from_coords(algebra, &ring, coords)
        })
        .collect::<Result<Vec<_>, LieError>>()?;
    Ok((ring, elements))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_ring::{rat, ratio};
    use proptest::prelude::*;

    fn q() -> Ring {
        RingSignature::rationals()
    }

    #[test]
    fn heisenberg_brackets() {
        let alg = h3();
        let p = LieElement::basis_named(&alg, &q(), "p").unwrap();
        let qq = LieElement::basis_named(&alg, &q(), "q").unwrap();
        let z = LieElement::basis_named(&alg, &q(), "z").unwrap();
        assert_eq!(p.bracket(&qq).unwrap(), z);
        assert!(p.bracket(&p).unwrap().is_zero());
    }

    #[test]
    fn bracket_over_square_zero_scalars() {
        let alg = h3();
        let ring = RingSignature::new([("e1", 1), ("e2", 1)]).unwrap();
        let e1 = WeilScalar::generator(&ring, "e1").unwrap();
        let e2 = WeilScalar::generator(&ring, "e2").unwrap();
        let p = LieElement::basis_named(&alg, &ring, "p").unwrap();
        let qq = LieElement::basis_named(&alg, &ring, "q").unwrap();
        let z = LieElement::basis_named(&alg, &ring, "z").unwrap();
        let lhs = p
            .scale(&e1)
            .unwrap()
            .bracket(&qq.scale(&e2).unwrap())
            .unwrap();
        assert_eq!(lhs, z.scale(&(&e1 * &e2)).unwrap());
        // e1 * e1 = 0 kills a self-scaled bracket
        let killed = p
            .scale(&e1)
            .unwrap()
            .bracket(&qq.scale(&e1).unwrap())
            .unwrap();
        assert!(killed.is_zero());
    }

    #[test]
    fn builtin_algebras_satisfy_jacobi() {
        for name in BUILTIN_NAMES {
            let alg = builtin(name).unwrap();
            assert!(alg.validate().passed(), "{name}");
        }
        assert!(abelian(4).validate().passed());
    }

    #[test]
    fn corrupted_heisenberg_fails_at_pqz() {
        // [p,q] = z, [p,z] = p. Brute-force Jacobi at (p,q,z):
        // [p,[q,z]] + [q,[z,p]] + [z,[p,q]] = 0 + [q,-p] + [z,z] = [p,q] = z.
        let bad = LieAlgebraSpec::from_named(
            "h3-corrupt",
            &["p", "q", "z"],
            &[
                ("p", "q", vec![("z", rat(1))]),
                ("p", "z", vec![("p", rat(1))]),
            ],
        )
        .unwrap();
        let report = bad.validate();
        assert!(!report.passed());
        assert_eq!(
            report.failing_triple,
            Some(["p".to_string(), "q".to_string(), "z".to_string()])
        );
        assert_eq!(report.jacobi_value, vec![("z".to_string(), rat(1))]);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            LieAlgebraSpec::from_named("x", &["a", "a"], &[]),
            Err(LieError::DuplicateBasis(_))
        ));
        assert!(matches!(
            LieAlgebraSpec::from_named("x", &["a", "b"], &[("a", "a", vec![])]),
            Err(LieError::SelfBracket(_))
        ));
        assert!(matches!(
            LieAlgebraSpec::from_named("x", &["a", "b"], &[("a", "b", vec![]), ("b", "a", vec![])]),
            Err(LieError::DuplicateBracket(..))
        ));
        assert!(matches!(
            LieAlgebraSpec::from_named("x", &["a", "b"], &[("a", "c", vec![])]),
            Err(LieError::UnknownBasis(_))
        ));
    }

    #[test]
    fn reversed_pairs_are_stored_negated() {
        let alg = LieAlgebraSpec::from_named(
            "h3-rev",
            &["p", "q", "z"],
            &[("q", "p", vec![("z", rat(-1))])],
        )
        .unwrap();
        assert_eq!(alg.structure(), h3().structure());
    }

    #[test]
    fn mismatch_errors() {
        let a = LieElement::basis_named(&h3(), &q(), "p").unwrap();
        let b = LieElement::basis_named(&sl2(), &q(), "e").unwrap();
        assert!(matches!(
            a.bracket(&b),
            Err(LieError::AlgebraMismatch { .. })
        ));
        let r = RingSignature::new([("d", 1)]).unwrap();
        let c = LieElement::basis_named(&h3(), &r, "q").unwrap();
        assert!(matches!(a.bracket(&c), Err(LieError::Ring(_))));
    }

    #[test]
    fn json_round_trip() {
        let alg = h3();
        let json = alg.to_json();
        assert_eq!(
            json,
            serde_json::json!({"name":"h3","basis":["p","q","z"],
                "brackets":[{"left":"p","right":"q","value":[["z","1"]]}]})
        );
        assert_eq!(*LieAlgebraSpec::from_json(&json).unwrap(), *alg);

        let ring = RingSignature::new([("d", 2)]).unwrap();
        let d = WeilScalar::generator(&ring, "d").unwrap();
        let x = LieElement::basis_named(&alg, &ring, "p")
            .unwrap()
            .scale(&d)
            .unwrap();
        let back = LieElement::from_json(&alg, &x.to_json()).unwrap();
        assert_eq!(back, x);
        let shorthand = serde_json::json!({"algebra":"h3","coords":{"q":"1/2"}});
        let y = LieElement::from_json(&alg, &shorthand).unwrap();
        assert_eq!(y.coord(1).eval_zero(), ratio(1, 2));
    }

    #[test]
    fn nested_is_right_nested() {
        let alg = free_nilpotent(2, 3).unwrap();
        let a = LieElement::basis_named(&alg, &q(), "a").unwrap();
        let b = LieElement::basis_named(&alg, &q(), "b").unwrap();
        let abb = LieElement::nested(&[&a, &a, &b]).unwrap();
        assert_eq!(abb, a.bracket(&a.bracket(&b).unwrap()).unwrap());
        assert!(!abb.is_zero());
    }

    #[test]
    fn generic_elements_are_symbolic() {
        let alg = h3();
        let (ring, xs) = generic_elements(&alg, &["x", "y"], &[("e", 1)]).unwrap();
        assert_eq!(ring.len(), 7);
        let z = xs[0].bracket(&xs[1]).unwrap();
        // [x, y]_z = x.p*y.q - x.q*y.p
        assert_eq!(z.coord(2).term_count(), 2);
    }

    fn arb_element(dim: usize) -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec((-5i64..=5, 1i64..=3).prop_map(|(n, d)| ratio(n, d)), dim)
    }

    proptest! {
        #[test]
        fn antisymmetry_and_jacobi_in_builtins(
            which in 0usize..4,
            xs in arb_element(5),
            ys in arb_element(5),
            zs in arb_element(5),
        ) {
            let alg = match which {
                0 => h3(),
                1 => sl2(),
                2 => so3(),
                _ => free_nilpotent(2, 3).unwrap(),
            };
            let dim = alg.dimension();
            let ring = q();
            let x = LieElement::from_rationals(&alg, &ring, &xs[..dim]).unwrap();
            let y = LieElement::from_rationals(&alg, &ring, &ys[..dim]).unwrap();
            let z = LieElement::from_rationals(&alg, &ring, &zs[..dim]).unwrap();
            prop_assert!((&x.bracket(&y).unwrap() + &y.bracket(&x).unwrap()).is_zero());
            let jac = &(&x.bracket(&y.bracket(&z).unwrap()).unwrap()
                + &y.bracket(&z.bracket(&x).unwrap()).unwrap())
                + &z.bracket(&x.bracket(&y).unwrap()).unwrap();
            prop_assert!(jac.is_zero());
            let bilinear = x.bracket(&(&y + &z)).unwrap();
            prop_assert_eq!(bilinear, &x.bracket(&y).unwrap() + &x.bracket(&z).unwrap());
        }

        #[test]
        fn scalar_extension_commutes_with_bracket(
            xs in arb_element(3),
            ys in arb_element(3),
            s0 in -3i64..=3,
            s1 in -3i64..=3,
            s2 in -3i64..=3,
        ) {
            let alg = sl2();
            let ring = RingSignature::new([("d", 2)]).unwrap();
            let s = WeilScalar::from_terms(
                &ring,
                vec![(vec![0], rat(s0)), (vec![1], rat(s1)), (vec![2], rat(s2))],
            ).unwrap();
            let x = LieElement::from_rationals(&alg, &ring, &xs).unwrap();
            let y = LieElement::from_rationals(&alg, &ring, &ys).unwrap();
            prop_assert_eq!(
                x.scale(&s).unwrap().bracket(&y).unwrap(),
                x.bracket(&y).unwrap().scale(&s).unwrap()
            );
        }
    }
}
