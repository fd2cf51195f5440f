//! Matrices over truncated rings, their exact exponential and logarithm, and
//! matrix representations of the built-in algebras.
//!
//! With nilpotent scalar entries `exp` and `log` are finite sums, so the
//! generalized BCH identities and the closed-form jet law become exact matrix
//! identities. The right-hand sides here use matrix commutators `AB - BA`,
//! never the structure constants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::jet_group::{CoordinateSystem, Jet, JetError};
use crate::lie_core::{LieAlgebraSpec, LieElement, LieError};
use crate::random::{random_element, small_integer, trial_rng, TrialRng};
use crate::report::{finish, CheckReport};
use crate::scalar_ring::{
    factorial, format_rational, parse_rational, rat, ratio, Rational, Ring, RingError,
    RingSignature, WeilScalar,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("size mismatch: {0}x{0} vs {1}x{1}")]
    SizeMismatch(usize, usize),
    #[error("entry ({0}, {1}) has nonzero constant term")]
    NotNilpotent(usize, usize),
    #[error("matrix is not unipotent at entry ({0}, {1})")]
    NotUnipotent(usize, usize),
    #[error("image of [{0}, {1}] is not the commutator of the images")]
    BracketIncompatible(String, String),
    #[error("matrix is not in the span of the representation")]
    NotInImage,
    #[error("malformed representation: {0}")]
    Malformed(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Jet(#[from] JetError),
}

/// Square matrix with entries in a truncated ring, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct WeilMatrix {
    ring: Ring,
    size: usize,
    entries: Vec<WeilScalar>,
}

impl WeilMatrix {
    pub fn zero(ring: &Ring, size: usize) -> Self {
        WeilMatrix {
            ring: ring.clone(),
            size,
            entries: vec![WeilScalar::zero(ring); size * size],
        }
    }

    pub fn identity(ring: &Ring, size: usize) -> Self {
        let mut m = WeilMatrix::zero(ring, size);
        for i in 0..size {
            m.entries[i * size + i] = WeilScalar::one(ring);
        }
        m
    }

    /// Constant matrix from rational rows.
    pub fn from_rationals(ring: &Ring, rows: &[Vec<Rational>]) -> Result<Self, MatrixError> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(MatrixError::Malformed(format!(
                    "row of length {} in a {size}x{size} matrix",
                    row.len()
                )));
            }
            entries.extend(row.iter().map(|c| WeilScalar::constant(ring, c.clone())));
        }
        Ok(WeilMatrix {
            ring: ring.clone(),
            size,
            entries,
        })
    }

    pub fn from_entries(
        ring: &Ring,
        size: usize,
        entries: Vec<WeilScalar>,
    ) -> Result<Self, MatrixError> {
        if entries.len() != size * size {
            return Err(MatrixError::Malformed(format!(
                "{} entries for a {size}x{size} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            RingSignature::ensure_same(ring, e.ring())?;
        }
        Ok(WeilMatrix {
            ring: ring.clone(),
            size,
            entries,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn get(&self, row: usize, col: usize) -> &WeilScalar {
        &self.entries[row * self.size + col]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(WeilScalar::is_zero)
    }

    fn ensure_compatible(&self, other: &Self) -> Result<(), MatrixError> {
        if self.size != other.size {
            return Err(MatrixError::SizeMismatch(self.size, other.size));
        }
        RingSignature::ensure_same(&self.ring, &other.ring)?;
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.ensure_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(WeilMatrix {
            entries,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.ensure_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(WeilMatrix {
            entries,
            ..self.clone()
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.ensure_compatible(other)?;
        let n = self.size;
        let mut out = WeilMatrix::zero(&self.ring, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j].add_scaled_product(&Rational::one(), a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self, MatrixError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn scale_rational(&self, factor: &Rational) -> Self {
        WeilMatrix {
            entries: self.entries.iter().map(|e| e.scale(factor)).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, factor: &WeilScalar) -> Result<Self, MatrixError> {
        RingSignature::ensure_same(&self.ring, factor.ring())?;
        Ok(WeilMatrix {
            entries: self.entries.iter().map(|e| e * factor).collect(),
            ..self.clone()
        })
    }

    pub fn embed(&self, ring: &Ring) -> Result<Self, MatrixError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.embed(ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WeilMatrix {
            ring: ring.clone(),
            size: self.size,
            entries,
        })
    }

    /// First entry with a nonzero constant term, if any.
    fn constant_entry(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .position(|e| !e.eval_zero().is_zero())
            .map(|p| (p / self.size, p % self.size))
    }

    /// Upper bound on the nilpotency index of a matrix with nilpotent entries.
    fn power_bound(&self) -> usize {
        self.ring
            .generators()
            .iter()
            .map(|g| g.order() as usize)
            .sum::<usize>()
            + 1
    }
}

impl fmt::Display for WeilMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.size)
            .map(|i| {
                let row: Vec<String> = (0..self.size).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// `I + M + M²/2! + …`, a finite sum for scalar-nilpotent `M`.
pub fn weil_exp(m: &WeilMatrix) -> Result<WeilMatrix, MatrixError> {
    if let Some((i, j)) = m.constant_entry() {
        return Err(MatrixError::NotNilpotent(i, j));
    }
    let mut acc = WeilMatrix::identity(&m.ring, m.size);
    let mut term = acc.clone();
    for k in 1..=m.power_bound() {
        term = term.mul(m)?.scale_rational(&ratio(1, k as i64));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// `N - N²/2 + N³/3 - …` with `N = M - I`, a finite sum for unipotent `M`.
pub fn weil_log(m: &WeilMatrix) -> Result<WeilMatrix, MatrixError> {
    let n = m.sub(&WeilMatrix::identity(&m.ring, m.size))?;
    if let Some((i, j)) = n.constant_entry() {
        return Err(MatrixError::NotUnipotent(i, j));
    }
    let mut acc = WeilMatrix::zero(&m.ring, m.size);
    let mut power = WeilMatrix::identity(&m.ring, m.size);
    for k in 1..=m.power_bound() {
        power = power.mul(&n)?;
        if power.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        acc = acc.add(&power.scale_rational(&ratio(sign, k as i64)))?;
    }
    Ok(acc)
}

/// A matrix representation of a Lie algebra: one rational matrix per basis
/// element, validated against the structure constants at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRep {
    algebra: Arc<LieAlgebraSpec>,
    dimension: usize,
    images: Vec<Vec<Vec<Rational>>>,
}

impl MatrixRep {
    pub fn new(
        algebra: &Arc<LieAlgebraSpec>,
        dimension: usize,
        images: Vec<Vec<Vec<Rational>>>,
    ) -> Result<Self, MatrixError> {
        if images.len() != algebra.dimension() {
            return Err(MatrixError::Malformed(format!(
                "{} images for a {}-dimensional algebra",
                images.len(),
                algebra.dimension()
            )));
        }
        for m in &images {
            if m.len() != dimension || m.iter().any(|row| row.len() != dimension) {
                return Err(MatrixError::Malformed(format!(
                    "every image must be {dimension}x{dimension}"
                )));
            }
        }
        let rep = MatrixRep {
            algebra: algebra.clone(),
            dimension,
            images,
        };
        let q = RingSignature::rationals();
        let basis = algebra.basis();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let bi = LieElement::basis(algebra, &q, i);
                let bj = LieElement::basis(algebra, &q, j);
                let lhs = rep.image(&bi.bracket(&bj)?)?;
                let rhs = rep.image(&bi)?.commutator(&rep.image(&bj)?)?;
                if lhs != rhs {
                    return Err(MatrixError::BracketIncompatible(
                        basis[i].clone(),
                        basis[j].clone(),
                    ));
                }
            }
        }
        Ok(rep)
    }

    fn from_named(algebra: Arc<LieAlgebraSpec>, dimension: usize, images: &[&[&[i64]]]) -> Self {
        let images = images
            .iter()
            .map(|m| {
                m.iter()
                    .map(|row| row.iter().map(|&c| rat(c)).collect())
                    .collect()
            })
            .collect();
        MatrixRep::new(&algebra, dimension, images).expect("built-in representation is valid")
    }

    /// `p, q, z ↦ E12, E23, E13` (3x3 strictly upper triangular).
    pub fn h3() -> Self {
        MatrixRep::from_named(
            crate::lie_core::h3(),
            3,
            &[
                &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]],
                &[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]],
                &[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]],
            ],
        )
    }

    /// The defining 2x2 representation of `sl2`.
    pub fn sl2() -> Self {
        MatrixRep::from_named(
            crate::lie_core::sl2(),
            2,
            &[
                &[&[0, 1], &[0, 0]],
                &[&[0, 0], &[1, 0]],
                &[&[1, 0], &[0, -1]],
            ],
        )
    }

    /// Infinitesimal rotations about the three axes.
    pub fn so3() -> Self {
        MatrixRep::from_named(
            crate::lie_core::so3(),
            3,
            &[
                &[&[0, 0, 0], &[0, 0, -1], &[0, 1, 0]],
                &[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]],
                &[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]],
            ],
        )
    }

    /// Built-in representation for `h3`, `sl2` or `so3`.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "h3" => Some(MatrixRep::h3()),
            "sl2" => Some(MatrixRep::sl2()),
            "so3" => Some(MatrixRep::so3()),
            _ => None,
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebraSpec> {
        &self.algebra
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// `Σ x_k · image(b_k)`, over the element's ring.
    pub fn image(&self, x: &LieElement) -> Result<WeilMatrix, MatrixError> {
        LieAlgebraSpec::ensure_same(&self.algebra, x.algebra())?;
        let n = self.dimension;
        let mut out = WeilMatrix::zero(x.ring(), n);
        for (coord, image) in x.coords().iter().zip(&self.images) {
            if coord.is_zero() {
                continue;
            }
            for (i, row) in image.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        out.entries[i * n + j].add_scaled(coord, c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The unique element with the given image; fails if `m` is outside the span.
    pub fn preimage(&self, m: &WeilMatrix) -> Result<LieElement, MatrixError> {
        if m.size != self.dimension {
            return Err(MatrixError::SizeMismatch(m.size, self.dimension));
        }
        let columns: Vec<Vec<Rational>> = self
            .images
            .iter()
            .map(|img| img.iter().flatten().cloned().collect())
            .collect();
        let monomials: BTreeSet<Vec<u8>> = m
            .entries
            .iter()
            .flat_map(|e| e.terms().map(|(exps, _)| exps.to_vec()).collect::<Vec<_>>())
            .collect();
        let mut coords: Vec<BTreeMap<Vec<u8>, Rational>> = vec![BTreeMap::new(); columns.len()];
        for exps in monomials {
            let rhs: Vec<Rational> = m.entries.iter().map(|e| e.coefficient(&exps)).collect();
            let solution = solve(&columns, &rhs).ok_or(MatrixError::NotInImage)?;
            for (k, c) in solution.into_iter().enumerate() {
                if !c.is_zero() {
                    coords[k].insert(exps.clone(), c);
                }
            }
        }
        let coords = coords
            .into_iter()
            .map(|terms| WeilScalar::from_terms(&m.ring, terms))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LieElement::from_coords(&self.algebra, &m.ring, coords)?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let images: serde_json::Map<String, serde_json::Value> = self
            .algebra
            .basis()
            .iter()
            .zip(&self.images)
            .map(|(name, m)| {
                let rows: Vec<Vec<String>> = m
                    .iter()
                    .map(|row| row.iter().map(format_rational).collect())
                    .collect();
                (name.clone(), serde_json::json!(rows))
            })
            .collect();
        serde_json::json!({
            "algebra": self.algebra.name(),
            "dimension": self.dimension,
            "images": images,
        })
    }

    /// Parses `{"algebra", "dimension", "images": {basis: [[rational]]}}`.
    /// Entries may be strings `"p/q"` or integers.
    pub fn from_json(
        algebra: &Arc<LieAlgebraSpec>,
        value: &serde_json::Value,
    ) -> Result<Self, MatrixError> {
        let malformed = |m: &str| MatrixError::Malformed(m.to_string());
        let obj = value
            .as_object()
            .ok_or_else(|| malformed("representation must be an object"))?;
        if let Some(name) = obj.get("algebra").and_then(|v| v.as_str()) {
            if name != algebra.name() {
                return Err(LieError::AlgebraMismatch {
                    left: name.to_string(),
                    right: algebra.name().to_string(),
                }
                .into());
            }
        }
        let dimension = obj
            .get("dimension")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| malformed("missing `dimension`"))? as usize;
        let images = obj
            .get("images")
            .and_then(|v| v.as_object())
            .ok_or_else(|| malformed("missing `images`"))?;
        let mut parsed = Vec::with_capacity(algebra.dimension());
        for name in algebra.basis() {
            let rows = images
                .get(name)
                .and_then(|v| v.as_array())
                .ok_or_else(|| MatrixError::Malformed(format!("no image for `{name}`")))?;
            let matrix = rows
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| malformed("rows must be arrays"))?
                        .iter()
                        .map(|c| match c {
                            serde_json::Value::String(s) => Ok(parse_rational(s)?),
                            serde_json::Value::Number(n) => n
                                .as_i64()
                                .map(rat)
                                .ok_or_else(|| malformed("numeric entries must be integers")),
                            _ => Err(malformed("entries must be rationals")),
                        })
                        .collect::<Result<Vec<_>, MatrixError>>()
                })
                .collect::<Result<Vec<_>, MatrixError>>()?;
            parsed.push(matrix);
        }
        MatrixRep::new(algebra, dimension, parsed)
    }
}

/// Solves `Σ_k c_k columns[k] = rhs` exactly; `None` if inconsistent or not unique.
fn solve(columns: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let unknowns = columns.len();
    let mut rows: Vec<Vec<Rational>> = (0..rhs.len())
        .map(|r| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..unknowns {
        let found = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(pivot_row, found);
        let lead = rows[pivot_row][col].clone();
        for c in rows[pivot_row].iter_mut() {
            *c /= &lead;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let f = row[col].clone();
                for (c, p) in row.iter_mut().zip(&pivot) {
                    *c -= &f * p;
                }
            }
        }
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[unknowns].is_zero()) {
        return None;
    }
    Some(
        rows[..unknowns]
            .iter()
            .map(|r| r[unknowns].clone())
            .collect(),
    )
}

/// Matrix of `Σ_i s^i X_i / i!` for a scalar `s`.
fn exp_series_image(
    rep: &MatrixRep,
    coords: &[WeilMatrix],
    s: &WeilScalar,
) -> Result<WeilMatrix, MatrixError> {
    let mut acc = WeilMatrix::zero(s.ring(), rep.dimension);
    for (i, x) in coords.iter().enumerate() {
        let weight = s
            .pow(i as u32 + 1)
            .scale(&(Rational::one() / factorial(i + 1)));
        acc = acc.add(&x.scale(&weight)?)?;
    }
    Ok(acc)
}

fn random_integer_element(rep: &MatrixRep, ring: &Ring, rng: &mut TrialRng) -> LieElement {
    random_element(&rep.algebra, ring, rng, small_integer)
}

fn matrix_bch_outcome(
    rep: &MatrixRep,
    n: usize,
    x: &[LieElement],
    y: &[LieElement],
) -> Result<Option<String>, MatrixError> {
    let names: Vec<String> = (1..=n).map(|i| format!("d{i}")).collect();
    let ring = RingSignature::new(names.iter().map(|s| (s.as_str(), 1)))?;
    let s = names
        .iter()
        .try_fold(WeilScalar::zero(&ring), |acc, name| {
            Ok::<_, RingError>(&acc + &WeilScalar::generator(&ring, name)?)
        })?;
    let img = |e: &LieElement| -> Result<WeilMatrix, MatrixError> { rep.image(&e.embed(&ring)?) };
    let xm = x.iter().map(img).collect::<Result<Vec<_>, _>>()?;
    let ym = y.iter().map(img).collect::<Result<Vec<_>, _>>()?;
    let lhs = weil_exp(&exp_series_image(rep, &xm, &s)?)?
        .mul(&weil_exp(&exp_series_image(rep, &ym, &s)?)?)?;

    let mut z = vec![xm[0].add(&ym[0])?];
    if n >= 2 {
        let c11 = xm[0].commutator(&ym[0])?;
        z.push(xm[1].add(&ym[1])?.add(&c11)?);
        if n >= 3 {
            let mixed = xm[0].commutator(&ym[1])?.add(&xm[1].commutator(&ym[0])?)?;
            let cubic = xm[0].sub(&ym[0])?.commutator(&c11)?;
            z.push(
                xm[2]
                    .add(&ym[2])?
                    .add(&mixed.scale_rational(&ratio(3, 2)))?
                    .add(&cubic.scale_rational(&ratio(1, 2)))?,
            );
        }
    }
    let rhs = weil_exp(&exp_series_image(rep, &z, &s)?)?;
    Ok((lhs != rhs).then(|| {
        let xs: Vec<String> = x.iter().map(|e| e.to_string()).collect();
        let ys: Vec<String> = y.iter().map(|e| e.to_string()).collect();
        format!(
            "X = ({}), Y = ({}): lhs {lhs}, rhs {rhs}",
            xs.join("; "),
            ys.join("; ")
        )
    }))
}

/// The generalized BCH identity of order `n` in a matrix group, over
/// `Q[d_1, …, d_n]/(d_i²)` with `s = d_1 + … + d_n`:
/// `exp(Σ s^i X_i/i!) · exp(Σ s^i Y_i/i!) = exp(Σ s^i Z_i/i!)` with the
/// closed-form `Z_i` evaluated through matrix commutators.
pub fn verify_matrix_bch(n: usize, rep: &MatrixRep, trials: usize, seed: u64) -> CheckReport {
    let id = format!("thm-4.{n}/{}", rep.algebra.name());
    let q = RingSignature::rationals();
    let mut rng = trial_rng(seed);
    let outcome = (|| -> Result<Option<String>, MatrixError> {
        if !(1..=3).contains(&n) {
            return Err(JetError::OrderOutOfRange(n).into());
        }
        for _ in 0..trials {
            let x: Vec<LieElement> = (0..n)
                .map(|_| random_integer_element(rep, &q, &mut rng))
                .collect();
            let y: Vec<LieElement> = (0..n)
                .map(|_| random_integer_element(rep, &q, &mut rng))
                .collect();
            if let Some(cx) = matrix_bch_outcome(rep, n, &x, &y)? {
                return Ok(Some(cx));
            }
        }
        Ok(None)
    })();
    finish(&id, outcome, format!("{trials} trials, seed {seed}"))
}

fn jet_series_matrix(rep: &MatrixRep, jet: &Jet) -> Result<(Ring, WeilMatrix), MatrixError> {
    let (ring, series) = jet.convert(CoordinateSystem::Exp).to_series()?;
    Ok((ring, rep.image(&series)?))
}

/// `log(exp Â · exp B̂)` where `Â` is the matrix of `Σ d^i X_i / i!`.
pub fn matrix_log_product(rep: &MatrixRep, a: &Jet, b: &Jet) -> Result<WeilMatrix, MatrixError> {
    if a.order() != b.order() {
        return Err(JetError::OrderMismatch(a.order(), b.order()).into());
    }
    let (_, am) = jet_series_matrix(rep, a)?;
    let (_, bm) = jet_series_matrix(rep, b)?;
    weil_log(&weil_exp(&am)?.mul(&weil_exp(&bm)?)?)
}

/// Jet product computed in the representation and pulled back.
pub fn matrix_mul(rep: &MatrixRep, a: &Jet, b: &Jet) -> Result<Jet, MatrixError> {
    let product = matrix_log_product(rep, a, b)?;
    let series = rep.preimage(&product)?;
    Ok(Jet::from_series(&series, a.ring(), a.order())?)
}

/// The closed-form product, mapped into the representation, equals
/// `log(exp Â · exp B̂)` for seeded random integer jets.
pub fn check_closed_form_vs_matrix(
    rep: &MatrixRep,
    order: usize,
    trials: usize,
    seed: u64,
) -> CheckReport {
    let id = format!("def6.1-vs-matrix-n{order}/{}", rep.algebra.name());
    let q = RingSignature::rationals();
    let mut rng = trial_rng(seed);
    let outcome = (|| -> Result<Option<String>, MatrixError> {
        for _ in 0..trials {
            let draw = |rng: &mut TrialRng| -> Result<Jet, MatrixError> {
                let coords = (0..order)
                    .map(|_| random_integer_element(rep, &q, rng))
                    .collect();
                Ok(Jet::new(CoordinateSystem::Exp, coords)?)
            };
            let a = draw(&mut rng)?;
            let b = draw(&mut rng)?;
            let lhs = matrix_log_product(rep, &a, &b)?;
            let (_, rhs) = jet_series_matrix(rep, &a.mul(&b)?)?;
            if lhs != rhs {
                return Ok(Some(format!(
                    "a = {a}, b = {b}: log(exp A exp B) = {lhs}, closed form {rhs}"
                )));
            }
        }
        Ok(None)
    })();
    finish(&id, outcome, format!("{trials} trials, seed {seed}"))
}
