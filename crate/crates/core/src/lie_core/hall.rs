//! Free nilpotent Lie algebras on a Lyndon-word Hall basis.
//!
//! Each Lyndon word `w` over the generators gives a basis element `P(w)` by
//! standard bracketing (`w = uv` with `v` the longest proper Lyndon suffix,
//! `P(w) = [P(u), P(v)]`). Brackets are rewritten into the basis by expanding
//! into the free associative algebra and peeling off the lexicographically
//! smallest word of each degree, which is always Lyndon and has coefficient
//! one in its own `P(w)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{LieAlgebraSpec, LieError, StructureEntry};
use crate::scalar_ring::Rational;

const LETTERS: [&str; 3] = ["a", "b", "c"];

/// Largest generator count and class accepted by [`free_nilpotent`].
pub const MAX_GENERATORS: usize = 3;
pub const MAX_CLASS: usize = 3;

/// A bracket tree whose leaves are generator indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HallTree {
    Leaf(usize),
    Node(Box<HallTree>, Box<HallTree>),
}

impl HallTree {
    pub fn degree(&self) -> usize {
        match self {
            HallTree::Leaf(_) => 1,
            HallTree::Node(l, r) => l.degree() + r.degree(),
        }
    }
}

impl fmt::Display for HallTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HallTree::Leaf(i) => write!(f, "{}", LETTERS[*i]),
            HallTree::Node(l, r) => write!(f, "[{l},{r}]"),
        }
    }
}

type Word = Vec<u8>;
type NcPoly = BTreeMap<Word, Rational>;

fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// All words of length `1..=max_len` over `m` letters, shortest first, lexicographic within a length.
fn all_words(m: usize, max_len: usize) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::new();
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        let next: Vec<Word> = layer
            .iter()
            .flat_map(|w| {
                (0..m as u8).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn standard_bracketing(w: &[u8]) -> HallTree {
    if w.len() == 1 {
        return HallTree::Leaf(w[0] as usize);
    }
    let split = (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .expect("a single letter is always a Lyndon suffix");
    HallTree::Node(
        Box::new(standard_bracketing(&w[..split])),
        Box::new(standard_bracketing(&w[split..])),
    )
}

fn nc_mul(a: &NcPoly, b: &NcPoly, max_len: usize) -> NcPoly {
    let mut out = NcPoly::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() > max_len {
                continue;
            }
            let mut w = u.clone();
            w.extend_from_slice(v);
            *out.entry(w).or_insert_with(Rational::zero) += x * y;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn nc_commutator(a: &NcPoly, b: &NcPoly, max_len: usize) -> NcPoly {
    let mut out = nc_mul(a, b, max_len);
    for (w, c) in nc_mul(b, a, max_len) {
        *out.entry(w).or_insert_with(Rational::zero) -= c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn expand(tree: &HallTree, max_len: usize) -> NcPoly {
    match tree {
        HallTree::Leaf(i) => NcPoly::from([(vec![*i as u8], Rational::one())]),
        HallTree::Node(l, r) => nc_commutator(&expand(l, max_len), &expand(r, max_len), max_len),
    }
}

/// The Lyndon-word Hall basis of the free Lie algebra, through degree `class`.
#[derive(Debug, Clone)]
pub struct HallBasis {
    generator_count: usize,
    class: usize,
    elements: Vec<HallTree>,
    words: Vec<Word>,
    expansions: Vec<NcPoly>,
}

impl HallBasis {
    pub fn new(generator_count: usize, class: usize) -> Result<Self, LieError> {
        if !(1..=MAX_GENERATORS).contains(&generator_count) {
            return Err(LieError::OutOfRange(format!(
                "generator count {generator_count}, expected 1..={MAX_GENERATORS}"
            )));
        }
        if !(1..=MAX_CLASS).contains(&class) {
            return Err(LieError::OutOfRange(format!(
                "class {class}, expected 1..={MAX_CLASS}"
            )));
        }
        let words: Vec<Word> = all_words(generator_count, class)
            .into_iter()
            .filter(|w| is_lyndon(w))
            .collect();
        let elements: Vec<HallTree> = words.iter().map(|w| standard_bracketing(w)).collect();
        let expansions = elements.iter().map(|t| expand(t, class)).collect();
        Ok(HallBasis {
            generator_count,
            class,
            elements,
            words,
            expansions,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn elements(&self) -> &[HallTree] {
        &self.elements
    }

    pub fn degree(&self, index: usize) -> usize {
        self.words[index].len()
    }

    pub fn dimension(&self) -> usize {
        self.elements.len()
    }

    /// Basis size per degree `1..=class`.
    pub fn dimension_by_degree(&self) -> Vec<usize> {
        (1..=self.class)
            .map(|k| self.words.iter().filter(|w| w.len() == k).count())
            .collect()
    }

    /// Expresses a Lie polynomial in the basis.
    fn rewrite(&self, mut poly: NcPoly) -> Result<StructureEntry, LieError> {
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        while let Some(lead) = poly.keys().min_by(|u, v| (u.len(), *u).cmp(&(v.len(), *v))) {
            let lead = lead.clone();
            let idx = self.words.iter().position(|w| *w == lead).ok_or_else(|| {
                LieError::Malformed(format!("leading word {lead:?} is not a Hall word"))
            })?;
            let coeff = poly[&lead].clone();
            for (w, c) in &self.expansions[idx] {
                *poly.entry(w.clone()).or_insert_with(Rational::zero) -= &coeff * c;
            }
            poly.retain(|_, c| !c.is_zero());
            *out.entry(idx).or_insert_with(Rational::zero) += coeff;
        }
        Ok(out.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// `[h_i, h_j]` in the basis; brackets past the class vanish.
    pub fn rewrite_bracket(&self, i: usize, j: usize) -> Result<StructureEntry, LieError> {
        if self.degree(i) + self.degree(j) > self.class {
            return Ok(Vec::new());
        }
        self.rewrite(nc_commutator(
            &self.expansions[i],
            &self.expansions[j],
            self.class,
        ))
    }
}

/// The free nilpotent Lie algebra on `generators` letters of class `class`.
pub fn free_nilpotent(generators: usize, class: usize) -> Result<Arc<LieAlgebraSpec>, LieError> {
    let hall = HallBasis::new(generators, class)?;
    let basis: Vec<String> = hall.elements().iter().map(|t| t.to_string()).collect();
    let mut brackets = Vec::new();
    for i in 0..hall.dimension() {
        for j in i + 1..hall.dimension() {
            let entry = hall.rewrite_bracket(i, j)?;
            if !entry.is_empty() {
                brackets.push((i, j, entry));
            }
        }
    }
    LieAlgebraSpec::new(
        &format!("free-nilpotent-{generators}-{class}"),
        basis,
        brackets,
    )
}

fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimension of the degree-`k` component of the free Lie algebra on `m`
/// generators: `(1/k) Σ_{d | k} μ(d) m^{k/d}`.
pub fn witt_dimension(m: usize, k: usize) -> usize {
    let sum: i64 = (1..=k)
        .filter(|d| k.is_multiple_of(*d))
        .map(|d| mobius(d) * (m as i64).pow((k / d) as u32))
        .sum();
    (sum / k as i64) as usize
}
