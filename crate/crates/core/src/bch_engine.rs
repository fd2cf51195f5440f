//! Jet multiplication through the classical Baker–Campbell–Hausdorff series,
//! used as an oracle for the closed-form group law in [`crate::jet_group`].
//!
//! Each jet is written as a single element `A = Σ d^i X_i / i!` of
//! `g ⊗ W[d]/(d^{n+1})`; the series is evaluated there with the scalar-extension
//! bracket, and the product's coordinates are read back from the `d`-components.
//! Nothing here calls [`Jet::mul`].

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::jet_group::{CoordinateSystem, Jet, JetError, SERIES_VARIABLE};
use crate::lie_core::{free_nilpotent, generic_elements, LieAlgebraSpec, LieElement};
use crate::random::{random_jet, trial_rng};
use crate::report::{finish, CheckReport};
use crate::scalar_ring::{rat, ratio, Rational, RingSignature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BchError {
    #[error("word {word} of degree {degree} produced a d^{found} component")]
    DegreeBookkeeping {
        word: String,
        degree: usize,
        found: usize,
    },
    #[error(transparent)]
    Jet(#[from] JetError),
}

impl From<crate::lie_core::LieError> for BchError {
    fn from(e: crate::lie_core::LieError) -> Self {
        BchError::Jet(e.into())
    }
}

/// A bracket word in two letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BracketWord {
    A,
    B,
    Bracket(Box<BracketWord>, Box<BracketWord>),
}

impl BracketWord {
    pub fn bracket(left: BracketWord, right: BracketWord) -> Self {
        BracketWord::Bracket(Box::new(left), Box::new(right))
    }

    pub fn degree(&self) -> usize {
        match self {
            BracketWord::A | BracketWord::B => 1,
            BracketWord::Bracket(l, r) => l.degree() + r.degree(),
        }
    }

    pub fn evaluate(&self, a: &LieElement, b: &LieElement) -> Result<LieElement, BchError> {
        Ok(match self {
            BracketWord::A => a.clone(),
            BracketWord::B => b.clone(),
            BracketWord::Bracket(l, r) => l.evaluate(a, b)?.bracket(&r.evaluate(a, b)?)?,
        })
    }
}

impl fmt::Display for BracketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketWord::A => write!(f, "a"),
            BracketWord::B => write!(f, "b"),
            BracketWord::Bracket(l, r) => write!(f, "[{l},{r}]"),
        }
    }
}

/// The BCH series truncated at bracket degree 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BchTable {
    max_degree: usize,
    terms: Vec<(BracketWord, Rational)>,
}

impl BchTable {
    /// `a + b + (1/2)[a,b] + (1/12)[a,[a,b]] + (1/12)[b,[b,a]]`.
    pub fn classical() -> Self {
        use BracketWord::{A, B};
        let br = BracketWord::bracket;
        BchTable {
            max_degree: 3,
            terms: vec![
                (A, rat(1)),
                (B, rat(1)),
                (br(A, B), ratio(1, 2)),
                (br(A, br(A, B)), ratio(1, 12)),
                (br(B, br(B, A)), ratio(1, 12)),
            ],
        }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn terms(&self) -> &[(BracketWord, Rational)] {
        &self.terms
    }

    /// Evaluates the series on two series elements over a ring containing
    /// `d`, asserting that each word of degree `k` has no `d`-component
    /// below `d^k`.
    pub fn evaluate(&self, a: &LieElement, b: &LieElement) -> Result<LieElement, BchError> {
        let ring = a.ring();
        let base = ring
            .without(SERIES_VARIABLE)
            .map_err(|e| BchError::Jet(e.into()))?;
        let mut acc = LieElement::zero(a.algebra(), ring);
        for (word, coeff) in &self.terms {
            let value = word.evaluate(a, b)?;
            let degree = word.degree();
            for j in 0..degree {
                let part = value.coefficient_of(SERIES_VARIABLE, j as u8, &base)?;
                if !part.is_zero() {
                    return Err(BchError::DegreeBookkeeping {
                        word: word.to_string(),
                        degree,
                        found: j,
                    });
                }
            }
            acc = &acc + &value.scale_rational(coeff);
        }
        Ok(acc)
    }
}

/// Product of two exp-coordinate jets through the classical series.
pub fn bch_mul(a: &Jet, b: &Jet) -> Result<Jet, BchError> {
    for j in [a, b] {
        if j.system() != CoordinateSystem::Exp {
            return Err(JetError::CoordinateSystem {
                expected: CoordinateSystem::Exp,
                found: j.system(),
            }
            .into());
        }
    }
    if a.order() != b.order() {
        return Err(JetError::OrderMismatch(a.order(), b.order()).into());
    }
    LieAlgebraSpec::ensure_same(a.algebra(), b.algebra())?;
    RingSignature::ensure_same(a.ring(), b.ring()).map_err(|e| BchError::Jet(e.into()))?;
    let (_, sa) = a.to_series()?;
    let (_, sb) = b.to_series()?;
    let product = BchTable::classical().evaluate(&sa, &sb)?;
    Ok(Jet::from_series(&product, a.ring(), a.order())?)
}

fn compare(a: &Jet, b: &Jet) -> Result<Option<String>, BchError> {
    let closed = a.mul(b)?;
    let series = bch_mul(a, b)?;
    Ok((closed != series)
        .then(|| format!("a = {a}, b = {b}: closed form {closed}, series {series}")))
}

/// The closed-form law and the series agree: generically in
/// `free_nilpotent(2, order)` and on seeded random jets of `algebra`.
pub fn check_closed_form_vs_bch(
    algebra: &Arc<LieAlgebraSpec>,
    order: usize,
    trials: usize,
    seed: u64,
) -> CheckReport {
    let id = format!("def6.1-vs-bch-n{order}/{}", algebra.name());
    let q = RingSignature::rationals();
    let mut rng = trial_rng(seed);
    let outcome = (|| -> Result<Option<String>, BchError> {
        let free = free_nilpotent(2, order.clamp(1, 3))?;
        let names: Vec<String> = ["x", "y"]
            .iter()
            .flat_map(|p| (1..=order).map(move |i| format!("{p}{i}")))
            .collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let (_, v) = generic_elements(&free, &refs, &[])?;
        let a = Jet::new(CoordinateSystem::Exp, v[..order].to_vec())?;
        let b = Jet::new(CoordinateSystem::Exp, v[order..].to_vec())?;
        if let Some(cx) = compare(&a, &b)? {
            return Ok(Some(format!("generic: {cx}")));
        }
        for _ in 0..trials {
            let a = random_jet(algebra, &q, order, &mut rng)?;
            let b = random_jet(algebra, &q, order, &mut rng)?;
            if let Some(cx) = compare(&a, &b)? {
                return Ok(Some(cx));
            }
        }
        Ok(None)
    })();
    finish(
        &id,
        outcome,
        format!("generic in free-nilpotent-2-{order} + {trials} trials, seed {seed}"),
    )
}
