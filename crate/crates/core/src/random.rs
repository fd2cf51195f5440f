//! Seeded random inputs for trial-based checks.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::jet_group::{CoordinateSystem, Jet, JetError};
use crate::lie_core::{LieAlgebraSpec, LieElement};
use crate::scalar_ring::{rat, ratio, Rational, Ring};

/// Deterministic generator used by every driver.
pub type TrialRng = ChaCha8Rng;

pub fn trial_rng(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer in `[-3, 3]`.
pub fn small_integer(rng: &mut TrialRng) -> Rational {
    rat(rng.gen_range(-3..=3))
}

/// `p/q` with `p` in `[-3, 3]` and `q` in `[1, 3]`.
pub fn small_rational(rng: &mut TrialRng) -> Rational {
    ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

/// Element with constant coordinates drawn from `draw`.
pub fn random_element(
    algebra: &Arc<LieAlgebraSpec>,
    ring: &Ring,
    rng: &mut TrialRng,
    draw: fn(&mut TrialRng) -> Rational,
) -> LieElement {
    let coords: Vec<Rational> = (0..algebra.dimension()).map(|_| draw(rng)).collect();
    LieElement::from_rationals(algebra, ring, &coords).expect("dimension matches")
}

/// Exp-coordinate jet with small rational coordinates.
pub fn random_jet(
    algebra: &Arc<LieAlgebraSpec>,
    ring: &Ring,
    order: usize,
    rng: &mut TrialRng,
) -> Result<Jet, JetError> {
    let coords = (0..order)
        .map(|_| random_element(algebra, ring, rng, small_rational))
        .collect();
    Jet::new(CoordinateSystem::Exp, coords)
}
