//! Verification suites: a plan of independent checks keyed by claim id, and
//! the ordered report assembled from their results.
//!
//! * `s4`: generalized BCH identities in matrix groups (`thm-4.n/<algebra>`).
//! * `s6`: associativity (`thm-6.n/...`), the cubic bracket identity
//!   (`lemma-6.3.1/...`) and agreement of the closed-form law with both
//!   oracles (`def6.1-vs-bch-n<n>/...`, `def6.1-vs-matrix-n<n>/...`).
//! * `s7`: group axioms (`thm-7.0-n<n>/...`) and bracket recovery
//!   (`thm-7.n/...` for `n = 1, 2, 3`).
//! * `all`: the three above plus structural checks (`witt/...`,
//!   `jacobi/...`, `tower/...`, `ring-laws`).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use thiserror::Error;

use crate::bch_engine::check_closed_form_vs_bch;
use crate::jet_group::{
    associativity_generic, associativity_random, cubic_bracket_identity, group_axioms,
    tower_compatibility, verify_bracket_recovery, MAX_ORDER,
};
use crate::lie_core::{builtin, free_nilpotent, h3, sl2, so3, witt_dimension, LieAlgebraSpec};
use crate::matrix_oracle::{check_closed_form_vs_matrix, verify_matrix_bch, MatrixRep};
use crate::random::{small_rational, trial_rng, TrialRng};
use crate::report::{CheckReport, ReportEntry, VerificationReport};
use crate::scalar_ring::{RingSignature, WeilScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown suite `{0}` (expected all, s4, s6 or s7)")]
    UnknownSuite(String),
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("algebra `{0}` has no matrix representation")]
    NoRepresentation(String),
    #[error("order {0} is outside 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    S4,
    S6,
    S7,
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Suite::All),
            "s4" => Ok(Suite::S4),
            "s6" => Ok(Suite::S6),
            "s7" => Ok(Suite::S7),
            _ => Err(VerifyError::UnknownSuite(s.to_string())),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::S4 => "s4",
            Suite::S6 => "s6",
            Suite::S7 => "s7",
        })
    }
}

/// What to run. `algebra = None` uses the default catalog: `free-nilpotent-3-3`
/// for generic checks and `h3`, `sl2`, `so3`, `free-nilpotent-2-3` for trials.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub suite: Suite,
    pub algebra: Option<Arc<LieAlgebraSpec>>,
    pub order: Option<usize>,
    pub trials: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            suite: Suite::All,
            algebra: None,
            order: None,
            trials: 100,
            seed: 0,
        }
    }
}

/// Resolves an algebra name. `free-nilpotent` alone takes its generator count
/// and class from the arguments.
pub fn resolve_algebra(
    name: &str,
    generators: usize,
    class: usize,
) -> Result<Arc<LieAlgebraSpec>, VerifyError> {
    if name == "free-nilpotent" {
        return free_nilpotent(generators, class).map_err(|_| {
            VerifyError::UnknownAlgebra(format!("free-nilpotent-{generators}-{class}"))
        });
    }
    builtin(name).ok_or_else(|| VerifyError::UnknownAlgebra(name.to_string()))
}

type Job = Box<dyn Fn() -> CheckReport + Send + Sync>;

/// One planned check.
pub struct PlannedCheck {
    pub id: String,
    job: Job,
}

impl PlannedCheck {
    fn new(id: String, job: impl Fn() -> CheckReport + Send + Sync + 'static) -> Self {
        PlannedCheck {
            id,
            job: Box::new(job),
        }
    }

    /// Runs the check, returning its report row with timing.
    pub fn run(&self) -> ReportEntry {
        let start = Instant::now();
        let report = (self.job)();
        let elapsed = start.elapsed().as_millis() as u64;
        let detail = match (&report.counterexample, &report.detail) {
            (Some(cx), _) => cx.clone(),
            (None, Some(d)) => d.clone(),
            (None, None) => String::new(),
        };
        ReportEntry {
            id: self.id.clone(),
            status: report.status,
            detail,
            elapsed_ms: Some(elapsed),
        }
    }
}

impl fmt::Debug for PlannedCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PlannedCheck")
            .field("id", &self.id)
            .finish()
    }
}

fn reps_for(algebras: &[Arc<LieAlgebraSpec>]) -> Vec<MatrixRep> {
    algebras
        .iter()
        .filter_map(|a| MatrixRep::builtin(a.name()).filter(|r| r.algebra() == a))
        .collect()
}

/// Lists the checks selected by `options`, in id order.
pub fn plan(options: &VerifyOptions) -> Result<Vec<PlannedCheck>, VerifyError> {
    let orders: Vec<usize> = match options.order {
        Some(n) if (1..=MAX_ORDER).contains(&n) => vec![n],
        Some(n) => return Err(VerifyError::OrderOutOfRange(n)),
        None => (1..=MAX_ORDER).collect(),
    };
    let default_trial_algebras =
        || vec![h3(), sl2(), so3(), free_nilpotent(2, 3).expect("in range")];
    let (generic, trial_algebras) = match &options.algebra {
        Some(a) => (a.clone(), vec![a.clone()]),
        None => (
            free_nilpotent(3, 3).expect("in range"),
            default_trial_algebras(),
        ),
    };
    let reps = match &options.algebra {
        Some(a) => {
            let reps = reps_for(std::slice::from_ref(a));
            if reps.is_empty() && options.suite == Suite::S4 {
                return Err(VerifyError::NoRepresentation(a.name().to_string()));
            }
            reps
        }
        None => reps_for(&default_trial_algebras()),
    };
    let (trials, seed) = (options.trials, options.seed);
    let mut checks = Vec::new();
    let suite = options.suite;

    if matches!(suite, Suite::All | Suite::S4) {
        for rep in &reps {
            for &n in &orders {
                let rep = rep.clone();
                checks.push(PlannedCheck::new(
                    format!("thm-4.{n}/{}", rep.algebra().name()),
                    move || verify_matrix_bch(n, &rep, trials, seed),
                ));
            }
        }
    }

    if matches!(suite, Suite::All | Suite::S6) {
        for &n in &orders {
            let g = generic.clone();
            checks.push(PlannedCheck::new(
                format!("thm-6.{n}/{}", g.name()),
                move || associativity_generic(&g, n),
            ));
            for alg in &trial_algebras {
                let a = alg.clone();
                checks.push(PlannedCheck::new(
                    format!("thm-6.{n}/{}/random", a.name()),
                    move || associativity_random(&a, n, trials, seed),
                ));
                let a = alg.clone();
                checks.push(PlannedCheck::new(
                    format!("def6.1-vs-bch-n{n}/{}", a.name()),
                    move || check_closed_form_vs_bch(&a, n, trials, seed),
                ));
            }
            for rep in &reps {
                let rep = rep.clone();
                checks.push(PlannedCheck::new(
                    format!("def6.1-vs-matrix-n{n}/{}", rep.algebra().name()),
                    move || check_closed_form_vs_matrix(&rep, n, trials, seed),
                ));
            }
        }
        if orders.contains(&3) {
            let g = generic.clone();
            checks.push(PlannedCheck::new(
                format!("lemma-6.3.1/{}", g.name()),
                move || cubic_bracket_identity(&g),
            ));
        }
    }

    if matches!(suite, Suite::All | Suite::S7) {
        for &n in &orders {
            for alg in &trial_algebras {
                let a = alg.clone();
                checks.push(PlannedCheck::new(
                    format!("thm-7.0-n{n}/{}", a.name()),
                    move || group_axioms(&a, n, trials, seed),
                ));
                let a = alg.clone();
                checks.push(PlannedCheck::new(
                    format!("thm-7.{n}/{}", a.name()),
                    move || verify_bracket_recovery(&a, n, trials, seed),
                ));
            }
        }
    }

    if suite == Suite::All {
        for (m, c) in [(2, 3), (3, 3)] {
            checks.push(PlannedCheck::new(
                format!("witt/free-nilpotent-{m}-{c}"),
                move || check_witt(m, c),
            ));
        }
        let mut structural = trial_algebras.clone();
        if !structural.iter().any(|a| a.name() == generic.name()) {
            structural.push(generic.clone());
        }
        for alg in structural {
            let a = alg.clone();
            checks.push(PlannedCheck::new(
                format!("jacobi/{}", a.name()),
                move || a.validate().to_check(),
            ));
            checks.push(PlannedCheck::new(
                format!("tower/{}", alg.name()),
                move || tower_compatibility(&alg, trials, seed),
            ));
        }
        checks.push(PlannedCheck::new("ring-laws".to_string(), move || {
            check_ring_laws(trials, seed)
        }));
    }

    checks.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(checks)
}

/// Builds the report from rows in any order; rows are sorted by id and
/// timings dropped when `timing` is false.
pub fn assemble(
    options: &VerifyOptions,
    mut rows: Vec<ReportEntry>,
    timing: bool,
) -> VerificationReport {
    rows.sort_by(|a, b| a.id.cmp(&b.id));
    if !timing {
        for r in &mut rows {
            r.elapsed_ms = None;
        }
    }
    VerificationReport {
        suite: options.suite.to_string(),
        seed: options.seed,
        trials: options.trials,
        version: env!("CARGO_PKG_VERSION").to_string(),
        checks: rows,
    }
}

/// Plans and runs every check on the current thread.
pub fn run(options: &VerifyOptions, timing: bool) -> Result<VerificationReport, VerifyError> {
    let rows = plan(options)?.iter().map(PlannedCheck::run).collect();
    Ok(assemble(options, rows, timing))
}

/// Hall-basis dimensions of `free_nilpotent(m, c)` against the Witt formula.
pub fn check_witt(m: usize, c: usize) -> CheckReport {
    let id = format!("witt/free-nilpotent-{m}-{c}");
    let expected: usize = (1..=c).map(|k| witt_dimension(m, k)).sum();
    match free_nilpotent(m, c) {
        Ok(alg) if alg.dimension() == expected => {
            CheckReport::pass(id).with_detail(format!("dimension {expected}"))
        }
        Ok(alg) => CheckReport::fail(
            id,
            format!(
                "dimension {}, Witt formula gives {expected}",
                alg.dimension()
            ),
        ),
        Err(e) => CheckReport::fail(id, format!("error: {e}")),
    }
}

fn random_scalar(ring: &crate::scalar_ring::Ring, rng: &mut TrialRng) -> WeilScalar {
    let mut acc = WeilScalar::zero(ring);
    for d in 0..=3u8 {
        for e in 0..=1u8 {
            acc = &acc + &WeilScalar::monomial(ring, vec![d, e], small_rational(rng));
        }
    }
    acc
}

/// Commutative ring laws in `Q[d, e]/(d⁴, e²)` on seeded random scalars.
pub fn check_ring_laws(trials: usize, seed: u64) -> CheckReport {
    let id = "ring-laws";
    let ring = RingSignature::new([("d", 3), ("e", 1)]).expect("valid signature");
    let mut rng = trial_rng(seed);
    let one = WeilScalar::one(&ring);
    let zero = WeilScalar::zero(&ring);
    for _ in 0..trials {
        let a = random_scalar(&ring, &mut rng);
        let b = random_scalar(&ring, &mut rng);
        let c = random_scalar(&ring, &mut rng);
        let laws = [
            ("a+b = b+a", &a + &b, &b + &a),
            ("ab = ba", &a * &b, &b * &a),
            ("(a+b)+c = a+(b+c)", &(&a + &b) + &c, &a + &(&b + &c)),
            ("(ab)c = a(bc)", &(&a * &b) * &c, &a * &(&b * &c)),
            ("a(b+c) = ab+ac", &a * &(&b + &c), &(&a * &b) + &(&a * &c)),
            ("1a = a", &one * &a, a.clone()),
            ("(a+b)-b = a", &(&a + &b) - &b, a.clone()),
            ("a+0 = a", &a + &zero, a.clone()),
        ];
        for (law, lhs, rhs) in laws {
            if lhs != rhs {
                return CheckReport::fail(id, format!("{law} fails for a = {a}, b = {b}, c = {c}"));
            }
        }
    }
    CheckReport::pass(id).with_detail(format!("{trials} trials, seed {seed}"))
}
