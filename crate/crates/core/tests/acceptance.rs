//! Acceptance criteria, one PASS/FAIL line each. Every comparison is exact;
//! each criterion also has a wall-clock budget.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use weil_core::bch_engine::check_closed_form_vs_bch;
use weil_core::jet_group::{
    associativity_generic, cubic_bracket_identity, group_axioms, tower_compatibility,
    verify_bracket_recovery,
};
use weil_core::lie_core::{free_nilpotent, h3, sl2, so3, LieAlgebraSpec};
use weil_core::matrix_oracle::{check_closed_form_vs_matrix, verify_matrix_bch, MatrixRep};
use weil_core::verify::{check_ring_laws, check_witt};
use weil_core::CheckReport;

const SEED: u64 = 0;

fn builtins() -> Vec<Arc<LieAlgebraSpec>> {
    vec![h3(), sl2(), so3(), free_nilpotent(2, 3).unwrap()]
}

fn criterion(
    number: usize,
    name: &str,
    budget: Duration,
    body: impl FnOnce() -> Vec<CheckReport>,
) -> bool {
    let start = Instant::now();
    let reports = body();
    let elapsed = start.elapsed();
    let failures: Vec<&CheckReport> = reports.iter().filter(|r| !r.passed()).collect();
    let in_time = elapsed <= budget;
    let ok = failures.is_empty() && in_time && !reports.is_empty();
    let status = if ok { "PASS" } else { "FAIL" };
    println!(
        "{status} criterion {number}: {name} ({} checks, {:.2}s of {}s budget)",
        reports.len(),
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    for f in failures {
        println!(
            "    {}: {}",
            f.check,
            f.counterexample.as_deref().unwrap_or("")
        );
    }
    if !in_time {
        println!("    over time budget");
    }
    ok
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let results = [
        criterion(
            1,
            "associativity of generic jets in free-nilpotent-3-3, orders 1-3",
            secs(10),
            || {
                let alg = free_nilpotent(3, 3).unwrap();
                (1..=3).map(|n| associativity_generic(&alg, n)).collect()
            },
        ),
        criterion(
            2,
            "cubic bracket identity vanishes in free-nilpotent-3-3",
            secs(1),
            || vec![cubic_bracket_identity(&free_nilpotent(3, 3).unwrap())],
        ),
        criterion(
            3,
            "unit and inverse laws, 1000 random jets per algebra and order",
            secs(30),
            || {
                builtins()
                    .iter()
                    .flat_map(|a| (1..=3).map(move |n| group_axioms(a, n, 1000, SEED)))
                    .collect()
            },
        ),
        criterion(
            4,
            "closed-form law equals the BCH series, generic + 1000 trials",
            secs(30),
            || {
                builtins()
                    .iter()
                    .flat_map(|a| (1..=3).map(move |n| check_closed_form_vs_bch(a, n, 1000, SEED)))
                    .collect()
            },
        ),
        criterion(
            5,
            "closed-form law equals log(exp A exp B) in h3, sl2, so3",
            secs(60),
            || {
                [MatrixRep::h3(), MatrixRep::sl2(), MatrixRep::so3()]
                    .iter()
                    .flat_map(|r| {
                        (1..=3).map(move |n| check_closed_form_vs_matrix(r, n, 100, SEED))
                    })
                    .collect()
            },
        ),
        criterion(
            6,
            "generalized BCH identities over Q[d1..dn]/(di^2) in sl2 and h3",
            secs(60),
            || {
                [MatrixRep::sl2(), MatrixRep::h3()]
                    .iter()
                    .flat_map(|r| (1..=3).map(move |n| verify_matrix_bch(n, r, 100, SEED)))
                    .collect()
            },
        ),
        criterion(
            7,
            "group commutators recover the jet bracket, orders 1-3",
            secs(30),
            || {
                [h3(), sl2()]
                    .iter()
                    .flat_map(|a| (1..=3).map(move |n| verify_bracket_recovery(a, n, 100, SEED)))
                    .collect()
            },
        ),
        criterion(
            8,
            "Witt dimensions, Jacobi, ring laws, tower compatibility",
            secs(10),
            || {
                let mut out = vec![check_witt(2, 3), check_witt(3, 3)];
                let mut algebras = builtins();
                algebras.push(free_nilpotent(3, 3).unwrap());
                for a in &algebras {
                    out.push(a.validate().to_check());
                }
                out.push(check_ring_laws(1000, SEED));
                for a in builtins() {
                    out.push(tower_compatibility(&a, 100, SEED));
                }
                out
            },
        ),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
