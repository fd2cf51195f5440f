//! Built-in algebras.

use std::sync::Arc;

use super::{free_nilpotent, LieAlgebraSpec};
use crate::scalar_ring::rat;

/// Names accepted by [`builtin`] without parameters.
pub const BUILTIN_NAMES: [&str; 4] = ["h3", "sl2", "so3", "free-nilpotent-2-3"];

/// Heisenberg algebra: `[p, q] = z`, `z` central.
pub fn h3() -> Arc<LieAlgebraSpec> {
    LieAlgebraSpec::from_named("h3", &["p", "q", "z"], &[("p", "q", vec![("z", rat(1))])])
        .expect("h3 is well formed")
}

/// `sl2` with `[h, e] = 2e`, `[h, f] = -2f`, `[e, f] = h`.
pub fn sl2() -> Arc<LieAlgebraSpec> {
    LieAlgebraSpec::from_named(
        "sl2",
        &["e", "f", "h"],
        &[
            ("e", "f", vec![("h", rat(1))]),
            ("h", "e", vec![("e", rat(2))]),
            ("h", "f", vec![("f", rat(-2))]),
        ],
    )
    .expect("sl2 is well formed")
}

/// `so3` with `[l1, l2] = l3` and cyclic permutations.
pub fn so3() -> Arc<LieAlgebraSpec> {
    LieAlgebraSpec::from_named(
        "so3",
        &["l1", "l2", "l3"],
        &[
            ("l1", "l2", vec![("l3", rat(1))]),
            ("l2", "l3", vec![("l1", rat(1))]),
            ("l3", "l1", vec![("l2", rat(1))]),
        ],
    )
    .expect("so3 is well formed")
}

/// Abelian algebra of dimension `n`, basis `a1..an`.
pub fn abelian(n: usize) -> Arc<LieAlgebraSpec> {
    let basis = (1..=n).map(|i| format!("a{i}")).collect();
    LieAlgebraSpec::new(&format!("abelian-{n}"), basis, Vec::new()).expect("abelian is well formed")
}

/// Looks up `h3`, `sl2`, `so3`, `abelian-N` or `free-nilpotent-M-C`.
pub fn builtin(name: &str) -> Option<Arc<LieAlgebraSpec>> {
    match name {
        "h3" => Some(h3()),
        "sl2" => Some(sl2()),
        "so3" => Some(so3()),
        _ => {
            if let Some(n) = name.strip_prefix("abelian-") {
                return n.parse().ok().filter(|&n| n > 0).map(abelian);
            }
            let rest = name.strip_prefix("free-nilpotent-")?;
            let (m, c) = rest.split_once('-')?;
            free_nilpotent(m.parse().ok()?, c.parse().ok()?).ok()
        }
    }
}
