//! Exact-arithmetic group laws on Weil prolongations `(g^{D_n})_0` of a Lie
//! algebra for `n ≤ 3`, together with two independent oracles: the truncated
//! Baker–Campbell–Hausdorff series and matrix exp/log over nilpotent scalars.

pub mod bch_engine;
pub mod jet_group;
pub mod lie_core;
pub mod matrix_oracle;
pub mod random;
pub mod report;
pub mod scalar_ring;
pub mod verify;

pub use jet_group::{CoordinateSystem, Jet, JetError};
pub use lie_core::{LieAlgebraSpec, LieElement, LieError};
pub use report::{CheckReport, Status, VerificationReport};
pub use scalar_ring::{Rational, Ring, RingError, RingSignature, WeilScalar};
