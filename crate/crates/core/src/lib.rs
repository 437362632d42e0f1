//! Exact workbench for local testability and self-correction of sparse,
//! low-bias linear codes over prime fields.
//!
//! The library models sparse linear codes by full enumeration, evaluates
//! q-ary Krawtchouk polynomials and the MacWilliams transform in arbitrary
//! precision, runs the canonical dual-sampling tester and self-corrector,
//! and checks the supporting counting identities and bounds exactly.
//! Asymptotic statements are never asserted at fixed n; they surface as
//! informational report rows with exact values.

pub mod bounds;
pub mod code;
pub mod corrector;
pub mod exact;
pub mod field;
pub mod krawtchouk;
pub mod report;
pub mod rng;
pub mod tester;

pub use code::{CodeError, CodeFile, CodeProfile, DualSlice, LinearCode, WeightDistribution, Word};
pub use exact::Rat;
pub use field::{FieldElement, FieldError, FieldSpec};
pub use report::{RowKind, VerificationReport, VerificationRow};
pub use rng::RandomSource;
