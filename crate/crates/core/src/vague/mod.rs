//! Fuzzy equalities, vague binary operations and vague t-norms.

mod engine;
mod group;
mod scalar;

pub use engine::{
    equality_report, group_cancellation_report, vague_cancellation_report,
    vague_commutativity_report, vague_monoid_report, vague_op_report, vague_strict_monotone_report,
    DegreeAlgebra, DegreeReading, VagueTable,
};
pub use group::{check_vague_group_cancellation, VagueGroup};
pub use scalar::{
    check_vague_cancellation, check_vague_commutativity, check_vague_monoid, check_vague_op,
    check_vague_strict_monotone, induce_vague_tnorm, validate_fuzzy_equality, ScalarDegrees,
    ScalarEquality, TFuzzyEquality, VagueBinaryOp, VagueTNorm,
};
