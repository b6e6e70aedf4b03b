//! Exact zeta functions of varieties over finite fields.
//!
//! Points are counted by enumeration over `F_{q^n}`, the counts are fitted to
//! a rational zeta function, and the zeta function is split into per-degree
//! Frobenius characteristic polynomials and traces. [`solver`] encodes the
//! linear trace identities satisfied by derived equivalent varieties and
//! reports which trace equalities they force.

pub mod curves;
pub mod field;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod roots;
pub mod solver;
pub mod variety;
pub mod zeta;

pub use curves::{find_pairs, PairSearchResult, WeierstrassCurve};
pub use field::{enumerate_elements, make_extension, ExtensionField, FieldElement, FieldError, PrimeField};
pub use poly::{IntPoly, QPoly};
pub use ratfunc::RationalFunctionQ;
pub use solver::{
    build_constraint_system, instantiate_at_q, solve_forced, solve_forced_numeric,
    verify_traces_against_system, ForcedReport, SolverError, SolverFlags, TraceConstraintSystem,
};
pub use variety::{count_points, count_series, Ambient, CountError, PointCountSeries, VarietySpec};
pub use zeta::{
    check_functional_equation, check_riemann_hypothesis, counts_from_zeta, factor_by_weights,
    traces_from_factorization, zeta_from_counts, zeta_from_counts_with_profile, CohomologyProfile,
    DegreeSplit, TraceVector, WeilFactorization, ZetaError, ZetaFunction,
};
