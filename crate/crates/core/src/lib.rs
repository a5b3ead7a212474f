//! Exact construction and verification of finite branched covering
//! germs of the complex plane.
//!
//! The crate builds plane covering germs whose branch locus is a curve
//! `u^{d1} = v^{d2}` and whose ramification locus is `x^{k1} = y^{k2}`,
//! from small discrete parameter families.  Everything is verified by
//! exact arithmetic: Jacobian factorisation, pushforward of the
//! ramification curve, covering degree by resultants, combinatorial
//! models of the exceptional curve configuration, and the associated
//! one-variable rational functions with prescribed critical behaviour.
//!
//! Modules, roughly bottom-up:
//!
//! * [`algebra`] — exact scalars (`Q` and quadratic extensions) and
//!   dense/sparse polynomial arithmetic with resultants;
//! * [`ramdata`] — discrete parameter families, their numerical
//!   invariants, validation, enumeration and canonical forms;
//! * [`constellation`] — permutation models for the one-variable
//!   rational functions (class search, counting, deduplication);
//! * [`resolution`] — toric weighted chains for the minimal embedded
//!   resolution of `u^{d1} = v^{d2}`;
//! * [`covering`] — closed-form constructions of covering maps and a
//!   multiprecision Newton solver for families without closed forms;
//! * [`verify`] — the exact verification battery and reports;
//! * [`selftest`] — the end-to-end acceptance sweep used by the CLI.

pub mod algebra;
pub mod constellation;
pub mod covering;
pub mod ramdata;
pub mod resolution;
pub mod selftest;
pub mod verify;

pub use algebra::{AlgebraError, BiPoly, ExactScalar, UniPoly, Var};
pub use constellation::{
    Constellation, ConstellationError, CycleType, Permutation, SearchOptions, SearchOutcome,
};
pub use covering::newton::{solve_belyi_numeric, BigComplex, NumericBelyi};
pub use covering::{
    build_a_n3, build_b_n3, build_closed, build_p_series, build_row1, build_row2, extract_belyi,
    from_belyi, BelyiData, CoverError, CoveringMap, Frame, Sign,
};
pub use ramdata::{Case, DerivedData, Params, RamError, SncModel, ZannierProfile};
pub use selftest::{acceptance_report, CriterionResult};
pub use verify::extra::{
    check_fiber_split, delta_invariant, extra_map, extra_report, extra_rhs, local_intersection,
    phi_polynomial,
};
pub use verify::{
    check_belyi, check_belyi_numeric, check_branch_image, check_jacobian_form, check_pushforward,
    covering_degree, jacobian, verify_covering, CheckResult, Mode, VerificationReport, VerifyError,
};
