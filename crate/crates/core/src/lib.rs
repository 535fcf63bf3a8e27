//! Exact dimensions of finite additive sets in `Z^r`.
//!
//! Four notions of dimension are computed with certificates:
//!
//! * `d_d(A)`, the size of a largest dissociated subset;
//! * `d_d⁻(A)`, the size of a smallest maximal dissociated subset;
//! * `d_s(A)`, the size of a smallest `S ⊆ A` whose 1-span contains `A`;
//! * `d_s⁻(A)`, the same with `S` drawn from the ambient group, computed
//!   relative to a caller-supplied finite universe.
//!
//! Alongside the solvers the crate builds the standard extremal examples
//! (powers of three, interval bases, cubes, the `B_n ∪ {s_n} ∪ 2·D` family,
//! Freiman embeddings into `Z`) and checks the known inequalities between the
//! dimensions in rigorous interval arithmetic ([`lab`]).

pub mod constructions;
pub mod dissociation;
pub mod error;
pub mod format;
pub mod lab;
pub mod model;
pub mod solvers;
pub mod span;

mod combos;
mod keys;

pub use dissociation::{
    is_dissociated, is_dissociated_signcomb, is_dissociated_subsetsum, is_maximal_dissociated,
    Dissociativity, Extension, Maximality, SubsetSumTable,
};
pub use error::{Error, Result};
pub use format::{parse_set, read_set, SetFormat};
pub use model::{
    evaluate, negate_closure, AdditiveSet, Element, NonDissociationWitness, SignVector,
    SpanningCertificate,
};
pub use solvers::{
    full_report, lower_bound_log3, max_dissociated, min_maximal_dissociated, min_spanning_subset,
    min_spanning_universe, DimensionReport, Search, SearchBudget,
};
pub use span::{covers, member, span, Coverage, SpanMembership};
