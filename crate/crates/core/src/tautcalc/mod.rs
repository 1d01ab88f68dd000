//! Graded symbolic calculus over the rationals for tautological classes:
//! truncated polynomials in ψ, λ, κ and formal Chern generators, total Chern
//! classes, characters, Todd series, Porteous determinants and a small
//! expression language.
//!
//! Truncation is part of the semantics: every product drops terms above the
//! ring's truncation degree (default [`DEFAULT_TRUNC`]).

mod chern;
mod expr;
mod grr;
mod poly;
mod porteous;
mod relations;

pub use chern::{
    character_to_chern, chern_to_character, elementary_generator, elementary_in_roots, root, sym_square_chern,
    symmetric_reduce, total_class_inverse, twist_by_line, whitney_quotient, TotalClass, MAX_SYM2_RANK,
};
pub use expr::{evaluate, Assignments, DEFAULT_TRUNC};
pub use grr::{grr_pushforward_omega_power, todd_of_line_bundle, RelativeCurveSeries, TODD_TABLE_DEGREE};
pub use poly::{rational_json, Generator, GradedPoly, Monomial, BARE_NAMES, DEGREE_ONE_FAMILIES, MAX_LAMBDA};
pub use porteous::{porteous_class, porteous_series, standard_inputs, ChernSeries};
pub use relations::{reduce_to_standard, relation, relation_table, Relation};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TautError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("bad generator {0}")]
    BadGenerator(String),
    #[error("not a total class (constant term must be 1): {0}")]
    NotTotalClass(String),
    #[error("{0} has no constant term to invert")]
    NoConstantTerm(String),
    #[error("declared rank {declared} differs from requested rank {given}")]
    RankMismatch { declared: u32, given: u32 },
    #[error("rank {rank} exceeds the supported maximum {max}")]
    RankTooLarge { rank: u32, max: u32 },
    #[error("{0} is not homogeneous of degree 1")]
    NotDegreeOne(String),
    #[error("not symmetric: {0}")]
    NotSymmetric(String),
    #[error("Todd table stops at degree 12, requested {0}")]
    ToddTableBound(u32),
    #[error("omega power {0} is below 2")]
    PowerTooSmall(u32),
    #[error("truncation {trunc} is below the needed degree {needed}")]
    TruncationTooSmall { needed: u32, trunc: u32 },
    #[error("{0}")]
    Precondition(String),
}
