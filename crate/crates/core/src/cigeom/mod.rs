//! Nets of quadrics over F_p: base-locus enumeration, Jacobian smoothness,
//! canonical genus-5 curve sampling in P^4, hyperplane sections, eighth-point
//! recovery in P^3, and the seeded verification drivers.
//!
//! Randomness comes from [`rng::stream`]: trial `i` under master seed `s`
//! draws from ChaCha8 seeded with [`rng::mix`]`(s, i)`.

mod curve;
mod echelon;
mod eighth;
mod net;
pub mod rng;
mod verify;

pub use curve::{
    cross_count_hyperplanar, cross_count_with, hyperplane_census, hyperplane_sections,
    sample_smooth_canonical_curve, sample_smooth_canonical_curve_capped, CrossCount, CurveSample,
    HyperplaneSection, SectionCensus, MIN_ACCEPTED_POINTS,
};
pub use eighth::recover_eighth_point;
pub use net::{
    base_locus_points, base_locus_points_capped, quadric_pairs, quadrics_through, QuadraticForm,
    QuadricNet, DEFAULT_P4_MODULUS_CAP, HARD_MODULUS_CAP,
};
pub use verify::{
    run_claim, sample_sweep_curves, verify_disjointness, verify_disjointness_with,
    verify_independence_dichotomy, verify_independence_dichotomy_with, verify_seven_always_independent_in_p3,
    verify_seven_point_classifier, Claim, FailureRecord, SweepParams, VerificationReport,
};

use thiserror::Error;

use crate::exactmath::MathError;
use crate::projgeom::{ConfigurationFixture, GeomError, SevenPointClass};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CiError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Math(#[from] MathError),
    #[error("modulus {p} exceeds the enumeration cap {cap}")]
    ModulusCap { p: u32, cap: u32 },
    #[error("net basis has rank {rank}, expected 3")]
    DependentNet { rank: usize },
    #[error("sampler exhausted after {tries} tries; last rejection: {reason}")]
    Exhausted { tries: u32, reason: String },
    #[error("point does not lie on the base locus")]
    NotOnBaseLocus,
    #[error("curve sample is not accepted")]
    NotAccepted,
    #[error("the seven points do not impose independent conditions on quadrics")]
    Dependent(SevenPointClass),
    #[error("base locus is not 8 distinct smooth rational points ({} rational points found)", locus.points.len())]
    NonTransversal { locus: ConfigurationFixture },
    #[error("{0}")]
    Precondition(String),
}
