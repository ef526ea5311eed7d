//! Exact Geometric Invariant Theory instability data for projective
//! hypersurfaces and recovery of multiplicity classes from band membership.
//!
//! A degree-`d` hypersurface in `P^r` is a [`HomogeneousForm`]. Its
//! [`torus_index`] projects the barycenter `ξ = d/(r+1)·1` onto the Newton
//! polytope and returns an exact [`InstabilityCertificate`]. Multiplying by
//! `(x_1⋯x_r)^N` for `N` at least the [`separation_threshold`] pushes that
//! nearest point into exactly one band `B^r_{d,N,m}`, and `m` is the
//! multiplicity at `[1:0:…:0]` ([`classify_at_origin`]).
//!
//! All arithmetic is over arbitrary-precision rationals.

pub mod classifier;
pub mod error;
pub mod forms;
pub mod hesselink;
pub mod linalg;
pub mod rational;
pub mod statepoly;

pub use classifier::{
    bound_check, classify_at, classify_at_origin, gen_corpus, verify_theorem_main,
    BoundCheckResult, ClassificationReport, NChoice, VerifySummary,
};
pub use error::{Error, Result};
pub use forms::{
    act, destabilize, frame_moving_to_origin, hilbert_poly_value, multiplicity_at,
    multiplicity_at_origin, parse_form, point_image, ExponentVector, Frame, HomogeneousForm,
    ProjPoint,
};
pub use hesselink::{
    band_contains, default_frames, l_squared, pair_separation_min_n, q_contains,
    separation_gap, separation_threshold, threshold_report, worst_frame_search, BandParams,
    StratumLabel, ThresholdReport,
};
pub use rational::{parse_q, RationalVector, Q};
pub use statepoly::{
    barycenter, class_rep, mu_weight, nearest_point, torus_index, InstabilityCertificate,
    OneParamSubgroup, StatePolytope,
};
