//! Lattice-path and diagram models for the moment sequence.
//!
//! Three interlocking families live here:
//!
//! * [`motzkin`] — weighted Motzkin paths whose total weight reproduces the
//!   two-parameter moments, together with the restricted subfamily obtained by
//!   forbidding a charged-up step from being cancelled immediately by a
//!   charged-down step, and the binomial-transform identity connecting the two.
//! * [`dss`] — skew shapes carrying two families of diagonal stripes ("doubly
//!   striped skew shapes"), the weight-preserving bijection from restricted
//!   paths, two sign-reversing involutions that cancel negative terms, the
//!   half-turn rotation symmetry, and the reading-word encoding used for the
//!   inversion-statistic identity.
//! * [`matching`] — partial matchings with the crossing statistic, whose
//!   generating polynomials give a third expression for the moments.

pub mod dss;
pub mod matching;
pub mod motzkin;

pub use dss::{
    black_stripe_involution, dss_rotate, dss_to_word, dss_weight, enumerate_dss,
    enumerate_plain_striped, extended_involution, rho, rho_inverse, word_inversions, Cell,
    DsConstraints, DsShape, Stripe,
};
pub use matching::{cm_genfunc, crossing, enumerate_matchings, p_poly, Matching};
pub use motzkin::{
    enumerate_motzkin, mot_star_closed_form, mot_star_sum, mot_star_symmetric_closed_form,
    motzkin_moment, binomial_transform_check, MotzkinPath, Step, StepKind, WeightTag,
};
