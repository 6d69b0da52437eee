//! Sharp constants, the four parametrized bound families for `AG_{Q,C}`,
//! elementary envelopes for `K` and `E`, and the classical prior bounds.

mod constants;
mod envelope;
mod family;
mod prior;
mod report;
mod theorem;

pub use constants::{sharp_constants, SharpConstants, R_MAX};
pub use envelope::{
    corollary28_margins, e_envelope, e_envelope_margins, envelope_terms, k_envelope,
    k_envelope_margins, k_polynomial_bounds, lemma26_margin, EEnvelope, EnvelopeTerms, KEnvelope,
    PolynomialBounds,
};
pub use family::{bound_gap, eval_bound, BoundFamily, Shape};
pub use prior::{prior_bounds_suite, STOLARSKY_PRODUCT_ORDERS};
pub use report::{Sample, Side, VerificationReport, Violation};
pub use theorem::{
    sharpness_probe_t34, verify_theorem, ProbeReport, TheoremId, PROBE_INSET, PROBE_POINTS,
};
