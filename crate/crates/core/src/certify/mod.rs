//! Exact certification that a regular elliptic `ι₁ι₂ι₃` has no finite order
//! within a bound, hence generates a non-discrete group.

pub mod candidate;
pub mod certificate;
pub mod lemmas;
pub mod search;

pub use candidate::{
    candidate_trace, circle_residual_exact, eight_r_squared, exact_circle_trace,
    trace_circle_residual, TraceCandidate,
};
pub use certificate::{certify_non_discrete, certify_with, Certificate, CheckRecord, Verdict};
pub use lemmas::{
    analyse_phi_triples, check_lemma1, check_lemma1_trace, check_lemma2, enumerate_phi_triples,
    Lemma1Check, Lemma2Check, PhiFamily,
};
pub use search::{run_search, search_finite_order_traces, Rejections, SearchOptions, SearchReport};
