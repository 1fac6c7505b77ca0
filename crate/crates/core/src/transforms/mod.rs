//! Circuit transformation passes.

mod constants;
mod decompose;
mod envelope;
mod homogenize;
mod read1;

pub use constants::eliminate_constants;
pub use decompose::{
    decompose, matching_lower_bound_report, Decomposition, DecompositionPair, MatchingReport,
};
pub use envelope::lower_envelope_circuit;
pub use homogenize::{degree_reduce_read_k, homogeneous_parts, HomogeneousParts};
pub use read1::{
    arithmetic_to_read1, or_of_prime_implicants, positive_version, replace_negated_literals,
};
