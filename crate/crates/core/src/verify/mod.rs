//! Exhaustive oracles used to certify answers.

mod pipeline;
mod range;
mod rigidity;

pub use pipeline::{rigid_pipeline, PipelineOutcome, PipelineSolver};
pub use range::{check_avoid_solution, in_range, input_count, RangeSet, BITMAP_MAX_OUTPUTS, DEFAULT_ENUM_LIMIT};
pub use rigidity::{
    gaussian_binomial, is_rigid, is_rigid_by_sparse_enumeration, search_cost, RigidityCertificate, Verdict,
    DEFAULT_RIGIDITY_BUDGET,
};
