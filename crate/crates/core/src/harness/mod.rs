//! Ground-truth verification, distribution tests, experiments and reports.

mod experiment;
mod report;
mod uniformity;
mod verify;

pub use experiment::{
    expected_collection_draws, query_scaling_experiment, ScalingConfig, ScalingReport, ScalingRow, VALUE_BAND,
};
pub use report::{InputSummary, OutputSummary, RunReport};
pub use uniformity::{goodness_of_fit, uniformity_of_counts, uniformity_test, GoodnessOfFit, UniformityReport};
pub use verify::{
    verify_cut, verify_spectral, CutCheckMode, CutCheckReport, SpectralCheckReport, SPECTRAL_CUT_LIMIT, VECTOR_SLACK,
};
