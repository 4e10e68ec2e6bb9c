//! Alternatives, choice sets, utility moments, preference probabilities and
//! per-choice-set intensity and information matrices.

mod eval;
mod spec;

pub use eval::{
    diff_moments, information_matrix, intensity_matrix, jacobian, matrix_rows, preference_probs, utility_moments,
    DiffMoments, InformationMatrix, IntensityMatrix, PreferenceProbs, UtilityMoments,
};
pub use spec::{
    comparison_depth, effect_code, regression_matrix, regression_vector, Alternative, Beta, ChoiceSet, ComparisonDepth,
    ModelKind, ModelSpec,
};
