//! Locally D-optimal designs for multinomial probit paired comparisons and
//! choice sets of three alternatives, with independent (Model I) or
//! level-sharing dependent (Model II) part-worth utilities.

pub mod design;
pub mod error;
pub mod model;
pub mod optimize;
pub mod oracle;
pub mod special;
pub mod verify;

pub use design::{
    d_criterion, design_information, efficiency, enumerate_orbits, evaluate_orbit, mean_intensity,
    mean_intensity_arcsine, orbit_design, orbit_information, Design, DesignPoint, Orbit, OrbitEvaluation, OrbitResult,
    OrbitTriple,
};
pub use error::{Error, Result};
pub use model::{
    comparison_depth, diff_moments, effect_code, information_matrix, intensity_matrix, jacobian, preference_probs,
    regression_matrix, regression_vector, utility_moments, Alternative, Beta, ChoiceSet, ComparisonDepth, DiffMoments,
    InformationMatrix, IntensityMatrix, ModelKind, ModelSpec, PreferenceProbs, UtilityMoments,
};
pub use optimize::{
    equivalence_check, optimize_orbit_quantitative, optimize_zstar, paired_optimal_design, sweep_orbits,
    EquivalenceCertificate, OrbitSearch, PairedDesign, SweepConfig, ZStarResult,
};
pub use oracle::{enumerate_orbit_designs, fd_jacobian, mc_preference_probs, McEstimate};
pub use special::{Correlation, Probability};
