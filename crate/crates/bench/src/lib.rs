//! Shared fixtures for the benchmarks.

use probit_design::{Alternative, Beta, ChoiceSet, ModelKind, ModelSpec, SweepConfig};

/// A non-degenerate triple under dependent utilities with a quantitative
/// attribute and correlated differences.
pub fn triple_fixture() -> (ChoiceSet, Beta, ModelSpec) {
    let spec = ModelSpec::new(ModelKind::Dependent, 4, 2, 0.125, 0.05, true).unwrap();
    let cs = ChoiceSet::new(vec![
        Alternative::with_t(vec![1, 1, 2, 1], 0.4),
        Alternative::with_t(vec![2, 1, 1, 2], -0.3),
        Alternative::with_t(vec![2, 2, 1, 1], 0.0),
    ])
    .unwrap();
    let beta = Beta::new(vec![0.2, -0.1, 0.3, 0.0], Some(1.0));
    (cs, beta, spec)
}

/// A paired comparison on the same model.
pub fn pair_fixture() -> (ChoiceSet, Beta, ModelSpec) {
    let (cs, beta, spec) = triple_fixture();
    let pair = ChoiceSet::new(cs.alternatives()[..2].to_vec()).unwrap();
    (pair, beta, spec)
}

/// The orbit sweep behind one row block of the Model II sharp table.
pub fn sharp_sweep(attributes: usize) -> SweepConfig {
    SweepConfig::new(attributes, ModelKind::Dependent, true)
}

/// The orbit sweep behind one row block of the Model I table.
pub fn independent_sweep(attributes: usize) -> SweepConfig {
    SweepConfig::new(attributes, ModelKind::Independent, true)
}
