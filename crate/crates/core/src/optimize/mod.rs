//! Criterion maximization: the one-dimensional `z*` search, the
//! equivalence-theorem check, optimal paired designs and per-orbit searches
//! over the quantitative settings of triples.

mod orbit;
mod paired;
mod simplex;
mod zstar;

pub use orbit::{
    optimize_orbit_quantitative, optimize_orbit_with, sweep_orbits, OrbitSearch, SweepConfig, MAX_SWEEP_ATTRIBUTES,
};
pub use paired::{paired_optimal_design, PairedDesign, MAX_SUPPORT};
pub use simplex::{nelder_mead, SimplexOptions};
pub use zstar::{equivalence_check, optimize_zstar, psi2, EquivalenceCertificate, ZStarResult, EQUIVALENCE_TOL};
