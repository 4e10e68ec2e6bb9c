//! Independent checks: simulated choices, finite-difference Jacobians,
//! pseudo-inverse intensities and brute-force orbit enumeration.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::design::{Design, Orbit};
use crate::error::{Error, Result};
use crate::model::{
    comparison_depth, regression_vector, utility_moments, Alternative, Beta, ChoiceSet, ComparisonDepth, ModelKind,
    ModelSpec,
};

/// Simulated choice frequencies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McEstimate {
    pub p_hat: Vec<f64>,
    /// `sqrt(p_hat (1 - p_hat) / n)`.
    pub std_err: Vec<f64>,
    pub n_samples: u64,
    pub seed: u64,
}

pub const MIN_MC_SAMPLES: u64 = 10_000;
/// Draws per shard. Shard `s` uses ChaCha8 seeded with `seed` on stream `s`,
/// so estimates do not depend on the number of threads.
pub const MC_SHARD: u64 = 1 << 16;

/// Simulates utility maximization. Each draw takes, in this order, one
/// standard normal per attribute and level (dependent utilities) or per
/// attribute and alternative (independent utilities), then one per
/// alternative for the quantitative part-worth if `sigma_t > 0`, and a
/// uniform index only when several alternatives tie for the maximum.
pub fn mc_preference_probs(cs: &ChoiceSet, beta: &Beta, spec: &ModelSpec, n: u64, seed: u64) -> Result<McEstimate> {
    if n < MIN_MC_SAMPLES {
        return Err(Error::InvalidArgument(format!("need at least {MIN_MC_SAMPLES} samples, got {n}")));
    }
    beta.check(spec)?;
    let m = cs.len();
    let bvec = DVector::from_iterator(spec.dim(), beta.beta1.iter().copied().chain(beta.beta2));
    let mean: Vec<f64> =
        cs.alternatives().iter().map(|a| regression_vector(a, spec).map(|f| f.dot(&bvec))).collect::<Result<_>>()?;
    let levels: Vec<&[usize]> = cs.alternatives().iter().map(|a| a.levels.as_slice()).collect();
    let (k, v) = (spec.attributes(), spec.levels());
    let s0 = spec.sigma0_sq().sqrt();
    let st = spec.sigma_t_sq().sqrt();
    let kind = spec.kind();

    let shards = n.div_ceil(MC_SHARD);
    let counts = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s);
            let draws = MC_SHARD.min(n - s * MC_SHARD);
            let mut counts = vec![0u64; m];
            let mut u = vec![0.0; m];
            let mut shared = vec![0.0; v];
            let mut best = Vec::with_capacity(m);
            for _ in 0..draws {
                u.copy_from_slice(&mean);
                for attr in 0..k {
                    match kind {
                        ModelKind::Dependent => {
                            for x in shared.iter_mut() {
                                *x = rng.sample::<f64, _>(StandardNormal);
                            }
                            for j in 0..m {
                                u[j] += s0 * shared[levels[j][attr] - 1];
                            }
                        }
                        ModelKind::Independent => {
                            for x in u.iter_mut() {
                                *x += s0 * rng.sample::<f64, _>(StandardNormal);
                            }
                        }
                    }
                }
                if st > 0.0 {
                    for x in u.iter_mut() {
                        *x += st * rng.sample::<f64, _>(StandardNormal);
                    }
                }
                let top = u.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                best.clear();
                best.extend((0..m).filter(|&j| u[j] == top));
                let pick = if best.len() == 1 { best[0] } else { best[rng.random_range(0..best.len())] };
                counts[pick] += 1;
            }
            counts
        })
        .reduce(|| vec![0u64; m], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect());
    let nf = n as f64;
    let p_hat: Vec<f64> = counts.iter().map(|&c| c as f64 / nf).collect();
    let std_err = p_hat.iter().map(|p| (p * (1.0 - p) / nf).sqrt()).collect();
    Ok(McEstimate { p_hat, std_err, n_samples: n, seed })
}

/// Central differences of the preference probabilities in the mean
/// utilities: entry `(j, i)` approximates `d p_j / d mu_i`.
pub fn fd_jacobian(cs: &ChoiceSet, beta: &Beta, spec: &ModelSpec, step: f64) -> Result<DMatrix<f64>> {
    if !(1e-6..=1e-3).contains(&step) {
        return Err(Error::InvalidArgument(format!("step must lie in [1e-6, 1e-3], got {step}")));
    }
    let moments = utility_moments(cs, beta, spec)?;
    let m = moments.len();
    let mut jac = DMatrix::zeros(m, m);
    for i in 0..m {
        let mut up = moments.mean().clone();
        let mut down = moments.mean().clone();
        up[i] += step;
        down[i] -= step;
        let pu = moments.with_mean(up)?.preference_probs().probs;
        let pd = moments.with_mean(down)?.preference_probs().probs;
        for j in 0..m {
            jac[(j, i)] = (pu[j] - pd[j]) / (2.0 * step);
        }
    }
    Ok(jac)
}

fn probs_and_jacobian(cs: &ChoiceSet, beta: &Beta, spec: &ModelSpec) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let moments = utility_moments(cs, beta, spec)?;
    let jac = moments.jacobian()?;
    let p = moments.preference_probs().probs;
    if p.iter().any(|&x| !(x > 0.0 && x < 1.0)) {
        return Err(Error::InfiniteInformation);
    }
    Ok((p, jac))
}

/// `J^T Sigma^+ J` with the Moore-Penrose inverse of the full multinomial
/// covariance `Sigma = diag(p) - p p^T`; non-degenerate sets only.
///
/// `Sigma` has null space spanned by `u = 1/sqrt(m)`, so
/// `Sigma^+ = (Sigma + u u^T)^-1 - u u^T`, and `u^T J = 0` drops the second
/// term. The solve is refined iteratively since `Sigma` is badly scaled when
/// one probability is tiny.
pub fn intensity_pinv(cs: &ChoiceSet, beta: &Beta, spec: &ModelSpec) -> Result<DMatrix<f64>> {
    let (p, jac) = probs_and_jacobian(cs, beta, spec)?;
    let pv = DVector::from_vec(p);
    let sigma = DMatrix::from_diagonal(&pv) - &pv * pv.transpose();
    let pinv_j = symmetric_pinv_apply(&sigma, &jac)?;
    Ok(jac.transpose() * pinv_j)
}

/// `A^+ B` for symmetric `A` with null space spanned by the all-ones vector
/// and `B` whose columns are orthogonal to it.
pub fn symmetric_pinv_apply(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let m = a.nrows();
    let aug = a + DMatrix::from_element(m, m, 1.0 / m as f64);
    let lu = aug.clone().lu();
    let mut x = lu.solve(b).ok_or(Error::InfiniteInformation)?;
    for _ in 0..3 {
        let r = b - &aug * &x;
        x += lu.solve(&r).ok_or(Error::InfiniteInformation)?;
    }
    Ok(x)
}

/// `J^T diag(1/p) J`; `diag(1/p)` is a generalized inverse of `Sigma`.
pub fn intensity_g_inverse(cs: &ChoiceSet, beta: &Beta, spec: &ModelSpec) -> Result<DMatrix<f64>> {
    let (p, jac) = probs_and_jacobian(cs, beta, spec)?;
    let inv = DMatrix::from_diagonal(&DVector::from_iterator(p.len(), p.iter().map(|x| 1.0 / x)));
    Ok(jac.transpose() * inv * jac)
}

pub const MAX_ENUMERATION_ATTRIBUTES: usize = 5;

/// The uniform design on every choice set of the orbit with `K` binary
/// attributes, listed by brute force over all level assignments. `t` holds
/// the quantitative settings as in [`crate::design::evaluate_orbit`].
pub fn enumerate_orbit_designs(orbit: &Orbit, attributes: usize, t: Option<&[f64]>) -> Result<Design> {
    if attributes == 0 || attributes > MAX_ENUMERATION_ATTRIBUTES {
        return Err(Error::InvalidArgument(format!(
            "enumeration supports 1..={MAX_ENUMERATION_ATTRIBUTES} attributes, got {attributes}"
        )));
    }
    let (m, target) = match orbit {
        Orbit::Pair(d) => (2, ComparisonDepth::Pair(*d)),
        Orbit::Triple(d) => (3, ComparisonDepth::Triple(d.depths())),
    };
    if let Some(t) = t {
        if t.len() != m - 1 {
            return Err(Error::InvalidArgument(format!("expected {} quantitative settings", m - 1)));
        }
    }
    let tvals = t.map(|t| t.iter().copied().chain([0.0]).collect::<Vec<f64>>());
    let bits = m * attributes;
    let mut sets = Vec::new();
    for code in 0u32..(1 << bits) {
        let alts: Vec<Alternative> = (0..m)
            .map(|j| Alternative {
                levels: (0..attributes).map(|a| 1 + ((code >> (j * attributes + a)) & 1) as usize).collect(),
                t: tvals.as_ref().map(|t| t[j]),
            })
            .collect();
        let cs = ChoiceSet::new(alts)?;
        if comparison_depth(&cs) == target {
            sets.push(cs);
        }
    }
    if sets.is_empty() {
        return Err(Error::InfeasibleDepth(format!("{orbit:?} with K = {attributes}")));
    }
    Design::uniform(sets)
}

/// A random model, choice set and parameter for property suites: both
/// model kinds, pairs (two or three levels) and triples (binary levels),
/// with and without a quantitative attribute.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R) -> (ChoiceSet, Beta, ModelSpec) {
    let kind = if rng.random_bool(0.5) { ModelKind::Independent } else { ModelKind::Dependent };
    let m = rng.random_range(2..=3);
    let k = rng.random_range(1..=4);
    let v = if m == 2 { rng.random_range(2..=3) } else { 2 };
    let quantitative = rng.random_bool(0.5);
    let s0 = rng.random_range(0.05..0.5);
    let st = if quantitative && rng.random_bool(0.5) { rng.random_range(0.0..0.5) } else { 0.0 };
    let spec = ModelSpec::new(kind, k, v, s0, st, quantitative).expect("valid random spec");
    let alts = (0..m)
        .map(|_| Alternative {
            levels: (0..k).map(|_| rng.random_range(1..=v)).collect(),
            t: quantitative.then(|| rng.random_range(-1.5..1.5)),
        })
        .collect();
    let beta = Beta::new(
        (0..spec.qualitative_dim()).map(|_| rng.random_range(-0.8..0.8)).collect(),
        quantitative.then(|| rng.random_range(-1.5..1.5)),
    );
    (ChoiceSet::new(alts).expect("valid random set"), beta, spec)
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;
    use crate::design::{design_information, orbit_information, OrbitTriple};
    use crate::model::jacobian;

    #[test]
    fn penrose_conditions() {
        for p in [vec![0.3, 0.7], vec![0.005, 0.995], vec![0.2, 0.5, 0.3], vec![1e-4, 0.4999, 0.5]] {
            let pv = DVector::from_vec(p);
            let a = DMatrix::from_diagonal(&pv) - &pv * pv.transpose();
            let m = a.nrows();
            let proj = DMatrix::identity(m, m) - DMatrix::from_element(m, m, 1.0 / m as f64);
            let g = symmetric_pinv_apply(&a, &proj).unwrap();
            let scale = g.amax();
            assert!((&a * &g * &a - &a).amax() < 1e-12 * scale);
            assert!((&g * &a * &g - &g).amax() < 1e-12 * scale * scale);
            assert!((&a * &g - (&a * &g).transpose()).amax() < 1e-12 * scale);
        }
    }

    #[test]
    fn orbit_sizes() {
        let d = OrbitTriple::new(1, 1, 0).unwrap();
        assert_eq!(enumerate_orbit_designs(&Orbit::Triple(d), 1, None).unwrap().len(), 2);
        let d = OrbitTriple::new(2, 1, 1).unwrap();
        assert_eq!(enumerate_orbit_designs(&Orbit::Triple(d), 2, None).unwrap().len(), 8);
        assert!(enumerate_orbit_designs(&Orbit::Pair(3), 2, None).is_err());
        assert!(enumerate_orbit_designs(&Orbit::Pair(1), 6, None).is_err());
    }

    #[test]
    fn enumeration_matches_closed_form() {
        let spec = ModelSpec::normalized(ModelKind::Dependent, 2, false).unwrap();
        let beta = Beta::zero(&spec);
        let orbit = Orbit::Triple(OrbitTriple::new(2, 1, 1).unwrap());
        let xi = enumerate_orbit_designs(&orbit, 2, None).unwrap();
        let a = design_information(&xi, &beta, &spec).unwrap();
        let b = orbit_information(&orbit, &spec, &beta, &[]).unwrap();
        assert_abs_diff_eq!(a.as_matrix(), b.as_matrix(), epsilon = 1e-10);
    }

    #[test]
    fn fd_matches_analytic_model_one() {
        let spec = ModelSpec::qualitative(ModelKind::Independent, 2, 2, 0.25).unwrap();
        let cs = ChoiceSet::new(vec![
            Alternative::new(vec![1, 1]),
            Alternative::new(vec![2, 2]),
            Alternative::new(vec![1, 2]),
        ])
        .unwrap();
        let beta = Beta::zero(&spec);
        let fd = fd_jacobian(&cs, &beta, &spec, 1e-4).unwrap();
        let an = jacobian(&cs, &beta, &spec).unwrap();
        assert_abs_diff_eq!(fd, an, epsilon = 1e-8);
        assert!(fd_jacobian(&cs, &beta, &spec, 1e-2).is_err());
    }

    #[test]
    fn mc_needs_enough_samples() {
        let spec = ModelSpec::qualitative(ModelKind::Independent, 1, 2, 0.5).unwrap();
        let cs = ChoiceSet::new(vec![Alternative::new(vec![1]), Alternative::new(vec![2])]).unwrap();
        assert!(mc_preference_probs(&cs, &Beta::zero(&spec), &spec, 100, 1).is_err());
    }

    #[test]
    fn mc_is_seeded() {
        let spec = ModelSpec::qualitative(ModelKind::Dependent, 2, 2, 0.25).unwrap();
        let cs = ChoiceSet::new(vec![Alternative::new(vec![1, 2]), Alternative::new(vec![2, 2])]).unwrap();
        let beta = Beta::new(vec![0.2, 0.1], None);
        let a = mc_preference_probs(&cs, &beta, &spec, 100_000, 7).unwrap();
        let b = mc_preference_probs(&cs, &beta, &spec, 100_000, 7).unwrap();
        assert_eq!(a, b);
        let c = mc_preference_probs(&cs, &beta, &spec, 100_000, 8).unwrap();
        assert_ne!(a.p_hat, c.p_hat);
    }
}
