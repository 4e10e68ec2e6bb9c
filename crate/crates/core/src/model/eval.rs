use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::spec::{regression_matrix, Beta, ChoiceSet, ModelKind, ModelSpec};
use crate::error::{Error, Result};
use crate::special::{bvn, bvn_dx, cdf, pdf};

/// Mean vector and covariance matrix of the total utilities of the
/// alternatives in one choice set.
#[derive(Debug, Clone, PartialEq)]
pub struct UtilityMoments {
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

/// Pairwise moments of utility differences.
///
/// `z[(i, j)]` is the standardized mean difference `(mu_i - mu_j) / sigma_ij`.
/// For a zero-variance pair it is `0` when the means coincide and `+-inf`
/// otherwise. `rho[j]` is the correlation of `U_i - U_j` and `U_l - U_j` for
/// triples, `None` for pairs or when either difference is degenerate.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffMoments {
    pub sigma_sq: DMatrix<f64>,
    pub rho: Vec<Option<f64>>,
    pub z: DMatrix<f64>,
    pub degenerate: Vec<(usize, usize)>,
}

/// Preference probabilities with the bookkeeping of the collapse rule:
/// `ties` lists groups of indistinguishable alternatives that share their
/// probability equally, `dominated` the alternatives that are never chosen.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PreferenceProbs {
    pub probs: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub ties: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub dominated: Vec<usize>,
}

impl PreferenceProbs {
    pub fn is_collapsed(&self) -> bool {
        !self.ties.is_empty() || !self.dominated.is_empty()
    }
}

/// Symmetric `m x m` intensity matrix with zero row sums.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityMatrix(DMatrix<f64>);

impl IntensityMatrix {
    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }
}

/// Symmetric positive semidefinite `p x p` Fisher information.
#[derive(Debug, Clone, PartialEq)]
pub struct InformationMatrix(DMatrix<f64>);

impl InformationMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidArgument("information matrix must be square".into()));
        }
        if m.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("information matrix"));
        }
        Ok(Self(symmetrize(m)))
    }

    pub fn zeros(p: usize) -> Self {
        Self(DMatrix::zeros(p, p))
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    /// Determinant; negative round-off on singular matrices is reported as 0.
    pub fn det(&self) -> f64 {
        let d = match self.0.clone().cholesky() {
            Some(c) => c.l().diagonal().iter().map(|x| x * x).product(),
            None => self.0.determinant(),
        };
        d.max(0.0)
    }
}

/// Row-major nested rows, the serialized form of the matrix newtypes.
pub fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

impl Serialize for IntensityMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        matrix_rows(&self.0).serialize(s)
    }
}

impl Serialize for InformationMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        matrix_rows(&self.0).serialize(s)
    }
}

fn symmetrize(m: DMatrix<f64>) -> DMatrix<f64> {
    (&m + m.transpose()) * 0.5
}

// Relative thresholds below which a difference variance counts as zero and
// two means count as equal.
const VAR_EPS: f64 = 1e-12;
const MEAN_EPS: f64 = 1e-12;

/// Mean and covariance of the utilities under the model.
pub fn utility_moments(cs: &ChoiceSet, beta: &Beta, spec: &ModelSpec) -> Result<UtilityMoments> {
    cs.check(spec)?;
    beta.check(spec)?;
    let f = regression_matrix(cs, spec)?;
    let mean = f.transpose() * beta.as_vector();
    let alts = cs.alternatives();
    let m = alts.len();
    let k = spec.attributes() as f64;
    let cov = DMatrix::from_fn(m, m, |i, j| {
        let shared = match spec.kind() {
            ModelKind::Independent => {
                if i == j {
                    k
                } else {
                    0.0
                }
            }
            ModelKind::Dependent => alts[i].levels.iter().zip(&alts[j].levels).filter(|(a, b)| a == b).count() as f64,
        };
        let t = if i == j { spec.sigma_t_sq() } else { 0.0 };
        spec.sigma0_sq() * shared + t
    });
    UtilityMoments::new(mean, cov)
}

impl UtilityMoments {
    /// Two or three alternatives, finite entries, symmetric covariance.
    pub fn new(mean: DVector<f64>, cov: DMatrix<f64>) -> Result<Self> {
        let m = mean.len();
        if !(2..=3).contains(&m) || cov.shape() != (m, m) {
            return Err(Error::InvalidArgument(format!(
                "moments need 2 or 3 alternatives with matching covariance, got {m} and {:?}",
                cov.shape()
            )));
        }
        if mean.iter().chain(cov.iter()).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("utility moments"));
        }
        let scale = cov.amax().max(f64::MIN_POSITIVE);
        if (&cov - cov.transpose()).amax() > 1e-12 * scale {
            return Err(Error::InvalidArgument("utility covariance is not symmetric".into()));
        }
        Ok(Self { mean, cov })
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    pub fn len(&self) -> usize {
        self.mean.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mean.is_empty()
    }

    /// The same covariance with a different mean vector.
    pub fn with_mean(&self, mean: DVector<f64>) -> Result<Self> {
        Self::new(mean, self.cov.clone())
    }

    fn var_eps(&self) -> f64 {
        VAR_EPS * self.cov.diagonal().amax().max(f64::MIN_POSITIVE)
    }

    fn diff_var(&self, i: usize, j: usize) -> f64 {
        (self.cov[(i, i)] + self.cov[(j, j)] - 2.0 * self.cov[(i, j)]).max(0.0)
    }

    fn means_equal(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.mean[i], self.mean[j]);
        (a - b).abs() <= MEAN_EPS * (1.0 + a.abs().max(b.abs()))
    }

    pub fn diff_moments(&self) -> DiffMoments {
        let m = self.len();
        let eps = self.var_eps();
        let mut sigma_sq = DMatrix::zeros(m, m);
        let mut z = DMatrix::zeros(m, m);
        let mut degenerate = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let s2 = self.diff_var(i, j);
                sigma_sq[(i, j)] = s2;
                z[(i, j)] = if s2 > eps {
                    (self.mean[i] - self.mean[j]) / s2.sqrt()
                } else {
                    if i < j {
                        degenerate.push((i, j));
                    }
                    if self.means_equal(i, j) {
                        0.0
                    } else {
                        (self.mean[i] - self.mean[j]).signum() * f64::INFINITY
                    }
                };
            }
        }
        let rho = (0..m)
            .map(|j| {
                if m != 3 {
                    return None;
                }
                let (i, l) = others(j);
                let (a, b) = (sigma_sq[(i, j)], sigma_sq[(l, j)]);
                (a > eps && b > eps).then(|| {
                    let c = self.cov[(i, l)] - self.cov[(i, j)] - self.cov[(j, l)] + self.cov[(j, j)];
                    (c / (a * b).sqrt()).clamp(-1.0, 1.0)
                })
            })
            .collect();
        DiffMoments { sigma_sq, rho, z, degenerate }
    }

    /// Collapse of zero-variance differences: alternatives whose utilities
    /// differ by a constant are grouped; within a group the ones with the
    /// largest mean survive and tie, the rest are dominated.
    fn reduce(&self) -> Reduction {
        let m = self.len();
        let eps = self.var_eps();
        let mut class: Vec<usize> = (0..m).collect();
        for i in 0..m {
            for j in i + 1..m {
                if self.diff_var(i, j) <= eps {
                    let (ci, cj) = (class[i], class[j]);
                    class.iter_mut().filter(|c| **c == cj).for_each(|c| *c = ci);
                }
            }
        }
        let mut active = Vec::new();
        let mut ties = Vec::new();
        let mut dominated = Vec::new();
        let mut rep = vec![None; m];
        for c in 0..m {
            let members: Vec<usize> = (0..m).filter(|&j| class[j] == c).collect();
            let Some(&first) = members.first() else { continue };
            let best = members.iter().copied().fold(first, |b, j| {
                if self.mean[j] > self.mean[b] && !self.means_equal(j, b) {
                    j
                } else {
                    b
                }
            });
            let winners: Vec<usize> = members.iter().copied().filter(|&j| self.means_equal(j, best)).collect();
            for &j in &members {
                if winners.contains(&j) {
                    rep[j] = Some(winners[0]);
                } else {
                    dominated.push(j);
                }
            }
            if winners.len() > 1 {
                ties.push(winners.clone());
            }
            active.push(winners[0]);
        }
        active.sort_unstable();
        dominated.sort_unstable();
        ties.sort();
        Reduction { active, rep, ties, dominated }
    }

    fn sub(&self, idx: &[usize]) -> UtilityMoments {
        let n = idx.len();
        UtilityMoments {
            mean: DVector::from_fn(n, |i, _| self.mean[idx[i]]),
            cov: DMatrix::from_fn(n, n, |i, j| self.cov[(idx[i], idx[j])]),
        }
    }

    /// Probabilities of a set without degenerate differences.
    fn regular_probs(&self) -> Vec<f64> {
        let d = self.diff_moments();
        match self.len() {
            1 => vec![1.0],
            2 => {
                let z = d.z[(0, 1)];
                vec![cdf(z), cdf(-z)]
            }
            _ => (0..3)
                .map(|j| {
                    let (i, l) = others(j);
                    bvn(d.z[(j, i)], d.z[(j, l)], d.rho[j].expect("regular triple"))
                })
                .collect(),
        }
    }

    /// Jacobian of a set without degenerate differences.
    fn regular_jacobian(&self) -> Result<DMatrix<f64>> {
        let m = self.len();
        let d = self.diff_moments();
        let mut jac = DMatrix::zeros(m, m);
        match m {
            1 => {}
            2 => {
                let s = d.sigma_sq[(0, 1)].sqrt();
                let h = pdf(d.z[(0, 1)]) / s;
                jac[(0, 0)] = h;
                jac[(1, 1)] = h;
                jac[(0, 1)] = -h;
                jac[(1, 0)] = -h;
            }
            _ => {
                for j in 0..3 {
                    let rho = d.rho[j].ok_or(Error::DegenerateCorrelation)?;
                    if rho.abs() >= 1.0 {
                        return Err(Error::DegenerateCorrelation);
                    }
                    let (i, l) = others(j);
                    for (a, b) in [(i, l), (l, i)] {
                        let h = bvn_dx(d.z[(j, a)], d.z[(j, b)], rho) / d.sigma_sq[(j, a)].sqrt();
                        jac[(j, a)] -= h;
                        jac[(j, j)] += h;
                    }
                }
            }
        }
        Ok(jac)
    }

    fn check_regular(&self) -> Result<()> {
        match self.diff_moments().degenerate.first() {
            Some(&(i, j)) => Err(Error::DegeneratePair(i, j)),
            None => Ok(()),
        }
    }

    /// Preference probabilities, collapsing degenerate alternatives.
    pub fn preference_probs(&self) -> PreferenceProbs {
        let red = self.reduce();
        let active = self.sub(&red.active).regular_probs();
        let mut probs = vec![0.0; self.len()];
        for (j, r) in red.rep.iter().enumerate() {
            if let Some(r) = r {
                let pos = red.active.iter().position(|a| a == r).expect("active representative");
                let share = red.ties.iter().find(|t| t.contains(&j)).map_or(1, Vec::len);
                probs[j] = active[pos] / share as f64;
            }
        }
        PreferenceProbs { probs, ties: red.ties, dominated: red.dominated }
    }

    /// `d p / d mu`; only defined without degenerate differences.
    pub fn jacobian(&self) -> Result<DMatrix<f64>> {
        self.check_regular()?;
        self.regular_jacobian()
    }

    /// Intensity matrix `J^T Sigma^- J`, computed on the collapsed set by
    /// dropping the last category and embedded back with zero rows and
    /// columns for duplicates and dominated alternatives.
    pub fn intensity(&self) -> Result<IntensityMatrix> {
        let red = self.reduce();
        let m = self.len();
        let n = red.active.len();
        let mut lambda = DMatrix::zeros(m, m);
        if n >= 2 {
            let sub = self.sub(&red.active);
            let p = sub.regular_probs();
            if p.iter().any(|&x| !(x > 0.0 && x < 1.0)) {
                return Err(Error::InfiniteInformation);
            }
            let jac = sub.regular_jacobian()?;
            let r = n - 1;
            let cov = DMatrix::from_fn(r, r, |a, b| {
                if a == b {
                    let rest: f64 = (0..n).filter(|&c| c != a).map(|c| p[c]).sum();
                    p[a] * rest
                } else {
                    -p[a] * p[b]
                }
            });
            let jr = jac.rows(0, r).into_owned();
            let solved = cov.cholesky().ok_or(Error::InfiniteInformation)?.solve(&jr);
            let reduced = symmetrize(jr.transpose() * solved);
            for (a, &ia) in red.active.iter().enumerate() {
                for (b, &ib) in red.active.iter().enumerate() {
                    lambda[(ia, ib)] = reduced[(a, b)];
                }
            }
        }
        if lambda.iter().any(|x| !x.is_finite()) {
            return Err(Error::InfiniteInformation);
        }
        Ok(IntensityMatrix(lambda))
    }
}

struct Reduction {
    active: Vec<usize>,
    rep: Vec<Option<usize>>,
    ties: Vec<Vec<usize>>,
    dominated: Vec<usize>,
}

#[inline]
fn others(j: usize) -> (usize, usize) {
    match j {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Pairwise difference variances, correlations and standardized mean
/// differences.
pub fn diff_moments(cs: &ChoiceSet, beta: &Beta, spec: &ModelSpec) -> Result<DiffMoments> {
    Ok(utility_moments(cs, beta, spec)?.diff_moments())
}

/// Choice probabilities of the alternatives.
pub fn preference_probs(cs: &ChoiceSet, beta: &Beta, spec: &ModelSpec) -> Result<PreferenceProbs> {
    Ok(utility_moments(cs, beta, spec)?.preference_probs())
}

/// Jacobian of the choice probabilities with respect to the mean utilities.
pub fn jacobian(cs: &ChoiceSet, beta: &Beta, spec: &ModelSpec) -> Result<DMatrix<f64>> {
    utility_moments(cs, beta, spec)?.jacobian()
}

pub fn intensity_matrix(cs: &ChoiceSet, beta: &Beta, spec: &ModelSpec) -> Result<IntensityMatrix> {
    utility_moments(cs, beta, spec)?.intensity()
}

/// Information `F Lambda F^T` of a single choice set.
pub fn information_matrix(cs: &ChoiceSet, beta: &Beta, spec: &ModelSpec) -> Result<InformationMatrix> {
    let lambda = intensity_matrix(cs, beta, spec)?;
    let f = regression_matrix(cs, spec)?;
    InformationMatrix::new(&f * lambda.as_matrix() * f.transpose())
}
