//! Numerical verification suites with one pass/fail record per assertion.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{information_matrix, intensity_matrix, jacobian, preference_probs};
use crate::optimize::{equivalence_check, optimize_zstar, psi2, EQUIVALENCE_TOL};
use crate::oracle::{intensity_pinv, mc_preference_probs, random_instance};
use crate::special::{cdf_minus_half, h_third_derivative, lemma1_bounds, sf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lemmas,
    Equivalence,
    Mc,
    Identities,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemmas" => Ok(Suite::Lemmas),
            "equivalence" => Ok(Suite::Equivalence),
            "mc" => Ok(Suite::Mc),
            "identities" => Ok(Suite::Identities),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidArgument(format!("unknown suite {other:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Lemmas => "lemmas",
            Suite::Equivalence => "equivalence",
            Suite::Mc => "mc",
            Suite::Identities => "identities",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

/// One assertion: `observed` is compared against `bound` in the direction
/// stated by `relation`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub observed: f64,
    pub relation: &'static str,
    pub bound: f64,
}

impl Check {
    fn at_most(suite: Suite, name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Self { suite: suite.to_string(), name: name.into(), passed: observed <= bound, observed, relation: "<=", bound }
    }

    fn at_least(suite: Suite, name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Self { suite: suite.to_string(), name: name.into(), passed: observed >= bound, observed, relation: ">=", bound }
    }

    fn greater(suite: Suite, name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Self { suite: suite.to_string(), name: name.into(), passed: observed > bound, observed, relation: ">", bound }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub seed: u64,
    pub mc_cases: usize,
    pub mc_samples: u64,
    pub identity_cases: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: 42, mc_cases: 100, mc_samples: 1_000_000, identity_cases: 500 }
    }
}

fn grid(lo: f64, hi: f64, n: usize, include_lo: bool) -> impl Iterator<Item = f64> {
    let (start, steps) = if include_lo { (0, n - 1) } else { (1, n) };
    (start..=steps).map(move |i| lo + (hi - lo) * i as f64 / steps as f64)
}

fn lemmas() -> Result<Vec<Check>> {
    let s = Suite::Lemmas;
    let mut min_h3 = f64::INFINITY;
    for z in grid(0.0, 10.0, 1000, false) {
        min_h3 = min_h3.min(h_third_derivative(z)?);
    }
    let mut min_a = f64::INFINITY;
    for z in grid(1.0, 10.0, 1000, true) {
        let (a, _) = lemma1_bounds(z)?;
        min_a = min_a.min((sf(z) - a) / a);
    }
    // the Taylor bound is tight to order z^7; compare relative to the value
    let mut min_b = f64::INFINITY;
    for z in grid(0.0, 1.0, 1000, false) {
        let (_, b) = lemma1_bounds(z)?;
        min_b = min_b.min((b - cdf_minus_half(z)) / b);
    }
    Ok(vec![
        Check::at_most(s, "h3 at 0 vanishes", h_third_derivative(0.0)?.abs(), 1e-15),
        Check::greater(s, "min h3 on (0,10]", min_h3, 0.0),
        Check::at_least(s, "min (1-Phi(z) - a(z))/a(z) on [1,10]", min_a, 0.0),
        Check::at_least(s, "min (b(z) - Phi(z) + 1/2)/b(z) on (0,1]", min_b, -4.0 * f64::EPSILON),
    ])
}

fn equivalence() -> Result<Vec<Check>> {
    let s = Suite::Equivalence;
    let mut out = Vec::new();
    for p in 2..=8 {
        let p = p as f64;
        let z = optimize_zstar(p)?.z_star;
        let (max_psi, support) = match equivalence_check(z, p) {
            Ok(c) => (c.max_psi, c.psi_at_support[0].abs().max(c.psi_at_support[1].abs())),
            Err(Error::OptimalityRefuted { max, .. }) => (max, psi2(z, z, p).abs()),
            Err(e) => return Err(e),
        };
        out.push(Check::at_most(s, format!("p={p}: max psi2 on [-10,10]"), max_psi, EQUIVALENCE_TOL));
        out.push(Check::at_most(s, format!("p={p}: |psi2(+-z*)|"), support, EQUIVALENCE_TOL));
    }
    Ok(out)
}

fn monte_carlo(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let s = Suite::Mc;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut within = 0usize;
    let mut worst = 0.0f64;
    for case in 0..opts.mc_cases {
        let (cs, beta, spec) = random_instance(&mut rng);
        let exact = preference_probs(&cs, &beta, &spec)?.probs;
        let mc = mc_preference_probs(&cs, &beta, &spec, opts.mc_samples, opts.seed.wrapping_add(case as u64))?;
        let n = opts.mc_samples as f64;
        let score = exact
            .iter()
            .zip(&mc.p_hat)
            .map(|(p, q)| {
                let se = (p * (1.0 - p) / n).sqrt();
                let d = (p - q).abs();
                if se > 0.0 {
                    d / se
                } else if d == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            })
            .fold(0.0, f64::max);
        worst = worst.max(score);
        if score < 4.0 {
            within += 1;
        }
    }
    let frac = if opts.mc_cases == 0 { 1.0 } else { within as f64 / opts.mc_cases as f64 };
    Ok(vec![
        Check::at_least(s, format!("share of {} cases within 4 SE", opts.mc_cases), frac, 0.95),
        Check::at_least(s, "largest deviation in SE (informational)", worst, 0.0),
    ])
}

/// Largest violations of the structural identities over random instances.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct IdentityMaxima {
    pub prob_sum: f64,
    pub jacobian_rows: f64,
    pub intensity_rows: f64,
    pub triple_identity: f64,
    pub reduced_vs_pinv: f64,
    pub min_info_eigen: f64,
    pub evaluated: usize,
    pub skipped: usize,
}

pub fn identity_maxima(cases: usize, seed: u64) -> Result<IdentityMaxima> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mx = IdentityMaxima::default();
    for _ in 0..cases {
        let (cs, beta, spec) = random_instance(&mut rng);
        let p = preference_probs(&cs, &beta, &spec)?;
        mx.prob_sum = mx.prob_sum.max((p.probs.iter().sum::<f64>() - 1.0).abs());
        if p.is_collapsed() {
            mx.skipped += 1;
            continue;
        }
        let jac = jacobian(&cs, &beta, &spec)?;
        let lambda = match intensity_matrix(&cs, &beta, &spec) {
            Ok(l) => l.into_inner(),
            Err(Error::InfiniteInformation) => {
                mx.skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        mx.evaluated += 1;
        mx.jacobian_rows = mx.jacobian_rows.max(row_sums(&jac));
        mx.intensity_rows = mx.intensity_rows.max(row_sums(&lambda));
        if lambda.nrows() == 3 {
            for (i, j, l) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
                let d = 2.0 * lambda[(i, j)] - (lambda[(l, l)] - lambda[(i, i)] - lambda[(j, j)]);
                mx.triple_identity = mx.triple_identity.max(d.abs());
            }
        }
        let pinv = intensity_pinv(&cs, &beta, &spec)?;
        mx.reduced_vs_pinv = mx.reduced_vs_pinv.max((&lambda - pinv).amax());
        let m = information_matrix(&cs, &beta, &spec)?.into_inner();
        let eig = m.symmetric_eigenvalues().min();
        mx.min_info_eigen = mx.min_info_eigen.min(eig);
    }
    Ok(mx)
}

fn row_sums(m: &DMatrix<f64>) -> f64 {
    m.row_iter().map(|r| r.sum().abs()).fold(0.0, f64::max)
}

fn identities(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let s = Suite::Identities;
    let mx = identity_maxima(opts.identity_cases, opts.seed)?;
    Ok(vec![
        Check::at_most(s, "max |sum p - 1|", mx.prob_sum, 1e-10),
        Check::at_most(s, "max |J 1|", mx.jacobian_rows, 1e-12),
        Check::at_most(s, "max |Lambda 1|", mx.intensity_rows, 1e-10),
        Check::at_most(s, "max |2 L_ij - (L_ll - L_ii - L_jj)|", mx.triple_identity, 1e-9),
        Check::at_most(s, "max |Lambda reduced - Lambda pinv|", mx.reduced_vs_pinv, 1e-9),
        Check::at_least(s, "min eigenvalue of M", mx.min_info_eigen, -1e-10),
    ])
}

/// Runs one suite, or all of them.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Report> {
    let mut checks = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Lemmas {
        checks.extend(lemmas()?);
    }
    if all || suite == Suite::Equivalence {
        checks.extend(equivalence()?);
    }
    if all || suite == Suite::Mc {
        checks.extend(monte_carlo(opts)?);
    }
    if all || suite == Suite::Identities {
        checks.extend(identities(opts)?);
    }
    Ok(Report { checks })
}
