use rayon::prelude::*;
use serde::Serialize;

use super::simplex::{nelder_mead, SimplexOptions};
use crate::design::{efficiency, enumerate_orbits, evaluate_orbit, Orbit, OrbitResult, OrbitTriple};
use crate::error::{Error, Result};
use crate::model::{Beta, ModelKind, ModelSpec};

/// Settings of the multi-start search over the quantitative settings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitSearch {
    /// Start values per coordinate; starts form their Cartesian product.
    pub start_grid: Vec<f64>,
    pub simplex: SimplexOptions,
    /// Half-width and points per axis of the local verification grid.
    pub verify_half_width: f64,
    pub verify_points: usize,
}

impl Default for OrbitSearch {
    fn default() -> Self {
        Self {
            start_grid: vec![-2.0, 0.0, 2.0],
            simplex: SimplexOptions::default(),
            verify_half_width: 0.2,
            verify_points: 41,
        }
    }
}

impl OrbitSearch {
    fn validate(&self) -> Result<()> {
        if self.start_grid.is_empty() || self.start_grid.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("start grid must be non-empty and finite".into()));
        }
        let s = &self.simplex;
        if !(s.step > 0.0 && s.x_tol > 0.0 && s.f_tol > 0.0 && s.max_iter > 0) {
            return Err(Error::InvalidArgument("simplex tolerances must be > 0".into()));
        }
        if !(self.verify_half_width >= 0.0 && self.verify_points >= 1) {
            return Err(Error::InvalidArgument("verification grid must be non-empty".into()));
        }
        Ok(())
    }
}

// Starts are shifted off the symmetry lines, where the quantitative
// information vanishes.
const START_OFFSET: [f64; 2] = [0.1, 0.05];
// Relative slack when comparing criterion values and tie-break keys.
const CMP_TOL: f64 = 1e-9;

/// The settings `(z1, z2)` with `z3 = 0`, or just `z1` with `z2 = 0` when
/// alternatives 2 and 3 are indistinguishable.
fn settings(z: &[f64]) -> [f64; 2] {
    [z[0], z.get(1).copied().unwrap_or(0.0)]
}

/// Orbits whose two non-odd alternatives have identical utilities up to
/// their quantitative values: dependent utilities, no shared attribute
/// left to differ in, and a sharp quantitative part-worth.
fn collapses_to_pair(depth: &OrbitTriple, spec: &ModelSpec) -> bool {
    spec.kind() == ModelKind::Dependent && spec.sigma_t_sq() == 0.0 && depth.d23 == 0
}

fn log_det(depth: &OrbitTriple, spec: &ModelSpec, beta: &Beta, z: [f64; 2]) -> f64 {
    match evaluate_orbit(&Orbit::Triple(*depth), spec, beta, &z) {
        Ok(e) => {
            let v: f64 = e.information.as_matrix().diagonal().iter().map(|x| x.ln()).sum();
            if v.is_nan() {
                f64::NEG_INFINITY
            } else {
                v
            }
        }
        Err(_) => f64::NEG_INFINITY,
    }
}

/// Relabelings of the alternatives that keep the comparison depth, acting
/// on `t = (z1, z2, 0)`; for a collapsed orbit also `z -> -z`.
fn images(depth: &OrbitTriple, collapsed: bool, z: [f64; 2]) -> Vec<([f64; 2], [usize; 3])> {
    let n = depth.odd_counts();
    let t = [z[0], z[1], 0.0];
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::new();
    for p in perms {
        if (0..3).all(|i| n[p[i]] == n[i]) {
            let tp = [t[p[0]], t[p[1]], t[p[2]]];
            out.push(([tp[0] - tp[2], tp[1] - tp[2]], p));
        }
    }
    if collapsed {
        let neg: Vec<_> = out.iter().map(|(w, p)| ([-w[0], -w[1]], *p)).collect();
        out.extend(neg);
    }
    out
}

fn better_key(a: &[f64; 4], b: &[f64; 4]) -> bool {
    // larger, larger, smaller, smaller
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        if (x - y).abs() > CMP_TOL {
            return if i < 2 { x > y } else { x < y };
        }
    }
    false
}

/// Picks one representative among criterion-equivalent settings:
/// the largest probability of the first alternative (then the second) under
/// independent utilities, of the third (then the second) under dependent
/// utilities, then the smallest `|z2|` and `|z1|`.
fn canonical_settings(depth: &OrbitTriple, spec: &ModelSpec, beta: &Beta, z: [f64; 2], collapsed: bool) -> [f64; 2] {
    let mut best: Option<([f64; 2], [f64; 4])> = None;
    for (w, _) in images(depth, collapsed, z) {
        let Ok(e) = evaluate_orbit(&Orbit::Triple(*depth), spec, beta, &w) else { continue };
        let p = &e.probs.probs;
        let lead = match spec.kind() {
            ModelKind::Independent => [p[0], p[1]],
            ModelKind::Dependent => [p[2], p[1]],
        };
        let key = [lead[0], lead[1], w[1].abs(), w[0].abs()];
        if best.as_ref().map_or(true, |(_, k)| better_key(&key, k)) {
            best = Some((w, key));
        }
    }
    best.map_or(z, |(w, _)| w)
}

fn local_grid(center: &[f64], half: f64, points: usize) -> Vec<Vec<f64>> {
    let axis: Vec<f64> = if points == 1 {
        vec![0.0]
    } else {
        (0..points).map(|i| -half + 2.0 * half * i as f64 / (points - 1) as f64).collect()
    };
    match center.len() {
        1 => axis.iter().map(|a| vec![center[0] + a]).collect(),
        _ => axis.iter().flat_map(|a| axis.iter().map(move |b| vec![center[0] + a, center[1] + b])).collect(),
    }
}

/// Optimal one-point quantitative settings for the uniform design on a
/// full-profile triple orbit, in the standardized case `beta1 = 0`,
/// `beta2 = 1`, with default search settings.
pub fn optimize_orbit_quantitative(depth: &OrbitTriple, spec: &ModelSpec) -> Result<OrbitResult> {
    optimize_orbit_with(depth, spec, &OrbitSearch::default())
}

/// As [`optimize_orbit_quantitative`] with explicit search settings.
///
/// The search runs with `sigma_max = 1`; the reported settings are scaled
/// back to the input variances, the criterion is scale free.
pub fn optimize_orbit_with(depth: &OrbitTriple, spec: &ModelSpec, search: &OrbitSearch) -> Result<OrbitResult> {
    search.validate()?;
    if !spec.has_quantitative() {
        return Err(Error::InvalidSpec("orbit optimization needs a quantitative attribute".into()));
    }
    if depth.mean_depth() != spec.attributes() {
        return Err(Error::InfeasibleDepth(format!("{depth} is not full profile for K = {}", spec.attributes())));
    }
    let scale = spec.sigma_max_sq();
    let unit = spec.rescaled(1.0 / scale)?;
    let beta = Beta::standardized(&unit);
    let collapsed = collapses_to_pair(depth, &unit);
    let dims = if collapsed { 1 } else { 2 };
    let objective = |z: &[f64]| -log_det(depth, &unit, &beta, settings(z));
    let opts = search.simplex;

    let starts: Vec<Vec<f64>> = if dims == 1 {
        search.start_grid.iter().map(|a| vec![a + START_OFFSET[0]]).collect()
    } else {
        search
            .start_grid
            .iter()
            .flat_map(|a| search.start_grid.iter().map(move |b| vec![a + START_OFFSET[0], b + START_OFFSET[1]]))
            .collect()
    };
    let mut best: Option<(Vec<f64>, f64)> = None;
    for s in &starts {
        let (x, v) = nelder_mead(objective, s, &opts);
        if v.is_finite() && best.as_ref().map_or(true, |(_, b)| v < *b - 1e-12) {
            best = Some((x, v));
        }
    }
    let (mut x, mut v) = best.ok_or(Error::NoFiniteOptimum)?;

    // Local verification: restart from any grid point that beats the optimum.
    for _ in 0..10 {
        let challenger = local_grid(&x, search.verify_half_width, search.verify_points)
            .into_iter()
            .map(|g| {
                let fg = objective(&g);
                (g, fg)
            })
            .filter(|(_, fg)| fg.is_finite())
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match challenger {
            Some((g, fg)) if fg < v => {
                let (x2, v2) = nelder_mead(objective, &g, &opts);
                (x, v) = if v2 < fg { (x2, v2) } else { (g, fg) };
            }
            _ => break,
        }
    }

    let z = canonical_settings(depth, &unit, &beta, settings(&x), collapsed);
    let e = evaluate_orbit(&Orbit::Triple(*depth), &unit, &beta, &z)?;
    let p = unit.dim() as f64;
    let crit = (-v / p).exp();
    let sigma_max = scale.sqrt();
    Ok(OrbitResult {
        depth: *depth,
        z_opt: Some([z[0] * sigma_max, z[1] * sigma_max]),
        probs: e.probs,
        crit,
        eff: 1.0,
        best: false,
    })
}

/// One orbit table: every full-profile triple orbit for `K` attributes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub attributes: usize,
    pub kind: ModelKind,
    /// Defaults to `1 / (2K)`.
    pub sigma0_sq: Option<f64>,
    pub sigma_t_sq: f64,
    /// With a quantitative attribute each orbit is optimized over its
    /// settings; without one it is evaluated at indifference.
    pub quantitative: bool,
    /// Also list orbits of smaller mean comparison depth.
    pub include_partial: bool,
    pub search: OrbitSearch,
}

impl SweepConfig {
    pub fn new(attributes: usize, kind: ModelKind, quantitative: bool) -> Self {
        Self {
            attributes,
            kind,
            sigma0_sq: None,
            sigma_t_sq: 0.0,
            quantitative,
            include_partial: false,
            search: OrbitSearch::default(),
        }
    }

    pub fn spec(&self) -> Result<ModelSpec> {
        let k = self.attributes.max(1);
        let s0 = self.sigma0_sq.unwrap_or(0.5 / k as f64);
        ModelSpec::new(self.kind, self.attributes, 2, s0, self.sigma_t_sq, self.quantitative)
    }
}

pub const MAX_SWEEP_ATTRIBUTES: usize = 12;

/// Rows of an orbit table, in canonical orbit order, with efficiencies
/// relative to the best orbit.
pub fn sweep_orbits(cfg: &SweepConfig) -> Result<Vec<OrbitResult>> {
    if cfg.attributes > MAX_SWEEP_ATTRIBUTES {
        return Err(Error::InvalidArgument(format!(
            "K = {} exceeds the sweep limit {MAX_SWEEP_ATTRIBUTES}",
            cfg.attributes
        )));
    }
    let spec = cfg.spec()?;
    let orbits: Vec<OrbitTriple> = enumerate_orbits(cfg.attributes, 3, !cfg.include_partial)?
        .into_iter()
        .filter_map(|o| match o {
            Orbit::Triple(t) => Some(t),
            Orbit::Pair(_) => None,
        })
        .collect();
    let rows = orbits
        .par_iter()
        .map(|d| {
            if cfg.quantitative {
                optimize_orbit_with(d, &spec, &cfg.search)
            } else {
                let beta = Beta::zero(&spec);
                let e = evaluate_orbit(&Orbit::Triple(*d), &spec, &beta, &[])?;
                let crit = crate::design::d_criterion(&e.information, spec.sigma_max_sq());
                Ok(OrbitResult { depth: *d, z_opt: None, probs: e.probs, crit, eff: 1.0, best: false })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(efficiency(rows))
}
