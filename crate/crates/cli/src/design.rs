//! The `design` command: a JSON config file, overridden by flags.

use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use clap::Args;
use probit_design::model::matrix_rows;
use probit_design::{
    d_criterion, design_information, orbit_design, paired_optimal_design, preference_probs, sweep_orbits, Beta,
    ChoiceSet, Design, ModelKind, ModelSpec, Orbit, OrbitResult, SweepConfig, ZStarResult,
};
use serde::{Deserialize, Serialize};

use crate::output::{finish_csv, fixed, Format, Sink};

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignConfig {
    /// Model I (independent) or II (dependent).
    #[arg(long)]
    pub model: Option<String>,
    /// Number of qualitative attributes K.
    #[arg(long)]
    pub attributes: Option<usize>,
    /// Levels per qualitative attribute.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Alternatives per choice set, 2 or 3.
    #[arg(long)]
    pub set_size: Option<usize>,
    /// Part-worth variance, default 1/(2K).
    #[arg(long)]
    pub sigma0_sq: Option<f64>,
    /// Variance of the quantitative coefficient, default 0.
    #[arg(long)]
    pub sigma_t_sq: Option<f64>,
    /// Add a continuous quantitative attribute.
    #[arg(long)]
    pub quantitative: Option<bool>,
    /// Qualitative effects, K (v - 1) values.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub beta1: Option<Vec<f64>>,
    /// Quantitative effect, default 1.
    #[arg(long, allow_hyphen_values = true)]
    pub beta2: Option<f64>,
}

impl DesignConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("invalid config {}", path.display()))
    }

    /// Fields set in `self` win over those in `base`.
    pub fn over(self, base: Self) -> Self {
        Self {
            model: self.model.or(base.model),
            attributes: self.attributes.or(base.attributes),
            levels: self.levels.or(base.levels),
            set_size: self.set_size.or(base.set_size),
            sigma0_sq: self.sigma0_sq.or(base.sigma0_sq),
            sigma_t_sq: self.sigma_t_sq.or(base.sigma_t_sq),
            quantitative: self.quantitative.or(base.quantitative),
            beta1: self.beta1.or(base.beta1),
            beta2: self.beta2.or(base.beta2),
        }
    }

    fn resolve(&self) -> Result<(ModelSpec, Beta, usize)> {
        let kind: ModelKind = match &self.model {
            Some(m) => m.parse()?,
            None => ModelKind::Independent,
        };
        let k = self.attributes.context("the number of attributes is required (--attributes)")?;
        ensure!(k >= 1, "at least one attribute is required");
        let v = self.levels.unwrap_or(2);
        let m = self.set_size.unwrap_or(2);
        ensure!(m == 2 || m == 3, "set size must be 2 or 3, got {m}");
        ensure!(m == 2 || v == 2, "choice sets of three need binary attributes, got {v} levels");
        let quantitative = self.quantitative.unwrap_or(self.beta2.is_some() || self.sigma_t_sq.is_some());
        ensure!(quantitative || self.beta2.is_none(), "beta2 needs a quantitative attribute");
        let s0 = self.sigma0_sq.unwrap_or(0.5 / k as f64);
        let st = self.sigma_t_sq.unwrap_or(0.0);
        let spec = ModelSpec::new(kind, k, v, s0, st, quantitative)?;
        let beta1 = self.beta1.clone().unwrap_or_else(|| vec![0.0; spec.qualitative_dim()]);
        ensure!(
            beta1.len() == spec.qualitative_dim(),
            "beta1 needs {} values, got {}",
            spec.qualitative_dim(),
            beta1.len()
        );
        let beta = Beta::new(beta1, quantitative.then(|| self.beta2.unwrap_or(1.0)));
        Ok((spec, beta, m))
    }
}

#[derive(Debug, Serialize)]
struct SupportPoint<'a> {
    alternatives: &'a ChoiceSet,
    weight: f64,
    probs: Vec<f64>,
}

#[derive(Debug, Serialize)]
struct OrbitSummary {
    #[serde(flatten)]
    result: OrbitResult,
    /// Settings `(t1 - t3, t2 - t3)` at the given `beta2`.
    t_differences: Option<[f64; 2]>,
}

#[derive(Debug, Serialize)]
struct DesignReport<'a> {
    model: ModelKind,
    spec: &'a ModelSpec,
    beta: &'a Beta,
    #[serde(skip_serializing_if = "Option::is_none")]
    z_star: Option<ZStarResult>,
    /// `t1 - t2` per support point of a paired design.
    #[serde(skip_serializing_if = "Option::is_none")]
    t_differences: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    orbit: Option<OrbitSummary>,
    support: Vec<SupportPoint<'a>>,
    information: Vec<Vec<f64>>,
    criterion: f64,
}

fn best_orbit(spec: &ModelSpec) -> Result<OrbitResult> {
    let cfg = SweepConfig {
        sigma0_sq: Some(spec.sigma0_sq()),
        sigma_t_sq: spec.sigma_t_sq(),
        ..SweepConfig::new(spec.attributes(), spec.kind(), spec.has_quantitative())
    };
    let rows = sweep_orbits(&cfg)?;
    rows.into_iter().find(|r| r.best).context("no orbit available")
}

pub fn run(cfg: &DesignConfig, format: Format, full: bool, sink: &mut Sink) -> Result<()> {
    let (spec, beta, m) = cfg.resolve()?;
    let (design, z_star, t_differences, orbit) = if m == 2 {
        let d = paired_optimal_design(&spec, &beta)?;
        let dt = spec.has_quantitative().then_some(d.t_differences);
        (d.design, d.z_star, dt, None)
    } else {
        if !beta.is_qualitative_zero() {
            bail!("choice sets of three are optimized only for beta1 = 0");
        }
        let result = best_orbit(&spec)?;
        let t = match (result.z_opt, beta.beta2) {
            (Some(_), Some(0.0)) => {
                bail!("beta2 = 0 leaves the quantitative settings without a finite optimum")
            }
            (Some([z1, z2]), Some(b2)) => Some([z1 / b2, z2 / b2]),
            _ => None,
        };
        let z: Vec<f64> = t.map(|t| t.to_vec()).unwrap_or_default();
        let design = orbit_design(&Orbit::Triple(result.depth), &spec, &z)?;
        (design, None, None, Some(OrbitSummary { result, t_differences: t }))
    };
    let information = design_information(&design, &beta, &spec)?;
    let criterion = d_criterion(&information, spec.sigma_max_sq());
    let support = support(&design, &beta, &spec)?;
    match format {
        Format::Json => sink.json(&DesignReport {
            model: spec.kind(),
            spec: &spec,
            beta: &beta,
            z_star,
            t_differences,
            orbit,
            support,
            information: matrix_rows(information.as_matrix()),
            criterion,
        }),
        Format::Csv => {
            let mut w = sink.csv();
            w.write_record(["set", "weight", "alternative", "levels", "t", "prob"])?;
            for (i, s) in support.iter().enumerate() {
                for (j, a) in s.alternatives.alternatives().iter().enumerate() {
                    let levels: Vec<String> = a.levels.iter().map(|l| l.to_string()).collect();
                    w.write_record([
                        (i + 1).to_string(),
                        fixed(s.weight, 6, full),
                        (j + 1).to_string(),
                        levels.join(" "),
                        a.t.map(|t| fixed(t, 3, full)).unwrap_or_default(),
                        fixed(s.probs[j], 3, full),
                    ])?;
                }
            }
            finish_csv(w)
        }
    }
}

fn support<'a>(design: &'a Design, beta: &Beta, spec: &ModelSpec) -> Result<Vec<SupportPoint<'a>>> {
    design
        .points()
        .iter()
        .map(|p| {
            let probs = preference_probs(&p.alternatives, beta, spec)?.probs;
            Ok(SupportPoint { alternatives: &p.alternatives, weight: p.weight, probs })
        })
        .collect()
}
