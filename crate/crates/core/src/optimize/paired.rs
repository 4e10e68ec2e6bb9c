use serde::Serialize;

use super::zstar::{optimize_zstar, ZStarResult};
use crate::design::{d_criterion, design_information, Design};
use crate::error::{Error, Result};
use crate::model::{regression_vector, Alternative, Beta, ChoiceSet, InformationMatrix, ModelSpec};

/// Largest support the pair designs enumerate.
pub const MAX_SUPPORT: usize = 1 << 16;

/// Locally D-optimal paired-comparison design.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairedDesign {
    pub design: Design,
    /// Present with a quantitative attribute.
    pub z_star: Option<ZStarResult>,
    /// `t1 - t2` per support point, in support order.
    pub t_differences: Vec<f64>,
    pub information: InformationMatrix,
    pub criterion: f64,
}

/// All ordered pairs of level combinations that differ in every attribute.
fn full_depth_pairs(spec: &ModelSpec) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    let (k, v) = (spec.attributes(), spec.levels());
    let count = (v as f64 * (v - 1) as f64).powi(k as i32);
    if count > MAX_SUPPORT as f64 {
        return Err(Error::InvalidArgument(format!(
            "the design would have {count} support points, more than {MAX_SUPPORT}"
        )));
    }
    let mut out = vec![(Vec::with_capacity(k), Vec::with_capacity(k))];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|(a, b)| {
                (1..=v).flat_map(move |x| {
                    let (a, b) = (a.clone(), b.clone());
                    (1..=v).filter(move |&y| y != x).map(move |y| {
                        let mut a = a.clone();
                        let mut b = b.clone();
                        a.push(x);
                        b.push(y);
                        (a, b)
                    })
                })
            })
            .collect();
    }
    Ok(out)
}

/// Uniform design on the pairs that differ in every qualitative attribute.
///
/// With a quantitative attribute each pair is completed by
/// `t1 - t2 = (sigma_max z* - (f(x1) - f(x2))^T beta1) / beta2`, which
/// realizes the preference probability `Phi(z*)` everywhere; `z*` maximizes
/// `lambda_2(z)^p z^2` with `p` the number of parameters. In the standardized
/// case `beta1 = 0`, `beta2 = 1` this is the product design with
/// `t1 - t2 = sigma_max z*`. Without a quantitative attribute only
/// indifference is covered.
pub fn paired_optimal_design(spec: &ModelSpec, beta: &Beta) -> Result<PairedDesign> {
    beta.check(spec)?;
    let pairs = full_depth_pairs(spec)?;
    let w = 1.0 / pairs.len() as f64;
    if !spec.has_quantitative() {
        if !beta.is_qualitative_zero() {
            return Err(Error::InvalidArgument(
                "without a quantitative attribute only beta = 0 designs are available".into(),
            ));
        }
        let sets = pairs
            .into_iter()
            .map(|(a, b)| ChoiceSet::new(vec![Alternative::new(a), Alternative::new(b)]).map(|s| (s, w)))
            .collect::<Result<Vec<_>>>()?;
        let design = Design::new(sets)?;
        let information = design_information(&design, beta, spec)?;
        let criterion = d_criterion(&information, spec.sigma_max_sq());
        return Ok(PairedDesign { design, z_star: None, t_differences: vec![], information, criterion });
    }
    let beta2 = beta.beta2.unwrap_or(0.0);
    if beta2 == 0.0 {
        return Err(Error::NoFiniteOptimum);
    }
    let zs = optimize_zstar(spec.dim() as f64)?;
    let sigma_max = spec.sigma_max_sq().sqrt();
    let mut sets = Vec::with_capacity(pairs.len());
    let mut diffs = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        let fa = regression_vector(&Alternative::with_t(a.clone(), 0.0), spec)?;
        let fb = regression_vector(&Alternative::with_t(b.clone(), 0.0), spec)?;
        let shift: f64 = (fa - fb).iter().zip(&beta.beta1).map(|(x, y)| x * y).sum();
        let dt = (sigma_max * zs.z_star - shift) / beta2;
        diffs.push(dt);
        let cs = ChoiceSet::new(vec![Alternative::with_t(a, 0.5 * dt), Alternative::with_t(b, -0.5 * dt)])?;
        sets.push((cs, w));
    }
    let design = Design::new(sets)?;
    let information = design_information(&design, beta, spec)?;
    let criterion = d_criterion(&information, spec.sigma_max_sq());
    Ok(PairedDesign { design, z_star: Some(zs), t_differences: diffs, information, criterion })
}
