use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};

/// Dependence structure between the part-worth utilities of different
/// alternatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ModelKind {
    /// All part-worths independent across alternatives (standard probit).
    #[serde(rename = "I")]
    Independent,
    /// Alternatives that show the same level of an attribute share that
    /// attribute's part-worth draw.
    #[serde(rename = "II")]
    Dependent,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::Independent => f.write_str("I"),
            ModelKind::Dependent => f.write_str("II"),
        }
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "1" | "i" | "independent" => Ok(ModelKind::Independent),
            "II" | "2" | "ii" | "dependent" => Ok(ModelKind::Dependent),
            other => Err(Error::InvalidSpec(format!("unknown model kind {other:?}"))),
        }
    }
}

/// Stochastic and structural assumptions of a choice experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelSpec {
    kind: ModelKind,
    attributes: usize,
    levels: usize,
    sigma0_sq: f64,
    sigma_t_sq: f64,
    quantitative: bool,
}

impl ModelSpec {
    /// `attributes` qualitative attributes with `levels` levels each, and
    /// optionally one quantitative attribute whose part-worth has variance
    /// `sigma_t_sq` (zero for a sharp decision).
    pub fn new(
        kind: ModelKind,
        attributes: usize,
        levels: usize,
        sigma0_sq: f64,
        sigma_t_sq: f64,
        quantitative: bool,
    ) -> Result<Self> {
        if attributes == 0 {
            return Err(Error::InvalidSpec("at least one qualitative attribute is required".into()));
        }
        if levels < 2 {
            return Err(Error::InvalidSpec(format!("levels must be >= 2, got {levels}")));
        }
        if !(sigma0_sq.is_finite() && sigma0_sq > 0.0) {
            return Err(Error::InvalidSpec(format!("sigma0_sq must be > 0, got {sigma0_sq}")));
        }
        if !(sigma_t_sq.is_finite() && sigma_t_sq >= 0.0) {
            return Err(Error::InvalidSpec(format!("sigma_t_sq must be >= 0, got {sigma_t_sq}")));
        }
        if !quantitative && sigma_t_sq != 0.0 {
            return Err(Error::InvalidSpec("sigma_t_sq given without a quantitative attribute".into()));
        }
        Ok(Self { kind, attributes, levels, sigma0_sq, sigma_t_sq, quantitative })
    }

    /// Qualitative attributes only.
    pub fn qualitative(kind: ModelKind, attributes: usize, levels: usize, sigma0_sq: f64) -> Result<Self> {
        Self::new(kind, attributes, levels, sigma0_sq, 0.0, false)
    }

    /// Binary qualitative attributes plus one quantitative attribute.
    pub fn with_quantitative(kind: ModelKind, attributes: usize, sigma0_sq: f64, sigma_t_sq: f64) -> Result<Self> {
        Self::new(kind, attributes, 2, sigma0_sq, sigma_t_sq, true)
    }

    /// Binary attributes scaled so that the maximal difference variance is
    /// one: `sigma0_sq = 1 / (2K)`, sharp quantitative attribute if present.
    pub fn normalized(kind: ModelKind, attributes: usize, quantitative: bool) -> Result<Self> {
        if attributes == 0 {
            return Err(Error::InvalidSpec("at least one qualitative attribute is required".into()));
        }
        Self::new(kind, attributes, 2, 0.5 / attributes as f64, 0.0, quantitative)
    }

    /// Same structure with both variances multiplied by `factor`.
    pub fn rescaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.kind,
            self.attributes,
            self.levels,
            self.sigma0_sq * factor,
            self.sigma_t_sq * factor,
            self.quantitative,
        )
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    /// Number of qualitative attributes `K`.
    pub fn attributes(&self) -> usize {
        self.attributes
    }

    /// Levels per qualitative attribute `v`.
    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn sigma0_sq(&self) -> f64 {
        self.sigma0_sq
    }

    pub fn sigma_t_sq(&self) -> f64 {
        self.sigma_t_sq
    }

    pub fn has_quantitative(&self) -> bool {
        self.quantitative
    }

    /// Largest possible variance of a utility difference,
    /// `2 (K sigma0^2 + sigma_t^2)`.
    pub fn sigma_max_sq(&self) -> f64 {
        2.0 * (self.attributes as f64 * self.sigma0_sq + self.sigma_t_sq)
    }

    /// Number of model parameters `p = K (v - 1)` (+1 with a quantitative attribute).
    pub fn dim(&self) -> usize {
        self.qualitative_dim() + usize::from(self.quantitative)
    }

    pub fn qualitative_dim(&self) -> usize {
        self.attributes * (self.levels - 1)
    }
}

/// One alternative: a level in `1..=v` per qualitative attribute and,
/// optionally, a value of the quantitative attribute.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Alternative {
    pub levels: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
}

impl Alternative {
    pub fn new(levels: Vec<usize>) -> Self {
        Self { levels, t: None }
    }

    pub fn with_t(levels: Vec<usize>, t: f64) -> Self {
        Self { levels, t: Some(t) }
    }

    pub(crate) fn check(&self, spec: &ModelSpec) -> Result<()> {
        if self.levels.len() != spec.attributes {
            return Err(Error::InvalidChoiceSet(format!(
                "alternative has {} attributes, model has {}",
                self.levels.len(),
                spec.attributes
            )));
        }
        if let Some(&level) = self.levels.iter().find(|&&l| l == 0 || l > spec.levels) {
            return Err(Error::LevelOutOfRange { level, levels: spec.levels });
        }
        match (self.t, spec.quantitative) {
            (Some(t), true) if !t.is_finite() => Err(Error::NonFinite("quantitative attribute")),
            (Some(_), true) | (None, false) => Ok(()),
            (None, true) => Err(Error::InvalidChoiceSet("missing quantitative value".into())),
            (Some(_), false) => Err(Error::InvalidChoiceSet("quantitative value given but model has none".into())),
        }
    }
}

/// The alternatives presented together.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ChoiceSet {
    alternatives: Vec<Alternative>,
}

impl ChoiceSet {
    /// Two or three alternatives sharing the number of attributes and the
    /// presence of the quantitative attribute.
    pub fn new(alternatives: Vec<Alternative>) -> Result<Self> {
        if !(2..=3).contains(&alternatives.len()) {
            return Err(Error::InvalidChoiceSet(format!(
                "choice sets hold 2 or 3 alternatives, got {}",
                alternatives.len()
            )));
        }
        let first = &alternatives[0];
        if alternatives.iter().any(|a| a.levels.len() != first.levels.len() || a.t.is_some() != first.t.is_some()) {
            return Err(Error::InvalidChoiceSet("alternatives are not of the same shape".into()));
        }
        Ok(Self { alternatives })
    }

    pub fn alternatives(&self) -> &[Alternative] {
        &self.alternatives
    }

    pub fn len(&self) -> usize {
        self.alternatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alternatives.is_empty()
    }

    pub(crate) fn check(&self, spec: &ModelSpec) -> Result<()> {
        self.alternatives.iter().try_for_each(|a| a.check(spec))
    }
}

/// Effect coefficients: `beta1` for the qualitative attributes (length
/// `K (v - 1)`), `beta2` for the quantitative attribute.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Beta {
    pub beta1: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta2: Option<f64>,
}

impl Beta {
    pub fn new(beta1: Vec<f64>, beta2: Option<f64>) -> Self {
        Self { beta1, beta2 }
    }

    /// Indifference, `beta = 0`.
    pub fn zero(spec: &ModelSpec) -> Self {
        Self { beta1: vec![0.0; spec.qualitative_dim()], beta2: spec.has_quantitative().then_some(0.0) }
    }

    /// The standardized case `beta1 = 0`, `beta2 = 1`.
    pub fn standardized(spec: &ModelSpec) -> Self {
        Self { beta1: vec![0.0; spec.qualitative_dim()], beta2: spec.has_quantitative().then_some(1.0) }
    }

    pub fn is_qualitative_zero(&self) -> bool {
        self.beta1.iter().all(|&b| b == 0.0)
    }

    pub(crate) fn check(&self, spec: &ModelSpec) -> Result<()> {
        if self.beta1.len() != spec.qualitative_dim() {
            return Err(Error::InvalidArgument(format!(
                "beta1 has length {}, expected {}",
                self.beta1.len(),
                spec.qualitative_dim()
            )));
        }
        if self.beta2.is_some() != spec.has_quantitative() {
            return Err(Error::InvalidArgument(
                "beta2 must be given exactly when the model has a quantitative attribute".into(),
            ));
        }
        if self.beta1.iter().chain(self.beta2.iter()).any(|b| !b.is_finite()) {
            return Err(Error::NonFinite("beta"));
        }
        Ok(())
    }

    pub(crate) fn as_vector(&self) -> DVector<f64> {
        DVector::from_iterator(
            self.beta1.len() + usize::from(self.beta2.is_some()),
            self.beta1.iter().copied().chain(self.beta2),
        )
    }
}

/// Comparison depth of a choice set: the number of qualitative attributes
/// in which two alternatives differ, per pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ComparisonDepth {
    Pair(usize),
    /// `(d12, d13, d23)`.
    Triple([usize; 3]),
}

/// Effect coding of `level` out of `v` levels: the `level`-th unit vector
/// of length `v - 1`, or all `-1` for the last level.
pub fn effect_code(level: usize, v: usize) -> Result<Vec<f64>> {
    if v < 2 || level == 0 || level > v {
        return Err(Error::LevelOutOfRange { level, levels: v });
    }
    Ok(if level == v {
        vec![-1.0; v - 1]
    } else {
        let mut e = vec![0.0; v - 1];
        e[level - 1] = 1.0;
        e
    })
}

/// Stacked effect codes of all qualitative attributes followed by the
/// quantitative value, if any.
pub fn regression_vector(a: &Alternative, spec: &ModelSpec) -> Result<DVector<f64>> {
    a.check(spec)?;
    let mut f = Vec::with_capacity(spec.dim());
    for &level in &a.levels {
        f.extend(effect_code(level, spec.levels)?);
    }
    f.extend(a.t);
    Ok(DVector::from_vec(f))
}

/// The `p x m` multivariate regression function: one column per alternative.
pub fn regression_matrix(cs: &ChoiceSet, spec: &ModelSpec) -> Result<DMatrix<f64>> {
    let cols = cs.alternatives().iter().map(|a| regression_vector(a, spec)).collect::<Result<Vec<_>>>()?;
    Ok(DMatrix::from_columns(&cols))
}

fn differing(a: &Alternative, b: &Alternative) -> usize {
    a.levels.iter().zip(&b.levels).filter(|(x, y)| x != y).count()
}

/// Pairwise count of differing qualitative levels; the quantitative
/// attribute does not contribute.
pub fn comparison_depth(cs: &ChoiceSet) -> ComparisonDepth {
    let a = cs.alternatives();
    match a.len() {
        2 => ComparisonDepth::Pair(differing(&a[0], &a[1])),
        _ => ComparisonDepth::Triple([differing(&a[0], &a[1]), differing(&a[0], &a[2]), differing(&a[1], &a[2])]),
    }
}
