//! Approximate designs, comparison-depth orbits and their information.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{
    information_matrix, utility_moments, Alternative, Beta, ChoiceSet, InformationMatrix, IntensityMatrix, ModelKind,
    ModelSpec, PreferenceProbs,
};

/// One support point of an approximate design.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesignPoint {
    pub alternatives: ChoiceSet,
    pub weight: f64,
}

/// A finitely supported probability measure on choice sets.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Design {
    points: Vec<DesignPoint>,
}

impl Design {
    /// Non-negative weights summing to one (within `1e-9`).
    pub fn new(points: Vec<(ChoiceSet, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("a design needs at least one support point".into()));
        }
        if points.iter().any(|(_, w)| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidArgument("design weights must be finite and >= 0".into()));
        }
        let total: f64 = points.iter().map(|(_, w)| w).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!("design weights sum to {total}, not 1")));
        }
        Ok(Self {
            points: points.into_iter().map(|(alternatives, weight)| DesignPoint { alternatives, weight }).collect(),
        })
    }

    /// Equal weights on the given sets.
    pub fn uniform(sets: Vec<ChoiceSet>) -> Result<Self> {
        let w = 1.0 / sets.len().max(1) as f64;
        Self::new(sets.into_iter().map(|s| (s, w)).collect())
    }

    pub fn points(&self) -> &[DesignPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Comparison depth `(d12, d13, d23)` of a triple orbit in canonical order
/// `d12 >= d13 >= d23`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct OrbitTriple {
    pub d12: usize,
    pub d13: usize,
    pub d23: usize,
}

impl OrbitTriple {
    /// Canonical, realizable depths only.
    pub fn new(d12: usize, d13: usize, d23: usize) -> Result<Self> {
        if !(d12 >= d13 && d13 >= d23) {
            return Err(Error::InfeasibleDepth(format!("({d12},{d13},{d23}) is not in canonical order")));
        }
        Self::ordered([d12, d13, d23])
    }

    /// The canonical representative of any realizable depth triple.
    pub fn canonical(d: [usize; 3]) -> Result<Self> {
        let mut n = Self::odd_counts_of(d)?;
        n.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self::from_odd_counts(n))
    }

    fn ordered(d: [usize; 3]) -> Result<Self> {
        Self::odd_counts_of(d)?;
        Ok(Self { d12: d[0], d13: d[1], d23: d[2] })
    }

    fn odd_counts_of(d: [usize; 3]) -> Result<[usize; 3]> {
        let [d12, d13, d23] = d.map(|x| x as i64);
        let twice = [d12 + d13 - d23, d12 + d23 - d13, d13 + d23 - d12];
        if twice.iter().any(|&x| x < 0 || x % 2 != 0) {
            return Err(Error::InfeasibleDepth(format!("({},{},{}) has no attribute pattern", d[0], d[1], d[2])));
        }
        Ok(twice.map(|x| (x / 2) as usize))
    }

    /// Orbit whose alternatives `j` are the odd one out in `n[j]` attributes.
    pub fn from_odd_counts(n: [usize; 3]) -> Self {
        Self { d12: n[0] + n[1], d13: n[0] + n[2], d23: n[1] + n[2] }
    }

    pub fn depths(&self) -> [usize; 3] {
        [self.d12, self.d13, self.d23]
    }

    /// `n_j`: number of attributes in which alternative `j` differs from
    /// the two others.
    pub fn odd_counts(&self) -> [usize; 3] {
        Self::odd_counts_of(self.depths()).expect("validated on construction")
    }

    /// Mean comparison depth `(d12 + d13 + d23) / 2`.
    pub fn mean_depth(&self) -> usize {
        self.odd_counts().iter().sum()
    }

    /// One choice set of the orbit with `K` binary attributes: alternative
    /// `j` shows level 1 exactly in the attributes where it is odd.
    pub fn representative(&self, attributes: usize, t: Option<[f64; 3]>) -> Result<ChoiceSet> {
        let n = self.odd_counts();
        if self.mean_depth() > attributes {
            return Err(Error::InfeasibleDepth(format!("{self} needs more than {attributes} attributes")));
        }
        let pattern: Vec<usize> = (0..3).flat_map(|j| std::iter::repeat(j).take(n[j])).collect();
        let alts = (0..3)
            .map(|j| {
                let mut levels: Vec<usize> = pattern.iter().map(|&odd| if odd == j { 1 } else { 2 }).collect();
                levels.resize(attributes, 2);
                Alternative { levels, t: t.map(|t| t[j]) }
            })
            .collect();
        ChoiceSet::new(alts)
    }
}

impl fmt::Display for OrbitTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.d12, self.d13, self.d23)
    }
}

/// An orbit of choice sets under level and attribute permutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Orbit {
    /// Pairs differing in exactly `d` attributes.
    Pair(usize),
    Triple(OrbitTriple),
}

/// Canonical orbits for `K` attributes and set size `m`. With
/// `full_profile` only triples of mean depth `K` (pairs of depth `K`) are
/// listed; otherwise every depth from 1 up. Triples come in decreasing
/// lexicographic order of `(d12, d13, d23)`.
pub fn enumerate_orbits(attributes: usize, m: usize, full_profile: bool) -> Result<Vec<Orbit>> {
    if attributes == 0 {
        return Err(Error::InvalidArgument("K must be >= 1".into()));
    }
    match m {
        2 if full_profile => Ok(vec![Orbit::Pair(attributes)]),
        2 => Ok((1..=attributes).map(Orbit::Pair).collect()),
        3 => {
            let mut out = Vec::new();
            for n1 in 0..=attributes {
                for n2 in 0..=n1 {
                    for n3 in 0..=n2 {
                        let d = n1 + n2 + n3;
                        if d >= 1 && d <= attributes && (!full_profile || d == attributes) {
                            out.push(OrbitTriple::from_odd_counts([n1, n2, n3]));
                        }
                    }
                }
            }
            out.sort_by_key(|o| std::cmp::Reverse(o.depths()));
            Ok(out.into_iter().map(Orbit::Triple).collect())
        }
        _ => Err(Error::InvalidArgument(format!("choice sets of size {m} are not supported"))),
    }
}

/// Probabilities, intensity and orbit-averaged information of one orbit at
/// fixed quantitative settings.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitEvaluation {
    /// Preference probabilities of the representative set.
    pub probs: PreferenceProbs,
    /// Intensity matrix of the representative set.
    pub intensity: IntensityMatrix,
    /// Information of the uniform design on the orbit.
    pub information: InformationMatrix,
}

fn check_orbit_inputs(orbit: &Orbit, spec: &ModelSpec, beta: &Beta, z: &[f64]) -> Result<()> {
    if !beta.is_qualitative_zero() {
        return Err(Error::InvalidArgument("orbit information requires zero qualitative effects (beta1 = 0)".into()));
    }
    let want = match (orbit, spec.has_quantitative()) {
        (_, false) => 0,
        (Orbit::Pair(_), true) => 1,
        (Orbit::Triple(_), true) => 2,
    };
    if z.len() != want {
        return Err(Error::InvalidArgument(format!(
            "expected {want} quantitative settings for {orbit:?}, got {}",
            z.len()
        )));
    }
    if z.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("quantitative settings"));
    }
    match orbit {
        Orbit::Pair(d) if *d == 0 || *d > spec.attributes() => {
            Err(Error::InfeasibleDepth(format!("pair depth {d} with K = {}", spec.attributes())))
        }
        Orbit::Triple(_) if spec.levels() != 2 => {
            Err(Error::InvalidSpec("triples are supported for binary attributes only".into()))
        }
        _ => Ok(()),
    }
}

/// Orbit average of `(f(i) - f(j)) (f(i) - f(j))^T` over ordered pairs of
/// distinct levels of one attribute.
fn level_pair_average(v: usize) -> Result<DMatrix<f64>> {
    let codes = (1..=v)
        .map(|l| crate::model::effect_code(l, v).map(nalgebra::DVector::from_vec))
        .collect::<Result<Vec<_>>>()?;
    let mut acc = DMatrix::zeros(v - 1, v - 1);
    for (i, a) in codes.iter().enumerate() {
        for (j, b) in codes.iter().enumerate() {
            if i != j {
                let d = a - b;
                acc += &d * d.transpose();
            }
        }
    }
    Ok(acc / (v * (v - 1)) as f64)
}

/// Evaluates the uniform design on an orbit, combined with the one-point
/// quantitative settings `z` (`t1 - t2` for pairs, `(t1 - t3, t2 - t3)`
/// for triples, empty without a quantitative attribute).
///
/// The qualitative block is exact: an attribute in which alternative `j` is
/// odd contributes `4 Lambda_jj` to its diagonal entry, and averaging over
/// level flips removes every off-diagonal entry.
pub fn evaluate_orbit(orbit: &Orbit, spec: &ModelSpec, beta: &Beta, z: &[f64]) -> Result<OrbitEvaluation> {
    check_orbit_inputs(orbit, spec, beta, z)?;
    let k = spec.attributes();
    let q = spec.qualitative_dim();
    let mut info = DMatrix::zeros(spec.dim(), spec.dim());
    let (cs, tdiff) = match orbit {
        Orbit::Pair(d) => {
            let a = Alternative { levels: vec![1; k], t: z.first().copied() };
            let mut levels = vec![1; k];
            levels[..*d].iter_mut().for_each(|l| *l = 2);
            let b = Alternative { levels, t: z.first().map(|_| 0.0) };
            (ChoiceSet::new(vec![a, b])?, z.first().map(|&z| vec![z, 0.0]))
        }
        Orbit::Triple(depth) => {
            let t = z.first().map(|_| [z[0], z[1], 0.0]);
            (depth.representative(k, t)?, t.map(|t| t.to_vec()))
        }
    };
    let moments = utility_moments(&cs, beta, spec)?;
    let probs = moments.preference_probs();
    let intensity = moments.intensity()?;
    let lambda = intensity.as_matrix();
    match orbit {
        Orbit::Pair(d) => {
            let block = level_pair_average(spec.levels())? * (lambda[(0, 0)] * *d as f64 / k as f64);
            let v1 = spec.levels() - 1;
            for a in 0..k {
                info.view_mut((a * v1, a * v1), (v1, v1)).copy_from(&block);
            }
        }
        Orbit::Triple(depth) => {
            let n = depth.odd_counts();
            let lambda_d: f64 = (0..3).map(|j| n[j] as f64 * lambda[(j, j)]).sum::<f64>() / k as f64;
            for a in 0..q {
                info[(a, a)] = 4.0 * lambda_d;
            }
        }
    }
    if let Some(t) = tdiff {
        let t = nalgebra::DVector::from_vec(t);
        info[(q, q)] = (t.transpose() * lambda * &t)[(0, 0)];
    }
    Ok(OrbitEvaluation { probs, intensity, information: InformationMatrix::new(info)? })
}

/// Information of the uniform design on an orbit (times a one-point
/// quantitative design).
pub fn orbit_information(orbit: &Orbit, spec: &ModelSpec, beta: &Beta, z: &[f64]) -> Result<InformationMatrix> {
    evaluate_orbit(orbit, spec, beta, z).map(|e| e.information)
}

/// The uniform design on every choice set of an orbit, built pattern by
/// pattern rather than by search, at the settings `z` of [`evaluate_orbit`].
/// Pairs allow any number of levels, triples need binary attributes.
pub fn orbit_design(orbit: &Orbit, spec: &ModelSpec, z: &[f64]) -> Result<Design> {
    check_orbit_inputs(orbit, spec, &Beta::zero(spec), z)?;
    let k = spec.attributes();
    let v = spec.levels();
    // per attribute: which alternatives differ, as counts of each pattern
    let (patterns, counts, m): (Vec<Vec<usize>>, Vec<usize>, usize) = match orbit {
        Orbit::Pair(d) => (vec![vec![], vec![0]], vec![k - d, *d], 2),
        Orbit::Triple(depth) => {
            let n = depth.odd_counts();
            let d = depth.mean_depth();
            if d > k {
                return Err(Error::InfeasibleDepth(format!("{depth} needs more than {k} attributes")));
            }
            (vec![vec![], vec![0], vec![1], vec![2]], vec![k - d, n[0], n[1], n[2]], 3)
        }
    };
    let mut size = (1..=k).map(|x| x as f64).product::<f64>();
    for (pat, &c) in patterns.iter().zip(&counts) {
        size /= (1..=c).map(|x| x as f64).product::<f64>();
        let per = if pat.is_empty() {
            v
        } else if m == 2 {
            v * (v - 1)
        } else {
            2
        };
        size *= (per as f64).powi(c as i32);
    }
    if size > crate::optimize::MAX_SUPPORT as f64 {
        return Err(Error::InvalidArgument(format!(
            "the orbit has {size} choice sets, more than {}",
            crate::optimize::MAX_SUPPORT
        )));
    }
    // level columns of one attribute for each pattern
    let columns = |pat: &[usize]| -> Vec<Vec<usize>> {
        match (pat.first(), m) {
            (None, _) => (1..=v).map(|l| vec![l; m]).collect(),
            (Some(_), 2) => (1..=v).flat_map(|a| (1..=v).filter(move |&b| b != a).map(move |b| vec![a, b])).collect(),
            (Some(&odd), _) => (1..=2).map(|l| (0..3).map(|j| if j == odd { l } else { 3 - l }).collect()).collect(),
        }
    };
    let mut partial: Vec<(Vec<Vec<usize>>, Vec<usize>)> = vec![(vec![Vec::with_capacity(k); m], counts)];
    for _ in 0..k {
        let mut next = Vec::new();
        for (levels, left) in partial {
            for (i, pat) in patterns.iter().enumerate() {
                if left[i] == 0 {
                    continue;
                }
                let mut rest = left.clone();
                rest[i] -= 1;
                for col in columns(pat) {
                    let mut l = levels.clone();
                    for j in 0..m {
                        l[j].push(col[j]);
                    }
                    next.push((l, rest.clone()));
                }
            }
        }
        partial = next;
    }
    let t: Option<Vec<f64>> = (!z.is_empty()).then(|| z.iter().copied().chain([0.0]).collect());
    let sets = partial
        .into_iter()
        .map(|(levels, _)| {
            let alts = levels
                .into_iter()
                .enumerate()
                .map(|(j, l)| Alternative { levels: l, t: t.as_ref().map(|t| t[j]) })
                .collect();
            ChoiceSet::new(alts)
        })
        .collect::<Result<Vec<_>>>()?;
    Design::uniform(sets)
}

/// Mean intensity `lambda_d` of a triple orbit: a quarter of each
/// qualitative diagonal entry of the orbit information.
pub fn mean_intensity(depth: &OrbitTriple, spec: &ModelSpec, beta: &Beta, z: &[f64]) -> Result<f64> {
    let e = evaluate_orbit(&Orbit::Triple(*depth), spec, beta, z)?;
    Ok(e.information.as_matrix()[(0, 0)] / 4.0)
}

/// Closed form of the mean intensity for dependent utilities at
/// indifference with a sharp or absent quantitative attribute:
/// `sum_j (1 + rho_j) / p_j / (4 pi sigma_max^2)` with
/// `p_j = 1/4 + asin(rho_j) / (2 pi)` and `rho_j = (K - d_il) / sqrt(d_ij d_jl)`.
pub fn mean_intensity_arcsine(depth: &OrbitTriple, spec: &ModelSpec) -> Result<f64> {
    if spec.kind() != ModelKind::Dependent || spec.sigma_t_sq() != 0.0 {
        return Err(Error::InvalidSpec("the arcsine form holds for Model II with sigma_t = 0".into()));
    }
    let k = spec.attributes() as f64;
    if depth.mean_depth() != spec.attributes() {
        return Err(Error::InfeasibleDepth(format!("{depth} is not full profile for K = {k}")));
    }
    let d = depth.depths().map(|x| x as f64);
    // d[pair index] for pairs (0,1), (0,2), (1,2)
    let pair = |i: usize, j: usize| match (i.min(j), i.max(j)) {
        (0, 1) => d[0],
        (0, 2) => d[1],
        _ => d[2],
    };
    let mut total = 0.0;
    for j in 0..3 {
        let (i, l) = match j {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let denom = pair(i, j) * pair(j, l);
        if denom == 0.0 {
            return Err(Error::DegenerateCorrelation);
        }
        let rho = (k - pair(i, l)) / denom.sqrt();
        if rho.abs() >= 1.0 {
            return Err(Error::DegenerateCorrelation);
        }
        let p = 0.25 + rho.asin() / (2.0 * PI);
        total += (1.0 + rho) / p;
    }
    Ok(total / (4.0 * PI * spec.sigma_max_sq()))
}

/// Normalized D-criterion `sigma_max^2 det(M)^(1/p)`; zero for singular `M`.
pub fn d_criterion(m: &InformationMatrix, sigma_max_sq: f64) -> f64 {
    let p = m.dim();
    if p == 0 {
        return 0.0;
    }
    match m.as_matrix().clone().cholesky() {
        Some(c) => {
            let log_det: f64 = c.l().diagonal().iter().map(|x| 2.0 * x.ln()).sum();
            let v = sigma_max_sq * (log_det / p as f64).exp();
            if v.is_finite() {
                v
            } else {
                0.0
            }
        }
        None => sigma_max_sq * m.det().powf(1.0 / p as f64),
    }
}

/// Weighted sum of the per-set information matrices.
pub fn design_information(xi: &Design, beta: &Beta, spec: &ModelSpec) -> Result<InformationMatrix> {
    let mut acc = DMatrix::zeros(spec.dim(), spec.dim());
    for point in xi.points() {
        if point.weight > 0.0 {
            acc += information_matrix(&point.alternatives, beta, spec)?.into_inner() * point.weight;
        }
    }
    InformationMatrix::new(acc)
}

/// One row of an orbit table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitResult {
    pub depth: OrbitTriple,
    /// Optimal `(t1 - t3, t2 - t3)`, absent without a quantitative attribute.
    pub z_opt: Option<[f64; 2]>,
    pub probs: PreferenceProbs,
    pub crit: f64,
    pub eff: f64,
    pub best: bool,
}

// Relative gap under which orbits count as equally good.
const BEST_TOL: f64 = 1e-9;

/// Efficiencies relative to the best orbit, which gets `eff = 1` and the
/// `best` flag (all orbits within a relative `1e-9` of the maximum do).
pub fn efficiency(mut results: Vec<OrbitResult>) -> Vec<OrbitResult> {
    let top = results.iter().map(|r| r.crit).fold(f64::NEG_INFINITY, f64::max);
    for r in &mut results {
        if top > 0.0 {
            r.eff = (r.crit / top).clamp(0.0, 1.0);
            r.best = r.crit >= top * (1.0 - BEST_TOL);
        } else {
            r.eff = 0.0;
            r.best = false;
        }
    }
    results
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;

    fn triples(k: usize, full: bool) -> Vec<[usize; 3]> {
        enumerate_orbits(k, 3, full)
            .unwrap()
            .into_iter()
            .map(|o| match o {
                Orbit::Triple(t) => t.depths(),
                Orbit::Pair(_) => unreachable!(),
            })
            .collect()
    }

    #[test]
    fn full_profile_orbits() {
        assert_eq!(triples(1, true), vec![[1, 1, 0]]);
        assert_eq!(triples(2, true), vec![[2, 2, 0], [2, 1, 1]]);
        assert_eq!(triples(3, true), vec![[3, 3, 0], [3, 2, 1], [2, 2, 2]]);
        assert_eq!(enumerate_orbits(4, 2, true).unwrap(), vec![Orbit::Pair(4)]);
        assert_eq!(enumerate_orbits(3, 2, false).unwrap().len(), 3);
    }

    #[test]
    fn partial_orbits_include_full() {
        let all = triples(3, false);
        assert!(all.contains(&[1, 1, 0]));
        assert!(all.contains(&[2, 1, 1]));
        assert!(triples(3, true).iter().all(|d| all.contains(d)));
    }

    #[test]
    fn odd_counts_and_canonical_form() {
        let t = OrbitTriple::new(3, 2, 1).unwrap();
        assert_eq!(t.odd_counts(), [2, 1, 0]);
        assert_eq!(t.mean_depth(), 3);
        assert!(OrbitTriple::new(1, 2, 1).is_err());
        assert!(OrbitTriple::new(2, 1, 0).is_err());
        assert_eq!(OrbitTriple::canonical([1, 2, 1]).unwrap(), OrbitTriple::new(2, 1, 1).unwrap());
    }

    #[test]
    fn representative_has_its_depth() {
        let t = OrbitTriple::new(3, 2, 1).unwrap();
        let cs = t.representative(4, None).unwrap();
        assert_eq!(crate::model::comparison_depth(&cs), crate::model::ComparisonDepth::Triple([3, 2, 1]));
        assert!(t.representative(2, None).is_err());
    }

    #[test]
    fn model_one_indifference_is_orbit_invariant() {
        for k in 1..=5 {
            let spec = ModelSpec::normalized(ModelKind::Independent, k, false).unwrap();
            let beta = Beta::zero(&spec);
            for o in enumerate_orbits(k, 3, true).unwrap() {
                let m = orbit_information(&o, &spec, &beta, &[]).unwrap();
                assert_abs_diff_eq!(d_criterion(&m, 1.0), 9.0 / PI, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn table_two_reference_values() {
        let spec = ModelSpec::normalized(ModelKind::Dependent, 2, false).unwrap();
        let beta = Beta::zero(&spec);
        let d = OrbitTriple::new(2, 1, 1).unwrap();
        assert_abs_diff_eq!(4.0 * mean_intensity(&d, &spec, &beta, &[]).unwrap(), 4.171, epsilon = 5e-4);
        let d = OrbitTriple::new(2, 2, 0).unwrap();
        let m = orbit_information(&Orbit::Triple(d), &spec, &beta, &[]).unwrap();
        assert_abs_diff_eq!(d_criterion(&m, 1.0), 8.0 / PI, epsilon = 1e-12);
        let spec = ModelSpec::normalized(ModelKind::Dependent, 3, false).unwrap();
        let d = OrbitTriple::new(2, 2, 2).unwrap();
        assert_abs_diff_eq!(4.0 * mean_intensity(&d, &spec, &Beta::zero(&spec), &[]).unwrap(), 4.297, epsilon = 5e-4);
    }

    #[test]
    fn arcsine_form_agrees() {
        for k in 2..=8 {
            for scale in [1.0, 0.37] {
                let spec = ModelSpec::normalized(ModelKind::Dependent, k, false).unwrap().rescaled(scale).unwrap();
                let beta = Beta::zero(&spec);
                for o in enumerate_orbits(k, 3, true).unwrap() {
                    let Orbit::Triple(d) = o else { unreachable!() };
                    if d.d23 == 0 {
                        assert!(mean_intensity_arcsine(&d, &spec).is_err());
                        continue;
                    }
                    let a = mean_intensity(&d, &spec, &beta, &[]).unwrap();
                    let b = mean_intensity_arcsine(&d, &spec).unwrap();
                    assert_abs_diff_eq!(a, b, epsilon = 1e-9 * a);
                }
            }
        }
    }

    #[test]
    fn pair_level_average_closed_form() {
        for v in 2..=5 {
            let m = level_pair_average(v).unwrap();
            let c = 2.0 / (v as f64 - 1.0);
            for i in 0..v - 1 {
                for j in 0..v - 1 {
                    let e = if i == j { 2.0 } else { 1.0 };
                    assert_abs_diff_eq!(m[(i, j)], c * e, epsilon = 1e-14);
                }
            }
        }
    }

    #[test]
    fn criterion_of_scalar_and_singular() {
        let m = InformationMatrix::new(DMatrix::identity(3, 3) * (9.0 / PI)).unwrap();
        assert_abs_diff_eq!(d_criterion(&m, 1.0), 9.0 / PI, epsilon = 1e-14);
        assert_eq!(d_criterion(&InformationMatrix::zeros(2), 1.0), 0.0);
    }

    #[test]
    fn efficiencies() {
        let row = |crit| OrbitResult {
            depth: OrbitTriple::new(1, 1, 0).unwrap(),
            z_opt: None,
            probs: PreferenceProbs { probs: vec![], ties: vec![], dominated: vec![] },
            crit,
            eff: 0.0,
            best: false,
        };
        let r = efficiency(vec![row(2.546), row(4.171)]);
        assert_abs_diff_eq!(r[0].eff, 0.610, epsilon = 5e-4);
        assert!(r[1].best && !r[0].best);
        assert_eq!(efficiency(vec![row(1.0)])[0].eff, 1.0);
    }

    #[test]
    fn design_weights_validated() {
        let cs = ChoiceSet::new(vec![Alternative::new(vec![1]), Alternative::new(vec![2])]).unwrap();
        assert!(Design::new(vec![(cs.clone(), 0.5)]).is_err());
        assert!(Design::new(vec![(cs.clone(), -0.5), (cs.clone(), 1.5)]).is_err());
        assert!(Design::new(vec![]).is_err());
        assert_eq!(Design::uniform(vec![cs.clone(), cs]).unwrap().points()[1].weight, 0.5);
    }

    #[test]
    fn single_point_design_information() {
        let spec = ModelSpec::qualitative(ModelKind::Dependent, 2, 2, 0.25).unwrap();
        let beta = Beta::new(vec![0.3, -0.2], None);
        let cs = ChoiceSet::new(vec![Alternative::new(vec![1, 1]), Alternative::new(vec![2, 1])]).unwrap();
        let xi = Design::new(vec![(cs.clone(), 1.0)]).unwrap();
        assert_eq!(design_information(&xi, &beta, &spec).unwrap(), information_matrix(&cs, &beta, &spec).unwrap());
    }
}
