use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::{cdf, lambda2, ln_lambda2, Probability};

/// Maximizer of `lambda_2(z)^p z^2` over `z > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZStarResult {
    pub z_star: f64,
    pub p_star: Probability,
    pub exponent: f64,
}

const LOWER: f64 = 1e-6;
const UPPER: f64 = 10.0;
const GOLDEN_TOL: f64 = 1e-8;

fn log_objective(z: f64, p: f64) -> f64 {
    p * ln_lambda2(z) + 2.0 * z.abs().ln()
}

/// Golden-section search on `(1e-6, 10]` for the log criterion
/// `p ln lambda_2(z) + 2 ln z`, finished with one parabolic step.
pub fn optimize_zstar(exponent: f64) -> Result<ZStarResult> {
    if !(exponent.is_finite() && exponent >= 1.0) {
        return Err(Error::InvalidArgument(format!("exponent must be >= 1, got {exponent}")));
    }
    let g = |z: f64| log_objective(z, exponent);
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (LOWER, UPPER);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    while b - a > GOLDEN_TOL {
        if gc >= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - r * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + r * (b - a);
            gd = g(d);
        }
    }
    let mut z = if gc >= gd { c } else { d };

    let h = 1e-4;
    let (g0, gm, gp) = (g(z), g(z - h), g(z + h));
    let curv = gp - 2.0 * g0 + gm;
    if curv < 0.0 {
        let step = 0.5 * h * (gm - gp) / curv;
        if step.abs() < h && g(z + step) >= g0 {
            z += step;
        }
    }
    if z <= LOWER * 1.5 || z >= UPPER - 1e-6 {
        return Err(Error::InvalidArgument("z* search ended on the boundary of its bracket".into()));
    }
    Ok(ZStarResult { z_star: z, p_star: Probability::new(cdf(z))?, exponent })
}

/// `psi_2(z) = lambda_2(z) (z^2 / m2 + (p - 1) / m0) - p` for the design
/// supported on `+-z*`; non-positive everywhere iff `z*` is optimal.
pub fn psi2(z: f64, z_star: f64, exponent: f64) -> f64 {
    let m0 = lambda2(z_star);
    let m2 = z_star * z_star * m0;
    lambda2(z) * (z * z / m2 + (exponent - 1.0) / m0) - exponent
}

/// Outcome of the equivalence-theorem check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceCertificate {
    pub z_star: f64,
    pub exponent: f64,
    pub grid_lo: f64,
    pub grid_hi: f64,
    pub grid_points: usize,
    pub max_psi: f64,
    pub argmax: f64,
    pub psi_at_support: [f64; 2],
}

pub const EQUIVALENCE_TOL: f64 = 1e-6;

/// Evaluates `psi_2` on 4001 points of `[-10, 10]` and at `+-z*`.
pub fn equivalence_check(z_star: f64, exponent: f64) -> Result<EquivalenceCertificate> {
    if !(z_star.is_finite() && z_star > 0.0) {
        return Err(Error::InvalidArgument(format!("z* must be positive, got {z_star}")));
    }
    if !(exponent.is_finite() && exponent >= 1.0) {
        return Err(Error::InvalidArgument(format!("exponent must be >= 1, got {exponent}")));
    }
    let (lo, hi, n) = (-10.0, 10.0, 4001);
    let mut max_psi = f64::NEG_INFINITY;
    let mut argmax = lo;
    for i in 0..n {
        let z = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let v = psi2(z, z_star, exponent);
        if v > max_psi {
            max_psi = v;
            argmax = z;
        }
    }
    let support = [psi2(z_star, z_star, exponent), psi2(-z_star, z_star, exponent)];
    if max_psi > EQUIVALENCE_TOL {
        return Err(Error::OptimalityRefuted { max: max_psi, at: argmax });
    }
    if let Some(&s) = support.iter().find(|s| s.abs() > EQUIVALENCE_TOL) {
        return Err(Error::OptimalityRefuted { max: s, at: z_star });
    }
    Ok(EquivalenceCertificate {
        z_star,
        exponent,
        grid_lo: lo,
        grid_hi: hi,
        grid_points: n,
        max_psi,
        argmax,
        psi_at_support: support,
    })
}
