//! Standard-normal kernels and the probit intensity calculus.
//!
//! The univariate distribution function is evaluated through `erfc` so that
//! both tails keep full relative accuracy. The bivariate distribution function
//! follows Genz's refinement of the Drezner–Wesolowsky method: Gauss–Legendre
//! quadrature of Plackett's identity for moderate correlation and an
//! asymptotic expansion around the singular point for `|rho| >= 0.925`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `1 / sqrt(2 pi)`.
pub const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Above this `|z|` the marginal intensity is evaluated through the Mills
/// ratio instead of the product `Phi(z) (1 - Phi(z))`.
const MILLS_SWITCH: f64 = 8.0;

/// A probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Probability(f64);

impl Probability {
    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::ProbabilityOutOfRange(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

/// A correlation coefficient in `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Correlation(f64);

impl Correlation {
    pub fn new(value: f64) -> Result<Self> {
        if (-1.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::CorrelationOutOfRange(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

fn finite(z: f64, what: &'static str) -> Result<f64> {
    if z.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

// Unchecked kernels used on hot paths inside the crate.

#[inline]
pub(crate) fn pdf(z: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * z * z).exp()
}

#[inline]
pub(crate) fn cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z * FRAC_1_SQRT_2)
}

/// Upper tail `1 - Phi(z)`, accurate for large positive `z`.
#[inline]
pub(crate) fn sf(z: f64) -> f64 {
    0.5 * libm::erfc(z * FRAC_1_SQRT_2)
}

/// `Phi(z) - 1/2` without cancellation near zero.
#[inline]
pub(crate) fn cdf_minus_half(z: f64) -> f64 {
    0.5 * libm::erf(z * FRAC_1_SQRT_2)
}

/// Mills ratio `(1 - Phi(z)) / phi(z)` for `z >= MILLS_SWITCH`, by the
/// Laplace continued fraction evaluated with the modified Lentz method.
fn mills_ratio_tail(z: f64) -> f64 {
    debug_assert!(z >= MILLS_SWITCH);
    // R(z) = 1 / (z + 1 / (z + 2 / (z + 3 / (z + ...))))
    let tiny = 1e-300;
    let mut f = z;
    let mut c = z;
    let mut d = 0.0;
    for k in 1..200 {
        let a = k as f64;
        d = z + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = z + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    1.0 / f
}

/// `ln lambda_2(z)`; finite for every finite `z`.
pub(crate) fn ln_lambda2(z: f64) -> f64 {
    let a = z.abs();
    if a <= MILLS_SWITCH {
        2.0 * pdf(a).ln() - cdf(a).ln() - sf(a).ln()
    } else {
        let ln_pdf = -0.5 * a * a - 0.5 * (2.0 * PI).ln();
        ln_pdf - cdf(a).ln() - mills_ratio_tail(a).ln()
    }
}

#[inline]
pub(crate) fn lambda2(z: f64) -> f64 {
    let a = z.abs();
    if a <= MILLS_SWITCH {
        let p = pdf(a);
        p * p / (cdf(a) * sf(a))
    } else {
        ln_lambda2(a).exp()
    }
}

pub(crate) fn h(z: f64) -> f64 {
    let a = z.abs();
    if a <= MILLS_SWITCH {
        let p = pdf(a);
        cdf(a) * sf(a) / (p * p)
    } else {
        cdf(a) * mills_ratio_tail(a) / pdf(a)
    }
}

// Gauss-Legendre abscissae/weights on [-1, 1] (positive half), 6, 12 and 20 points.
const GL6_W: [f64; 3] = [0.1713244923791705, 0.3607615730481384, 0.4679139345726904];
const GL6_X: [f64; 3] = [0.9324695142031522, 0.6612093864662647, 0.238_619_186_083_197];
const GL12_W: [f64; 6] = [
    0.04717533638651177,
    0.1069393259953183,
    0.1600783285433464,
    0.2031674267230659,
    0.2334925365383547,
    0.2491470458134029,
];
const GL12_X: [f64; 6] = [
    0.9815606342467191,
    0.904_117_256_370_475,
    0.769_902_674_194_305,
    0.5873179542866171,
    0.3678314989981802,
    0.1252334085114692,
];
const GL20_W: [f64; 10] = [
    0.01761400713915212,
    0.04060142980038694,
    0.06267204833410906,
    0.08327674157670475,
    0.1019301198172404,
    0.1181945319615184,
    0.1316886384491766,
    0.1420961093183821,
    0.1491729864726037,
    0.1527533871307259,
];
const GL20_X: [f64; 10] = [
    0.9931285991850949,
    0.9639719272779138,
    0.912_234_428_251_326,
    0.8391169718222188,
    0.7463319064601508,
    0.636_053_680_726_515,
    0.5108670019508271,
    0.3737060887154196,
    0.2277858511416451,
    0.07652652113349733,
];

/// Upper orthant probability `P(X > h, Y > k)` for a standard bivariate
/// normal with correlation `r`.
fn bvn_upper(h: f64, k: f64, r: f64) -> f64 {
    if h == f64::INFINITY || k == f64::INFINITY {
        return 0.0;
    }
    if h == f64::NEG_INFINITY {
        return if k == f64::NEG_INFINITY { 1.0 } else { sf(k) };
    }
    if k == f64::NEG_INFINITY {
        return sf(h);
    }

    let (w, x): (&[f64], &[f64]) = if r.abs() < 0.3 {
        (&GL6_W, &GL6_X)
    } else if r.abs() < 0.75 {
        (&GL12_W, &GL12_X)
    } else {
        (&GL20_W, &GL20_X)
    };

    let mut hk = h * k;
    let mut bvn = 0.0;

    if r.abs() < 0.925 {
        let hs = (h * h + k * k) / 2.0;
        let asr = r.asin() / 2.0;
        for (&wi, &xi) in w.iter().zip(x) {
            for node in [1.0 - xi, 1.0 + xi] {
                let sn = (asr * node).sin();
                bvn += wi * ((sn * hk - hs) / (1.0 - sn * sn)).exp();
            }
        }
        return (bvn * asr / (2.0 * PI) + sf(h) * sf(k)).clamp(0.0, 1.0);
    }

    let mut k = k;
    if r < 0.0 {
        k = -k;
        hk = -hk;
    }
    if r.abs() < 1.0 {
        let a_s = (1.0 - r) * (1.0 + r);
        let mut a = a_s.sqrt();
        let bs = (h - k) * (h - k);
        let c = (4.0 - hk) / 8.0;
        let d = (12.0 - hk) / 80.0;
        let asr = -(bs / a_s + hk) / 2.0;
        if asr > -100.0 {
            bvn = a * asr.exp() * (1.0 - c * (bs - a_s) * (1.0 - d * bs) / 3.0 + c * d * a_s * a_s);
        }
        if hk > -100.0 {
            let b = bs.sqrt();
            let sp = (2.0 * PI).sqrt() * sf(b / a);
            bvn -= (-hk / 2.0).exp() * sp * b * (1.0 - c * bs * (1.0 - d * bs) / 3.0);
        }
        a /= 2.0;
        let mut sum = 0.0;
        for (&wi, &xi) in w.iter().zip(x) {
            for node in [1.0 - xi, 1.0 + xi] {
                let xs = (a * node) * (a * node);
                let asr = -(bs / xs + hk) / 2.0;
                if asr > -100.0 {
                    let sp = 1.0 + c * xs * (1.0 + 5.0 * d * xs);
                    let rs = (1.0 - xs).sqrt();
                    let ep = (-(hk / 2.0) * xs / ((1.0 + rs) * (1.0 + rs))).exp() / rs;
                    sum += wi * asr.exp() * (sp - ep);
                }
            }
        }
        bvn = (a * sum - bvn) / (2.0 * PI);
    }

    if r > 0.0 {
        bvn += sf(h.max(k));
    } else if h >= k {
        bvn = -bvn;
    } else {
        let l = if h < 0.0 { cdf(k) - cdf(h) } else { sf(h) - sf(k) };
        bvn = l - bvn;
    }
    bvn.clamp(0.0, 1.0)
}

/// Unchecked `Phi_rho(x, y)`.
#[inline]
pub(crate) fn bvn(x: f64, y: f64, rho: f64) -> f64 {
    bvn_upper(-x, -y, rho)
}

/// Unchecked `d Phi_rho(x, y) / dx`; requires `|rho| < 1`.
#[inline]
pub(crate) fn bvn_dx(x: f64, y: f64, rho: f64) -> f64 {
    pdf(x) * cdf((y - rho * x) / ((1.0 - rho) * (1.0 + rho)).sqrt())
}

/// Standard normal density.
pub fn std_normal_pdf(z: f64) -> Result<f64> {
    finite(z, "std_normal_pdf").map(pdf)
}

/// Standard normal distribution function `Phi(z)`.
pub fn std_normal_cdf(z: f64) -> Result<Probability> {
    finite(z, "std_normal_cdf").map(|z| Probability(cdf(z)))
}

/// `P(X <= x, Y <= y)` for a standard bivariate normal pair with
/// correlation `rho`. Infinite limits are accepted; NaN is not.
pub fn bvn_cdf(x: f64, y: f64, rho: Correlation) -> Result<Probability> {
    if x.is_nan() || y.is_nan() {
        return Err(Error::NonFinite("bvn_cdf"));
    }
    Ok(Probability(bvn(x, y, rho.value())))
}

/// Partial derivative of [`bvn_cdf`] in its first argument,
/// `phi(x) Phi((y - rho x) / sqrt(1 - rho^2))`.
pub fn bvn_cdf_dx(x: f64, y: f64, rho: Correlation) -> Result<f64> {
    let x = finite(x, "bvn_cdf_dx")?;
    let y = finite(y, "bvn_cdf_dx")?;
    if rho.value().abs() >= 1.0 {
        return Err(Error::DegenerateCorrelation);
    }
    Ok(bvn_dx(x, y, rho.value()))
}

/// Marginal intensity `lambda_2(z) = phi(z)^2 / (Phi(z) (1 - Phi(z)))`.
///
/// Underflows to zero only beyond `|z| ~ 38.5`; use
/// [`ln_intensity_lambda2`] where the logarithm suffices.
pub fn intensity_lambda2(z: f64) -> Result<f64> {
    finite(z, "intensity_lambda2").map(lambda2)
}

/// Natural logarithm of [`intensity_lambda2`], finite for all finite `z`.
pub fn ln_intensity_lambda2(z: f64) -> Result<f64> {
    finite(z, "ln_intensity_lambda2").map(ln_lambda2)
}

/// Inverse intensity `h(z) = Phi(z) (1 - Phi(z)) / phi(z)^2 = 1 / lambda_2(z)`.
pub fn inverse_intensity_h(z: f64) -> Result<f64> {
    finite(z, "inverse_intensity_h").map(h)
}

/// Closed-form third derivative of the inverse intensity `h`.
pub fn h_third_derivative(z: f64) -> Result<f64> {
    let z = finite(z, "h_third_derivative")?;
    let z2 = z * z;
    Ok((8.0 * z2 * z + 12.0 * z) * h(z) - (14.0 * z2 + 10.0) * cdf_minus_half(z) / pdf(z) - 6.0 * z)
}

/// The two elementary normal bounds used for the positivity of `h'''`:
///
/// * `a(z) = (1 - (z^2 + 7) / (8 z^2 + 12)) phi(z) / z`, a lower bound of
///   `1 - Phi(z)` for `z >= 1`;
/// * `b(z) = (z - z^3 / 6 + z^5 / 40) / sqrt(2 pi)`, an upper bound of
///   `Phi(z) - 1/2` for `0 <= z <= 1`.
pub fn lemma1_bounds(z: f64) -> Result<(f64, f64)> {
    let z = finite(z, "lemma1_bounds")?;
    if z < 0.0 {
        return Err(Error::InvalidArgument(format!("lemma1_bounds requires z >= 0, got {z}")));
    }
    let z2 = z * z;
    let a = (1.0 - (z2 + 7.0) / (8.0 * z2 + 12.0)) * pdf(z) / z;
    let b = (z - z2 * z / 6.0 + z2 * z2 * z / 40.0) * FRAC_1_SQRT_2PI;
    Ok((a, b))
}
