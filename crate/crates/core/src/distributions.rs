//! Closed-form machinery for the candidate size distributions.
//!
//! Everything here is exact (up to floating point) except the lognormal mean
//! excess, which is only available as its large-threshold asymptote and is
//! flagged as such in [`MeanExcess`].

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math::{
    exp, exp_m1, gamma_p, gamma_q, gamma_quantile, ln, ln_1p, normal_cdf, normal_quantile,
    normal_sf, powf,
};
use crate::rng::CounterRng;
use crate::sample::Sample;

/// A parametric family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum DistributionModel {
    /// Survival `(x / x0)^-alpha` on `[x0, inf)`.
    ParetoI { x0: f64, alpha: f64 },
    /// Lomax: survival `(1 + x / b)^-alpha` on `[0, inf)`.
    ParetoII { b: f64, alpha: f64 },
    /// Generalized Pareto with shape `xi`, scale `beta`, location `nu`.
    Gpd { xi: f64, beta: f64, nu: f64 },
    /// `exp(N(mu, sigma^2))`.
    Lognormal { mu: f64, sigma: f64 },
    /// Rate parameterization.
    Exponential { lambda: f64 },
    /// Shape `k`, scale `theta`.
    Gamma { k: f64, theta: f64 },
}

/// Which Zenga inequality curve to evaluate.
///
/// `MeanRatio` compares the mean below the `u`-quantile with the mean above
/// it and is tied to the Lorenz curve by `Z = (u - L) / (u (1 - L))`.
/// `QuantileRatio` compares the `u`-quantile of `F` with the `u`-quantile of
/// the first-moment distribution; it is the curve that is constant
/// (`1 - exp(-sigma^2)`) for the lognormal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZengaCurve {
    MeanRatio,
    #[default]
    QuantileRatio,
}

/// A mean-excess value; `asymptotic` marks the lognormal leading-order term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanExcess {
    pub value: f64,
    pub asymptotic: bool,
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}

fn finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}

fn open_unit(u: f64) -> Result<()> {
    if u > 0.0 && u < 1.0 {
        Ok(())
    } else {
        Err(Error::ProbabilityOutOfRange(u))
    }
}

impl DistributionModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            DistributionModel::ParetoI { x0, alpha } => {
                positive("x0", x0)?;
                positive("alpha", alpha)
            }
            DistributionModel::ParetoII { b, alpha } => {
                positive("b", b)?;
                positive("alpha", alpha)
            }
            DistributionModel::Gpd { xi, beta, nu } => {
                finite("xi", xi)?;
                positive("beta", beta)?;
                finite("nu", nu)
            }
            DistributionModel::Lognormal { mu, sigma } => {
                finite("mu", mu)?;
                positive("sigma", sigma)
            }
            DistributionModel::Exponential { lambda } => positive("lambda", lambda),
            DistributionModel::Gamma { k, theta } => {
                positive("k", k)?;
                positive("theta", theta)
            }
        }
    }

    /// Short family name used in reports and on the command line.
    pub fn family_name(&self) -> &'static str {
        match self {
            DistributionModel::ParetoI { .. } => "pareto1",
            DistributionModel::ParetoII { .. } => "pareto2",
            DistributionModel::Gpd { .. } => "gpd",
            DistributionModel::Lognormal { .. } => "lognormal",
            DistributionModel::Exponential { .. } => "exponential",
            DistributionModel::Gamma { .. } => "gamma",
        }
    }

    /// Lower end of the support.
    pub fn support_lower(&self) -> f64 {
        match *self {
            DistributionModel::ParetoI { x0, .. } => x0,
            DistributionModel::Gpd { nu, .. } => nu,
            _ => 0.0,
        }
    }

    /// Upper end of the support (finite only for the GPD with `xi < 0`).
    pub fn support_upper(&self) -> f64 {
        match *self {
            DistributionModel::Gpd { xi, beta, nu } if xi < 0.0 => nu - beta / xi,
            _ => f64::INFINITY,
        }
    }

    /// `P(X > x)`. Returns 1 below the support and 0 above it.
    pub fn survival(&self, x: f64) -> Result<f64> {
        self.validate()?;
        if x.is_nan() {
            return Err(Error::NonFinite("survival argument"));
        }
        if x <= self.support_lower() {
            return Ok(1.0);
        }
        if x >= self.support_upper() {
            return Ok(0.0);
        }
        let s = match *self {
            DistributionModel::ParetoI { x0, alpha } => powf(x / x0, -alpha),
            DistributionModel::ParetoII { b, alpha } => powf(1.0 + x / b, -alpha),
            DistributionModel::Gpd { xi, beta, nu } => {
                let z = (x - nu) / beta;
                if xi == 0.0 {
                    exp(-z)
                } else {
                    exp(-ln_1p(xi * z) / xi)
                }
            }
            DistributionModel::Lognormal { mu, sigma } => normal_sf((ln(x) - mu) / sigma),
            DistributionModel::Exponential { lambda } => exp(-lambda * x),
            DistributionModel::Gamma { k, theta } => gamma_q(k, x / theta),
        };
        Ok(s.clamp(0.0, 1.0))
    }

    /// `P(X <= x)`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        Ok(1.0 - self.survival(x)?)
    }

    /// Inverse cdf on the open unit interval.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        self.validate()?;
        open_unit(u)?;
        Ok(match *self {
            DistributionModel::ParetoI { x0, alpha } => x0 * powf(1.0 - u, -1.0 / alpha),
            DistributionModel::ParetoII { b, alpha } => b * exp_m1(-ln_1p(-u) / alpha),
            DistributionModel::Gpd { xi, beta, nu } => {
                if xi == 0.0 {
                    nu - beta * ln_1p(-u)
                } else {
                    nu + beta / xi * exp_m1(-xi * ln_1p(-u))
                }
            }
            DistributionModel::Lognormal { mu, sigma } => exp(mu + sigma * normal_quantile(u)),
            DistributionModel::Exponential { lambda } => -ln_1p(-u) / lambda,
            DistributionModel::Gamma { k, theta } => theta * gamma_quantile(k, u),
        })
    }

    /// `n` inverse-transform draws from the counter generator keyed by `seed`,
    /// returned sorted.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Sample> {
        self.validate()?;
        if n == 0 {
            return Err(Error::InsufficientData { needed: 1, got: 0 });
        }
        let mut rng = CounterRng::new(seed);
        let mut values = Vec::with_capacity(n);
        for _ in 0..n {
            values.push(self.quantile(rng.next_open01())?);
        }
        // Pareto II and exponential draws can underflow to exactly zero only
        // for u below 2^-53, which next_open01 never produces.
        values.sort_unstable_by(f64::total_cmp);
        if values[0] <= 0.0 {
            return Err(Error::Unsupported(
                "model places mass at or below zero; samples must be positive",
            ));
        }
        Ok(Sample::from_sorted(values))
    }

    /// `E[X]` when finite.
    pub fn mean(&self) -> Option<f64> {
        match *self {
            DistributionModel::ParetoI { x0, alpha } => {
                (alpha > 1.0).then(|| alpha * x0 / (alpha - 1.0))
            }
            DistributionModel::ParetoII { b, alpha } => (alpha > 1.0).then(|| b / (alpha - 1.0)),
            DistributionModel::Gpd { xi, beta, nu } => (xi < 1.0).then(|| nu + beta / (1.0 - xi)),
            DistributionModel::Lognormal { mu, sigma } => Some(exp(mu + 0.5 * sigma * sigma)),
            DistributionModel::Exponential { lambda } => Some(1.0 / lambda),
            DistributionModel::Gamma { k, theta } => Some(k * theta),
        }
    }

    /// Theoretical mean excess `e(u) = E[X - u | X > u]`.
    pub fn mean_excess(&self, u: f64) -> Result<MeanExcess> {
        self.validate()?;
        if !u.is_finite() {
            return Err(Error::NonFinite("threshold"));
        }
        let exact = |value: f64| {
            Ok(MeanExcess {
                value,
                asymptotic: false,
            })
        };
        match *self {
            DistributionModel::ParetoI { x0, alpha } => {
                if alpha <= 1.0 {
                    return Err(Error::MeanExcessUndefined("Pareto I needs alpha > 1"));
                }
                if u >= x0 {
                    exact(u / (alpha - 1.0))
                } else {
                    exact(alpha * x0 / (alpha - 1.0) - u)
                }
            }
            DistributionModel::ParetoII { b, alpha } => {
                if alpha <= 1.0 {
                    return Err(Error::MeanExcessUndefined("Pareto II needs alpha > 1"));
                }
                exact((u.max(0.0) + b) / (alpha - 1.0) + (0.0f64).max(-u))
            }
            DistributionModel::Gpd { xi, beta, nu } => {
                if xi >= 1.0 {
                    return Err(Error::MeanExcessUndefined("GPD needs xi < 1"));
                }
                if u >= self.support_upper() {
                    return Err(Error::MeanExcessUndefined("threshold beyond the support"));
                }
                let t = u.max(nu);
                let scale = beta + xi * (t - nu);
                if scale <= 0.0 {
                    return Err(Error::MeanExcessUndefined(
                        "GPD needs beta + xi (u - nu) > 0",
                    ));
                }
                exact(scale / (1.0 - xi) + (t - u))
            }
            DistributionModel::Exponential { lambda } => exact(1.0 / lambda + (0.0f64).max(-u)),
            DistributionModel::Gamma { k, theta } => {
                let t = u.max(0.0);
                let z = t / theta;
                let tail = gamma_q(k, z);
                if tail <= 0.0 {
                    return Err(Error::MeanExcessUndefined(
                        "threshold beyond numeric support",
                    ));
                }
                exact(k * theta * gamma_q(k + 1.0, z) / tail - u)
            }
            DistributionModel::Lognormal { mu, sigma } => {
                let log_u = if u > 0.0 { ln(u) } else { f64::NEG_INFINITY };
                if log_u <= mu {
                    return Err(Error::AsymptoteDomain(u));
                }
                Ok(MeanExcess {
                    value: sigma * sigma * u / (log_u - mu),
                    asymptotic: true,
                })
            }
        }
    }

    /// Theoretical Lorenz curve `L(u) = (1/E[X]) * int_0^u F^-1(s) ds`.
    pub fn lorenz(&self, u: f64) -> Result<f64> {
        self.validate()?;
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::ProbabilityOutOfRange(u));
        }
        if self.mean().is_none() {
            return Err(Error::LorenzUndefined("infinite mean"));
        }
        if self.support_lower() < 0.0 {
            return Err(Error::LorenzUndefined("support extends below zero"));
        }
        if u == 0.0 {
            return Ok(0.0);
        }
        if u == 1.0 {
            return Ok(1.0);
        }
        // log(1 - u), exact for small u
        let l1u = ln_1p(-u);
        let v = 1.0 - u;
        let l = match *self {
            DistributionModel::ParetoI { alpha, .. } => -exp_m1((1.0 - 1.0 / alpha) * l1u),
            DistributionModel::ParetoII { alpha, .. } => {
                -alpha * exp_m1((1.0 - 1.0 / alpha) * l1u) - (alpha - 1.0) * u
            }
            DistributionModel::Gpd { xi, beta, nu } => {
                let mean = nu + beta / (1.0 - xi);
                let partial = if xi == 0.0 {
                    nu * u + beta * (v * l1u + u)
                } else {
                    nu * u + beta / xi * (-exp_m1((1.0 - xi) * l1u) / (1.0 - xi) - u)
                };
                partial / mean
            }
            DistributionModel::Lognormal { sigma, .. } => normal_cdf(normal_quantile(u) - sigma),
            DistributionModel::Exponential { .. } => u + v * l1u,
            DistributionModel::Gamma { k, .. } => gamma_p(k + 1.0, gamma_quantile(k, u)),
        };
        Ok(l.clamp(0.0, 1.0))
    }

    /// Theoretical Zenga curve of the requested kind at `u` in (0, 1).
    pub fn zenga(&self, u: f64, curve: ZengaCurve) -> Result<f64> {
        self.validate()?;
        open_unit(u)?;
        if self.mean().is_none() {
            return Err(Error::ZengaUndefined("infinite mean"));
        }
        if self.support_lower() < 0.0 {
            return Err(Error::ZengaUndefined("support extends below zero"));
        }
        let z = match curve {
            ZengaCurve::MeanRatio => self.zenga_mean_ratio(u)?,
            ZengaCurve::QuantileRatio => self.zenga_quantile_ratio(u)?,
        };
        Ok(z.clamp(0.0, 1.0))
    }

    fn zenga_mean_ratio(&self, u: f64) -> Result<f64> {
        Ok(match *self {
            DistributionModel::ParetoI { alpha, .. } => -exp_m1(ln_1p(-u) / alpha) / u,
            DistributionModel::Exponential { .. } => {
                let g = -ln_1p(-u);
                g / (u * (1.0 + g))
            }
            _ => zenga_from_lorenz(u, self.lorenz(u)?),
        })
    }

    fn zenga_quantile_ratio(&self, u: f64) -> Result<f64> {
        Ok(match *self {
            DistributionModel::ParetoI { alpha, .. } => {
                -exp_m1(ln_1p(-u) / (alpha * (alpha - 1.0)))
            }
            DistributionModel::Lognormal { sigma, .. } => -exp_m1(-sigma * sigma),
            DistributionModel::Exponential { .. } => {
                // first-moment distribution of Exp(lambda) is Gamma(2, 1/lambda)
                1.0 - (-ln_1p(-u)) / gamma_quantile(2.0, u)
            }
            DistributionModel::Gamma { k, .. } => {
                1.0 - gamma_quantile(k, u) / gamma_quantile(k + 1.0, u)
            }
            _ => 1.0 - self.quantile(u)? / self.first_moment_quantile(u)?,
        })
    }

    /// `u`-quantile of the first-moment distribution `F1(x) = L(F(x))`,
    /// found by bisection on the Lorenz curve.
    fn first_moment_quantile(&self, u: f64) -> Result<f64> {
        let (mut lo, mut hi) = (u, 1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.lorenz(mid)? < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        self.quantile(0.5 * (lo + hi))
    }
}

/// `Z(u) = (u - L(u)) / (u (1 - L(u)))`.
pub fn zenga_from_lorenz(u: f64, lorenz: f64) -> f64 {
    if lorenz >= 1.0 {
        return 1.0;
    }
    (u - lorenz) / (u * (1.0 - lorenz))
}

/// Uniform grid of `points` values strictly inside (0, 1).
pub fn unit_grid(points: usize) -> Vec<f64> {
    let step = 1.0 / (points as f64 + 1.0);
    (1..=points).map(|i| i as f64 * step).collect()
}
