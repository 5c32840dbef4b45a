//! Monte Carlo error rates for the moment-ratio classifier and the power of
//! the mean-excess plot to separate lognormal from Paretian tails.
//!
//! Trial `i` always samples with seed `seed + i`, so the per-trial functions
//! can be driven from any executor and the counts combined in any order.

use alloc::string::String;

use serde::{Deserialize, Serialize};

use crate::diagnostics::{classify_moment_point, FormulaMode, ZoneKind};
use crate::distributions::DistributionModel;
use crate::empirical::{mean_excess_points, moment_stats};
use crate::error::{Error, Result};
use crate::math::sqrt;
use crate::rng::trial_seed;
use crate::stats::quadratic_fit;

pub const MIN_TRIALS: usize = 100;

/// Which zones count as a correct call for a given truth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Truth {
    Paretian,
    Lognormal,
}

impl Truth {
    pub fn of(model: &DistributionModel) -> Result<Truth> {
        match *model {
            DistributionModel::ParetoI { .. } | DistributionModel::ParetoII { .. } => {
                Ok(Truth::Paretian)
            }
            DistributionModel::Gpd { xi, .. } if xi > 0.0 => Ok(Truth::Paretian),
            DistributionModel::Lognormal { .. } => Ok(Truth::Lognormal),
            _ => Err(Error::Unsupported(
                "error rates are defined for Pareto-type or lognormal truths",
            )),
        }
    }

    /// Rule-of-thumb overrides are already folded into `Paretian`.
    pub fn accepts(self, zone: ZoneKind) -> bool {
        match self {
            Truth::Paretian => matches!(zone, ZoneKind::Paretian | ZoneKind::AbovePareto),
            Truth::Lognormal => matches!(zone, ZoneKind::Lognormal | ZoneKind::Gray),
        }
    }

    pub fn alternative(self) -> &'static str {
        match self {
            Truth::Paretian => "lognormal",
            Truth::Lognormal => "paretian",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialOutcome {
    Correct,
    Misclassified,
    /// Zero-variance draw.
    Skipped,
}

pub fn classification_trial(
    model: &DistributionModel,
    truth: Truth,
    n: usize,
    seed: u64,
    trial: usize,
    mode: FormulaMode,
) -> Result<TrialOutcome> {
    let s = model.sample(n, trial_seed(seed, trial as u64))?;
    let pt = match moment_stats(s.values()) {
        Ok(pt) => pt,
        Err(Error::Degenerate(_)) => return Ok(TrialOutcome::Skipped),
        Err(e) => return Err(e),
    };
    let zone = classify_moment_point(&pt, mode)?;
    Ok(if truth.accepts(zone.kind) {
        TrialOutcome::Correct
    } else {
        TrialOutcome::Misclassified
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerReport {
    pub model_true: DistributionModel,
    pub model_alt: String,
    pub n: usize,
    pub trials: usize,
    pub errors: usize,
    pub skipped: usize,
    pub error_rate: f64,
    /// Normal-approximation 95% half-width.
    pub ci_halfwidth: f64,
    pub seed: u64,
    pub formula_mode: FormulaMode,
}

impl PowerReport {
    pub fn from_counts(
        model: &DistributionModel,
        n: usize,
        trials: usize,
        errors: usize,
        skipped: usize,
        seed: u64,
        mode: FormulaMode,
    ) -> Result<PowerReport> {
        let truth = Truth::of(model)?;
        let used = trials - skipped;
        let (error_rate, ci_halfwidth) = if used == 0 {
            (0.0, 0.0)
        } else {
            let p = errors as f64 / used as f64;
            (p, 1.96 * sqrt(p * (1.0 - p) / used as f64))
        };
        Ok(PowerReport {
            model_true: *model,
            model_alt: truth.alternative().into(),
            n,
            trials,
            errors,
            skipped,
            error_rate,
            ci_halfwidth,
            seed,
            formula_mode: mode,
        })
    }
}

pub(crate) fn check_trials(trials: usize) -> Result<()> {
    if trials < MIN_TRIALS {
        return Err(Error::InvalidParameter {
            name: "trials",
            value: trials as f64,
        });
    }
    Ok(())
}

/// Validates a study before any trial runs.
pub fn check_study(model: &DistributionModel, n: usize, trials: usize) -> Result<Truth> {
    check_trials(trials)?;
    model.validate()?;
    if n < 3 {
        return Err(Error::InsufficientData { needed: 3, got: n });
    }
    Truth::of(model)
}

/// Fraction of `trials` samples of size `n` whose moment point lands outside
/// the zones expected for the truth.
pub fn classification_error_rates(
    model: &DistributionModel,
    n: usize,
    trials: usize,
    seed: u64,
    mode: FormulaMode,
) -> Result<PowerReport> {
    let truth = check_study(model, n, trials)?;
    let (mut errors, mut skipped) = (0, 0);
    for i in 0..trials {
        match classification_trial(model, truth, n, seed, i, mode)? {
            TrialOutcome::Correct => {}
            TrialOutcome::Misclassified => errors += 1,
            TrialOutcome::Skipped => skipped += 1,
        }
    }
    PowerReport::from_counts(model, n, trials, errors, skipped, seed, mode)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DiscriminationConfig {
    /// Lowest threshold used, as a sample quantile.
    pub lower_quantile: f64,
    /// Highest threshold used is the largest with at least this many
    /// exceedances.
    pub min_exceedances: usize,
    /// Curvature must be negative and this many standard errors from zero.
    pub se_multiple: f64,
}

impl Default for DiscriminationConfig {
    fn default() -> Self {
        DiscriminationConfig {
            lower_quantile: 0.1,
            min_exceedances: 100,
            se_multiple: 2.0,
        }
    }
}

/// Whether one sample's mean-excess plot bends down significantly.
/// `None` when the window holds too few thresholds to fit a parabola.
pub fn me_concavity_detected(
    model: &DistributionModel,
    n: usize,
    seed: u64,
    trial: usize,
    config: &DiscriminationConfig,
) -> Result<Option<bool>> {
    let s = model.sample(n, trial_seed(seed, trial as u64))?;
    let cut = config.min_exceedances.saturating_sub(1);
    let me = match mean_excess_points(&s, cut) {
        Ok(me) => me,
        Err(Error::InsufficientData { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let idx = ((config.lower_quantile * n as f64) as usize).min(n - 1);
    let start = s.values()[idx];
    let (xs, ys): (alloc::vec::Vec<f64>, alloc::vec::Vec<f64>) = me
        .points
        .iter()
        .filter(|p| p.x >= start)
        .map(|p| (p.x, p.y))
        .unzip();
    Ok(quadratic_fit(&xs, &ys).map(|fit| {
        fit.curvature() < 0.0 && -fit.curvature() > config.se_multiple * fit.curvature_se
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscriminationReport {
    pub model: DistributionModel,
    pub n: usize,
    pub trials: usize,
    pub distinguished: usize,
    /// Trials whose window was too short to fit.
    pub skipped: usize,
    pub fraction: f64,
    pub seed: u64,
}

impl DiscriminationReport {
    pub fn from_counts(
        model: &DistributionModel,
        n: usize,
        trials: usize,
        distinguished: usize,
        skipped: usize,
        seed: u64,
    ) -> Self {
        DiscriminationReport {
            model: *model,
            n,
            trials,
            distinguished,
            skipped,
            fraction: distinguished as f64 / trials as f64,
            seed,
        }
    }
}

/// Share of samples in which the mean-excess plot shows significant
/// concavity. Lognormal tails bend down at large thresholds; Paretian ones
/// stay straight.
pub fn me_discrimination_power(
    model: &DistributionModel,
    n: usize,
    trials: usize,
    seed: u64,
    config: &DiscriminationConfig,
) -> Result<DiscriminationReport> {
    check_trials(trials)?;
    model.validate()?;
    let (mut hit, mut skipped) = (0, 0);
    for i in 0..trials {
        match me_concavity_detected(model, n, seed, i, config)? {
            Some(true) => hit += 1,
            Some(false) => {}
            None => skipped += 1,
        }
    }
    Ok(DiscriminationReport::from_counts(
        model, n, trials, hit, skipped, seed,
    ))
}
