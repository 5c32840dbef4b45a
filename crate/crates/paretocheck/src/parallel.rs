//! Trial-parallel versions of the power studies.
//!
//! Each trial draws from its own counter-derived seed, so the counts (and the
//! reports) match the sequential functions exactly whatever the thread count.

use paretocheck_core::diagnostics::FormulaMode;
use paretocheck_core::powerstudy::{
    check_study, classification_trial, me_concavity_detected, DiscriminationConfig,
    DiscriminationReport, PowerReport, TrialOutcome,
};
use paretocheck_core::{DistributionModel, Result};
use rayon::prelude::*;

pub fn classification_error_rates(
    model: &DistributionModel,
    n: usize,
    trials: usize,
    seed: u64,
    mode: FormulaMode,
) -> Result<PowerReport> {
    let truth = check_study(model, n, trials)?;
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|i| classification_trial(model, truth, n, seed, i, mode))
        .collect::<Result<Vec<_>>>()?;
    let errors = outcomes
        .iter()
        .filter(|o| **o == TrialOutcome::Misclassified)
        .count();
    let skipped = outcomes
        .iter()
        .filter(|o| **o == TrialOutcome::Skipped)
        .count();
    PowerReport::from_counts(model, n, trials, errors, skipped, seed, mode)
}

pub fn me_discrimination_power(
    model: &DistributionModel,
    n: usize,
    trials: usize,
    seed: u64,
    config: &DiscriminationConfig,
) -> Result<DiscriminationReport> {
    // same validation as the sequential study
    if trials < paretocheck_core::powerstudy::MIN_TRIALS {
        return Err(paretocheck_core::Error::InvalidParameter {
            name: "trials",
            value: trials as f64,
        });
    }
    model.validate()?;
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|i| me_concavity_detected(model, n, seed, i, config))
        .collect::<Result<Vec<_>>>()?;
    let hit = outcomes.iter().filter(|o| **o == Some(true)).count();
    let skipped = outcomes.iter().filter(|o| o.is_none()).count();
    Ok(DiscriminationReport::from_counts(
        model, n, trials, hit, skipped, seed,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use paretocheck_core::powerstudy;

    #[test]
    fn matches_sequential() {
        let m = DistributionModel::Lognormal {
            mu: 0.0,
            sigma: 1.0,
        };
        assert_eq!(
            classification_error_rates(&m, 300, 150, 9, FormulaMode::Corrected).unwrap(),
            powerstudy::classification_error_rates(&m, 300, 150, 9, FormulaMode::Corrected)
                .unwrap()
        );
        let cfg = DiscriminationConfig::default();
        assert_eq!(
            me_discrimination_power(&m, 1000, 100, 9, &cfg).unwrap(),
            powerstudy::me_discrimination_power(&m, 1000, 100, 9, &cfg).unwrap()
        );
    }

    #[test]
    fn rejects_short_studies() {
        let m = DistributionModel::Lognormal {
            mu: 0.0,
            sigma: 1.0,
        };
        assert!(classification_error_rates(&m, 300, 10, 9, FormulaMode::Corrected).is_err());
        assert!(me_discrimination_power(&m, 300, 10, 9, &DiscriminationConfig::default()).is_err());
    }
}
