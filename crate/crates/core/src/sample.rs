use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ascending-sorted, strictly positive, finite observations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Sample {
    values: Vec<f64>,
}

/// What [`Sample::from_raw`] kept and what it threw away.
#[derive(Debug, Clone, PartialEq)]
pub struct Ingest {
    pub sample: Sample,
    pub dropped_non_positive: usize,
    pub dropped_non_finite: usize,
}

impl Sample {
    /// Validates and sorts raw observations. Non-finite and non-positive
    /// entries are dropped and counted; nothing left is an error.
    pub fn from_raw(raw: &[f64]) -> Result<Ingest> {
        let mut dropped_non_positive = 0;
        let mut dropped_non_finite = 0;
        let mut values = Vec::with_capacity(raw.len());
        for &x in raw {
            if !x.is_finite() {
                dropped_non_finite += 1;
            } else if x <= 0.0 {
                dropped_non_positive += 1;
            } else {
                values.push(x);
            }
        }
        if values.is_empty() {
            return Err(Error::NoUsableObservations);
        }
        values.sort_unstable_by(f64::total_cmp);
        Ok(Ingest {
            sample: Sample { values },
            dropped_non_positive,
            dropped_non_finite,
        })
    }

    /// Strict constructor: every value must already be finite and positive.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::NoUsableObservations);
        }
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("sample values must be finite"));
        }
        if let Some(&x) = values.iter().find(|&&x| x <= 0.0) {
            return Err(Error::InvalidParameter {
                name: "sample value",
                value: x,
            });
        }
        values.sort_unstable_by(f64::total_cmp);
        Ok(Sample { values })
    }

    pub(crate) fn from_sorted(values: Vec<f64>) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        Sample { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Every observation multiplied by `factor` (> 0).
    pub fn scaled(&self, factor: f64) -> Result<Sample> {
        if !(factor > 0.0) || !factor.is_finite() {
            return Err(Error::InvalidParameter {
                name: "factor",
                value: factor,
            });
        }
        Ok(Sample {
            values: self.values.iter().map(|x| x * factor).collect(),
        })
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub(crate) fn require(&self, needed: usize) -> Result<()> {
        if self.len() < needed {
            Err(Error::InsufficientData {
                needed,
                got: self.len(),
            })
        } else {
            Ok(())
        }
    }
}

impl TryFrom<Vec<f64>> for Sample {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Sample::new(values)
    }
}

impl From<Sample> for Vec<f64> {
    fn from(s: Sample) -> Vec<f64> {
        s.values
    }
}
