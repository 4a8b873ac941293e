//! Agreement between grade-derived (actual) and Bloom-derived (estimated)
//! difficulty.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rounding::round1;

/// Guards the accuracy threshold against binary noise in values that are
/// decimal tenths, e.g. `|4.1 - 4.4|` evaluating to `0.30000000000000027`.
const TOLERANCE_SLACK: f64 = 1e-9;

/// Whether comparisons use reported (1-decimal) values or full precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    /// Inputs are rounded to one decimal before comparing, matching
    /// reference tables built from rounded columns.
    #[default]
    Rounded,
    Full,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CourseComparison {
    pub course_code: String,
    pub actual_di: f64,
    pub estimated_di: f64,
    pub abs_error: f64,
    pub squared_error: f64,
}

/// Compares one course's actual and estimated difficulty.
pub fn compare(
    course_code: impl Into<String>,
    actual: f64,
    estimated: f64,
    precision: Precision,
) -> CourseComparison {
    let (actual_di, estimated_di, abs_error) = match precision {
        Precision::Full => (actual, estimated, (actual - estimated).abs()),
        Precision::Rounded => {
            let (a, e) = (round1(actual), round1(estimated));
            // a difference of two tenths is a tenth; snap away binary noise
            (a, e, round1((a - e).abs()))
        }
    };
    CourseComparison {
        course_code: course_code.into(),
        actual_di,
        estimated_di,
        abs_error,
        squared_error: abs_error * abs_error,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub comparisons: Vec<CourseComparison>,
    pub mean_actual: f64,
    pub mean_estimated: f64,
    pub mean_abs_error: f64,
    pub mean_squared_error: f64,
    /// Share of courses whose absolute error is within `tolerance`.
    pub accuracy: f64,
    pub tolerance: f64,
}

impl ValidationReport {
    pub fn correct_count(&self) -> usize {
        self.comparisons
            .iter()
            .filter(|c| within(c.abs_error, self.tolerance))
            .count()
    }

    pub fn max_abs_error(&self) -> f64 {
        self.comparisons
            .iter()
            .map(|c| c.abs_error)
            .fold(0.0, f64::max)
    }
}

fn within(abs_error: f64, tolerance: f64) -> bool {
    abs_error <= tolerance + TOLERANCE_SLACK
}

pub fn summarize(comparisons: Vec<CourseComparison>, tolerance: f64) -> Result<ValidationReport> {
    if comparisons.is_empty() {
        return Err(Error::InsufficientData(
            "no courses with both an estimate and grade history".into(),
        ));
    }
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::InvalidValue(format!(
            "tolerance must be a positive number, got {tolerance}"
        )));
    }
    let n = comparisons.len() as f64;
    let mean = |f: fn(&CourseComparison) -> f64| comparisons.iter().map(f).sum::<f64>() / n;
    let correct = comparisons
        .iter()
        .filter(|c| within(c.abs_error, tolerance))
        .count();
    Ok(ValidationReport {
        mean_actual: mean(|c| c.actual_di),
        mean_estimated: mean(|c| c.estimated_di),
        mean_abs_error: mean(|c| c.abs_error),
        mean_squared_error: mean(|c| c.squared_error),
        accuracy: correct as f64 / n,
        tolerance,
        comparisons,
    })
}
