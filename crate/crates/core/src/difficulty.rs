//! Course difficulty indices on a 0-5 scale.
//!
//! Two independent estimates are produced for each course:
//!
//! * the **Bloom DI**, from the rubric points of the outcome criteria a course
//!   maps to, normalized against the all-levels maximum of 21 points per
//!   criterion: `di = 5 * raw_total / (21 * criteria_count)`;
//! * the **grade DI**, from historical class averages:
//!   `di = 5 - average / 100 * 5`, averaged over generations.
//!
//! [`final_difficulty`] combines the two under a [`CombinationPolicy`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rounding::round1;
use crate::taxonomy::{criterion_rubric, max_rubric, CriterionCatalog, CriterionId};

/// Upper end of the difficulty scale.
pub const DI_SCALE: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Course {
    pub code: String,
    pub title: Option<String>,
    pub criteria: Vec<CriterionId>,
    /// Per-criterion rubric points that replace the catalog value for this
    /// course only.
    pub cell_overrides: BTreeMap<CriterionId, u32>,
}

impl Course {
    /// Checks the course-local invariants: a code, at least one criterion,
    /// no repeated criterion, overrides only on mapped criteria and in
    /// `1..=21`.
    pub fn new(
        code: impl Into<String>,
        title: Option<String>,
        criteria: Vec<CriterionId>,
        cell_overrides: BTreeMap<CriterionId, u32>,
    ) -> Result<Self> {
        let code = code.into().trim().to_string();
        let invalid = |message: String| Error::InvalidCourse {
            course: code.clone(),
            message,
        };
        if code.is_empty() {
            return Err(invalid("course code is empty".into()));
        }
        if criteria.is_empty() {
            return Err(Error::EmptyCriteria { course: code });
        }
        let mut seen = BTreeSet::new();
        for id in &criteria {
            if !seen.insert(id) {
                return Err(invalid(format!("criterion `{id}` listed twice")));
            }
        }
        for (id, points) in &cell_overrides {
            if !seen.contains(id) {
                return Err(invalid(format!("override for unmapped criterion `{id}`")));
            }
            if !(1..=max_rubric()).contains(points) {
                return Err(invalid(format!(
                    "override {id}:{points} outside 1..={}",
                    max_rubric()
                )));
            }
        }
        Ok(Course {
            code,
            title,
            criteria,
            cell_overrides,
        })
    }

    /// Fails with the first criterion id missing from `catalog`.
    pub fn check_resolves(&self, catalog: &CriterionCatalog) -> Result<()> {
        match self.criteria.iter().find(|id| !catalog.contains(id)) {
            Some(id) => Err(Error::UnresolvedCriterion {
                course: self.code.clone(),
                id: id.to_string(),
            }),
            None => Ok(()),
        }
    }

    /// Rubric points this course receives for each mapped criterion, in
    /// mapping order.
    pub fn cells(&self, catalog: &CriterionCatalog) -> Result<Vec<(CriterionId, u32)>> {
        self.criteria
            .iter()
            .map(|id| {
                let points = match self.cell_overrides.get(id) {
                    Some(points) => *points,
                    None => {
                        let criterion =
                            catalog.get(id).ok_or_else(|| Error::UnresolvedCriterion {
                                course: self.code.clone(),
                                id: id.to_string(),
                            })?;
                        criterion_rubric(criterion)?
                    }
                };
                Ok((id.clone(), points))
            })
            .collect()
    }

    pub fn has_overrides(&self) -> bool {
        !self.cell_overrides.is_empty()
    }
}

/// Whether per-course cell overrides are honored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RubricMode {
    /// Every cell comes from the catalog; overrides are ignored.
    #[default]
    Canonical,
    /// Overrides replace catalog cells, reproducing hand-entered tables.
    AsPrinted,
}

impl RubricMode {
    pub fn label(self) -> &'static str {
        match self {
            RubricMode::Canonical => "canonical",
            RubricMode::AsPrinted => "as-printed",
        }
    }

    /// The course as this mode sees it.
    pub fn apply(self, course: &Course) -> Course {
        match self {
            RubricMode::AsPrinted => course.clone(),
            RubricMode::Canonical => Course {
                cell_overrides: BTreeMap::new(),
                ..course.clone()
            },
        }
    }
}

impl fmt::Display for RubricMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Sum of rubric points over a course's criteria, overrides taking
/// precedence over catalog rubrics.
pub fn course_raw_total(course: &Course, catalog: &CriterionCatalog) -> Result<u32> {
    course.check_resolves(catalog)?;
    Ok(course.cells(catalog)?.iter().map(|(_, p)| p).sum())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BloomDifficulty {
    pub raw_total: u32,
    pub criteria_count: u32,
    pub max_total: u32,
    /// Full precision; see [`BloomDifficulty::reported_di`].
    pub di: f64,
}

impl BloomDifficulty {
    pub fn reported_di(&self) -> f64 {
        round1(self.di)
    }
}

pub fn bloom_difficulty(course: &Course, catalog: &CriterionCatalog) -> Result<BloomDifficulty> {
    let raw_total = course_raw_total(course, catalog)?;
    let criteria_count = course.criteria.len() as u32;
    let max_total = criteria_count * max_rubric();
    Ok(BloomDifficulty {
        raw_total,
        criteria_count,
        max_total,
        di: DI_SCALE * f64::from(raw_total) / f64::from(max_total),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GradeKind {
    /// Class average on a 0-100 scale.
    Percent,
    /// Already a difficulty index on the 0-5 scale.
    Di,
}

impl GradeKind {
    pub fn label(self) -> &'static str {
        match self {
            GradeKind::Percent => "percent",
            GradeKind::Di => "di",
        }
    }

    pub(crate) fn range_label(self) -> &'static str {
        match self {
            GradeKind::Percent => "[0, 100]",
            GradeKind::Di => "[0, 5]",
        }
    }

    fn upper(self) -> f64 {
        match self {
            GradeKind::Percent => 100.0,
            GradeKind::Di => DI_SCALE,
        }
    }
}

impl fmt::Display for GradeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for GradeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "percent" => Ok(GradeKind::Percent),
            "di" => Ok(GradeKind::Di),
            other => Err(Error::InvalidValue(format!(
                "grade kind {other:?}; expected `percent` or `di`"
            ))),
        }
    }
}

/// One generation's class performance in a course.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub label: String,
    pub kind: GradeKind,
    pub value: f64,
}

impl GenerationRecord {
    pub fn new(label: impl Into<String>, kind: GradeKind, value: f64) -> Result<Self> {
        if !(0.0..=kind.upper()).contains(&value) {
            return Err(Error::InvalidGrade { kind, value });
        }
        Ok(GenerationRecord {
            label: label.into(),
            kind,
            value,
        })
    }

    /// This record on the difficulty scale.
    pub fn to_di(&self) -> Result<f64> {
        match self.kind {
            GradeKind::Percent => class_average_to_di(self.value),
            GradeKind::Di if (0.0..=DI_SCALE).contains(&self.value) => Ok(self.value),
            GradeKind::Di => Err(Error::InvalidGrade {
                kind: self.kind,
                value: self.value,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradeHistory {
    pub course_code: String,
    pub generations: Vec<GenerationRecord>,
}

impl GradeHistory {
    pub fn new(course_code: impl Into<String>, generations: Vec<GenerationRecord>) -> Result<Self> {
        let course_code = course_code.into();
        if generations.is_empty() {
            return Err(Error::InsufficientData(format!(
                "course `{course_code}` has no generations"
            )));
        }
        let mut labels = BTreeSet::new();
        for record in &generations {
            if !labels.insert(record.label.as_str()) {
                return Err(Error::DuplicateId {
                    id: format!("{course_code}/{}", record.label),
                });
            }
        }
        Ok(GradeHistory {
            course_code,
            generations,
        })
    }

    /// Per-generation difficulty indices in record order.
    pub fn generation_dis(&self) -> Result<Vec<f64>> {
        self.generations
            .iter()
            .map(GenerationRecord::to_di)
            .collect()
    }
}

/// Difficulty index of a class average given in percent.
pub fn class_average_to_di(average: f64) -> Result<f64> {
    if !(0.0..=100.0).contains(&average) {
        return Err(Error::InvalidGrade {
            kind: GradeKind::Percent,
            value: average,
        });
    }
    // average * 5 / 100 keeps worked values like 35 -> 1.75 exact
    Ok(DI_SCALE - average * DI_SCALE / 100.0)
}

/// Mean of the per-generation difficulty indices.
pub fn grade_difficulty(history: &GradeHistory) -> Result<f64> {
    let dis = history.generation_dis()?;
    if dis.is_empty() {
        return Err(Error::InsufficientData(format!(
            "course `{}` has no generations",
            history.course_code
        )));
    }
    Ok(dis.iter().sum::<f64>() / dis.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CombinationPolicy {
    /// The Bloom estimate is the course difficulty; grades only validate it.
    #[default]
    BloomPrimary,
    /// Arithmetic mean of the Bloom and grade estimates.
    MeanOfBoth,
}

impl CombinationPolicy {
    pub fn label(self) -> &'static str {
        match self {
            CombinationPolicy::BloomPrimary => "bloom_primary",
            CombinationPolicy::MeanOfBoth => "mean_of_both",
        }
    }
}

impl fmt::Display for CombinationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FinalDifficulty {
    pub course_code: String,
    pub bloom_di: f64,
    pub grade_di: f64,
    pub final_di: f64,
    pub policy: CombinationPolicy,
}

pub fn final_difficulty(
    course_code: impl Into<String>,
    bloom_di: f64,
    grade_di: f64,
    policy: CombinationPolicy,
) -> FinalDifficulty {
    let final_di = match policy {
        CombinationPolicy::BloomPrimary => bloom_di,
        CombinationPolicy::MeanOfBoth => (bloom_di + grade_di) / 2.0,
    };
    FinalDifficulty {
        course_code: course_code.into(),
        bloom_di,
        grade_di,
        final_di,
        policy,
    }
}
