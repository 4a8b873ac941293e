//! Bloom's cognitive hierarchy, the action-verb lexicon and ABET criterion
//! catalogs.
//!
//! Rubric arithmetic here is exact integer arithmetic. A criterion's rubric
//! is the sum of the complexity weights of the Bloom levels mapped to it, so
//! it always lies in `1..=21`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the six cognitive categories, ordered by complexity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BloomLevel {
    Remember,
    Understand,
    Apply,
    Analyze,
    Evaluate,
    Create,
}

impl BloomLevel {
    pub const ALL: [BloomLevel; 6] = [
        BloomLevel::Remember,
        BloomLevel::Understand,
        BloomLevel::Apply,
        BloomLevel::Analyze,
        BloomLevel::Evaluate,
        BloomLevel::Create,
    ];

    /// Complexity weight in rubric points, 1 for Remember through 6 for Create.
    pub const fn weight(self) -> u32 {
        match self {
            BloomLevel::Remember => 1,
            BloomLevel::Understand => 2,
            BloomLevel::Apply => 3,
            BloomLevel::Analyze => 4,
            BloomLevel::Evaluate => 5,
            BloomLevel::Create => 6,
        }
    }

    pub fn from_weight(weight: u32) -> Option<BloomLevel> {
        match weight {
            1..=6 => Some(Self::ALL[weight as usize - 1]),
            _ => None,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            BloomLevel::Remember => "Remember",
            BloomLevel::Understand => "Understand",
            BloomLevel::Apply => "Apply",
            BloomLevel::Analyze => "Analyze",
            BloomLevel::Evaluate => "Evaluate",
            BloomLevel::Create => "Create",
        }
    }

    /// Affective-domain category at the same complexity level. Stored for
    /// reference only; no computation uses it.
    pub const fn affective_label(self) -> Option<&'static str> {
        match self {
            BloomLevel::Remember => Some("Receiving"),
            BloomLevel::Understand => Some("Responding"),
            BloomLevel::Apply => Some("Valuing"),
            BloomLevel::Analyze => Some("Organizing"),
            BloomLevel::Evaluate => Some("Characterizing by value or value concept"),
            BloomLevel::Create => None,
        }
    }

    /// Psychomotor-domain category at the same complexity level. Reference only.
    pub const fn psychomotor_label(self) -> Option<&'static str> {
        match self {
            BloomLevel::Remember => Some("Imitation"),
            BloomLevel::Understand => Some("Manipulation"),
            BloomLevel::Apply => Some("Precision"),
            BloomLevel::Analyze => Some("Articulation"),
            BloomLevel::Evaluate => Some("Naturalization"),
            BloomLevel::Create => None,
        }
    }
}

impl fmt::Display for BloomLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BloomLevel {
    type Err = Error;

    /// Accepts a weight (`"3"`), a revised-taxonomy name (`"apply"`) or the
    /// classic noun form (`"application"`), case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if let Ok(weight) = trimmed.parse::<u32>() {
            return BloomLevel::from_weight(weight).ok_or_else(|| Error::LevelOutOfRange {
                value: trimmed.to_string(),
            });
        }
        let level = match trimmed.to_ascii_lowercase().as_str() {
            "remember" | "remembering" | "knowledge" => BloomLevel::Remember,
            "understand" | "understanding" | "comprehension" => BloomLevel::Understand,
            "apply" | "applying" | "application" => BloomLevel::Apply,
            "analyze" | "analyse" | "analyzing" | "analysis" => BloomLevel::Analyze,
            "evaluate" | "evaluating" | "evaluation" => BloomLevel::Evaluate,
            "create" | "creating" | "synthesis" | "synthesize" => BloomLevel::Create,
            _ => {
                return Err(Error::LevelOutOfRange {
                    value: trimmed.to_string(),
                })
            }
        };
        Ok(level)
    }
}

/// Sum of weights over a set of levels.
pub fn levels_weight(levels: &BTreeSet<BloomLevel>) -> u32 {
    levels.iter().map(|l| l.weight()).sum()
}

/// Largest possible criterion rubric: all six levels mapped.
pub const fn max_rubric() -> u32 {
    1 + 2 + 3 + 4 + 5 + 6
}

/// Identifier of an outcome criterion. Letters `a`..`m` name the canonical
/// ABET outcomes; any other single token may be used for program-specific
/// outcomes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CriterionId(String);

impl CriterionId {
    pub fn new(id: impl AsRef<str>) -> Result<Self> {
        let id = id.as_ref().trim();
        let valid = !id.is_empty()
            && !id
                .chars()
                .any(|c| c.is_whitespace() || c.is_control() || matches!(c, '|' | ',' | ':' | '"'));
        if valid {
            Ok(CriterionId(id.to_string()))
        } else {
            Err(Error::InvalidId(id.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Whether this id is one of the reserved canonical letters `a`..=`m`.
    pub fn is_canonical(&self) -> bool {
        matches!(self.0.as_bytes(), [b'a'..=b'm'])
    }
}

impl fmt::Display for CriterionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<String> for CriterionId {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        CriterionId::new(value)
    }
}

impl From<CriterionId> for String {
    fn from(id: CriterionId) -> String {
        id.0
    }
}

impl FromStr for CriterionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CriterionId::new(s)
    }
}

/// A student outcome with the set of Bloom levels it demands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbetCriterion {
    pub id: CriterionId,
    pub description: String,
    pub levels: BTreeSet<BloomLevel>,
}

impl AbetCriterion {
    pub fn new(
        id: CriterionId,
        description: impl Into<String>,
        levels: impl IntoIterator<Item = BloomLevel>,
    ) -> Result<Self> {
        let criterion = AbetCriterion {
            id,
            description: description.into(),
            levels: levels.into_iter().collect(),
        };
        criterion_rubric(&criterion)?;
        Ok(criterion)
    }
}

/// Rubric points of a criterion: the summed weight of its mapped levels.
pub fn criterion_rubric(criterion: &AbetCriterion) -> Result<u32> {
    if criterion.levels.is_empty() {
        return Err(Error::InvalidCriterion {
            id: criterion.id.to_string(),
        });
    }
    Ok(levels_weight(&criterion.levels))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionCatalog {
    criteria: BTreeMap<CriterionId, AbetCriterion>,
    pub provenance: String,
}

impl CriterionCatalog {
    /// Builds a catalog, rejecting duplicate ids, empty level sets and an
    /// empty criterion list.
    pub fn new(
        criteria: impl IntoIterator<Item = AbetCriterion>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for criterion in criteria {
            criterion_rubric(&criterion)?;
            let id = criterion.id.clone();
            if map.insert(id.clone(), criterion).is_some() {
                return Err(Error::DuplicateId { id: id.to_string() });
            }
        }
        if map.is_empty() {
            return Err(Error::InsufficientData("catalog has no criteria".into()));
        }
        Ok(CriterionCatalog {
            criteria: map,
            provenance: provenance.into(),
        })
    }

    /// The thirteen outcomes a-m with their reference level sets.
    pub fn canonical() -> Self {
        use BloomLevel::*;
        const UP_TO_APPLY: &[BloomLevel] = &[Remember, Understand, Apply];
        const UP_TO_UNDERSTAND: &[BloomLevel] = &[Remember, Understand];
        const REMEMBER_ONLY: &[BloomLevel] = &[Remember];
        let rows: [(&str, &[BloomLevel]); 13] = [
            ("a", UP_TO_APPLY),
            ("b", &BloomLevel::ALL),
            ("c", &BloomLevel::ALL),
            ("d", UP_TO_APPLY),
            ("e", &BloomLevel::ALL),
            ("f", UP_TO_UNDERSTAND),
            ("g", UP_TO_UNDERSTAND),
            ("h", UP_TO_APPLY),
            ("i", &BloomLevel::ALL),
            ("j", REMEMBER_ONLY),
            ("k", UP_TO_APPLY),
            ("l", &BloomLevel::ALL),
            ("m", &BloomLevel::ALL),
        ];
        let criteria = rows
            .iter()
            .zip(ABET_OUTCOMES)
            .map(|((id, levels), (_, text))| AbetCriterion {
                id: CriterionId(id.to_string()),
                description: text.to_string(),
                levels: levels.iter().copied().collect(),
            });
        CriterionCatalog::new(criteria, "abet-canonical").expect("canonical catalog is valid")
    }

    pub fn get(&self, id: &CriterionId) -> Option<&AbetCriterion> {
        self.criteria.get(id)
    }

    pub fn contains(&self, id: &CriterionId) -> bool {
        self.criteria.contains_key(id)
    }

    /// Criteria in id order.
    pub fn iter(&self) -> impl Iterator<Item = &AbetCriterion> {
        self.criteria.values()
    }

    pub fn ids(&self) -> impl Iterator<Item = &CriterionId> {
        self.criteria.keys()
    }

    pub fn len(&self) -> usize {
        self.criteria.len()
    }

    pub fn is_empty(&self) -> bool {
        self.criteria.is_empty()
    }
}

/// Sum of all criterion rubrics in a catalog.
pub fn catalog_total(catalog: &CriterionCatalog) -> Result<u32> {
    catalog.iter().map(criterion_rubric).sum()
}

/// Student outcome statements a-m as worded for the B.Tech CSE programme.
pub const ABET_OUTCOMES: [(&str, &str); 13] = [
    ("a", "an ability to apply knowledge of mathematics, science, and engineering"),
    ("b", "an ability to design and conduct experiments, as well as to analyze and interpret data"),
    ("c", "an ability to design a system, component, or process to meet desired needs within realistic constraints such as economic, environmental, social, political, ethical, health and safety, manufacturability, and sustainability"),
    ("d", "an ability to function on multidisciplinary teams"),
    ("e", "an ability to identify, formulate, and solve engineering problems"),
    ("f", "an understanding of professional and ethical responsibility"),
    ("g", "an ability to communicate effectively"),
    ("h", "the broad education necessary to understand the impact of engineering solutions in a global, economic, environmental, and societal context"),
    ("i", "a recognition of the need for, and an ability to engage in life-long learning"),
    ("j", "a knowledge of contemporary issues"),
    ("k", "an ability to use the techniques, skills, and modern engineering tools necessary for engineering practice"),
    ("l", "an ability to apply mathematical foundations, algorithmic principles and computer science theory in modeling and design of computer-based systems"),
    ("m", "an ability to apply design and development principles in the construction of software systems"),
];

/// Action verbs per Bloom level.
///
/// A verb may be listed under several levels; [`BloomLexicon::levels_of`]
/// returns all of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BloomLexicon {
    by_verb: BTreeMap<String, BTreeSet<BloomLevel>>,
}

impl BloomLexicon {
    /// Builds a lexicon from `(verb, level)` pairs. Verbs are lowercased and
    /// trimmed; every level must end up with at least one verb.
    pub fn new<S: AsRef<str>>(entries: impl IntoIterator<Item = (S, BloomLevel)>) -> Result<Self> {
        let mut by_verb: BTreeMap<String, BTreeSet<BloomLevel>> = BTreeMap::new();
        for (verb, level) in entries {
            let verb = normalize_verb(verb.as_ref())?;
            by_verb.entry(verb).or_default().insert(level);
        }
        let lexicon = BloomLexicon { by_verb };
        for level in BloomLevel::ALL {
            if lexicon.verbs_at(level).next().is_none() {
                return Err(Error::InvalidLexicon(format!("level {level} has no verbs")));
            }
        }
        Ok(lexicon)
    }

    pub fn levels_of(&self, verb: &str) -> Option<&BTreeSet<BloomLevel>> {
        self.by_verb.get(verb)
    }

    pub fn contains(&self, verb: &str) -> bool {
        self.by_verb.contains_key(verb)
    }

    /// Verbs listed at `level`, alphabetically.
    pub fn verbs_at(&self, level: BloomLevel) -> impl Iterator<Item = &str> {
        self.by_verb
            .iter()
            .filter(move |(_, levels)| levels.contains(&level))
            .map(|(verb, _)| verb.as_str())
    }

    /// `(verb, levels)` entries in alphabetical verb order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &BTreeSet<BloomLevel>)> {
        self.by_verb.iter().map(|(v, l)| (v.as_str(), l))
    }

    pub fn len(&self) -> usize {
        self.by_verb.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_verb.is_empty()
    }
}

pub(crate) fn normalize_verb(raw: &str) -> Result<String> {
    let verb = raw.trim().to_lowercase();
    if verb.is_empty() || !verb.chars().all(char::is_alphabetic) {
        return Err(Error::InvalidLexicon(format!(
            "verb {raw:?} must be a single alphabetic word"
        )));
    }
    Ok(verb)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn criterion(id: &str, weights: &[u32]) -> AbetCriterion {
        AbetCriterion {
            id: CriterionId::new(id).unwrap(),
            description: String::new(),
            levels: weights
                .iter()
                .map(|w| BloomLevel::from_weight(*w).unwrap())
                .collect(),
        }
    }

    #[test]
    fn weights_are_one_through_six_in_order() {
        let weights: Vec<u32> = BloomLevel::ALL.iter().map(|l| l.weight()).collect();
        assert_eq!(weights, vec![1, 2, 3, 4, 5, 6]);
        for pair in BloomLevel::ALL.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        for level in BloomLevel::ALL {
            assert_eq!(BloomLevel::from_weight(level.weight()), Some(level));
        }
        assert_eq!(BloomLevel::from_weight(0), None);
        assert_eq!(BloomLevel::from_weight(7), None);
    }

    #[test]
    fn level_parsing() {
        assert_eq!("3".parse::<BloomLevel>().unwrap(), BloomLevel::Apply);
        assert_eq!(
            " Analyze ".parse::<BloomLevel>().unwrap(),
            BloomLevel::Analyze
        );
        assert_eq!(
            "comprehension".parse::<BloomLevel>().unwrap(),
            BloomLevel::Understand
        );
        assert!(matches!(
            "7".parse::<BloomLevel>(),
            Err(Error::LevelOutOfRange { .. })
        ));
        assert!(matches!(
            "0".parse::<BloomLevel>(),
            Err(Error::LevelOutOfRange { .. })
        ));
        assert!(matches!(
            "ponder".parse::<BloomLevel>(),
            Err(Error::LevelOutOfRange { .. })
        ));
    }

    #[test]
    fn rubric_examples() {
        assert_eq!(
            criterion_rubric(&criterion("b", &[1, 2, 3, 4, 5, 6])).unwrap(),
            21
        );
        assert_eq!(criterion_rubric(&criterion("j", &[1])).unwrap(), 1);
        assert_eq!(criterion_rubric(&criterion("f", &[1, 2])).unwrap(), 3);
    }

    #[test]
    fn empty_level_set_is_invalid() {
        let err = criterion_rubric(&criterion("x", &[])).unwrap_err();
        assert!(matches!(err, Error::InvalidCriterion { id } if id == "x"));
        assert!(AbetCriterion::new(CriterionId::new("x").unwrap(), "", []).is_err());
    }

    #[test]
    fn max_rubric_is_full_set() {
        assert_eq!(max_rubric(), 21);
        let full: BTreeSet<_> = BloomLevel::ALL.into_iter().collect();
        assert_eq!(levels_weight(&full), max_rubric());
    }

    #[test]
    fn canonical_catalog_matches_mapping_table() {
        let catalog = CriterionCatalog::canonical();
        let rubrics: Vec<u32> = catalog
            .iter()
            .map(|c| criterion_rubric(c).unwrap())
            .collect();
        assert_eq!(rubrics, vec![6, 21, 21, 6, 21, 3, 3, 6, 21, 1, 6, 21, 21]);
        assert_eq!(catalog_total(&catalog).unwrap(), 157);
        assert!(catalog.ids().all(CriterionId::is_canonical));
    }

    #[test]
    fn catalog_subsets() {
        let canonical = CriterionCatalog::canonical();
        let pick = |ids: &[&str]| {
            CriterionCatalog::new(
                ids.iter().map(|id| {
                    canonical
                        .get(&CriterionId::new(id).unwrap())
                        .unwrap()
                        .clone()
                }),
                "subset",
            )
            .unwrap()
        };
        assert_eq!(catalog_total(&pick(&["j"])).unwrap(), 1);
        assert_eq!(catalog_total(&pick(&["a", "h", "k"])).unwrap(), 18);
    }

    #[test]
    fn catalog_rejects_duplicates_and_empty() {
        let err =
            CriterionCatalog::new([criterion("a", &[1]), criterion("a", &[2])], "t").unwrap_err();
        assert!(matches!(err, Error::DuplicateId { id } if id == "a"));
        assert!(CriterionCatalog::new(Vec::new(), "t").is_err());
    }

    #[test]
    fn criterion_ids() {
        assert!(CriterionId::new("PSO1").is_ok());
        assert!(!CriterionId::new("PSO1").unwrap().is_canonical());
        assert!(!CriterionId::new("n").unwrap().is_canonical());
        for bad in ["", "  ", "a b", "a|b", "a,b", "a:b"] {
            assert!(CriterionId::new(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn lexicon_normalizes_and_requires_every_level() {
        let mut entries: Vec<(String, BloomLevel)> = BloomLevel::ALL
            .iter()
            .map(|l| (format!("  {}  ", l.name().to_uppercase()), *l))
            .collect();
        entries.push(("apply".into(), BloomLevel::Create));
        let lexicon = BloomLexicon::new(entries.clone()).unwrap();
        assert_eq!(
            lexicon
                .levels_of("apply")
                .unwrap()
                .iter()
                .copied()
                .collect::<Vec<_>>(),
            vec![BloomLevel::Apply, BloomLevel::Create]
        );
        assert_eq!(
            lexicon.verbs_at(BloomLevel::Create).collect::<Vec<_>>(),
            vec!["apply", "create"]
        );

        entries.retain(|(_, l)| *l != BloomLevel::Evaluate);
        assert!(matches!(
            BloomLexicon::new(entries),
            Err(Error::InvalidLexicon(_))
        ));
        assert!(BloomLexicon::new([("two words", BloomLevel::Apply)]).is_err());
    }

    #[test]
    fn secondary_domains_are_labels_only() {
        assert_eq!(BloomLevel::Remember.affective_label(), Some("Receiving"));
        assert_eq!(BloomLevel::Create.psychomotor_label(), None);
    }
}
