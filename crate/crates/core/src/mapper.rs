//! Tags outcome statements with Bloom levels by exact action-verb matching.
//!
//! Matching is deliberately simple and auditable: a token matches when it is
//! a lexicon verb. An optional suffix rule also tries the token with a
//! plural or gerund ending removed. A verb listed under several levels
//! contributes all of them and is reported as ambiguous.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::taxonomy::{AbetCriterion, BloomLevel, BloomLexicon, CriterionId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeStatement {
    pub criterion_id: String,
    pub text: String,
}

impl OutcomeStatement {
    pub fn new(criterion_id: impl Into<String>, text: impl AsRef<str>) -> Result<Self> {
        let criterion_id = criterion_id.into();
        let text = text
            .as_ref()
            .split_whitespace()
            .collect::<Vec<_>>()
            .join(" ");
        if text.is_empty() {
            return Err(Error::InvalidValue(format!(
                "outcome `{criterion_id}` has empty text"
            )));
        }
        Ok(OutcomeStatement { criterion_id, text })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MatchOptions {
    /// Also try tokens with a trailing `s`, `es`, `ies`, or `ing` removed.
    pub suffix_rule: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerbMatch {
    /// Word as it appears in the text.
    pub token: String,
    /// Lexicon verb it resolved to.
    pub verb: String,
    pub level: BloomLevel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MappingResult {
    pub criterion_id: String,
    /// Distinct `(verb, level)` pairs in order of first occurrence.
    pub matched: Vec<VerbMatch>,
    pub levels: BTreeSet<BloomLevel>,
    /// Matched verbs that the lexicon lists under more than one level.
    pub ambiguous: Vec<String>,
    pub unmatched_tokens_count: usize,
}

impl MappingResult {
    pub fn needs_review(&self) -> bool {
        self.levels.is_empty()
    }

    /// Rubric of a criterion with exactly these levels.
    pub fn draft_rubric(&self) -> u32 {
        crate::taxonomy::levels_weight(&self.levels)
    }
}

/// Lowercase alphabetic runs of `text`, in order.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphabetic())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

fn resolve<'a>(
    token: &str,
    lexicon: &'a BloomLexicon,
    options: MatchOptions,
) -> Option<(String, &'a BTreeSet<BloomLevel>)> {
    if let Some(levels) = lexicon.levels_of(token) {
        return Some((token.to_string(), levels));
    }
    if !options.suffix_rule {
        return None;
    }
    let mut candidates = Vec::new();
    if let Some(stem) = token.strip_suffix("ies") {
        candidates.push(format!("{stem}y"));
    }
    if let Some(stem) = token.strip_suffix("ing") {
        candidates.push(stem.to_string());
        candidates.push(format!("{stem}e"));
    }
    if let Some(stem) = token.strip_suffix("es") {
        candidates.push(stem.to_string());
    }
    if let Some(stem) = token.strip_suffix('s') {
        candidates.push(stem.to_string());
    }
    candidates
        .into_iter()
        .filter(|c| c.chars().count() >= 2)
        .find_map(|c| lexicon.levels_of(&c).map(|levels| (c, levels)))
}

pub fn map_outcome(
    statement: &OutcomeStatement,
    lexicon: &BloomLexicon,
    options: MatchOptions,
) -> MappingResult {
    let mut matched: Vec<VerbMatch> = Vec::new();
    let mut levels = BTreeSet::new();
    let mut ambiguous: Vec<String> = Vec::new();
    let mut unmatched = 0;
    for token in tokenize(&statement.text) {
        let Some((verb, verb_levels)) = resolve(&token, lexicon, options) else {
            unmatched += 1;
            continue;
        };
        if verb_levels.len() > 1 && !ambiguous.contains(&verb) {
            ambiguous.push(verb.clone());
        }
        for &level in verb_levels {
            levels.insert(level);
            if !matched.iter().any(|m| m.verb == verb && m.level == level) {
                matched.push(VerbMatch {
                    token: token.clone(),
                    verb: verb.clone(),
                    level,
                });
            }
        }
    }
    MappingResult {
        criterion_id: statement.criterion_id.clone(),
        matched,
        levels,
        ambiguous,
        unmatched_tokens_count: unmatched,
    }
}

/// Drafts a criterion from a statement's mapped levels, for review before it
/// is added to a catalog.
pub fn suggest_criterion(
    statement: &OutcomeStatement,
    lexicon: &BloomLexicon,
    options: MatchOptions,
) -> Result<AbetCriterion> {
    let result = map_outcome(statement, lexicon, options);
    if result.levels.is_empty() {
        return Err(Error::NoActionWords {
            criterion: statement.criterion_id.clone(),
        });
    }
    AbetCriterion::new(
        CriterionId::new(&statement.criterion_id)?,
        statement.text.clone(),
        result.levels,
    )
}
