//! Course difficulty estimation.
//!
//! Courses map to student-outcome criteria; each criterion maps to a set of
//! Bloom cognitive levels weighted 1-6. Summed and normalized, those weights
//! give a Bloom difficulty index on a 0-5 scale, which is checked against a
//! second index derived from historical class averages.
//!
//! * [`taxonomy`]: Bloom levels, verb lexicon, criterion catalogs, rubrics
//! * [`difficulty`]: Bloom DI, grade DI and their combination
//! * [`validation`]: actual vs estimated comparison and accuracy
//! * [`mapper`]: action-verb tagging of outcome statements
//! * [`data_io`]: file formats and shipped fixtures
//! * [`report`]: pipeline steps and report rendering
//! * [`cli`]: the `course-difficulty` command

pub mod cli;
pub mod data_io;
pub mod difficulty;
mod error;
pub mod mapper;
pub mod report;
pub mod rounding;
pub mod taxonomy;
pub mod validation;

pub use error::{Error, Result};
