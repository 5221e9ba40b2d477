//! Readers and writers for the network's file formats.
//!
//! * `FOON.txt` and task-tree files: tab-separated `O`/`S`/`I`/`M` records,
//!   units delimited by `//` lines.
//! * `motion.txt`: `label<TAB>rate` per line.
//! * `kitchen.json` and `goal_nodes.json`: arrays of
//!   `{"label", "states"?, "ingredients"?}`.
//! * Graphviz DOT export.

mod dot;
mod foon_text;
mod json;
mod rates;

use std::fmt;
use std::fs;
use std::path::Path;

use thiserror::Error;

pub use dot::export_dot;
pub use foon_text::{
    parse_task_tree, parse_universal_foon, serialize_task_tree, serialize_universal_foon,
};
pub use json::{parse_goals, parse_kitchen, serialize_goals, serialize_kitchen};
pub use rates::{parse_motion_rates, serialize_motion_rates};

use crate::model::{Kitchen, ObjectNode, SuccessRateTable, UniversalFoon};

pub const FOON_FILE: &str = "FOON.txt";
pub const MOTION_FILE: &str = "motion.txt";
pub const KITCHEN_FILE: &str = "kitchen.json";
pub const GOALS_FILE: &str = "goal_nodes.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    MalformedLine,
    UnknownRecordTag,
    EmptyUnit,
    MissingMotion,
    DuplicateMotionRate,
    RateOutOfRange,
    BadJsonShape,
    /// The file could not be read at all.
    Unreadable,
}

impl ParseErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ParseErrorKind::MalformedLine => "malformed-line",
            ParseErrorKind::UnknownRecordTag => "unknown-record-tag",
            ParseErrorKind::EmptyUnit => "empty-unit",
            ParseErrorKind::MissingMotion => "missing-motion",
            ParseErrorKind::DuplicateMotionRate => "duplicate-motion-rate",
            ParseErrorKind::RateOutOfRange => "rate-out-of-range",
            ParseErrorKind::BadJsonShape => "bad-json-shape",
            ParseErrorKind::Unreadable => "unreadable",
        }
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A parse failure pinned to the first offending line (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{file}:{line}: {kind}: {message}")]
pub struct ParseError {
    pub file: String,
    pub line: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(
        file: &str,
        line: usize,
        kind: ParseErrorKind,
        message: impl Into<String>,
    ) -> Self {
        ParseError {
            file: file.to_string(),
            line: line.max(1),
            kind,
            message: message.into(),
        }
    }

    /// Replaces the default file name with the path actually read.
    pub fn in_file(mut self, file: impl Into<String>) -> Self {
        self.file = file.into();
        self
    }
}

fn read_file(path: &Path) -> Result<String, ParseError> {
    fs::read_to_string(path).map_err(|e| {
        ParseError::new(
            &path.display().to_string(),
            1,
            ParseErrorKind::Unreadable,
            e.to_string(),
        )
    })
}

fn load<T>(
    path: &Path,
    parse: impl FnOnce(&str) -> Result<T, ParseError>,
) -> Result<T, ParseError> {
    let text = read_file(path)?;
    parse(&text).map_err(|e| e.in_file(path.display().to_string()))
}

pub fn load_universal_foon(path: &Path) -> Result<UniversalFoon, ParseError> {
    load(path, parse_universal_foon)
}

pub fn load_motion_rates(path: &Path) -> Result<SuccessRateTable, ParseError> {
    load(path, parse_motion_rates)
}

pub fn load_kitchen(path: &Path) -> Result<Kitchen, ParseError> {
    load(path, parse_kitchen)
}

pub fn load_goals(path: &Path) -> Result<Vec<ObjectNode>, ParseError> {
    load(path, parse_goals)
}
