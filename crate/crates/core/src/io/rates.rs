use std::fmt::Write as _;

use crate::io::{ParseError, ParseErrorKind, MOTION_FILE};
use crate::model::{ModelError, SuccessRateTable};

/// Parses `motion.txt`: one `label<TAB>rate` pair per non-blank line.
pub fn parse_motion_rates(text: &str) -> Result<SuccessRateTable, ParseError> {
    let mut table = SuccessRateTable::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let error = |kind, msg: String| ParseError::new(MOTION_FILE, line_no, kind, msg);
        let (label, rate) = line.rsplit_once('\t').ok_or_else(|| {
            error(
                ParseErrorKind::MalformedLine,
                format!("expected `motion<TAB>rate`, found `{line}`"),
            )
        })?;
        let rate: f64 = rate.trim().parse().map_err(|_| {
            error(
                ParseErrorKind::MalformedLine,
                format!("`{}` is not a decimal rate", rate.trim()),
            )
        })?;
        table.insert(label, rate).map_err(|e| {
            let kind = match e {
                ModelError::RateOutOfRange { .. } => ParseErrorKind::RateOutOfRange,
                ModelError::DuplicateRate(_) => ParseErrorKind::DuplicateMotionRate,
                _ => ParseErrorKind::MalformedLine,
            };
            error(kind, e.to_string())
        })?;
    }
    Ok(table)
}

pub fn serialize_motion_rates(table: &SuccessRateTable) -> String {
    let mut out = String::new();
    for (motion, rate) in table.iter() {
        let _ = writeln!(out, "{motion}\t{rate}");
    }
    out
}
