use std::fmt::Write as _;

use crate::io::{ParseError, ParseErrorKind, FOON_FILE};
use crate::model::{FunctionalUnit, MotionNode, ObjectNode, TaskTree, UniversalFoon};

const DELIMITER: &str = "//";

#[derive(Default)]
struct PendingUnit {
    first_line: usize,
    inputs: Vec<(ObjectNode, usize)>,
    motion: Option<MotionNode>,
    outputs: Vec<(ObjectNode, usize)>,
}

impl PendingUnit {
    fn is_empty(&self) -> bool {
        self.first_line == 0
    }

    fn side(&mut self) -> &mut Vec<(ObjectNode, usize)> {
        if self.motion.is_some() {
            &mut self.outputs
        } else {
            &mut self.inputs
        }
    }

    fn finish(self) -> Result<FunctionalUnit, ParseError> {
        let line = self.first_line;
        let motion = self.motion.ok_or_else(|| {
            ParseError::new(
                FOON_FILE,
                line,
                ParseErrorKind::MissingMotion,
                "unit has no M record",
            )
        })?;
        if self.inputs.is_empty() || self.outputs.is_empty() {
            let side = if self.inputs.is_empty() {
                "inputs"
            } else {
                "outputs"
            };
            return Err(ParseError::new(
                FOON_FILE,
                line,
                ParseErrorKind::EmptyUnit,
                format!("unit has no {side}"),
            ));
        }
        for side in [&self.inputs, &self.outputs] {
            for (i, (node, at)) in side.iter().enumerate() {
                if side[..i].iter().any(|(n, _)| n == node) {
                    return Err(ParseError::new(
                        FOON_FILE,
                        *at,
                        ParseErrorKind::MalformedLine,
                        format!("object `{node}` repeated on one side of the unit"),
                    ));
                }
            }
        }
        let inputs = self.inputs.into_iter().map(|(n, _)| n).collect();
        let outputs = self.outputs.into_iter().map(|(n, _)| n).collect();
        FunctionalUnit::new(inputs, motion, outputs).map_err(|e| {
            ParseError::new(
                FOON_FILE,
                line,
                ParseErrorKind::MalformedLine,
                e.to_string(),
            )
        })
    }
}

fn parse_units(text: &str) -> Result<Vec<FunctionalUnit>, ParseError> {
    let mut units = Vec::new();
    let mut pending = PendingUnit::default();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == DELIMITER {
            if !pending.is_empty() {
                units.push(std::mem::take(&mut pending).finish()?);
            }
            continue;
        }
        let malformed =
            |msg: String| ParseError::new(FOON_FILE, line_no, ParseErrorKind::MalformedLine, msg);
        let (tag, value) = line
            .split_once('\t')
            .ok_or_else(|| malformed(format!("expected `TAG<TAB>value`, found `{line}`")))?;
        let value = value.trim();
        if pending.is_empty() {
            pending.first_line = line_no;
        }
        match tag.trim() {
            "O" => {
                let node = ObjectNode::plain(value).map_err(|e| malformed(e.to_string()))?;
                pending.side().push((node, line_no));
            }
            tag @ ("S" | "I") => {
                let (node, _) = pending
                    .side()
                    .last_mut()
                    .ok_or_else(|| malformed(format!("`{tag}` record before any object")))?;
                let added = if tag == "S" {
                    node.add_state(value)
                } else {
                    node.add_ingredient(value)
                };
                added.map_err(|e| malformed(e.to_string()))?;
            }
            "M" => {
                if pending.motion.is_some() {
                    return Err(ParseError::new(
                        FOON_FILE,
                        line_no,
                        ParseErrorKind::MissingMotion,
                        "unit has more than one M record",
                    ));
                }
                pending.motion =
                    Some(MotionNode::new(value).map_err(|e| malformed(e.to_string()))?);
            }
            other => {
                return Err(ParseError::new(
                    FOON_FILE,
                    line_no,
                    ParseErrorKind::UnknownRecordTag,
                    format!("unknown record tag `{other}`"),
                ))
            }
        }
    }
    if !pending.is_empty() {
        units.push(pending.finish()?);
    }
    Ok(units)
}

/// Parses FOON text. Units keep file order; repeated units are dropped.
pub fn parse_universal_foon(text: &str) -> Result<UniversalFoon, ParseError> {
    parse_units(text).map(UniversalFoon::from_units)
}

/// Parses a task tree written in the FOON text grammar, keeping step order.
pub fn parse_task_tree(text: &str) -> Result<TaskTree, ParseError> {
    parse_units(text).map(TaskTree::from_steps)
}

fn write_object(out: &mut String, node: &ObjectNode) {
    let _ = writeln!(out, "O\t{}", node.label());
    for state in node.states() {
        let _ = writeln!(out, "S\t{state}");
    }
    for ingredient in node.ingredients() {
        let _ = writeln!(out, "I\t{ingredient}");
    }
}

fn serialize_units<'a>(units: impl IntoIterator<Item = &'a FunctionalUnit>) -> String {
    let mut out = String::new();
    for unit in units {
        if out.is_empty() {
            out.push_str("//\n");
        }
        for node in unit.inputs() {
            write_object(&mut out, node);
        }
        let _ = writeln!(out, "M\t{}", unit.motion());
        for node in unit.outputs() {
            write_object(&mut out, node);
        }
        out.push_str("//\n");
    }
    out
}

pub fn serialize_universal_foon(foon: &UniversalFoon) -> String {
    serialize_units(foon.units())
}

pub fn serialize_task_tree(tree: &TaskTree) -> String {
    serialize_units(tree.steps())
}
