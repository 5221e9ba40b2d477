use serde::{Deserialize, Serialize};

use crate::io::{ParseError, ParseErrorKind, GOALS_FILE, KITCHEN_FILE};
use crate::model::{Kitchen, ObjectNode};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNode {
    label: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    states: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    ingredients: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(try_from = "RawNode")]
struct JsonNode(ObjectNode);

impl TryFrom<RawNode> for JsonNode {
    type Error = String;

    fn try_from(raw: RawNode) -> Result<Self, Self::Error> {
        ObjectNode::new(&raw.label, &raw.states, &raw.ingredients)
            .map(JsonNode)
            .map_err(|e| e.to_string())
    }
}

impl From<&ObjectNode> for RawNode {
    fn from(node: &ObjectNode) -> Self {
        RawNode {
            label: node.label().to_string(),
            states: node.states().iter().cloned().collect(),
            ingredients: node.ingredients().iter().cloned().collect(),
        }
    }
}

fn parse_nodes(text: &str, file: &str) -> Result<Vec<ObjectNode>, ParseError> {
    serde_json::from_str::<Vec<JsonNode>>(text)
        .map(|nodes| nodes.into_iter().map(|n| n.0).collect())
        .map_err(|e| ParseError::new(file, e.line(), ParseErrorKind::BadJsonShape, e.to_string()))
}

fn serialize_nodes<'a>(nodes: impl Iterator<Item = &'a ObjectNode>) -> String {
    let raw: Vec<RawNode> = nodes.map(RawNode::from).collect();
    let mut out = serde_json::to_string_pretty(&raw).expect("plain strings always serialize");
    out.push('\n');
    out
}

/// Parses `kitchen.json`. Repeated entries collapse to one.
pub fn parse_kitchen(text: &str) -> Result<Kitchen, ParseError> {
    parse_nodes(text, KITCHEN_FILE).map(Kitchen::from_iter)
}

/// Parses `goal_nodes.json`, keeping file order.
pub fn parse_goals(text: &str) -> Result<Vec<ObjectNode>, ParseError> {
    parse_nodes(text, GOALS_FILE)
}

pub fn serialize_kitchen(kitchen: &Kitchen) -> String {
    serialize_nodes(kitchen.iter())
}

pub fn serialize_goals(goals: &[ObjectNode]) -> String {
    serialize_nodes(goals.iter())
}
