use std::fmt::Write as _;

use indexmap::IndexSet;

use crate::model::{FunctionalUnit, ObjectNode};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn object_label(node: &ObjectNode) -> String {
    let mut label = escape(node.label());
    if !node.states().is_empty() {
        let states: Vec<&str> = node.states().iter().map(String::as_str).collect();
        let _ = write!(label, "\\n[{}]", escape(&states.join(", ")));
    }
    if !node.ingredients().is_empty() {
        let ingredients: Vec<&str> = node.ingredients().iter().map(String::as_str).collect();
        let _ = write!(label, "\\n{{{}}}", escape(&ingredients.join(", ")));
    }
    label
}

/// Renders units as a Graphviz digraph: object vertices are green, one red
/// vertex per unit's motion, edges run input -> motion -> output.
///
/// Accepts anything that yields units, so both a network (`foon.units()`) and
/// a task tree (`tree.steps()`) can be exported.
pub fn export_dot<'a, I>(units: I) -> String
where
    I: IntoIterator<Item = &'a FunctionalUnit>,
{
    let units: Vec<&FunctionalUnit> = units.into_iter().collect();
    let objects: IndexSet<&ObjectNode> = units
        .iter()
        .flat_map(|u| u.inputs().iter().chain(u.outputs()))
        .collect();

    let mut out = String::from("digraph foon {\n");
    for (i, node) in objects.iter().enumerate() {
        let _ = writeln!(
            out,
            "  o{i} [label=\"{}\", shape=ellipse, color=green];",
            object_label(node)
        );
    }
    for (i, unit) in units.iter().enumerate() {
        let _ = writeln!(
            out,
            "  m{i} [label=\"{}\", shape=box, color=red];",
            escape(unit.motion().label())
        );
    }
    for (i, unit) in units.iter().enumerate() {
        for input in unit.inputs() {
            let o = objects.get_index_of(input).expect("indexed above");
            let _ = writeln!(out, "  o{o} -> m{i};");
        }
        for output in unit.outputs() {
            let o = objects.get_index_of(output).expect("indexed above");
            let _ = writeln!(out, "  m{i} -> o{o};");
        }
    }
    out.push_str("}\n");
    out
}
