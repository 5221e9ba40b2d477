//! Domain types for functional object-oriented networks.
//!
//! A network is bipartite: object nodes on one side, motion nodes on the
//! other. The atomic piece is the [`FunctionalUnit`], which consumes a list
//! of objects through a single motion and yields another list of objects.
//! Recipes are [`Subgraph`]s, and the merge of every recipe is the
//! [`UniversalFoon`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use indexmap::{IndexMap, IndexSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("label must not be empty")]
    EmptyLabel,
    #[error("label `{0}` contains a tab or line break")]
    ControlCharacter(String),
    #[error("functional unit has no input objects")]
    NoInputs,
    #[error("functional unit has no output objects")]
    NoOutputs,
    #[error("object `{0}` appears twice on the same side of a functional unit")]
    DuplicateObject(ObjectNode),
    #[error("success rate {rate} for motion `{motion}` is outside [0, 1]")]
    RateOutOfRange { motion: String, rate: f64 },
    #[error("motion `{0}` already has a success rate")]
    DuplicateRate(String),
}

/// Trims and lowercases a label-like string.
pub fn normalize(raw: &str) -> String {
    raw.trim().to_lowercase()
}

/// An object with its states and, for containers, the ingredients inside.
///
/// States and ingredients are sets, so equality and hashing ignore the order
/// in which they were written.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectNode {
    label: String,
    states: BTreeSet<String>,
    ingredients: BTreeSet<String>,
}

impl ObjectNode {
    pub fn new<S, I>(label: &str, states: S, ingredients: I) -> Result<Self, ModelError>
    where
        S: IntoIterator,
        S::Item: AsRef<str>,
        I: IntoIterator,
        I::Item: AsRef<str>,
    {
        Ok(ObjectNode {
            label: non_empty(label)?,
            states: normalized_set(states)?,
            ingredients: normalized_set(ingredients)?,
        })
    }

    /// An object with no states and no ingredients.
    pub fn plain(label: &str) -> Result<Self, ModelError> {
        Self::new(label, None::<&str>, None::<&str>)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn states(&self) -> &BTreeSet<String> {
        &self.states
    }

    pub fn ingredients(&self) -> &BTreeSet<String> {
        &self.ingredients
    }

    pub fn add_state(&mut self, state: &str) -> Result<bool, ModelError> {
        Ok(self.states.insert(non_empty(state)?))
    }

    pub fn add_ingredient(&mut self, ingredient: &str) -> Result<bool, ModelError> {
        Ok(self.ingredients.insert(non_empty(ingredient)?))
    }
}

fn non_empty(raw: &str) -> Result<String, ModelError> {
    let s = normalize(raw);
    if s.is_empty() {
        Err(ModelError::EmptyLabel)
    } else if s.contains(['\t', '\n', '\r']) {
        Err(ModelError::ControlCharacter(s))
    } else {
        Ok(s)
    }
}

fn normalized_set<T>(items: T) -> Result<BTreeSet<String>, ModelError>
where
    T: IntoIterator,
    T::Item: AsRef<str>,
{
    items.into_iter().map(|s| non_empty(s.as_ref())).collect()
}

impl fmt::Display for ObjectNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)?;
        if self.states.is_empty() && self.ingredients.is_empty() {
            return Ok(());
        }
        let states: Vec<&str> = self.states.iter().map(String::as_str).collect();
        f.write_str(" (")?;
        f.write_str(&states.join(", "))?;
        if !self.ingredients.is_empty() {
            if !states.is_empty() {
                f.write_str("; ")?;
            }
            let ingredients: Vec<&str> = self.ingredients.iter().map(String::as_str).collect();
            write!(f, "contains: {}", ingredients.join(", "))?;
        }
        f.write_str(")")
    }
}

/// The action of a functional unit, e.g. `pour` or `cut`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MotionNode(String);

impl MotionNode {
    pub fn new(label: &str) -> Result<Self, ModelError> {
        non_empty(label).map(MotionNode)
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for MotionNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Success rate per motion label, each in `[0, 1]`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SuccessRateTable {
    entries: BTreeMap<String, f64>,
}

impl SuccessRateTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, motion: &str, rate: f64) -> Result<(), ModelError> {
        let motion = non_empty(motion)?;
        if !(0.0..=1.0).contains(&rate) {
            return Err(ModelError::RateOutOfRange { motion, rate });
        }
        if self.entries.contains_key(&motion) {
            return Err(ModelError::DuplicateRate(motion));
        }
        self.entries.insert(motion, rate);
        Ok(())
    }

    pub fn rate(&self, motion: &MotionNode) -> Option<f64> {
        self.entries.get(motion.label()).copied()
    }

    pub fn contains(&self, motion: &MotionNode) -> bool {
        self.entries.contains_key(motion.label())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

/// One state-changing action: inputs, a motion, outputs.
///
/// Inputs and outputs keep their written order (retrieval explores inputs in
/// that order), but equality and hashing treat both sides as sets.
#[derive(Debug, Clone)]
pub struct FunctionalUnit {
    inputs: Vec<ObjectNode>,
    motion: MotionNode,
    outputs: Vec<ObjectNode>,
}

impl FunctionalUnit {
    pub fn new(
        inputs: Vec<ObjectNode>,
        motion: MotionNode,
        outputs: Vec<ObjectNode>,
    ) -> Result<Self, ModelError> {
        if inputs.is_empty() {
            return Err(ModelError::NoInputs);
        }
        if outputs.is_empty() {
            return Err(ModelError::NoOutputs);
        }
        for side in [&inputs, &outputs] {
            let mut seen = BTreeSet::new();
            for node in side {
                if !seen.insert(node) {
                    return Err(ModelError::DuplicateObject(node.clone()));
                }
            }
        }
        Ok(FunctionalUnit {
            inputs,
            motion,
            outputs,
        })
    }

    pub fn inputs(&self) -> &[ObjectNode] {
        &self.inputs
    }

    pub fn motion(&self) -> &MotionNode {
        &self.motion
    }

    pub fn outputs(&self) -> &[ObjectNode] {
        &self.outputs
    }

    pub fn produces(&self, node: &ObjectNode) -> bool {
        self.outputs.contains(node)
    }

    /// Input object count plus the ingredients held by those inputs.
    pub fn input_weight(&self) -> usize {
        self.inputs.len()
            + self
                .inputs
                .iter()
                .map(|n| n.ingredients().len())
                .sum::<usize>()
    }

    fn sorted_sides(&self) -> (Vec<&ObjectNode>, Vec<&ObjectNode>) {
        let mut inputs: Vec<&ObjectNode> = self.inputs.iter().collect();
        let mut outputs: Vec<&ObjectNode> = self.outputs.iter().collect();
        inputs.sort();
        outputs.sort();
        (inputs, outputs)
    }
}

impl PartialEq for FunctionalUnit {
    fn eq(&self, other: &Self) -> bool {
        self.motion == other.motion
            && self.inputs.len() == other.inputs.len()
            && self.outputs.len() == other.outputs.len()
            && self.sorted_sides() == other.sorted_sides()
    }
}

impl Eq for FunctionalUnit {}

impl Hash for FunctionalUnit {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.motion.hash(state);
        self.sorted_sides().hash(state);
    }
}

impl fmt::Display for FunctionalUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |nodes: &[ObjectNode]| {
            nodes
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" + ")
        };
        write!(
            f,
            "{} --{}--> {}",
            join(&self.inputs),
            self.motion,
            join(&self.outputs)
        )
    }
}

/// The network for a single recipe.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Subgraph {
    pub name: String,
    pub units: Vec<FunctionalUnit>,
}

impl Subgraph {
    pub fn new(name: impl Into<String>, units: Vec<FunctionalUnit>) -> Self {
        Subgraph {
            name: name.into(),
            units,
        }
    }
}

/// Deduplicated union of subgraphs, indexed by produced object.
#[derive(Debug, Clone, Default)]
pub struct UniversalFoon {
    units: IndexSet<FunctionalUnit>,
    producer_index: HashMap<ObjectNode, Vec<usize>>,
}

impl UniversalFoon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_units<I: IntoIterator<Item = FunctionalUnit>>(units: I) -> Self {
        let mut foon = Self::new();
        for unit in units {
            foon.insert(unit);
        }
        foon
    }

    /// Adds `unit` unless an equal unit is already present. Returns whether it
    /// was added.
    pub fn insert(&mut self, unit: FunctionalUnit) -> bool {
        let index = self.units.len();
        let outputs = unit.outputs.clone();
        if !self.units.insert(unit) {
            return false;
        }
        for node in outputs {
            self.producer_index.entry(node).or_default().push(index);
        }
        true
    }

    /// Union with `sub`, keeping the first occurrence of equal units.
    pub fn merge_subgraph(mut self, sub: &Subgraph) -> Self {
        for unit in &sub.units {
            self.insert(unit.clone());
        }
        self
    }

    pub fn units(&self) -> impl ExactSizeIterator<Item = &FunctionalUnit> + '_ {
        self.units.iter()
    }

    pub fn unit(&self, index: usize) -> Option<&FunctionalUnit> {
        self.units.get_index(index)
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn index_of(&self, unit: &FunctionalUnit) -> Option<usize> {
        self.units.get_index_of(unit)
    }

    /// Indices of the units whose outputs contain `node`, in insertion order.
    pub fn producer_indices(&self, node: &ObjectNode) -> &[usize] {
        self.producer_index
            .get(node)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn producers_of(&self, node: &ObjectNode) -> Vec<&FunctionalUnit> {
        self.producer_indices(node)
            .iter()
            .map(|&i| &self.units[i])
            .collect()
    }

    /// Every distinct object node mentioned by any unit, in first-seen order.
    pub fn object_nodes(&self) -> IndexSet<&ObjectNode> {
        self.units
            .iter()
            .flat_map(|u| u.inputs.iter().chain(u.outputs.iter()))
            .collect()
    }

    /// Motion labels used by the network, in first-seen order.
    pub fn motions(&self) -> IndexSet<&MotionNode> {
        self.units.iter().map(|u| &u.motion).collect()
    }

    /// Objects with at least one producer, each mapped to its producer indices.
    pub fn producer_index(&self) -> &HashMap<ObjectNode, Vec<usize>> {
        &self.producer_index
    }
}

impl PartialEq for UniversalFoon {
    /// Element-wise comparison of the unit lists.
    fn eq(&self, other: &Self) -> bool {
        self.units.len() == other.units.len()
            && self
                .units
                .iter()
                .zip(other.units.iter())
                .all(|(a, b)| a == b)
    }
}

/// Objects on hand before any action is taken.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Kitchen {
    items: IndexSet<ObjectNode>,
}

impl Kitchen {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, node: ObjectNode) -> bool {
        self.items.insert(node)
    }

    /// Exact match on label, states and ingredients.
    pub fn contains(&self, node: &ObjectNode) -> bool {
        self.items.contains(node)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ObjectNode> {
        self.items.iter()
    }
}

impl FromIterator<ObjectNode> for Kitchen {
    fn from_iter<T: IntoIterator<Item = ObjectNode>>(iter: T) -> Self {
        Kitchen {
            items: iter.into_iter().collect(),
        }
    }
}

pub fn node_available(kitchen: &Kitchen, node: &ObjectNode) -> bool {
    kitchen.contains(node)
}

/// Functional units in execution order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TaskTree {
    steps: Vec<FunctionalUnit>,
}

impl TaskTree {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a tree from `steps`, dropping later duplicates.
    pub fn from_steps<I: IntoIterator<Item = FunctionalUnit>>(steps: I) -> Self {
        let unique: IndexMap<FunctionalUnit, ()> = steps.into_iter().map(|u| (u, ())).collect();
        TaskTree {
            steps: unique.into_keys().collect(),
        }
    }

    pub fn steps(&self) -> &[FunctionalUnit] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn into_steps(self) -> Vec<FunctionalUnit> {
        self.steps
    }
}
