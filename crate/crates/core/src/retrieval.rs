//! Task-tree retrieval over a universal FOON.
//!
//! Every strategy shares one backward-search skeleton. Seed a frontier with
//! the goal. Pop a node. Skip it if it was already searched. If the kitchen
//! lacks it, pick exactly one producing unit and push that unit's inputs.
//! The strategies differ only in frontier discipline (FIFO or LIFO), in how
//! the single producer is picked, and, for iterative deepening, in a depth
//! cutoff that is raised until the search completes.
//!
//! There is no backtracking: once a producer is picked for a node, the node is
//! never reconsidered. A goal may therefore be reported unsolvable even though
//! a different producer would have worked.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::num::NonZeroUsize;
use std::str::FromStr;

use thiserror::Error;

use crate::model::{
    FunctionalUnit, Kitchen, MotionNode, ObjectNode, SuccessRateTable, TaskTree, UniversalFoon,
};

pub const DEFAULT_MAX_DEPTH: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Bfs,
    Dfs,
    Ids,
    GbfsMaxSuccess,
    GbfsMinInputs,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Bfs,
        Algorithm::Dfs,
        Algorithm::Ids,
        Algorithm::GbfsMaxSuccess,
        Algorithm::GbfsMinInputs,
    ];

    /// The four strategies compared in the reference results table, in column order.
    pub const TABLE: [Algorithm; 4] = [
        Algorithm::Bfs,
        Algorithm::GbfsMaxSuccess,
        Algorithm::GbfsMinInputs,
        Algorithm::Ids,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Bfs => "bfs",
            Algorithm::Dfs => "dfs",
            Algorithm::Ids => "ids",
            Algorithm::GbfsMaxSuccess => "gbfs-max-success",
            Algorithm::GbfsMinInputs => "gbfs-min-inputs",
        }
    }

    fn frontier(self) -> Discipline {
        match self {
            Algorithm::Dfs | Algorithm::Ids => Discipline::Lifo,
            Algorithm::Bfs | Algorithm::GbfsMaxSuccess | Algorithm::GbfsMinInputs => {
                Discipline::Fifo
            }
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error(
    "unknown algorithm `{0}` (expected one of bfs, dfs, ids, gbfs-max-success, gbfs-min-inputs)"
)]
pub struct UnknownAlgorithm(pub String);

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s.trim().to_lowercase())
            .ok_or_else(|| UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RetrievalConfig {
    pub algorithm: Algorithm,
    /// Ceiling on the iterative-deepening limit; `None` means unlimited.
    pub max_depth: Option<NonZeroUsize>,
}

impl RetrievalConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        RetrievalConfig {
            algorithm,
            max_depth: NonZeroUsize::new(DEFAULT_MAX_DEPTH),
        }
    }

    pub fn with_max_depth(mut self, max_depth: NonZeroUsize) -> Self {
        self.max_depth = Some(max_depth);
        self
    }

    pub fn unlimited(mut self) -> Self {
        self.max_depth = None;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RetrievalError {
    #[error("UnsolvableGoal: `{node}` is not in the kitchen and cannot be produced")]
    UnsolvableGoal { node: ObjectNode },
    #[error("MissingRate: motion `{motion}` has no success rate")]
    MissingRate { motion: MotionNode },
    #[error("DepthExhausted: no complete task tree within depth {max_depth}")]
    DepthExhausted { max_depth: usize },
}

/// One producer choice made during a search.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub node: ObjectNode,
    /// Indices (into the network) of every unit producing `node`.
    pub candidates: Vec<usize>,
    pub chosen: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RetrievalOutcome {
    pub tree: TaskTree,
    /// Object nodes taken off the frontier and expanded, summed over every
    /// deepening round for `ids`.
    pub expanded_nodes: usize,
    pub selected_units: usize,
    /// Producer choices of the search that produced `tree`.
    pub selections: Vec<Selection>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Discipline {
    Fifo,
    Lifo,
}

struct Frontier<'a> {
    discipline: Discipline,
    queue: VecDeque<(&'a ObjectNode, usize)>,
}

impl<'a> Frontier<'a> {
    fn new(discipline: Discipline, goal: &'a ObjectNode) -> Self {
        Frontier {
            discipline,
            queue: VecDeque::from([(goal, 0)]),
        }
    }

    fn pop(&mut self) -> Option<(&'a ObjectNode, usize)> {
        match self.discipline {
            Discipline::Fifo => self.queue.pop_front(),
            Discipline::Lifo => self.queue.pop_back(),
        }
    }

    /// Pushes `nodes` so that they are popped in the order given.
    fn extend(&mut self, nodes: &'a [ObjectNode], depth: usize) {
        match self.discipline {
            Discipline::Fifo => self.queue.extend(nodes.iter().map(|n| (n, depth))),
            Discipline::Lifo => self.queue.extend(nodes.iter().rev().map(|n| (n, depth))),
        }
    }
}

enum SearchFailure {
    Cutoff { expanded: usize },
    Failed(RetrievalError),
}

impl From<RetrievalError> for SearchFailure {
    fn from(e: RetrievalError) -> Self {
        SearchFailure::Failed(e)
    }
}

struct Search<'a> {
    foon: &'a UniversalFoon,
    kitchen: &'a Kitchen,
    rates: &'a SuccessRateTable,
    algorithm: Algorithm,
}

struct Found {
    /// Unit indices in the order they were picked.
    picked: Vec<usize>,
    expanded: usize,
    selections: Vec<Selection>,
}

impl<'a> Search<'a> {
    fn select(&self, candidates: &[usize]) -> Result<usize, RetrievalError> {
        let unit = |i: usize| self.foon.unit(i).expect("producer index is consistent");
        let first = candidates[0];
        match self.algorithm {
            Algorithm::Bfs | Algorithm::Dfs | Algorithm::Ids => Ok(first),
            Algorithm::GbfsMaxSuccess => {
                let mut best: Option<(usize, f64)> = None;
                for &i in candidates {
                    let motion = unit(i).motion();
                    let rate =
                        self.rates
                            .rate(motion)
                            .ok_or_else(|| RetrievalError::MissingRate {
                                motion: motion.clone(),
                            })?;
                    if best.is_none_or(|(_, r)| rate > r) {
                        best = Some((i, rate));
                    }
                }
                Ok(best.map_or(first, |(i, _)| i))
            }
            Algorithm::GbfsMinInputs => Ok(candidates
                .iter()
                .copied()
                .min_by_key(|&i| unit(i).input_weight())
                .unwrap_or(first)),
        }
    }

    fn run(
        &self,
        goal: &'a ObjectNode,
        depth_limit: Option<usize>,
    ) -> Result<Found, SearchFailure> {
        let mut frontier = Frontier::new(self.algorithm.frontier(), goal);
        let mut searched: HashSet<&ObjectNode> = HashSet::new();
        let mut picked = Vec::new();
        let mut picked_set = HashSet::new();
        let mut selections = Vec::new();
        let mut expanded = 0;

        while let Some((node, depth)) = frontier.pop() {
            if !searched.insert(node) {
                continue;
            }
            expanded += 1;
            if self.kitchen.contains(node) {
                continue;
            }
            let candidates = self.foon.producer_indices(node);
            if candidates.is_empty() {
                return Err(RetrievalError::UnsolvableGoal { node: node.clone() }.into());
            }
            if depth_limit.is_some_and(|limit| depth >= limit) {
                return Err(SearchFailure::Cutoff { expanded });
            }
            let chosen = self.select(candidates)?;
            selections.push(Selection {
                node: node.clone(),
                candidates: candidates.to_vec(),
                chosen,
            });
            if picked_set.insert(chosen) {
                picked.push(chosen);
                let unit = self.foon.unit(chosen).expect("selected from index");
                frontier.extend(unit.inputs(), depth + 1);
            }
        }
        Ok(Found {
            picked,
            expanded,
            selections,
        })
    }

    /// Reverses the pick order, then moves any step whose inputs are not yet
    /// available behind the steps that make them. When plain reversal is
    /// already executable it is returned unchanged.
    fn schedule(&self, picked: &[usize]) -> Result<Vec<FunctionalUnit>, RetrievalError> {
        let mut available: HashSet<&ObjectNode> = self.kitchen.iter().collect();
        let mut remaining: Vec<&FunctionalUnit> = picked
            .iter()
            .rev()
            .map(|&i| self.foon.unit(i).expect("selected from index"))
            .collect();
        let mut ordered = Vec::with_capacity(remaining.len());
        while !remaining.is_empty() {
            let ready = remaining
                .iter()
                .position(|u| u.inputs().iter().all(|n| available.contains(n)));
            let Some(pos) = ready else {
                let blocked = remaining[0]
                    .inputs()
                    .iter()
                    .find(|n| !available.contains(n))
                    .expect("unit is not ready");
                return Err(RetrievalError::UnsolvableGoal {
                    node: blocked.clone(),
                });
            };
            let unit = remaining.remove(pos);
            available.extend(unit.outputs());
            ordered.push(unit.clone());
        }
        Ok(ordered)
    }
}

/// Retrieves a task tree that makes `goal` from the kitchen's contents.
pub fn retrieve(
    foon: &UniversalFoon,
    kitchen: &Kitchen,
    goal: &ObjectNode,
    rates: &SuccessRateTable,
    config: &RetrievalConfig,
) -> Result<RetrievalOutcome, RetrievalError> {
    let search = Search {
        foon,
        kitchen,
        rates,
        algorithm: config.algorithm,
    };

    let (found, expanded_nodes) = if config.algorithm == Algorithm::Ids {
        deepen(&search, goal, config.max_depth)?
    } else {
        match search.run(goal, None) {
            Ok(found) => {
                let expanded = found.expanded;
                (found, expanded)
            }
            Err(SearchFailure::Failed(e)) => return Err(e),
            Err(SearchFailure::Cutoff { .. }) => unreachable!("no depth limit was set"),
        }
    };

    let tree = TaskTree::from_steps(search.schedule(&found.picked)?);
    Ok(RetrievalOutcome {
        selected_units: tree.len(),
        tree,
        expanded_nodes,
        selections: found.selections,
    })
}

/// Depth-limited runs with limits 1, 2, ... until one finishes without
/// hitting the cutoff. Depth counts unit hops from the goal.
fn deepen<'a>(
    search: &Search<'a>,
    goal: &'a ObjectNode,
    max_depth: Option<NonZeroUsize>,
) -> Result<(Found, usize), RetrievalError> {
    let mut total = 0;
    let mut limit = 1;
    loop {
        if max_depth.is_some_and(|max| limit > max.get()) {
            return Err(RetrievalError::DepthExhausted {
                max_depth: max_depth.map_or(0, NonZeroUsize::get),
            });
        }
        match search.run(goal, Some(limit)) {
            Ok(found) => {
                total += found.expanded;
                return Ok((found, total));
            }
            // expanded nodes are distinct, so once the limit passes the node
            // count no cutoff can happen and an unlimited run terminates
            Err(SearchFailure::Cutoff { expanded }) => {
                total += expanded;
                limit += 1;
            }
            Err(SearchFailure::Failed(e)) => return Err(e),
        }
    }
}

/// Replays `tree` front to back and checks that every input is on hand when
/// its step runs.
pub fn validate_task_tree(tree: &TaskTree, kitchen: &Kitchen) -> bool {
    let mut available: HashSet<&ObjectNode> = kitchen.iter().collect();
    for step in tree.steps() {
        if !step.inputs().iter().all(|n| available.contains(n)) {
            return false;
        }
        available.extend(step.outputs());
    }
    true
}

pub fn count_units(tree: &TaskTree) -> usize {
    tree.len()
}
