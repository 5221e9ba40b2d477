//! Batch operations behind the command-line tool: file validation, the
//! per-goal algorithm comparison, and random fixture generation.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::io::{
    load_goals, load_kitchen, load_motion_rates, load_universal_foon, serialize_goals,
    serialize_kitchen, serialize_motion_rates, serialize_universal_foon, ParseError, FOON_FILE,
    GOALS_FILE, KITCHEN_FILE, MOTION_FILE,
};
use crate::model::{
    FunctionalUnit, Kitchen, MotionNode, ObjectNode, SuccessRateTable, UniversalFoon,
};
use crate::retrieval::{count_units, retrieve, Algorithm, RetrievalConfig, RetrievalError};

/// Paths of the four input files.
#[derive(Debug, Clone)]
pub struct InputFiles {
    pub foon: PathBuf,
    pub motions: PathBuf,
    pub kitchen: PathBuf,
    pub goals: PathBuf,
}

impl InputFiles {
    /// The conventional file names inside `dir`.
    pub fn in_dir(dir: &Path) -> Self {
        InputFiles {
            foon: dir.join(FOON_FILE),
            motions: dir.join(MOTION_FILE),
            kitchen: dir.join(KITCHEN_FILE),
            goals: dir.join(GOALS_FILE),
        }
    }
}

/// Everything needed to run retrievals.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub foon: UniversalFoon,
    pub rates: SuccessRateTable,
    pub kitchen: Kitchen,
    pub goals: Vec<ObjectNode>,
}

impl Workspace {
    pub fn load(files: &InputFiles) -> Result<Self, ParseError> {
        Ok(Workspace {
            foon: load_universal_foon(&files.foon)?,
            rates: load_motion_rates(&files.motions)?,
            kitchen: load_kitchen(&files.kitchen)?,
            goals: load_goals(&files.goals)?,
        })
    }
}

#[derive(Debug, Clone)]
pub struct FileCheck {
    pub path: PathBuf,
    pub result: Result<String, ParseError>,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub files: Vec<FileCheck>,
    pub warnings: Vec<String>,
    pub units: usize,
    pub rated_motions: usize,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.files.iter().all(|f| f.result.is_ok())
    }

    pub fn first_error(&self) -> Option<&ParseError> {
        self.files.iter().find_map(|f| f.result.as_ref().err())
    }

    pub fn summary(&self) -> String {
        let ok = self.files.iter().filter(|f| f.result.is_ok()).count();
        if self.is_ok() {
            format!(
                "{ok} files OK, {} units, {} motions rated",
                self.units, self.rated_motions
            )
        } else {
            format!("{ok} of {} files OK", self.files.len())
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for check in &self.files {
            match &check.result {
                Ok(detail) => writeln!(out, "OK    {} ({detail})", check.path.display()),
                Err(e) => writeln!(out, "ERROR {e}"),
            }
            .expect("writing to a String");
        }
        for warning in &self.warnings {
            writeln!(out, "warning: {warning}").expect("writing to a String");
        }
        out.push_str(&self.summary());
        out.push('\n');
        out
    }
}

/// Parses all four files and cross-checks motion rates against the network.
pub fn validate(files: &InputFiles) -> ValidationReport {
    let foon = load_universal_foon(&files.foon);
    let rates = load_motion_rates(&files.motions);
    let kitchen = load_kitchen(&files.kitchen);
    let goals = load_goals(&files.goals);

    let mut warnings = Vec::new();
    if let (Ok(foon), Ok(rates)) = (&foon, &rates) {
        for motion in foon.motions() {
            if !rates.contains(motion) {
                warnings.push(format!(
                    "motion `{motion}` has no success rate in {}",
                    files.motions.display()
                ));
            }
        }
    }
    let units = foon.as_ref().map_or(0, UniversalFoon::len);
    let rated_motions = rates.as_ref().map_or(0, SuccessRateTable::len);

    let files = vec![
        FileCheck {
            path: files.foon.clone(),
            result: foon.map(|f| format!("{} units", f.len())),
        },
        FileCheck {
            path: files.motions.clone(),
            result: rates.map(|r| format!("{} motions", r.len())),
        },
        FileCheck {
            path: files.kitchen.clone(),
            result: kitchen.map(|k| format!("{} items", k.len())),
        },
        FileCheck {
            path: files.goals.clone(),
            result: goals.map(|g| format!("{} goals", g.len())),
        },
    ];
    ValidationReport {
        files,
        warnings,
        units,
        rated_motions,
    }
}

/// Result of one goal x algorithm retrieval.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Units(usize),
    Failed(RetrievalError),
}

impl Cell {
    pub fn units(&self) -> Option<usize> {
        match self {
            Cell::Units(n) => Some(*n),
            Cell::Failed(_) => None,
        }
    }

    fn render(&self) -> String {
        match self {
            Cell::Units(n) => n.to_string(),
            Cell::Failed(_) => "-".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub goal_label: String,
    /// One cell per requested algorithm, in request order.
    pub counts: Vec<(Algorithm, Cell)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareTable {
    pub algorithms: Vec<Algorithm>,
    pub rows: Vec<CompareRow>,
}

impl CompareTable {
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let header = std::iter::once("goal").chain(self.algorithms.iter().map(|a| a.name()));
        writer.write_record(header).expect("in-memory csv");
        for row in &self.rows {
            let record = std::iter::once(row.goal_label.clone())
                .chain(row.counts.iter().map(|(_, c)| c.render()));
            writer.write_record(record).expect("in-memory csv");
        }
        String::from_utf8(writer.into_inner().expect("in-memory csv")).expect("csv of utf-8 fields")
    }

    /// Fixed-width text table with the same content as the CSV.
    pub fn render_text(&self) -> String {
        let header: Vec<String> = std::iter::once("goal".to_string())
            .chain(self.algorithms.iter().map(|a| a.name().to_string()))
            .collect();
        let body: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                std::iter::once(r.goal_label.clone())
                    .chain(r.counts.iter().map(|(_, c)| c.render()))
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|i| {
                std::iter::once(&header)
                    .chain(&body)
                    .map(|row| row[i].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for row in std::iter::once(&header).chain(&body) {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(i, (cell, &w))| {
                    if i == 0 {
                        format!("{cell:<w$}")
                    } else {
                        format!("{cell:>w$}")
                    }
                })
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// Runs every algorithm on every goal and records the task-tree size.
/// Cells are computed in parallel; row and column order follow the inputs.
pub fn compare(
    workspace: &Workspace,
    algorithms: &[Algorithm],
    base: &RetrievalConfig,
) -> CompareTable {
    let cells: Vec<(usize, usize)> = (0..workspace.goals.len())
        .flat_map(|g| (0..algorithms.len()).map(move |a| (g, a)))
        .collect();
    let results: Vec<Cell> = cells
        .par_iter()
        .map(|&(g, a)| {
            let config = RetrievalConfig {
                algorithm: algorithms[a],
                ..*base
            };
            match retrieve(
                &workspace.foon,
                &workspace.kitchen,
                &workspace.goals[g],
                &workspace.rates,
                &config,
            ) {
                Ok(outcome) => Cell::Units(count_units(&outcome.tree)),
                Err(e) => Cell::Failed(e),
            }
        })
        .collect();

    let mut results = results.into_iter();
    let rows = workspace
        .goals
        .iter()
        .map(|goal| CompareRow {
            goal_label: goal.to_string(),
            counts: algorithms
                .iter()
                .map(|&a| (a, results.next().expect("one cell per goal and algorithm")))
                .collect(),
        })
        .collect();
    CompareTable {
        algorithms: algorithms.to_vec(),
        rows,
    }
}

const MOTIONS: [&str; 12] = [
    "chop", "cut", "slice", "pour", "mix", "stir", "peel", "boil", "fry", "bake", "whisk", "grate",
];
const STATES: [&str; 8] = [
    "chopped", "sliced", "mixed", "heated", "peeled", "washed", "ground", "melted",
];
const INGREDIENTS: [&str; 6] = ["salt", "sugar", "oil", "water", "flour", "milk"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerateParams {
    pub num_units: usize,
    /// Maximum number of inputs per unit.
    pub branching: usize,
    pub seed: u64,
}

/// A random but solvable set of input files.
#[derive(Debug, Clone)]
pub struct GeneratedFixture {
    pub workspace: Workspace,
}

impl GeneratedFixture {
    pub fn goal(&self) -> &ObjectNode {
        &self.workspace.goals[0]
    }

    /// Serialized `(file name, contents)` pairs.
    pub fn files(&self) -> [(&'static str, String); 4] {
        let ws = &self.workspace;
        [
            (FOON_FILE, serialize_universal_foon(&ws.foon)),
            (MOTION_FILE, serialize_motion_rates(&ws.rates)),
            (KITCHEN_FILE, serialize_kitchen(&ws.kitchen)),
            (GOALS_FILE, serialize_goals(&ws.goals)),
        ]
    }

    pub fn write_to(&self, dir: &Path) -> io::Result<InputFiles> {
        fs::create_dir_all(dir)?;
        for (name, contents) in self.files() {
            fs::write(dir.join(name), contents)?;
        }
        Ok(InputFiles::in_dir(dir))
    }
}

/// Builds a layered DAG of units from `params.seed`.
///
/// Objects are created in rank order and every unit only consumes objects of
/// lower rank than its outputs, so the network is acyclic. Leaf inputs are
/// fresh raw objects that all go into the kitchen, and every other input has
/// at least one producer, so any choice of producer leads to a solution.
/// About a third of the units are alternative producers of an existing
/// object, which gives the greedy heuristics real choices.
pub fn generate(params: GenerateParams) -> GeneratedFixture {
    let num_units = params.num_units.max(1);
    let branching = params.branching.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let mut rates = SuccessRateTable::new();
    for motion in MOTIONS {
        let rate = f64::from(rng.gen_range(0..=100u32)) / 100.0;
        rates
            .insert(motion, rate)
            .expect("distinct motions with rates in range");
    }

    let mut foon = UniversalFoon::new();
    let mut kitchen = Kitchen::new();
    let mut produced: Vec<ObjectNode> = Vec::new();
    let mut raw_count = 0;
    let mut made = 0;

    while foon.len() < num_units {
        let last = foon.len() + 1 == num_units;
        let alternative = !last && !produced.is_empty() && rng.gen_bool(0.3);
        let (outputs, eligible) = if alternative {
            let rank = rng.gen_range(0..produced.len());
            (vec![produced[rank].clone()], rank)
        } else {
            let mut outputs = vec![random_object(&mut rng, &format!("item-{made}"))];
            if !last && rng.gen_bool(0.2) {
                outputs.push(random_object(&mut rng, &format!("item-{made}-side")));
            }
            made += 1;
            (outputs, produced.len())
        };

        let mut inputs: Vec<ObjectNode> = Vec::new();
        let mut fresh: Vec<ObjectNode> = Vec::new();
        for _ in 0..rng.gen_range(1..=branching) {
            let reuse = eligible > 0 && rng.gen_bool(0.65);
            let node = if reuse {
                produced[..eligible]
                    .choose(&mut rng)
                    .expect("non-empty")
                    .clone()
            } else {
                raw_count += 1;
                let node = ObjectNode::plain(&format!("raw-{raw_count}")).expect("non-empty label");
                fresh.push(node.clone());
                node
            };
            if !inputs.contains(&node) {
                inputs.push(node);
            }
        }
        let motion =
            MotionNode::new(MOTIONS.choose(&mut rng).expect("non-empty")).expect("valid motion");
        let unit =
            FunctionalUnit::new(inputs, motion, outputs.clone()).expect("distinct non-empty sides");
        if foon.insert(unit) {
            for node in fresh {
                kitchen.insert(node);
            }
            if !alternative {
                produced.extend(outputs);
            }
        }
    }

    let goal = produced.last().expect("at least one unit").clone();
    GeneratedFixture {
        workspace: Workspace {
            foon,
            rates,
            kitchen,
            goals: vec![goal],
        },
    }
}

fn random_object(rng: &mut ChaCha8Rng, label: &str) -> ObjectNode {
    let state_count = rng.gen_range(0..=2);
    let states: Vec<&str> = STATES.choose_multiple(rng, state_count).copied().collect();
    let ingredients: Vec<&str> = if rng.gen_bool(0.3) {
        let count = rng.gen_range(1..=2);
        INGREDIENTS.choose_multiple(rng, count).copied().collect()
    } else {
        Vec::new()
    };
    ObjectNode::new(label, states, ingredients).expect("labels from fixed vocabularies")
}
