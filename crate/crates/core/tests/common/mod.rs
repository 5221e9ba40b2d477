#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::PathBuf;

use foon_core::harness::{InputFiles, Workspace};
use foon_core::model::{
    FunctionalUnit, Kitchen, MotionNode, ObjectNode, SuccessRateTable, UniversalFoon,
};
use foon_core::retrieval::Algorithm;
use proptest::prelude::*;

pub fn fixture_dir(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn load(name: &str) -> Workspace {
    Workspace::load(&InputFiles::in_dir(&fixture_dir(name))).expect("bundled fixture parses")
}

pub fn node(label: &str, states: &[&str]) -> ObjectNode {
    ObjectNode::new(label, states, None::<&str>).unwrap()
}

/// Producers of `node` found by scanning every unit.
pub fn scan_producers(foon: &UniversalFoon, node: &ObjectNode) -> Vec<usize> {
    foon.units()
        .enumerate()
        .filter(|(_, u)| u.outputs().iter().any(|o| o == node))
        .map(|(i, _)| i)
        .collect()
}

/// The producer each algorithm's rule should pick among `candidates`,
/// recomputed with plain loops. `None` if a rate is missing.
pub fn oracle_pick(
    foon: &UniversalFoon,
    rates: &SuccessRateTable,
    candidates: &[usize],
    algorithm: Algorithm,
) -> Option<usize> {
    let unit = |i: usize| foon.unit(i).unwrap();
    match algorithm {
        Algorithm::Bfs | Algorithm::Dfs | Algorithm::Ids => Some(candidates[0]),
        Algorithm::GbfsMaxSuccess => {
            let mut best = candidates[0];
            let mut best_rate = rates.rate(unit(best).motion())?;
            for &c in &candidates[1..] {
                let rate = rates.rate(unit(c).motion())?;
                if rate > best_rate {
                    best = c;
                    best_rate = rate;
                }
            }
            Some(best)
        }
        Algorithm::GbfsMinInputs => {
            let weight = |i: usize| {
                let u = unit(i);
                let mut w = 0;
                for input in u.inputs() {
                    w += 1 + input.ingredients().len();
                }
                w
            };
            let mut best = candidates[0];
            for &c in &candidates[1..] {
                if weight(c) < weight(best) {
                    best = c;
                }
            }
            Some(best)
        }
    }
}

/// Units needed to make `goal` when every object with several producers uses
/// the producer given by `assignment` (and the first producer otherwise).
/// `None` when some needed object has no producer and is not in the kitchen.
pub fn closure(
    foon: &UniversalFoon,
    kitchen: &Kitchen,
    goal: &ObjectNode,
    assignment: &HashMap<ObjectNode, usize>,
) -> Option<BTreeSet<usize>> {
    let mut seen = HashSet::new();
    let mut chosen = BTreeSet::new();
    let mut stack = vec![goal.clone()];
    while let Some(n) = stack.pop() {
        if !seen.insert(n.clone()) || kitchen.contains(&n) {
            continue;
        }
        let producers = scan_producers(foon, &n);
        let first = *producers.first()?;
        let unit = assignment.get(&n).copied().unwrap_or(first);
        chosen.insert(unit);
        stack.extend(foon.unit(unit).unwrap().inputs().iter().cloned());
    }
    Some(chosen)
}

pub struct Enumeration {
    /// Tree size for every combination of producer choices.
    pub sizes: Vec<Option<usize>>,
    /// Tree size under each algorithm's selection rule.
    pub by_algorithm: HashMap<Algorithm, Option<usize>>,
}

/// Enumerates every producer assignment over objects with more than one
/// producer. The unit set a one-candidate-per-node search selects depends only
/// on which producer it picks for each object, never on frontier order, so an
/// algorithm's tree size is the closure size under its rule's assignment.
pub fn enumerate_assignments(workspace: &Workspace, goal: &ObjectNode) -> Enumeration {
    let foon = &workspace.foon;
    let mut branching: Vec<(ObjectNode, Vec<usize>)> = foon
        .object_nodes()
        .into_iter()
        .map(|n| (n.clone(), scan_producers(foon, n)))
        .filter(|(_, p)| p.len() > 1)
        .collect();
    branching.sort_by(|a, b| a.0.cmp(&b.0));

    let mut sizes = Vec::new();
    let total: usize = branching.iter().map(|(_, p)| p.len()).product();
    for mut code in 0..total {
        let mut assignment = HashMap::new();
        for (n, producers) in &branching {
            assignment.insert(n.clone(), producers[code % producers.len()]);
            code /= producers.len();
        }
        sizes.push(closure(foon, &workspace.kitchen, goal, &assignment).map(|c| c.len()));
    }

    let by_algorithm = Algorithm::ALL
        .into_iter()
        .map(|a| {
            let assignment: Option<HashMap<ObjectNode, usize>> = branching
                .iter()
                .map(|(n, p)| oracle_pick(foon, &workspace.rates, p, a).map(|c| (n.clone(), c)))
                .collect();
            let size = assignment
                .and_then(|asg| closure(foon, &workspace.kitchen, goal, &asg))
                .map(|c| c.len());
            (a, size)
        })
        .collect();
    Enumeration {
        sizes,
        by_algorithm,
    }
}

const LABELS: [&str; 6] = ["flour", "egg", "milk", "bowl", "batter", "pan"];
const STATES: [&str; 3] = ["mixed", "hot", "raw"];
const INGREDIENTS: [&str; 2] = ["sugar", "salt"];
const MOTIONS: [&str; 4] = ["mix", "pour", "heat", "stir"];

pub fn arb_node() -> impl Strategy<Value = ObjectNode> {
    (
        prop::sample::select(LABELS.to_vec()),
        prop::sample::subsequence(STATES.to_vec(), 0..=2),
        prop::sample::subsequence(INGREDIENTS.to_vec(), 0..=1),
    )
        .prop_map(|(l, s, i)| ObjectNode::new(l, s, i).unwrap())
}

fn distinct(nodes: Vec<ObjectNode>) -> Vec<ObjectNode> {
    let mut out: Vec<ObjectNode> = Vec::new();
    for n in nodes {
        if !out.contains(&n) {
            out.push(n);
        }
    }
    out
}

pub fn arb_unit() -> impl Strategy<Value = FunctionalUnit> {
    (
        prop::collection::vec(arb_node(), 1..4),
        prop::sample::select(MOTIONS.to_vec()),
        prop::collection::vec(arb_node(), 1..3),
    )
        .prop_map(|(i, m, o)| {
            FunctionalUnit::new(distinct(i), MotionNode::new(m).unwrap(), distinct(o)).unwrap()
        })
}

/// Random, possibly cyclic networks over a small vocabulary.
pub fn arb_foon(max_units: usize) -> impl Strategy<Value = UniversalFoon> {
    prop::collection::vec(arb_unit(), 0..max_units).prop_map(UniversalFoon::from_units)
}

pub fn arb_kitchen() -> impl Strategy<Value = Kitchen> {
    prop::collection::vec(arb_node(), 0..8).prop_map(Kitchen::from_iter)
}

pub fn full_rates() -> SuccessRateTable {
    let mut rates = SuccessRateTable::new();
    for (i, m) in MOTIONS.iter().enumerate() {
        rates.insert(m, 0.2 * (i + 1) as f64).unwrap();
    }
    rates
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Foon,
    Motions,
    Kitchen,
}

pub struct Corruption {
    pub what: &'static str,
    pub input: InputKind,
    pub text: String,
    pub kind: foon_core::io::ParseErrorKind,
    pub line: usize,
}

impl Corruption {
    pub fn parse(&self) -> Result<(), foon_core::io::ParseError> {
        use foon_core::io::{parse_kitchen, parse_motion_rates, parse_universal_foon};
        match self.input {
            InputKind::Foon => parse_universal_foon(&self.text).map(drop),
            InputKind::Motions => parse_motion_rates(&self.text).map(drop),
            InputKind::Kitchen => parse_kitchen(&self.text).map(drop),
        }
    }
}

/// Ten single-point mutations of the Figure-4 files, each with the error kind
/// and 1-based line it must produce.
pub fn corruption_suite() -> Vec<Corruption> {
    use foon_core::io::ParseErrorKind as K;
    let dir = fixture_dir("figure4");
    let read = |f: &str| std::fs::read_to_string(dir.join(f)).unwrap();
    let foon = read("FOON.txt");
    let motions = read("motion.txt");
    let kitchen = read("kitchen.json");
    let edit = |text: &str, f: &dyn Fn(&mut Vec<String>)| {
        let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
        f(&mut lines);
        lines.join("\n") + "\n"
    };
    let case = |what, input, text, kind, line| Corruption {
        what,
        input,
        text,
        kind,
        line,
    };
    // FOON.txt: line 5 is `M\tpeel`, lines 6-7 the peeled output, line 12
    // `M\tpick and place`. kitchen.json line 4 is the sweet potato entry.
    vec![
        case(
            "tag dropped",
            InputKind::Foon,
            edit(&foon, &|l| l[1] = "sweet potato".into()),
            K::MalformedLine,
            2,
        ),
        case(
            "unknown tag",
            InputKind::Foon,
            edit(&foon, &|l| l[3] = "X\tknife".into()),
            K::UnknownRecordTag,
            4,
        ),
        case(
            "motion removed",
            InputKind::Foon,
            edit(&foon, &|l| {
                l.remove(4);
            }),
            K::MissingMotion,
            2,
        ),
        case(
            "second motion",
            InputKind::Foon,
            edit(&foon, &|l| l.insert(5, "M\tslice".into())),
            K::MissingMotion,
            6,
        ),
        case(
            "outputs removed",
            InputKind::Foon,
            edit(&foon, &|l| {
                l.drain(5..7);
            }),
            K::EmptyUnit,
            2,
        ),
        case(
            "inputs removed",
            InputKind::Foon,
            edit(&foon, &|l| {
                l.drain(8..11);
            }),
            K::EmptyUnit,
            9,
        ),
        case(
            "duplicate input",
            InputKind::Foon,
            edit(&foon, &|l| l[3] = "O\tsweet potato\nS\tunpeeled".into()),
            K::MalformedLine,
            4,
        ),
        case(
            "rate above one",
            InputKind::Motions,
            edit(&motions, &|l| l[1] = "pick and place\t1.5".into()),
            K::RateOutOfRange,
            2,
        ),
        case(
            "rate repeated",
            InputKind::Motions,
            edit(&motions, &|l| l.push("peel\t0.5".into())),
            K::DuplicateMotionRate,
            4,
        ),
        case(
            "states not a list",
            InputKind::Kitchen,
            edit(&kitchen, &|l| {
                l[3] = r#"  {"label": "sweet potato", "states": "unpeeled"}"#.into()
            }),
            K::BadJsonShape,
            4,
        ),
    ]
}
