//! `foon`: validate input files, retrieve task trees, compare search
//! strategies and generate random fixtures.
//!
//! Exit codes: 0 on success, 1 on a parse or I/O error, 2 on a retrieval
//! error.

use std::fs;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use foon_core::harness::{self, GenerateParams, InputFiles, Workspace};
use foon_core::io::{export_dot, serialize_task_tree};
use foon_core::model::ObjectNode;
use foon_core::retrieval::{retrieve, Algorithm, RetrievalConfig, DEFAULT_MAX_DEPTH};

#[derive(Parser)]
#[command(
    name = "foon",
    version,
    about = "Task-tree retrieval over functional object-oriented networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse all four input files and report problems.
    Validate(FileArgs),
    /// Retrieve the task tree for one goal object.
    Retrieve(RetrieveArgs),
    /// Compare task-tree sizes of several algorithms for every goal.
    Compare(CompareArgs),
    /// Write a random, solvable set of input files.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct NetworkArgs {
    #[arg(long, value_name = "FOON.txt")]
    foon: PathBuf,
    #[arg(long, value_name = "motion.txt")]
    motions: PathBuf,
    #[arg(long, value_name = "kitchen.json")]
    kitchen: PathBuf,
}

#[derive(Args)]
struct FileArgs {
    #[command(flatten)]
    network: NetworkArgs,
    #[arg(long, value_name = "goal_nodes.json")]
    goals: PathBuf,
}

impl FileArgs {
    fn files(&self) -> InputFiles {
        InputFiles {
            foon: self.network.foon.clone(),
            motions: self.network.motions.clone(),
            kitchen: self.network.kitchen.clone(),
            goals: self.goals.clone(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Dot,
}

#[derive(Args)]
struct RetrieveArgs {
    #[command(flatten)]
    network: NetworkArgs,
    #[arg(long)]
    goal_label: String,
    /// Comma-separated goal states.
    #[arg(long, value_delimiter = ',')]
    goal_states: Vec<String>,
    /// Comma-separated ingredients contained in the goal object.
    #[arg(long, value_delimiter = ',')]
    goal_ingredients: Vec<String>,
    #[arg(long, default_value = "bfs")]
    algorithm: Algorithm,
    #[arg(long, default_value_t = NonZeroUsize::new(DEFAULT_MAX_DEPTH).unwrap())]
    max_depth: NonZeroUsize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the tree here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    files: FileArgs,
    /// Comma-separated algorithms; defaults to bfs, gbfs-max-success,
    /// gbfs-min-inputs, ids.
    #[arg(long, value_delimiter = ',')]
    algorithms: Vec<Algorithm>,
    #[arg(long, default_value_t = NonZeroUsize::new(DEFAULT_MAX_DEPTH).unwrap())]
    max_depth: NonZeroUsize,
    /// CSV output path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(1..))]
    num_units: u64,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    branching: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory receiving FOON.txt, motion.txt, kitchen.json and goal_nodes.json.
    #[arg(long)]
    out: PathBuf,
}

enum Failure {
    Parse(anyhow::Error),
    Retrieval(anyhow::Error),
}

impl Failure {
    fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Parse(_) => ExitCode::from(1),
            Failure::Retrieval(_) => ExitCode::from(2),
        }
    }

    fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Parse(e) | Failure::Retrieval(e) => e,
        }
    }
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Parse(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate(args) => validate(&args),
        Command::Retrieve(args) => retrieve_tree(&args),
        Command::Compare(args) => compare(&args),
        Command::Generate(args) => generate(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {:#}", failure.error());
            failure.exit_code()
        }
    }
}

fn write_output(out: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{contents}"),
    }
    Ok(())
}

fn validate(args: &FileArgs) -> Result<(), Failure> {
    let report = harness::validate(&args.files());
    print!("{}", report.render());
    match report.first_error() {
        Some(e) => Err(Failure::Parse(e.clone().into())),
        None => Ok(()),
    }
}

fn retrieve_tree(args: &RetrieveArgs) -> Result<(), Failure> {
    let net = &args.network;
    let foon = foon_core::io::load_universal_foon(&net.foon)?;
    let rates = foon_core::io::load_motion_rates(&net.motions)?;
    let kitchen = foon_core::io::load_kitchen(&net.kitchen)?;
    let goal = ObjectNode::new(&args.goal_label, &args.goal_states, &args.goal_ingredients)
        .context("invalid goal")?;
    let config = RetrievalConfig::new(args.algorithm).with_max_depth(args.max_depth);

    let outcome = retrieve(&foon, &kitchen, &goal, &rates, &config)
        .map_err(|e| Failure::Retrieval(e.into()))?;
    eprintln!(
        "{}: selected_units={} expanded_nodes={}",
        args.algorithm, outcome.selected_units, outcome.expanded_nodes
    );
    let rendered = match args.format {
        Format::Text => serialize_task_tree(&outcome.tree),
        Format::Dot => export_dot(outcome.tree.steps()),
    };
    write_output(args.out.as_deref(), &rendered)
}

fn compare(args: &CompareArgs) -> Result<(), Failure> {
    let workspace = Workspace::load(&args.files.files())?;
    let algorithms = if args.algorithms.is_empty() {
        Algorithm::TABLE.to_vec()
    } else {
        args.algorithms.clone()
    };
    let config = RetrievalConfig::new(algorithms[0]).with_max_depth(args.max_depth);
    let table = harness::compare(&workspace, &algorithms, &config);
    print!("{}", table.render_text());
    for row in &table.rows {
        for (algorithm, cell) in &row.counts {
            if let harness::Cell::Failed(e) = cell {
                eprintln!("{} / {algorithm}: {e}", row.goal_label);
            }
        }
    }
    if let Some(path) = &args.out {
        fs::write(path, table.to_csv()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn generate(args: &GenerateArgs) -> Result<(), Failure> {
    let fixture = harness::generate(GenerateParams {
        num_units: usize::try_from(args.num_units).context("--num-units too large")?,
        branching: usize::try_from(args.branching).context("--branching too large")?,
        seed: args.seed,
    });
    fixture
        .write_to(&args.out)
        .with_context(|| format!("writing fixture to {}", args.out.display()))?;
    eprintln!(
        "wrote {} units, {} kitchen items, goal `{}` to {}",
        fixture.workspace.foon.len(),
        fixture.workspace.kitchen.len(),
        fixture.goal(),
        args.out.display()
    );
    Ok(())
}
