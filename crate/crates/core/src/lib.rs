//! Functional object-oriented networks (FOON) for robotic cooking.
//!
//! A FOON is a bipartite graph of object nodes and motion nodes. Recipes are
//! merged into a universal network, from which a task tree for a goal object
//! is retrieved by one of several search strategies:
//!
//! * `bfs`, `dfs` and `ids` take the first producer of each needed object,
//! * `gbfs-max-success` takes the producer whose motion has the highest
//!   success rate,
//! * `gbfs-min-inputs` takes the producer with the fewest inputs, counting
//!   the ingredients inside container inputs.
//!
//! ```
//! use foon_core::io::{parse_kitchen, parse_motion_rates, parse_universal_foon};
//! use foon_core::model::ObjectNode;
//! use foon_core::retrieval::{retrieve, Algorithm, RetrievalConfig};
//!
//! let foon = parse_universal_foon("O\twater\nM\tfreeze\nO\tice\n").unwrap();
//! let kitchen = parse_kitchen(r#"[{"label": "water"}]"#).unwrap();
//! let rates = parse_motion_rates("freeze\t0.9\n").unwrap();
//! let goal = ObjectNode::plain("ice").unwrap();
//!
//! let outcome = retrieve(&foon, &kitchen, &goal, &rates, &RetrievalConfig::new(Algorithm::Bfs)).unwrap();
//! assert_eq!(outcome.selected_units, 1);
//! ```

pub mod harness;
pub mod io;
pub mod model;
pub mod retrieval;

pub use model::{
    FunctionalUnit, Kitchen, MotionNode, ObjectNode, Subgraph, SuccessRateTable, TaskTree,
    UniversalFoon,
};
pub use retrieval::{
    retrieve, validate_task_tree, Algorithm, RetrievalConfig, RetrievalError, RetrievalOutcome,
};
