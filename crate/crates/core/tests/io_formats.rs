mod common;

use common::*;
use foon_core::harness::{generate, GenerateParams};
use foon_core::io::{
    export_dot, parse_goals, parse_kitchen, parse_task_tree, parse_universal_foon,
    serialize_task_tree, serialize_universal_foon, ParseErrorKind,
};
use foon_core::model::TaskTree;
use proptest::prelude::*;

fn vertex_count(dot: &str) -> usize {
    dot.lines().filter(|l| l.contains("[label=")).count()
}

proptest! {
    #[test]
    fn foon_text_round_trips(foon in arb_foon(12)) {
        let text = serialize_universal_foon(&foon);
        let reparsed = parse_universal_foon(&text).unwrap();
        prop_assert_eq!(&reparsed, &foon);
        prop_assert_eq!(serialize_universal_foon(&reparsed), text);
    }

    #[test]
    fn task_tree_round_trips(units in prop::collection::vec(arb_unit(), 0..10)) {
        let tree = TaskTree::from_steps(units);
        prop_assert_eq!(parse_task_tree(&serialize_task_tree(&tree)).unwrap(), tree);
    }

    #[test]
    fn dot_has_one_vertex_per_object_and_unit(foon in arb_foon(12)) {
        let dot = export_dot(foon.units());
        prop_assert_eq!(vertex_count(&dot), foon.object_nodes().len() + foon.len());
        let edges: usize = foon.units().map(|u| u.inputs().len() + u.outputs().len()).sum();
        prop_assert_eq!(dot.matches(" -> ").count(), edges);
    }

    #[test]
    fn blank_lines_and_trailing_spaces_are_ignored(foon in arb_foon(6)) {
        let text = serialize_universal_foon(&foon);
        let noisy: String = text.lines().map(|l| format!("{l} \t \n\n")).collect();
        prop_assert_eq!(parse_universal_foon(&noisy).unwrap(), foon);
    }
}

#[test]
fn bundled_and_generated_fixtures_round_trip() {
    for name in ["figure4", "ice", "onion", "synthetic"] {
        let foon = load(name).foon;
        assert_eq!(
            parse_universal_foon(&serialize_universal_foon(&foon)).unwrap(),
            foon,
            "{name}"
        );
    }
    for seed in 0..20 {
        let fx = generate(GenerateParams {
            num_units: 30,
            branching: 3,
            seed,
        });
        let foon = &fx.workspace.foon;
        assert_eq!(
            &parse_universal_foon(&serialize_universal_foon(foon)).unwrap(),
            foon
        );
    }
}

#[test]
fn figure4_dot_shares_the_peeled_potato() {
    let foon = load("figure4").foon;
    let dot = export_dot(foon.units());
    assert_eq!(dot.matches("color=red").count(), 3);
    // unpeeled, knife, peeled, board, board with potato, potato on board, chopped
    assert_eq!(dot.matches("color=green").count(), 7);
    let peeled = dot
        .lines()
        .find(|l| l.contains("label=\"sweet potato\\n[peeled]\""))
        .and_then(|l| l.split_whitespace().next())
        .unwrap()
        .to_string();
    assert!(dot.contains(&format!("m0 -> {peeled};")));
    assert!(dot.contains(&format!("{peeled} -> m1;")));
}

#[test]
fn corrupted_files() {
    for case in corruption_suite() {
        let err = case.parse().unwrap_err();
        assert_eq!(
            (err.kind, err.line),
            (case.kind, case.line),
            "{}: {err}",
            case.what
        );
    }
    for (text, kind, line) in [
        ("//\nS\tpeeled\n", ParseErrorKind::MalformedLine, 2),
        ("//\nO\t   \n", ParseErrorKind::MalformedLine, 2),
        ("\n\n//\nO\ta\nM\tm\n", ParseErrorKind::EmptyUnit, 4),
    ] {
        let err = parse_universal_foon(text).unwrap_err();
        assert_eq!((err.kind, err.line), (kind, line), "{text:?}");
    }
}

#[test]
fn json_inputs() {
    assert_eq!(
        parse_kitchen(
            &std::fs::read_to_string(fixture_dir("figure4").join("kitchen.json")).unwrap()
        )
        .unwrap()
        .len(),
        3
    );
    let goals = parse_goals(r#"[{"label":"Greek Salad"},{"label":"macaroni"}]"#).unwrap();
    assert_eq!(goals, vec![node("greek salad", &[]), node("macaroni", &[])]);
    let err =
        parse_kitchen("[\n{\"label\": \"knife\"},\n{\"label\": \"bowl\", \"states\": [1]}\n]")
            .unwrap_err();
    assert_eq!((err.kind, err.line), (ParseErrorKind::BadJsonShape, 3));
}
