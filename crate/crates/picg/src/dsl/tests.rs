use super::presets;
use super::{parse_model, serialize_model};
use crate::graph::{UNIFORM_NONADJACENT_PAIR, UNIFORM_PAIR, UNIFORM_VERTEX};
use crate::rules::{basis_graph, BasisKind, PicgModel, Rule};
use proptest::prelude::*;

const CONNECTED_TEXT: &str = "\
model connected
basis {
  graph start prob 1 { vertices 1 edges [ ] }
}
rules {
  rule grow kind add_pendant prob 0.5 select uniform_vertex
  rule link kind add_edge prob 0.5 select uniform_pair
}
";

#[test]
fn parses_the_connected_model_text() {
    let model = parse_model(CONNECTED_TEXT).unwrap();
    assert_eq!(model.name(), "connected");
    assert_eq!(model.basis().len(), 1);
    assert_eq!(model.basis()[0].0.n(), 1);
    let kinds: Vec<(&str, f64)> = model.rules().iter().map(|(r, w)| (r.kind(), *w)).collect();
    assert_eq!(kinds, vec![("add_pendant", 0.5), ("add_edge", 0.5)]);
    assert_eq!(model.rules()[0].0.kernel_name(), UNIFORM_VERTEX);
    assert_eq!(model.rules()[1].0.kernel_name(), UNIFORM_PAIR);
}

#[test]
fn weight_sum_violations_are_diagnosed() {
    let bad = CONNECTED_TEXT.replace("0.5", "0.6");
    let diags = parse_model(&bad).unwrap_err();
    assert!(
        diags.0.iter().any(|d| d.message.contains("rule weights sum to 1.2")),
        "{diags}"
    );
    // positioned at the `rules` keyword
    let d = diags.0.iter().find(|d| d.message.contains("sum")).unwrap();
    assert_eq!((d.line, d.col), (5, 1));
}

#[test]
fn unknown_rule_kind_is_diagnosed_at_the_kind_token() {
    let src = "model m\nbasis {\n  graph g prob 1 { vertices 1 edges [ ] }\n}\nrules {\n  rule x kind frobnicate prob 1.0\n}\n";
    let diags = parse_model(src).unwrap_err();
    assert_eq!(diags.0.len(), 1, "{diags}");
    let d = &diags.0[0];
    assert!(d.message.contains("unknown rule kind `frobnicate`"));
    assert_eq!((d.line, d.col), (6, 15));
}

#[test]
fn presets_round_trip_through_serialize_and_parse() {
    let models = [
        presets::connected(0.5).unwrap(),
        presets::two_vertex_connected(0.25).unwrap(),
        presets::two_edge_connected(1.0 / 3.0, 1.0 / 3.0).unwrap(),
        presets::pa(2).unwrap(),
    ];
    for model in models {
        let text = serialize_model(&model);
        let reparsed = parse_model(&text)
            .unwrap_or_else(|d| panic!("{}: {d}", model.name()));
        assert_eq!(reparsed, model, "round trip for {}", model.name());
        // serializing the reparse is canonical and stable
        assert_eq!(serialize_model(&reparsed), text);
    }
}

#[test]
fn parse_then_serialize_is_canonical() {
    let canonical = serialize_model(&parse_model(CONNECTED_TEXT).unwrap());
    let twice = serialize_model(&parse_model(&canonical).unwrap());
    assert_eq!(canonical, twice);
}

#[test]
fn weights_print_with_seventeen_significant_digits() {
    let model = PicgModel::new(
        "m",
        vec![
            (basis_graph(BasisKind::SingleVertex).unwrap(), 0.25),
            (basis_graph(BasisKind::Triangle).unwrap(), 0.75),
        ],
        vec![(Rule::with_default_kernel("add_pendant").unwrap(), 1.0)],
    )
    .unwrap();
    let text = serialize_model(&model);
    assert!(text.contains("prob 2.5000000000000000e-1"), "{text}");
    assert!(text.contains("prob 7.5000000000000000e-1"), "{text}");
}

#[test]
fn pa_serialization_names_its_kernel() {
    let text = serialize_model(&presets::pa(1).unwrap());
    assert!(text.contains("select degree_proportional"), "{text}");
}

#[test]
fn fraction_literals_are_exact() {
    let src = "model m\nbasis {\n  graph g prob 1 { vertices 3 edges [ 0-1 1-2 2-0 ] }\n}\nrules {\n  rule a kind add_edge prob 1/3\n  rule b kind subdivide_edge prob 2/3\n}\n";
    let model = parse_model(src).unwrap();
    assert_eq!(model.rules()[0].1, 1.0 / 3.0);
    assert_eq!(model.rules()[1].1, 2.0 / 3.0);
}

#[test]
fn select_defaults_to_the_kind_default() {
    let src = "model m\nbasis {\n  graph g prob 1 { vertices 1 edges [ ] }\n}\nrules {\n  rule a kind add_pendant prob 1\n}\n";
    let model = parse_model(src).unwrap();
    assert_eq!(model.rules()[0].0.kernel_name(), UNIFORM_VERTEX);
}

#[test]
fn simple_modifier_switches_to_the_nonadjacent_kernel() {
    let src = "model m\nbasis {\n  graph g prob 1 { vertices 2 edges [ 0-1 ] }\n}\nrules {\n  rule a kind add_pendant prob 1/2\n  rule b kind add_edge prob 1/2 select uniform_pair simple\n}\n";
    let model = parse_model(src).unwrap();
    assert_eq!(model.rules()[1].0.kernel_name(), UNIFORM_NONADJACENT_PAIR);

    let bad = src.replace("add_edge prob 1/2 select uniform_pair simple", "subdivide_edge prob 1/2 simple");
    let diags = parse_model(&bad).unwrap_err();
    assert!(diags.0[0].message.contains("`simple` applies only to add_edge"), "{diags}");
}

#[test]
fn incompatible_kernel_is_diagnosed() {
    let src = "model m\nbasis {\n  graph g prob 1 { vertices 1 edges [ ] }\n}\nrules {\n  rule a kind add_pendant prob 1 select uniform_edge\n}\n";
    let diags = parse_model(src).unwrap_err();
    assert!(
        diags.0[0].message.contains("does not accept kernel"),
        "{diags}"
    );
    assert_eq!(diags.0[0].line, 6);
}

#[test]
fn basis_edge_validation() {
    let out_of_range = "model m\nbasis {\n  graph g prob 1 { vertices 2 edges [ 0-5 ] }\n}\nrules {\n  rule a kind add_pendant prob 1\n}\n";
    let diags = parse_model(out_of_range).unwrap_err();
    assert!(diags.0[0].message.contains("past 1"), "{diags}");

    let loop_edge = out_of_range.replace("0-5", "1-1");
    let diags = parse_model(&loop_edge).unwrap_err();
    assert!(diags.0[0].message.contains("loop"), "{diags}");
}

#[test]
fn empty_blocks_are_diagnosed() {
    let src = "model m\nbasis {\n}\nrules {\n}\n";
    let diags = parse_model(src).unwrap_err();
    assert!(diags.0.iter().any(|d| d.message.contains("no graphs")));
    assert!(diags.0.iter().any(|d| d.message.contains("no rules")));
}

#[test]
fn syntax_errors_carry_positions() {
    let cases = [
        ("", 1, 1),
        ("model", 1, 1),
        ("model m\nrules {\n}\n", 2, 1), // basis block missing
        ("model m\nbasis {\n  graph g prob x { vertices 1 edges [ ] }\n}\nrules {\n}\n", 3, 16),
        ("model m\nbasis {\n  graph g prob 1 { vertices 1 edges [ 0+1 ] }\n}\nrules {\n}\n", 3, 39),
    ];
    for (src, line, col) in cases {
        let diags = parse_model(src).unwrap_err();
        assert_eq!(
            (diags.0[0].line, diags.0[0].col),
            (line, col),
            "{src:?} -> {diags}"
        );
    }
}

#[test]
fn preset_parameter_validation() {
    assert!(presets::connected(0.0).is_err());
    assert!(presets::connected(1.0).is_err());
    assert!(presets::two_edge_connected(0.5, 0.5).is_err());
    assert!(presets::pa(0).is_err());
    assert!(matches!(
        presets::by_name("frobnicate", &[]),
        Err(presets::PresetError::Unknown(_))
    ));
    assert!(presets::by_name("connected", &[]).is_err());
    assert!(presets::by_name("connected", &[0.5]).is_ok());
    assert!(presets::by_name("two_edge_connected", &[1.0 / 3.0, 1.0 / 3.0]).is_ok());
    assert!(presets::by_name("pa", &[]).is_ok());
    assert!(presets::by_name("pa", &[2.0]).is_ok());
    assert!(presets::by_name("pa", &[1.5]).is_err());
}

#[test]
fn class_properties_by_model_name() {
    use crate::graph::GraphProperty;
    assert_eq!(
        presets::class_property("connected"),
        Some(GraphProperty::Connected)
    );
    assert_eq!(
        presets::class_property("two_vertex_connected"),
        Some(GraphProperty::Biconnected)
    );
    assert_eq!(
        presets::class_property("two_edge_connected"),
        Some(GraphProperty::TwoEdgeConnected)
    );
    assert_eq!(presets::class_property("pa"), Some(GraphProperty::Connected));
    assert_eq!(presets::class_property("custom"), None);
}

fn arb_valid_model() -> impl Strategy<Value = PicgModel> {
    let basis = prop_oneof![
        Just(BasisKind::SingleVertex),
        Just(BasisKind::Triangle),
        (1usize..4).prop_map(BasisKind::ParallelPair),
    ];
    let rule = prop_oneof![
        Just(("add_pendant", UNIFORM_VERTEX)),
        Just(("add_pendant", "degree_proportional")),
        Just(("add_edge", UNIFORM_PAIR)),
        Just(("add_edge", UNIFORM_NONADJACENT_PAIR)),
        Just(("subdivide_edge", "uniform_edge")),
        Just(("attach_triangle", UNIFORM_VERTEX)),
        Just(("pa_attach", "degree_proportional")),
    ];
    (
        "[a-z][a-z0-9_]{0,12}",
        basis,
        proptest::collection::vec((rule, 1u32..100), 1..5),
    )
        .prop_map(|(name, basis, rules)| {
            let total: u32 = rules.iter().map(|(_, w)| w).sum();
            let rules = rules
                .into_iter()
                .map(|((kind, kernel), w)| {
                    (Rule::new(kind, kernel).unwrap(), w as f64 / total as f64)
                })
                .collect();
            PicgModel::new(name, vec![(basis_graph(basis).unwrap(), 1.0)], rules).unwrap()
        })
}

proptest! {
    #[test]
    fn random_valid_models_round_trip(model in arb_valid_model()) {
        let text = serialize_model(&model);
        let reparsed = parse_model(&text).map_err(|d| TestCaseError::fail(d.to_string()))?;
        prop_assert_eq!(reparsed, model);
    }

    #[test]
    fn arbitrary_text_never_panics(src in "\\PC*") {
        let _ = parse_model(&src);
    }

    #[test]
    fn token_soup_yields_positioned_diagnostics(words in proptest::collection::vec(
        prop_oneof![
            Just("model".to_string()), Just("basis".to_string()), Just("rules".to_string()),
            Just("graph".to_string()), Just("rule".to_string()), Just("prob".to_string()),
            Just("kind".to_string()), Just("select".to_string()), Just("simple".to_string()),
            Just("{".to_string()), Just("}".to_string()), Just("[".to_string()), Just("]".to_string()),
            Just("0-1".to_string()), Just("0.5".to_string()), Just("add_edge".to_string()),
            "[a-z]{1,6}".prop_map(String::from),
        ],
        0..40,
    )) {
        let src = words.join(" ");
        if let Err(diags) = parse_model(&src) {
            prop_assert!(!diags.0.is_empty());
            for d in &diags.0 {
                prop_assert!(d.line >= 1 && d.col >= 1);
            }
        }
    }
}
