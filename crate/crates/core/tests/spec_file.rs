use axkin_core::axioms::{check_axiom, AxiomId, Mode, Outcome};
use axkin_core::constructions::build_named;
use axkin_core::error::Error;
use axkin_core::geom::{classify_surface, SetClass};
use axkin_core::spec_file::{load_model, parse_model_spec, parse_scenario, parse_surface};
use axkin_core::twin::{compare_elapsed, is_twin_situation, Comparison};

fn input(name: &str) -> String {
    let path = format!("{}/../../docs/inputs/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn shifted_plane_file_matches_the_builder() {
    let from_file = load_model(&input("shifted_plane.json")).unwrap();
    let built = build_named("thm41", 3, None, None).unwrap().model;
    assert_eq!(from_file.family(), built.family());
    assert_eq!(from_file.photons(), built.photons());
    let v = check_axiom(&from_file, AxiomId::AbsTime, Mode::Exact).unwrap();
    assert_eq!(v.outcome, Outcome::Fails);
}

#[test]
fn skewed_cone_file_matches_the_builder() {
    let from_file = load_model(&input("skewed_cone.json")).unwrap();
    let built = build_named("thm55", 3, None, None).unwrap().model;
    assert_eq!(from_file.family(), built.family());
}

#[test]
fn scenario_files() {
    let m = build_named("minkowski", 3, None, None).unwrap().model;
    let s = parse_scenario(&input("three_four_five.json")).unwrap().situation();
    assert_eq!(compare_elapsed(&m, &s).unwrap().outcome, Comparison::Lt);
    let s = parse_scenario(&input("degenerate.json")).unwrap().situation();
    assert!(!is_twin_situation(&m, &s).unwrap());
    assert!(matches!(compare_elapsed(&m, &s), Err(Error::NotATwinSituation(_))));
}

#[test]
fn surface_files() {
    let s = parse_surface(&input("hyperboloid.json")).unwrap();
    assert_eq!(classify_surface(&s).unwrap().class, SetClass::Convex);
    let s = parse_surface(&input("tilted_plane.json")).unwrap();
    assert_eq!(classify_surface(&s).unwrap().class, SetClass::Flat);
}

#[test]
fn parse_errors_carry_positions() {
    let text = "{\n  \"d\": 3,\n  \"family\": {\"predicate\": [], \"constructor\": {\"kind\": \"Warp\"}}\n}";
    match parse_model_spec(text) {
        Err(Error::SpecParse { line, col, .. }) => {
            assert_eq!(line, 3);
            assert!(col > 1);
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
    let text =
        "{\"d\": 3, \"family\": {\"predicate\": [], \"constructor\": {\"kind\": \"Galilean\"}}, \"photons\": \"1/0\"}";
    assert!(matches!(parse_model_spec(text), Err(Error::SpecParse { line: 1, .. })));
    assert!(matches!(parse_scenario("{\"a\": 1}"), Err(Error::ScenarioParse { .. })));
}

#[test]
fn bad_literals_and_dimensions_are_rejected() {
    let text = "{\"d\": 3, \"family\": {\"predicate\": [{\"kind\": \"LinearNonzero\", \"functional\": [\"1/0\", 0, 0]}], \"constructor\": {\"kind\": \"Galilean\"}}}";
    assert!(matches!(load_model(text), Err(Error::SpecParse { .. })));
    let text = "{\"d\": 3, \"family\": {\"predicate\": [{\"kind\": \"LinearNonzero\", \"functional\": [1, 0]}], \"constructor\": {\"kind\": \"Galilean\"}}}";
    assert!(matches!(load_model(text), Err(Error::InvalidModel(_))));
}
