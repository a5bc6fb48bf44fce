//! The command line, driven in process.

use annulus_gentle::cli::{main_with, Outcome, EXIT_INPUT};

fn run(args: &[&str]) -> Outcome {
    main_with(std::iter::once("annulus").chain(args.iter().copied()))
}

const A_INNER_1_CW: &str = r#"{"type":"asymptotic","boundary":"inner","index":1,"spiral":"cw"}"#;

#[test]
fn strings_of_arcs() {
    let o = run(&["string", "fixture-32", A_INNER_1_CW]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "(c-gf)*e\n"));
    let o = run(&["string", "fixture-32", r#"{"type":"peripheral","boundary":"outer","from":0,"to":2}"#]);
    assert_eq!(o.stdout, "@in-triangulation\n");
    let o = run(&["string", "fixture-32", A_INNER_1_CW, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v[0]["asymptotics"], "contracting");
}

#[test]
fn malformed_input_exits_2() {
    assert_eq!(run(&["quiver", "{\"p\": 1,"]).code, EXIT_INPUT);
    assert_eq!(run(&["string", "fixture-32", "{\"type\":\"bogus\"}"]).code, EXIT_INPUT);
    assert_eq!(run(&["quiver", "/no/such/file.json"]).code, EXIT_INPUT);
    assert_eq!(run(&["verify", "A42"]).code, EXIT_INPUT);
    assert_eq!(run(&["frobnicate"]).code, EXIT_INPUT);
    // A partial triangulation with crossing arcs.
    let o = run(&[
        "complete",
        "fixture-32",
        r#"[{"type":"bridging","outer":0,"inner":0},{"type":"bridging","outer":1,"inner":-3}]"#,
    ]);
    assert_eq!(o.code, EXIT_INPUT, "{o:?}");
}

#[test]
fn quiver_outputs() {
    let dot = run(&["quiver", "fixture-32", "--format", "dot"]).stdout;
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("ed=0").count(), 1);
    let js: serde_json::Value =
        serde_json::from_str(&run(&["quiver", "fixture-32", "--format", "json"]).stdout).unwrap();
    assert_eq!(js["arrows"].as_array().unwrap().len(), 7);
    assert_eq!(js["relations"].as_array().unwrap().len(), 6);
}

#[test]
fn classify_has_both_halves() {
    let o = run(&["classify", "fixture-11", "--winding-bound", "1", "--length-bound", "4"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert!(v["nonStrict"].as_array().is_some_and(|a| !a.is_empty()));
    assert_eq!(v["strict"].as_array().unwrap().len(), 4);
}

#[test]
fn exttable_csv_shape() {
    let o = run(&["exttable", "fixture-11", "--length-bound", "2"]);
    let lines: Vec<&str> = o.stdout.lines().collect();
    let js: serde_json::Value =
        serde_json::from_str(&run(&["exttable", "fixture-11", "--length-bound", "2", "--format", "json"]).stdout)
            .unwrap();
    let n = js["labels"].as_array().unwrap().len();
    assert_eq!(lines.len(), n + 1);
    assert!(lines[0].ends_with(",\"M(3,1)\""));
    assert!(lines[1].starts_with("e_1,0,2"));
}

#[test]
fn complete_strict() {
    let partial = format!(
        r#"{{"arcs":[{A_INNER_1_CW}],"params":{{"p1":{{"kind":"finite","elements":[1]}},"p2":{{"kind":"cofinite","elements":[1]}}}}}}"#
    );
    let o = run(&["complete", "fixture-32", &partial]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert!(v["arcs"].as_array().unwrap().iter().any(|a| a == "A(1',cw)"));
    assert!(v["members"].as_array().unwrap().iter().any(|m| m == "G"));
}

#[test]
fn render_is_well_formed_svg() {
    let o = run(&["render", "fixture-32", &format!("[{A_INNER_1_CW},{{\"type\":\"band\"}}]")]);
    assert_eq!(o.code, 0);
    roxmltree::Document::parse(&o.stdout).unwrap();
}

#[test]
fn verify_reports_and_exit_codes() {
    let o = run(&["verify", "A9"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("A9 PARTIAL"));
    let o = run(&["verify", "A4", "--format", "json"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v[0]["verdict"], "pass");
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["classify", "fixture-11", "--winding-bound", "1", "--length-bound", "4"][..],
        &["exttable", "fixture-32", "--length-bound", "3", "--jobs", "3"],
        &["render", "fixture-32", A_INNER_1_CW],
        &["verify", "A8", "--length-bound", "4"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}
