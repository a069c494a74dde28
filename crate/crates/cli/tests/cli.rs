use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fusionmorph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn validate_exit_codes() {
    assert_eq!(code(&run(&["validate", p(&data("two_agents.json"))])), 0);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let text = fs::read_to_string(data("two_agents.json"))
        .unwrap()
        .replace(r#""K": [["b"]]"#, r#""K": [["b"], ["a", "a"]]"#);
    fs::write(&bad, text).unwrap();
    let out = run(&["validate", p(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("K ⊄ L"));

    let junk = dir.path().join("junk.json");
    fs::write(&junk, "{ not json").unwrap();
    assert_eq!(code(&run(&["validate", p(&junk)])), 2);
    assert_eq!(code(&run(&["validate", p(&dir.path().join("missing.json"))])), 2);
}

#[test]
fn check_two_agent_problem() {
    let out = run(&["check", p(&data("two_agents.json")), "conjunctive:2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "SOLVABLE\n");

    let out = run(&["check", p(&data("two_agents.json")), "const0:2"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "UNSOLVABLE\n");
}

#[test]
fn clashing_class_is_unsolvable_under_every_rule() {
    for rule in [
        "conjunctive:2",
        "disjunctive:2",
        "cpda:2",
        "conjunctive_cd:2",
        "const0:2",
        "const1:2",
    ] {
        assert_eq!(code(&run(&["check", p(&data("clash.json")), rule])), 1, "{rule}");
    }
}

#[test]
fn arity_mismatch_and_bad_selectors_are_invalid_input() {
    let ex1 = data("two_agents.json");
    assert_eq!(code(&run(&["check", p(&ex1), "conjunctive:3"])), 2);
    assert_eq!(code(&run(&["check", p(&ex1), "nosuch:2"])), 2);
    assert_eq!(code(&run(&["check", p(&ex1), "conjunctive"])), 2);
    assert_eq!(code(&run(&["check", p(&ex1), "conjunctive", "--agents", "2"])), 0);
    assert_eq!(code(&run(&["compare", "conjunctive:2", "conjunctive:3"])), 2);
}

#[test]
fn budget_exhaustion_exits_3() {
    let out = run(&["check", p(&data("two_agents.json")), "conjunctive:2", "--budget", "1"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn emitted_files_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let ex1 = data("two_agents.json");
    let witness = dir.path().join("m.json");
    let solution = dir.path().join("sol.json");
    let out = run(&[
        "solve",
        p(&ex1),
        "conjunctive:2",
        "--witness",
        p(&witness),
        "-o",
        p(&solution),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        code(&run(&["verify-morphism", p(&ex1), "conjunctive:2", p(&witness)])),
        0
    );
    assert_eq!(
        code(&run(&["verify-solution", p(&ex1), "conjunctive:2", p(&solution)])),
        0
    );
    // The same tables fail under the disjunctive rule.
    assert_eq!(
        code(&run(&["verify-solution", p(&ex1), "disjunctive:2", p(&solution)])),
        1
    );
}

#[test]
fn tampered_morphism_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let ex1 = data("two_agents.json");
    let witness = dir.path().join("m.json");
    assert_eq!(
        code(&run(&["check", p(&ex1), "conjunctive:2", "--witness", p(&witness)])),
        0
    );
    let m: serde_json::Value = serde_json::from_str(&fs::read_to_string(&witness).unwrap()).unwrap();
    // send every string to (0, 0)
    let all_red: Vec<_> = m
        .as_array()
        .unwrap()
        .iter()
        .map(|pair| serde_json::json!([pair[0], ["0", "0"]]))
        .collect();
    fs::write(&witness, serde_json::to_string(&all_red).unwrap()).unwrap();
    let out = run(&["verify-morphism", p(&ex1), "conjunctive:2", p(&witness)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("node colour not preserved: b"));
}

#[test]
fn solve_without_out_prints_tables() {
    let out = run(&["solve", p(&data("two_agents.json")), "conjunctive:2"]);
    assert_eq!(code(&out), 0);
    let tables: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(tables.as_array().unwrap().len(), 2);
}

#[test]
fn reduce_gamma_problem() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["reduce", p(&data("gamma_control.json")), "-o", p(dir.path())]);
    assert_eq!(code(&out), 0);
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(
        manifest,
        serde_json::json!([{"file": "obs_u3b3.json", "event": "γ", "agents": [1, 2]}])
    );
    let reduced: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("obs_u3b3.json")).unwrap()).unwrap();
    assert_eq!(reduced["L"], serde_json::json!([["a"], ["b"]]));
    assert_eq!(reduced["K"], serde_json::json!([["a"]]));
    assert_eq!(
        code(&run(&["check", p(&dir.path().join("obs_u3b3.json")), "conjunctive:2"])),
        0
    );
}

#[test]
fn reduce_uncontrollable() {
    let dir = tempfile::tempdir().unwrap();
    let file = data("uncontrollable.json");
    assert_eq!(code(&run(&["reduce", p(&file), "-o", p(dir.path())])), 1);
    assert!(!dir.path().join("manifest.json").exists());
    assert_eq!(
        code(&run(&[
            "reduce",
            p(&file),
            "-o",
            p(dir.path()),
            "--allow-uncontrollable"
        ])),
        0
    );
    assert!(dir.path().join("obs_a.json").exists());
}

#[test]
fn reduce_without_controllable_events_writes_no_problems() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    let text = fs::read_to_string(data("gamma_control.json"))
        .unwrap()
        .replace(r#""controllable": [["γ"], ["γ"]]"#, r#""controllable": [[], []]"#)
        .replace(r#", ["a", "γ"], ["b", "γ"]]"#, "]")
        .replace(r#", ["a", "γ"]]"#, "]");
    fs::write(&file, text).unwrap();
    let out_dir = dir.path().join("out");
    assert_eq!(code(&run(&["reduce", p(&file), "-o", p(&out_dir)])), 0);
    let files: Vec<_> = fs::read_dir(&out_dir).unwrap().collect();
    assert_eq!(files.len(), 1, "only the manifest");
    assert_eq!(fs::read_to_string(out_dir.join("manifest.json")).unwrap(), "[]\n");
}

#[test]
fn compare_relations() {
    let line = |a: &str, b: &str| stdout(&run(&["compare", a, b])).lines().next().unwrap().to_owned();
    assert_eq!(line("conjunctive:2", "disjunctive:2"), "incomparable");
    assert_eq!(line("cpda:2", "conjunctive:2"), "second strictly more permissive");
    assert_eq!(line("conjunctive:2", "cpda:2"), "first strictly more permissive");
    assert_eq!(line("conjunctive_cd:2", "conjunctive:2"), "equivalent");
    assert_eq!(line("cpda:2", "cpda:2"), "equivalent");
    // majority forces 011 to differ from 000 only at agent 2 and only at agent 3
    assert_eq!(line(p(&data("majority3.json")), "disjunctive:3"), "incomparable");
}

#[test]
fn compare_witnesses_and_separating_problem() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w");
    let o = dir.path().join("o");
    let out = run(&[
        "compare",
        "cpda:2",
        "conjunctive:2",
        "--witness",
        p(&w),
        "--separating",
        "-o",
        p(&o),
    ]);
    assert_eq!(code(&out), 0);
    assert!(!w.join("backward.json").exists());
    assert_eq!(
        code(&run(&[
            "verify-morphism",
            "cpda:2",
            "conjunctive:2",
            p(&w.join("forward.json"))
        ])),
        0
    );
    // conjunctive solves its own d2o problem, cpda does not
    let sep = o.join("separating_backward.json");
    assert!(!o.join("separating_forward.json").exists());
    assert_eq!(code(&run(&["check", p(&sep), "conjunctive:2"])), 0);
    assert_eq!(code(&run(&["check", p(&sep), "cpda:2"])), 1);
    let verdict: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(o.join("verdict.json")).unwrap()).unwrap();
    assert_eq!(verdict["relation"], "first_strictly_less");
    assert!(verdict["backward"].is_null());
}

#[test]
fn poset_hasse() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("poset.json");
    let out = run(&[
        "poset",
        "conjunctive:2",
        "disjunctive:2",
        "cpda:2",
        "conjunctive_cd:2",
        "-o",
        p(&json),
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("class: conjunctive:2 = conjunctive_cd:2"));
    assert!(text.contains("hasse: cpda:2 < conjunctive:2"));
    assert!(text.contains("hasse: cpda:2 < disjunctive:2"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["hasse"].as_array().unwrap().len(), 2);
}

#[test]
fn d2o_outputs() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(&["d2o", "conjunctive:2", "-o", p(dir.path())])), 0);
    let problem: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("problem.json")).unwrap()).unwrap();
    assert_eq!(problem["K"], serde_json::json!([["0_1", "1_1", "0_2", "1_2"]]));
    assert_eq!(problem["L"].as_array().unwrap().len(), 4);
    assert!(dir.path().join("bijection.json").exists());

    let tagged = dir.path().join("tagged");
    let out = run(&["d2o", "cpda:2", "--encoding", "tagged", "-o", p(&tagged)]);
    assert_eq!(code(&out), 0);
    let problem: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tagged.join("problem.json")).unwrap()).unwrap();
    assert_eq!(problem["L"].as_array().unwrap().len(), 6);

    assert_eq!(
        code(&run(&["d2o", "cpda:2", "--encoding", "binary", "-o", p(&tagged)])),
        2
    );
}

#[test]
fn graph_dot() {
    let out = run(&["graph", p(&data("two_agents.json"))]);
    assert_eq!(code(&out), 0);
    let dot = stdout(&out);
    assert!(dot.starts_with("graph \"G\" {"));
    assert_eq!(dot.matches("peripheries").count(), 4);
    assert_eq!(dot.matches(" -- ").count(), 6);
    assert_eq!(code(&run(&["graph", p(&data("gamma_control.json"))])), 2);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let sub = dir.path().join(i.to_string());
            let w = sub.join("w.json");
            let s = sub.join("s.json");
            let out = run(&[
                "solve",
                p(&data("two_agents.json")),
                "conjunctive:2",
                "--witness",
                p(&w),
                "-o",
                p(&s),
            ]);
            let mut bytes = out.stdout;
            bytes.extend(fs::read(w).unwrap());
            bytes.extend(fs::read(s).unwrap());
            bytes.extend(run(&["poset", "conjunctive:2", "cpda:2", "const1:2"]).stdout);
            bytes
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}
