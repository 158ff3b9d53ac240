//! End-to-end exercises of the installed binary: generation, solving,
//! verification, tracing, rendering, event export, exit codes, and
//! byte-determinism of the JSON outputs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rotcut"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("rotcut-test-{}-{}", std::process::id(), name));
    p
}

#[test]
fn gen_solve_verify_roundtrip() {
    for (k, seed) in [(1usize, 3u64), (3, 5), (3, 11), (5, 2)] {
        let scene = tmp(&format!("scene-{k}-{seed}.json"));
        let solution = tmp(&format!("sol-{k}-{seed}.json"));
        let ks = k.to_string();
        let out = run(&[
            "gen",
            "--reds",
            &ks,
            "--greens",
            &ks,
            "--blues",
            &ks,
            "--bound",
            "40",
            "--seed",
            &seed.to_string(),
            "-o",
            scene.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "gen failed: {out:?}");
        let out = run(&[
            "solve",
            scene.to_str().unwrap(),
            "-o",
            solution.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "solve failed: {out:?}");
        let out = run(&[
            "verify",
            scene.to_str().unwrap(),
            solution.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "verify failed: {out:?}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("verified"));
    }
}

#[test]
fn brute_method_agrees() {
    let scene = tmp("scene-brute.json");
    let solution = tmp("sol-brute.json");
    run(&[
        "gen",
        "--reds",
        "3",
        "--greens",
        "1",
        "--blues",
        "1",
        "--bound",
        "30",
        "--seed",
        "9",
        "-o",
        scene.to_str().unwrap(),
    ]);
    let out = run(&[
        "solve",
        scene.to_str().unwrap(),
        "--method",
        "brute",
        "-o",
        solution.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "brute solve failed: {out:?}");
    let out = run(&[
        "verify",
        scene.to_str().unwrap(),
        solution.to_str().unwrap(),
    ]);
    assert!(out.status.success());
}

#[test]
fn deterministic_outputs() {
    let a = tmp("det-a.json");
    let b = tmp("det-b.json");
    for p in [&a, &b] {
        let out = run(&[
            "gen",
            "--reds",
            "3",
            "--greens",
            "3",
            "--blues",
            "3",
            "--bound",
            "25",
            "--seed",
            "77",
            "-o",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let sa = tmp("det-sol-a.json");
    let sb = tmp("det-sol-b.json");
    for p in [&sa, &sb] {
        let out = run(&["solve", a.to_str().unwrap(), "-o", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&sa).unwrap(), std::fs::read(&sb).unwrap());
}

#[test]
fn seed_env_var_is_honored() {
    let a = tmp("env-a.json");
    let b = tmp("env-b.json");
    let out = bin()
        .args([
            "gen",
            "--reds",
            "1",
            "--greens",
            "1",
            "--blues",
            "1",
            "-o",
            a.to_str().unwrap(),
        ])
        .env("ROTCUT_SEED", "123")
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = run(&[
        "gen",
        "--reds",
        "1",
        "--greens",
        "1",
        "--blues",
        "1",
        "--seed",
        "123",
        "-o",
        b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn trace_subcommand() {
    let scene = tmp("scene-trace.json");
    run(&[
        "gen",
        "--reds",
        "1",
        "--greens",
        "1",
        "--blues",
        "1",
        "--bound",
        "20",
        "--seed",
        "4",
        "-o",
        scene.to_str().unwrap(),
    ]);
    let out = run(&["trace", scene.to_str().unwrap(), "--slope", "1/3"]);
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(
        text.contains("trace: 0") || text.contains("trace: 1"),
        "{text}"
    );
    assert!(text.contains("sequence:"));
    // Perturbed sides around the same slope.
    for side in ["before", "after"] {
        let out = run(&[
            "trace",
            scene.to_str().unwrap(),
            "--slope",
            "1/3",
            "--side",
            side,
        ]);
        assert!(out.status.success());
    }
}

#[test]
fn events_and_render_subcommands() {
    let scene = tmp("scene-ev.json");
    let events = tmp("events.json");
    let svg = tmp("out.svg");
    run(&[
        "gen",
        "--reds",
        "1",
        "--greens",
        "1",
        "--blues",
        "3",
        "--bound",
        "20",
        "--seed",
        "6",
        "-o",
        scene.to_str().unwrap(),
    ]);
    let out = run(&[
        "events",
        scene.to_str().unwrap(),
        "-o",
        events.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&events).unwrap()).unwrap();
    assert!(doc["events"].as_array().unwrap().len() > 3);
    assert!(doc["parallel_solution_exists"].is_boolean());

    let out = run(&[
        "render",
        scene.to_str().unwrap(),
        "--slope",
        "0/1",
        "--dual",
        "-o",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.trim_end().ends_with("</svg>"));
    assert_eq!(text.matches("<polyline").count(), 3);
}

#[test]
fn exit_codes() {
    // Invalid input: even class size.
    let out = run(&["gen", "--reds", "2", "--greens", "3", "--blues", "3"]);
    assert_eq!(out.status.code(), Some(2));

    // Verification failure: solution against the wrong scene.
    let s1 = tmp("codes-s1.json");
    let s2 = tmp("codes-s2.json");
    let sol = tmp("codes-sol.json");
    run(&[
        "gen",
        "--reds",
        "1",
        "--greens",
        "1",
        "--blues",
        "1",
        "--seed",
        "1",
        "--bound",
        "30",
        "-o",
        s1.to_str().unwrap(),
    ]);
    run(&[
        "gen",
        "--reds",
        "1",
        "--greens",
        "1",
        "--blues",
        "1",
        "--seed",
        "8",
        "--bound",
        "30",
        "-o",
        s2.to_str().unwrap(),
    ]);
    let out = run(&["solve", s1.to_str().unwrap(), "-o", sol.to_str().unwrap()]);
    assert!(out.status.success());
    let out = run(&["verify", s2.to_str().unwrap(), sol.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");

    // Missing file.
    let out = run(&["solve", "/nonexistent/scene.json"]);
    assert_eq!(out.status.code(), Some(2));

    // Exactly-parallel slope without --side is a usage error.
    let scene_text = std::fs::read_to_string(&s1).unwrap();
    let scene = rotcut::geometry::Scene::from_json(&scene_text).unwrap();
    let m = rotcut::exact::rat_to_string(&scene.lines[0].parallel_slope());
    let out = run(&["trace", s1.to_str().unwrap(), "--slope", &m]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}
