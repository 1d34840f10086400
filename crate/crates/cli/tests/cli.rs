use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyrecon"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn generate_writes_a_simple_polytope() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "generate", "--dim", "3", "--facets", "12", "--seed", "42", "-o", "p.json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("d=3") && stdout(&o).contains("simple=yes"));
    let p = polyrecon::harness::polytope_from_json(
        &std::fs::read_to_string(dir.path().join("p.json")).unwrap(),
    )
    .unwrap();
    assert!(polyrecon::geometry::check_simple(&p));

    let o = run(
        &["generate", "--dim", "2", "--facets", "4", "--seed", "1"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let n: usize = stdout(&o)[2..]
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((3..=4).contains(&n));
}

#[test]
fn usage_errors_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["generate", "--facets", "4"][..],
        &[
            "moments",
            "--fixture",
            "poly8",
            "--z",
            "2,3,4",
            "--count",
            "0",
        ],
        &[
            "moments",
            "--fixture",
            "poly8",
            "--z",
            "2,3,4",
            "--count",
            "3",
            "--mode",
            "rational",
            "--bits",
            "20",
        ],
        &["reconstruct", "--fixture", "poly8"],
        &["sweep", "--bits", ""],
        &["frobnicate"],
    ] {
        assert_eq!(run(args, dir.path()).status.code(), Some(64), "{args:?}");
    }
    assert_eq!(run(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn generation_failure_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    // Most of 60 random tangent lines are redundant, so 60 vertices never appear.
    let o = run(
        &["generate", "--dim", "2", "--vertices", "60", "--seed", "1"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn degenerate_direction_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "moments",
            "--fixture",
            "cube",
            "--z",
            "1,0,0",
            "--count",
            "4",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("another direction"));
}

#[test]
fn moments_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "moments",
            "--fixture",
            "poly8",
            "--z",
            "2,3,4",
            "--count",
            "17",
            "--mode",
            "rational",
            "-o",
            "m.json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let recs = polyrecon::harness::moments_from_json(
        &std::fs::read_to_string(dir.path().join("m.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(recs[0].values.len(), 17);

    let o = run(
        &[
            "moments",
            "--fixture",
            "poly8",
            "--z",
            "2,3,4",
            "--zim",
            "-5,2,-8",
            "--bits",
            "25",
            "--count",
            "17",
            "-o",
            "c.json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let recs = polyrecon::harness::moments_from_json(
        &std::fs::read_to_string(dir.path().join("c.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(recs[0].mode.bits(), Some(25));
}

#[test]
fn reconstruct_from_frame_files_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "moments",
            "--fixture",
            "poly8",
            "--frame-seed",
            "3",
            "--count",
            "20",
            "-o",
            "frame.json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = run(
        &[
            "reconstruct",
            "--moments",
            "frame.json",
            "--nmax",
            "8",
            "-o",
            "r.json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = polyrecon::harness::report_from_json(
        &std::fs::read_to_string(dir.path().join("r.json")).unwrap(),
    )
    .unwrap();
    let mut got = r.vertices().unwrap();
    let mut want = polyrecon::geometry::fixtures::eight_vertex()
        .vertices()
        .to_vec();
    got.sort();
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn reconstruct_fixture_reports_distance() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "reconstruct",
            "--fixture",
            "poly8",
            "--nmax",
            "8",
            "-o",
            "r.json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("distance to the input: 0e0"));
    let first = std::fs::read(dir.path().join("r.json")).unwrap();
    run(
        &[
            "reconstruct",
            "--fixture",
            "poly8",
            "--nmax",
            "8",
            "-o",
            "r.json",
        ],
        dir.path(),
    );
    assert_eq!(
        first,
        std::fs::read(dir.path().join("r.json")).unwrap(),
        "reports are deterministic"
    );
}

#[test]
fn low_precision_twenty_vertex_warns() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "reconstruct",
            "--fixture",
            "poly20",
            "--bits",
            "60",
            "--n",
            "20",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("warning: distance"), "{}", stdout(&o));

    let o = run(
        &[
            "reconstruct",
            "--fixture",
            "poly20",
            "--bits",
            "75",
            "--n",
            "20",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(!stderr(&o).contains("warning"), "{}", stdout(&o));
}

#[test]
fn reconstruction_failure_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "reconstruct",
            "--fixture",
            "square",
            "--nmax",
            "2",
            "--budget",
            "2",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("budget exhausted"));
}

#[test]
fn export_meshes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["export", "--fixture", "cube"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("OFF\n8 6 12\n"));
    let o = run(&["export", "--fixture", "square"], dir.path());
    assert_ne!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("export is 3D only"));

    run(
        &[
            "reconstruct",
            "--fixture",
            "poly8",
            "--n",
            "8",
            "--bits",
            "64",
            "-o",
            "f.json",
        ],
        dir.path(),
    );
    let o = run(&["export", "--report", "f.json", "-o", "f.off"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(std::fs::read_to_string(dir.path().join("f.off"))
        .unwrap()
        .contains("point cloud only"));
}

#[test]
fn verify_and_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["verify", "--fixture", "poly8", "--directions", "2"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all checks passed"));

    let o = run(
        &[
            "sweep", "--dim", "2", "--n", "4", "--bits", "16-40", "--step", "8", "--trials", "3",
            "-o", "s.json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).lines().any(|l| l.starts_with("4 ")));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("s.json")).unwrap()).unwrap();
    assert_eq!(json["cells"].as_array().unwrap().len(), 4 * 3);
}
