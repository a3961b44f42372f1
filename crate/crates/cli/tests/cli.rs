use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-kato")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn invariants_report_betti_euler_and_hodge() {
    let o = run(&["invariants", "fixture_fig2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("betti b_0..b_6: (1, 1, 2, 0, 2, 1, 1)"), "{s}");
    assert!(s.contains("χ = a_3 - 1 = 4"));
    assert!(s.contains("h^{1,1} = ♯D = 2"));
}

#[test]
fn iso_prints_certificate_on_first_line() {
    let o = run(&["iso", "fixture_inoue_a", "fixture_inoue_b"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let first = s.lines().next().unwrap();
    assert!(first.starts_with("No:"), "{first}");
    assert!(first.contains("ℓ2") && first.contains("m2"), "{first}");
}

#[test]
fn iso_of_a_fixture_with_itself_is_yes() {
    let o = run(&["iso", "fixture_fig3", "fixture_fig3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("Yes"));
}

#[test]
fn render_writes_svg_file() {
    let dir = std::env::temp_dir().join(format!("toric-kato-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig1.svg");
    let o = run(&["render", "fixture_fig1", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<polygon").count(), 13);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn render_central_fiber_of_nakamura_family() {
    let o = run(&["render", "fixture_inoue_hirzebruch", "--central", "nakamura"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("<polygon").count(), 6);
}

#[test]
fn export_round_trips_through_a_file() {
    let dir = std::env::temp_dir().join(format!("toric-kato-export-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig1.toml");
    assert!(run(&["export", "fixture_fig1", "--out", path.to_str().unwrap()]).status.success());
    let again = run(&["export", path.to_str().unwrap()]);
    assert!(again.status.success());
    assert_eq!(stdout(&again), std::fs::read_to_string(&path).unwrap());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn invalid_input_exits_with_one_and_names_the_field() {
    let dir = std::env::temp_dir().join(format!("toric-kato-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.toml");
    std::fs::write(&path, "dim = 2\n[fan]\ntype = \"explicit\"\nrays = [[1, 0], [0]]\nmax_cones = [[0, 1]]\n").unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("fan.rays[1]"));
    assert_eq!(run(&["validate", "no_such_fixture"]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn degenerations_from_the_command_line() {
    let s = stdout(&run(&["degenerate", "fixture_inoue_hirzebruch"]));
    assert!(s.contains("extended matrix: [[1,1,2], [1,2,3], [0,0,1]]"));
    assert!(s.contains("star of central ray = central fiber: true"));
    let s = stdout(&run(&["degenerate", "fixture_inoue_a", "--kind", "isotrivial"]));
    assert!(s.starts_with("no isotrivial degeneration"));
    let o = run(&["degenerate", "fixture_inoue_hirzebruch", "--kind", "isotrivial", "--u", "2,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("central fiber regular: false"));
}

#[test]
fn json_output_parses() {
    for args in [
        &["classify", "fixture_hopf3", "--json"][..],
        &["census", "fixture_fig1", "--json"],
        &["iso", "fixture_inoue_a", "fixture_inoue_b", "--json"],
        &["validate", "fixture_oda", "--json"],
    ] {
        let o = run(args);
        assert!(o.status.success(), "{args:?}");
        serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn power_and_collapse_emit_documents() {
    let s = stdout(&run(&["power", "fixture_fig2", "--k", "2"]));
    assert!(s.contains("matrix = [[1, 4, 3], [0, 5, 3], [0, 3, 2]]"));
    let s = stdout(&run(&["collapse", "fixture_fig2", "--lo", "0", "--hi", "1"]));
    assert!(s.contains("type = \"explicit\""));
}
