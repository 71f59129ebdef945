use std::path::PathBuf;
use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsplit-lab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn gb_prints_reduced_basis() {
    let o = lab(&["gb", "--p", "5", "--vars", "x,y", "--ideal", "x^2 - y, x*y"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "y^2\nx*y\nx^2 - y\n");
}

#[test]
fn ideal_operations() {
    let o = lab(&["intersect", "--p", "3", "--vars", "x,y", "--i", "x", "--j", "y"]);
    assert_eq!(stdout(&o), "x*y\n");
    let o = lab(&["colon", "--p", "3", "--vars", "x,y", "--i", "x^2, x*y", "--j", "x"]);
    assert_eq!(stdout(&o), "y\nx\n");
    let o = lab(&["saturate", "--p", "3", "--vars", "x,y", "--i", "x^2, x*y", "--f", "x"]);
    assert_eq!(stdout(&o), "1\n");
    let o = lab(&["dim", "--p", "3", "--vars", "x,y,z", "--ideal", "x, y"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn sympow_engines_agree_on_the_determinant() {
    let mut outs = Vec::new();
    for engine in ["saturation", "dep", "auto"] {
        let o = lab(&["sympow", "--engine", engine, "--n", "2", "--matrix", "3x3", "--minors", "2", "--char", "3"]);
        assert!(o.status.success(), "{engine}: {}", String::from_utf8_lossy(&o.stderr));
        let text = stdout(&o);
        let mut gens: Vec<String> = text.lines().map(String::from).collect();
        gens.sort();
        outs.push(gens);
    }
    assert_eq!(outs[0], outs[1]);
    assert_eq!(outs[1], outs[2]);
    let det = "x1_3*x2_2*x3_1 - x1_2*x2_3*x3_1 - x1_3*x2_1*x3_2 + x1_1*x2_3*x3_2 + x1_2*x2_1*x3_3 - x1_1*x2_2*x3_3";
    assert!(outs[0].iter().any(|g| g == det));
}

#[test]
fn testideal_of_the_cusp() {
    let o = lab(&["testideal", "--p", "7", "--vars", "x,y", "--ideal", "x^2, y^3", "--t", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "y\nx\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("certified at e = 1"));
}

#[test]
fn fsplit_exit_codes() {
    let o = lab(&["fsplit", "--p", "5", "--vars", "x,y,z", "--defining", "x^3 + y^3 + z^3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "not F-split");
    let o = lab(&["fsplit", "--p", "7", "--vars", "x,y,z", "--defining", "x^3 + y^3 + z^3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"kind\":\"fsplit\""));
}

#[test]
fn diag_fsplit_writes_a_certificate() {
    let out = scratch("segre_diag.json");
    let o = lab(&["diag-fsplit", "--p", "2", "--vars", "a,b,c,d", "--defining", "a*d - b*c", "--emax", "1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let cert: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(cert["kind"], "diagonal");
    assert_eq!(cert["e"], 1);
}

#[test]
fn sfr_probe_certifies_or_stays_undetermined() {
    let o = lab(&["sfr-probe", "--p", "3", "--vars", "a,b,c,d", "--defining", "a*d - b*c", "--c", "a", "--emax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("certified at e = 1"));
    let o = lab(&["sfr-probe", "--p", "5", "--vars", "x,y,z", "--defining", "x^3 + y^3 + z^3", "--c", "x", "--emax", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("undetermined"));
}

#[test]
fn verify_exit_code_tracks_fails() {
    let out = scratch("negative.json");
    let config = configs().join("negative_control.json");
    let o = lab(&["verify", "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("1 fail, 1 undetermined"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["counts"]["fails"], 1);
    assert_eq!(report["experiments"][0]["checks"][0]["witness"]["element"], "x");
}

#[test]
fn verify_empty_config_exits_zero() {
    let config = scratch("empty.json");
    std::fs::write(&config, "[]").unwrap();
    let o = lab(&["verify", "--config", config.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 experiments"));
}

#[test]
fn bad_input_is_reported_not_panicked() {
    let o = lab(&["gb", "--p", "6", "--vars", "x", "--ideal", "x"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!String::from_utf8_lossy(&o.stderr).contains("panicked"));
    let o = lab(&["gb", "--p", "5", "--vars", "x", "--ideal", "x +* 2"]);
    assert_eq!(o.status.code(), Some(3));
}
