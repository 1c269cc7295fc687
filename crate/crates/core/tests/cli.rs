use std::path::Path;
use std::process::{Command, Output};

fn gpahcs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpahcs")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn stats_csv_shape() {
    let o = gpahcs(&["stats", "--m", "2", "--p", "1,3", "--steps", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "abs_z,p,Q,g2");
    assert_eq!(lines.len(), 11);
    assert!(lines[1].starts_with("0.01,1,"));
    assert!(lines[10].starts_with("8,3,"));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let o = gpahcs(&["snr", "--family", "jacobi", "--mu", "2", "--m", "1", "--steps", "40", "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "run.toml",
        "[family]\nkind = \"jacobi\"\nmu = 2.0\n\n[state]\nm = 4\np = [0, 2]\nz = 3.0\n\n[run]\ntask = \"pnd\"\n",
    );
    let o = gpahcs(&["pnd", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("n,p,P_n"));
    // n runs over p..=p+30 for each p
    assert_eq!(text.lines().count(), 1 + 2 * 31);

    let o = gpahcs(&["pnd", "--config", &cfg, "--p", "1"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 31);
    assert!(text.lines().nth(1).unwrap().starts_with("1,1,"));
}

#[test]
fn thermal_lists_every_beta() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "t.toml", "[run]\ntask = \"thermal\"\nbeta = [0.5, 2.0]\n[state]\np = [1]\n");
    let o = gpahcs(&["thermal", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(2).unwrap().starts_with("2,1,"));
}

#[test]
fn weight_column_is_x() {
    let o = gpahcs(&["weight", "--zmin", "1", "--zmax", "2", "--steps", "2", "--p", "1"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert!(rows[0].starts_with("1,1,"));
    assert!(rows[1].starts_with("4,1,"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(gpahcs(&["stats", "--m", "abc"]).status.code(), Some(2));
    assert_eq!(gpahcs(&["nonsense"]).status.code(), Some(2));
    assert_eq!(gpahcs(&["stats", "--tol", "0.5"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.toml", "[state]\nbogus = 1\n");
    assert_eq!(gpahcs(&["stats", "--config", &cfg]).status.code(), Some(2));
    assert_eq!(gpahcs(&["stats", "--config", "/nonexistent/x.toml"]).status.code(), Some(2));
}

#[test]
fn verify_passes_and_fails_with_status() {
    let o = gpahcs(&["verify", "--m", "1", "--p", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("suite,status,max_error,detail"));
    assert!(text.lines().skip(1).all(|l| l.contains(",pass,")));

    let o = gpahcs(&["verify", "--m", "1", "--p", "1", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAILED"));
}
