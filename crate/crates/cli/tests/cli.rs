use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use chiralwalk::validate_transport_csv;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chiralwalk"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Rows as (leading reals, from, to, probability).
fn rows(csv: &str) -> Vec<(Vec<f64>, usize, usize, f64)> {
    validate_transport_csv(csv).expect("valid transport csv");
    csv.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            let k = f.len();
            (
                f[..k - 3].iter().map(|x| x.parse().unwrap()).collect(),
                f[k - 3].parse().unwrap(),
                f[k - 2].parse().unwrap(),
                f[k - 1].parse().unwrap(),
            )
        })
        .collect()
}

const TRIANGLE: &str = "nodes 3\nedge 0 1 1.0 0.0\nedge 1 2 1.0 0.0\nedge 2 0 1.0 0.0\n";

#[test]
fn classify_verdicts() {
    let d = TempDir::new().unwrap();
    let tri = write(&d, "tri.txt", TRIANGLE);
    let o = run(&["classify", "--graph", s(&tri)]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("structural_class=non-bipartite\n"));
    assert!(text.contains("structural_pts=No\n"));

    let chain = write(&d, "chain.txt", "nodes 3\nedge 0 1 1 0.7\nedge 1 2 1 -0.2\n");
    let text = stdout(&run(&["classify", "--graph", s(&chain)]));
    assert!(text.contains("structural_class=tree\n"));
    assert!(text.contains("phase_dependent=No\n"));

    let empty = write(&d, "empty.txt", "nodes 4\n");
    let text = stdout(&run(&["classify", "--graph", s(&empty)]));
    assert!(text.contains("structural_class=tree\n"));
    assert!(text.contains("structural_pts=Yes\n"));

    let csv = stdout(&run(&["classify", "--graph", s(&tri), "--format", "csv"]));
    assert!(csv.lines().nth(1).unwrap().starts_with("tri,3,3,non-bipartite,No,"));
}

#[test]
fn parse_and_usage_errors_exit_2() {
    let d = TempDir::new().unwrap();
    let bad = write(&d, "bad.txt", "nodes 3\nedge 0 1 1.0 0.0\nedge 0 7 1.0 0.0\n");
    let o = run(&["classify", "--graph", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(run(&["classify", "--graph", "/nonexistent/graph"]).status.code(), Some(2));
    assert_eq!(run(&["circuit-sweep", "--theta-step", "0"]).status.code(), Some(2));
    assert_eq!(run(&["circuit-sweep", "--alpha", "pie"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["evolve"]).status.code(), Some(2));
}

#[test]
fn evolve_three_cycle_peak() {
    let d = TempDir::new().unwrap();
    let tri = write(&d, "tri.txt", TRIANGLE);
    let out = d.path().join("t.csv");
    let o = run(&["evolve", "--graph", s(&tri), "--t-max", "2pi", "--t-count", "256", "--out", s(&out)]);
    assert!(o.status.success());
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("axis,from,to,probability\n"));
    let r = rows(&csv);
    assert_eq!(r.len(), 256 * 9);
    let peak = r.iter().filter(|x| x.1 == 0 && x.2 == 2).map(|x| x.3).fold(0.0, f64::max);
    assert!((peak - 4.0 / 9.0).abs() <= 1e-6, "{peak}");
}

#[test]
fn evolve_at_zero_is_identity() {
    let d = TempDir::new().unwrap();
    let tri = write(&d, "tri.txt", TRIANGLE);
    let csv = stdout(&run(&["evolve", "--graph", s(&tri), "--t-max", "0"]));
    for (t, from, to, p) in rows(&csv) {
        assert_eq!(t, vec![0.0]);
        assert_eq!(p, if from == to { 1.0 } else { 0.0 });
    }
}

#[test]
fn tree_probabilities_ignore_phases() {
    let d = TempDir::new().unwrap();
    let a = write(&d, "a.txt", "nodes 4\nedge 0 1 1 0.9\nedge 1 2 0.5 -2.0\nedge 1 3 1.2 3.0\nself 2 0.3\n");
    let b = write(&d, "b.txt", "nodes 4\nedge 0 1 1 0\nedge 1 2 0.5 0\nedge 1 3 1.2 0\nself 2 0.3\n");
    let round = |p: &Path| -> Vec<i64> {
        rows(&stdout(&run(&["evolve", "--graph", s(p), "--t-max", "10", "--t-count", "50"])))
            .iter()
            .map(|x| (x.3 * 1e9).round() as i64)
            .collect()
    };
    assert_eq!(round(&a), round(&b));
}

fn sweep_rows(extra: &[&str]) -> Vec<(Vec<f64>, usize, usize, f64)> {
    let mut args = vec!["circuit-sweep"];
    args.extend_from_slice(extra);
    let o = run(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    rows(&stdout(&o))
}

#[test]
fn default_sweep_grid() {
    let r = sweep_rows(&[]);
    assert_eq!(r.len(), 4 * 37 * 9);
    let zero_max = r
        .iter()
        .filter(|x| x.0[0] == 0.0 && x.1 != x.2)
        .map(|x| x.3)
        .fold(0.0, f64::max);
    assert!(zero_max <= 0.6);
    let chiral_max = r
        .iter()
        .filter(|x| x.0[0] == PI / 2.0 && x.1 == 0 && x.2 == 2)
        .map(|x| x.3)
        .fold(0.0, f64::max);
    // Frozen oracle value (243/256) for the grid peak.
    assert!((chiral_max - 0.94921875).abs() <= 1e-9, "{chiral_max}");
}

#[test]
fn sweep_reflection_in_theta() {
    let plus = sweep_rows(&["--alpha", "pi"]);
    let base = sweep_rows(&["--alpha", "0"]);
    // Row blocks of 9 per theta; theta index k pairs with 36 - k.
    for k in 0..37 {
        for e in 0..9 {
            let (a, b) = (&plus[k * 9 + e], &base[(36 - k) * 9 + e]);
            assert!((a.0[1] + b.0[1]).abs() < 1e-12);
            assert!((a.3 - b.3).abs() <= 1e-12);
        }
    }
}

#[test]
fn sweep_options_agree() {
    let base = sweep_rows(&["--alpha", "pi/2"]);
    let degrees = sweep_rows(&["--alpha", "90", "--degrees", "--theta-min", "-180", "--theta-max", "180", "--theta-step", "10"]);
    let fused = sweep_rows(&["--alpha", "pi/2", "--fuse-center"]);
    let d = TempDir::new().unwrap();
    let tpl = write(&d, "ring.circ", "nodes 3\ngate 0 1 0 1\ngate 1 2 0 1\ngate 2 0 0 1\n");
    let templated = sweep_rows(&["--alpha", "pi/2", "--circuit", s(&tpl)]);
    for other in [&degrees, &fused, &templated] {
        assert_eq!(other.len(), base.len());
        for (x, y) in base.iter().zip(other.iter()) {
            assert_eq!((x.1, x.2), (y.1, y.2));
            assert!((x.3 - y.3).abs() <= 1e-12);
        }
    }
}

#[test]
fn outputs_are_deterministic() {
    let a = run(&["circuit-sweep", "--alpha", "0.3,1.9"]);
    let b = run(&["circuit-sweep", "--alpha", "0.3,1.9"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["properties", "--seed", "5", "--trials", "5"]);
    let b = run(&["properties", "--seed", "5", "--trials", "5"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn fig2_outputs() {
    let d = TempDir::new().unwrap();
    let o = run(&["reproduce-fig2", "--out", s(d.path())]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let surface = fs::read_to_string(d.path().join("surface.csv")).unwrap();
    assert_eq!(rows(&surface).len(), 64 * 64);
    for name in ["0", "pi_2", "pi", "3pi_2"] {
        let slice = fs::read_to_string(d.path().join(format!("slice_alpha_{name}.csv"))).unwrap();
        assert_eq!(rows(&slice).len(), 37 * 9);
    }
    let summary = fs::read_to_string(d.path().join("summary.txt")).unwrap();
    let get = |k: &str| -> f64 {
        summary
            .lines()
            .find_map(|l| l.strip_prefix(&format!("{k}=")))
            .unwrap_or_else(|| panic!("missing {k}"))
            .parse()
            .unwrap()
    };
    assert!(get("slice_alpha_0_max_p02") <= 0.6);
    assert!(get("alpha_periodicity_defect") <= 1e-12);
    // Fine-grid oracle maximum of the transfer surface.
    assert!((get("refined_max") - 0.9872628780513295).abs() <= 1e-8);
    assert!(get("surface_max") <= get("refined_max"));
    let peak_alpha = get("refined_max_alpha").rem_euclid(PI);
    assert!((peak_alpha - PI / 2.0).abs() < 1e-3);

    let again = TempDir::new().unwrap();
    run(&["reproduce-fig2", "--out", s(again.path())]);
    for f in ["surface.csv", "summary.txt", "slice_alpha_pi_2.csv"] {
        assert_eq!(fs::read(d.path().join(f)).unwrap(), fs::read(again.path().join(f)).unwrap());
    }
}

#[test]
fn trotter_ladder_ratios() {
    let text = stdout(&run(&["trotter-check"]));
    let ratios: Vec<f64> = text
        .lines()
        .skip(1)
        .filter_map(|l| l.split(',').nth(2)?.parse().ok())
        .filter(|r: &f64| r.is_finite())
        .collect();
    assert_eq!(ratios.len(), 4);
    assert!(ratios.iter().all(|r| (6.0..=10.0).contains(r)));
    let d = TempDir::new().unwrap();
    let g = write(&d, "g.txt", "nodes 3\nedge 0 1 1 0\nedge 1 2 2 0\n");
    assert_eq!(run(&["trotter-check", "--graph", s(&g)]).status.code(), Some(2));
}

#[test]
fn property_suite_exit_codes() {
    let o = run(&["properties", "--seed", "9", "--trials", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# seed=9 trials=10 inject_fault=false\n"));
    let o = run(&["properties", "--seed", "9", "--trials", "10", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let failed: Vec<&str> = text.lines().filter(|l| l.ends_with(",FAIL")).collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0].starts_with("flux_dependence,"));
}
