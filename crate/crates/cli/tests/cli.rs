use std::path::Path;
use std::process::{Command, Output};

fn bimgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bimgame")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Two triangles joined by the edge c-d, with a pendant node g.
fn fixture(dir: &Path) -> String {
    let path = dir.join("g.txt");
    std::fs::write(&path, "# two triangles\na b\nb c\na c\nc d\nd e\ne f\nd f\nf g\n").unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn experiment_writes_rows_and_reruns_identically() {
    let dir = tempfile::tempdir().unwrap();
    fixture(dir.path());
    std::fs::write(
        dir.path().join("run.toml"),
        "graph = \"g.txt\"\nprobability = \"uniform:0.2\"\nbudgets = [100, 200]\ntau_cap = 40\nseed = 3\n",
    )
    .unwrap();
    let config = dir.path().join("run.toml");
    let mut outputs = Vec::new();
    for i in 0..2 {
        let csv = dir.path().join(format!("out{i}.csv"));
        let o = bimgame(&["experiment", "--config", config.to_str().unwrap(), "--output-csv", csv.to_str().unwrap()]);
        stdout(&o);
        outputs.push(std::fs::read_to_string(csv).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    // header plus 5 methods x 2 budgets
    assert_eq!(outputs[0].lines().count(), 11);
    assert!(outputs[0].starts_with("dataset,method,budget,spread,seeds,cost,select_ms,shapley_ms\n"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = fixture(dir.path());
    assert_eq!(bimgame(&["--help"]).status.code(), Some(0));
    assert_eq!(bimgame(&["select", "--graph", &g]).status.code(), Some(1));
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, format!("graph = \"{g}\"\nbudgets = [200, 100]\noutput_csv = \"x.csv\"\n")).unwrap();
    assert_eq!(bimgame(&["experiment", "--config", bad.to_str().unwrap()]).status.code(), Some(1));
    let missing = dir.path().join("absent.txt");
    assert_eq!(
        bimgame(&["communities", "--graph", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn shapley_then_select_with_precomputed_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let g = fixture(dir.path());
    let phi = dir.path().join("phi.csv");
    let part = dir.path().join("part.csv");
    let args = ["--graph", &g, "--probability", "uniform:0.3", "--cost-min", "10", "--cost-max", "10"];

    let mut shapley = vec!["shapley", "--tau-cap", "50", "--out", phi.to_str().unwrap()];
    shapley.extend(args);
    stdout(&bimgame(&shapley));
    let values: Vec<f64> = std::fs::read_to_string(&phi)
        .unwrap()
        .lines()
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 7);
    assert!((values.iter().sum::<f64>() - 7.0).abs() < 1e-9);

    stdout(&bimgame(&["communities", "--graph", &g, "--out", part.to_str().unwrap()]));
    let labels = std::fs::read_to_string(&part).unwrap();
    assert_eq!(labels.lines().count(), 7);

    let mut select = vec!["select", "--method", "bimgtc", "--budget", "30"];
    select.extend(["--phi", phi.to_str().unwrap(), "--partition", part.to_str().unwrap()]);
    select.extend(args);
    let record: String = stdout(&bimgame(&select));
    assert!(record.contains("\"method\": \"BIMGTC\""), "{record}");
    let cost: u64 = record
        .split("\"total_cost\": ")
        .nth(1)
        .and_then(|rest| rest.split(|c: char| !c.is_ascii_digit()).next())
        .unwrap()
        .parse()
        .unwrap();
    assert!(cost > 0 && cost <= 30 && cost.is_multiple_of(10), "{record}");
}

#[test]
fn evaluate_and_miia() {
    let dir = tempfile::tempdir().unwrap();
    let g = fixture(dir.path());
    let seeds = dir.path().join("seeds.txt");
    std::fs::write(&seeds, "c\n").unwrap();
    let sigma: f64 = stdout(&bimgame(&[
        "evaluate",
        "--graph",
        &g,
        "--probability",
        "uniform:1",
        "--seeds",
        seeds.to_str().unwrap(),
    ]))
    .trim()
    .parse()
    .unwrap();
    // P = 1 makes every node reachable from c
    assert_eq!(sigma, 7.0);

    let tree = stdout(&bimgame(&["miia", "--graph", &g, "--probability", "uniform:0.5", "--root", "a"]));
    assert!(tree.contains('a') && tree.contains('b'));
    assert_eq!(bimgame(&["miia", "--graph", &g, "--root", "zz"]).status.code(), Some(1));
}
