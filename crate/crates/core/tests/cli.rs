use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ndplus::datasets::{read_points, write_points};
use ndplus::golden::{plateau_example_set, sum_example_sets};
use ndplus::{pareto_frontier, PointSet};
use tempfile::TempDir;

fn ndplus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ndplus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, s: &PointSet) -> PathBuf {
    let p = dir.path().join(name);
    write_points(s, &p).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn small_sum_under_every_combination() {
    let dir = TempDir::new().unwrap();
    let (a, b) = sum_example_sets();
    let (pa, pb) = (write(&dir, "a.pts", &a), write(&dir, "b.pts", &b));
    let want = PointSet::from_rows(&[[5., 6., 7.], [7., 3., 4.], [11., 5., 3.]]).unwrap();
    for algo in ["plainndred", "prend"] {
        for tree in ["nd", "qnd", "tnd"] {
            let out = dir.path().join(format!("{algo}-{tree}.pts"));
            let o = ndplus(&[
                "sum", path_str(&pa), path_str(&pb), "--algo", algo, "--tree", tree,
                "--out", path_str(&out), "--verify",
            ]);
            assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
            assert!(read_points(&out).unwrap().set_eq(&want), "{algo} {tree}");
        }
    }
}

#[test]
fn symnd_unions_and_rejections() {
    let dir = TempDir::new().unwrap();
    let s = pareto_frontier(&plateau_example_set());
    let p = write(&dir, "s.pts", &s);
    let out = dir.path().join("u.pts");
    let o = ndplus(&[
        "union", path_str(&p), path_str(&p), "--algo", "symnd", "--tree", "tnd",
        "--out", path_str(&out), "--verify",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(read_points(&out).unwrap().set_eq(&s));

    let o = ndplus(&[
        "sum", path_str(&p), path_str(&p), "--algo", "symnd", "--tree", "nd",
        "--out", path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = ndplus(&["filter", path_str(&p), "--algo", "symnd", "--tree", "nd", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(2));

    // symnd needs Pareto inputs
    let not_pareto = PointSet::from_rows(&[[1., 1.], [2., 2.]]).unwrap();
    let q = write(&dir, "np.pts", &not_pareto);
    let o = ndplus(&["union", path_str(&q), path_str(&q), "--algo", "symnd", "--tree", "nd", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn filter_writes_frontier_and_stats_row() {
    let dir = TempDir::new().unwrap();
    let raw = ndplus::datasets::gen_uniform_raw(4, 300, 9).unwrap();
    let p = write(&dir, "raw.pts", &raw);
    let out = dir.path().join("f.pts");
    let stats = dir.path().join("f.csv");
    let o = ndplus(&[
        "filter", path_str(&p), "--algo", "prend", "--tree", "qnd", "--m", "3",
        "--out", path_str(&out), "--stats", path_str(&stats), "--verify",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let front = read_points(&out).unwrap();
    assert!(front.set_eq(&pareto_frontier(&raw)));
    let text = std::fs::read_to_string(&stats).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("family,d,n_a,n_b,op,algorithm,tree"));
    assert!(lines[1].starts_with(&format!("file,4,300,0,filter,prend,qnd,0,3,{},", front.len())));
}

#[test]
fn stats_on_the_golden_set() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "s.pts", &plateau_example_set());
    let bi = |tree: &str| {
        let o = ndplus(&["stats", path_str(&p), "--tree", tree, "--m", "4"]);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        assert!(text.starts_with(&format!("tree={tree} m=4 points=11\n")));
        text.split_whitespace()
            .find_map(|t| t.strip_prefix("bi="))
            .unwrap()
            .to_string()
    };
    assert_eq!(bi("qnd"), "0");
    assert_eq!(bi("tnd"), "1");

    let single = write(&dir, "one.pts", &PointSet::from_rows(&[[1., 2., 3.]]).unwrap());
    let o = ndplus(&["stats", path_str(&single), "--tree", "nd", "--queries", path_str(&p)]);
    let text = stdout(&o);
    assert!(text.contains("max_height=0 min_height=0 bi=0"), "{text}");
    assert!(text.contains("queries=11 dominated="), "{text}");
}

#[test]
fn generate_is_deterministic_and_validated() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.pts"), dir.path().join("b.pts"));
    for out in [&a, &b] {
        let o = ndplus(&[
            "generate", "--family", "ursp", "--d", "4", "--n", "120", "--seed", "11",
            "--out", path_str(out),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let s = read_points(&a).unwrap();
    assert_eq!(s.len(), 120);
    assert_eq!(pareto_frontier(&s).len(), 120);

    let o = ndplus(&["generate", "--family", "urspc", "--d", "2", "--n", "10", "--seed", "1", "--out", path_str(&a)]);
    assert_eq!(o.status.code(), Some(2));
    let o = ndplus(&["generate", "--family", "nope", "--d", "3", "--n", "10", "--seed", "1", "--out", path_str(&a)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_writes_one_row_per_cell() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("bench.csv");
    let o = ndplus(&[
        "bench", "--families", "urs,uniform", "--dims", "3", "--sizes", "60", "--seeds", "1,2",
        "--ops", "union,sum", "--algos", "plainndred,prend,symnd", "--trees", "nd,qnd,tnd",
        "--out", path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    // 2 families x 2 seeds x (9 union + 6 sum)
    let rows = 2 * 2 * 15;
    assert!(stdout(&o).contains(&format!("wrote {rows} rows")));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), rows + 1);
}

#[test]
fn bad_inputs_fail_cleanly() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.pts");
    let out = dir.path().join("o.pts");
    let o = ndplus(&["filter", path_str(&missing), "--algo", "prend", "--tree", "nd", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(1));

    let bad = dir.path().join("bad.pts");
    std::fs::write(&bad, "# pareto-points v1\nd=3 n=2\n1 2 3\n1 2\n").unwrap();
    let o = ndplus(&["filter", path_str(&bad), "--algo", "prend", "--tree", "nd", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains('4'));

    let o = ndplus(&["filter", path_str(&bad), "--algo", "prend", "--tree", "nd", "--m", "0", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(ndplus(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ndplus(&["--help"]).status.code(), Some(0));
}
