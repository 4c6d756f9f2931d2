//! One PASS/FAIL line per acceptance criterion.
//!
//! Runs without the libtest harness so the lines always reach the output.
//! The process fails only on a failure outside `KNOWN_FAILURES`.

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;
use supertheory::gtheory::{l_d_subgroup, merged_by_pair, BasicPair};
use supertheory::{Family, GroupSpec, Guards, Parabolic, Session};

const BIN: &str = env!("CARGO_BIN_EXE_supertheory");
const TIME_LIMIT: Duration = Duration::from_secs(120);

/// (family, q, blocks)
const CONFIGS: [(&str, u64, &str); 6] = [
    ("B", 3, "1,1,1"),
    ("C", 3, "1,1"),
    ("D", 3, "1,1"),
    ("C", 3, "2"),
    ("B", 3, "1,3"),
    ("C", 5, "1,1"),
];

/// Failures that are expected and reported, as (criterion, config, check).
/// For C2 with one block of size 2 and q = 3 the forms on the antidiagonal
/// hyperbolic plane split by discriminant, so two basic pairs with equal
/// signature lie in different Gb-orbits.
const KNOWN_FAILURES: [(u32, &str, &str); 4] = [
    (1, "C n=2 q=3 blocks=2", "classification on u: same orbit iff same signature"),
    (1, "C n=2 q=3 blocks=2", "classification on u*: same orbit iff same signature"),
    (5, "C n=2 q=3 blocks=2", "classification on u: same orbit iff same signature"),
    (5, "C n=2 q=3 blocks=2", "classification on u*: same orbit iff same signature"),
];

struct Outcome {
    criterion: u32,
    title: &'static str,
    failures: Vec<(String, String)>,
    notes: Vec<String>,
}

impl Outcome {
    fn new(criterion: u32, title: &'static str) -> Self {
        Outcome { criterion, title, failures: Vec::new(), notes: Vec::new() }
    }

    fn fail(&mut self, config: &str, what: impl Into<String>) {
        self.failures.push((config.to_string(), what.into()));
    }

    fn unexpected(&self) -> Vec<&(String, String)> {
        self.failures
            .iter()
            .filter(|(c, w)| !KNOWN_FAILURES.iter().any(|k| k.0 == self.criterion && k.1 == c && k.2 == w))
            .collect()
    }

    fn print(&self) {
        let status = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} criterion {}: {}", self.criterion, self.title);
        for n in &self.notes {
            println!("    {n}");
        }
        for (c, w) in &self.failures {
            println!("    [{c}] {w}");
        }
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn config_args(fam: &str, q: u64, blocks: &str) -> Vec<String> {
    vec![
        "--family".into(),
        fam.into(),
        "--n".into(),
        "2".into(),
        "--q".into(),
        q.to_string(),
        "--blocks".into(),
        blocks.into(),
    ]
}

fn with<'a>(head: &[&'a str], cfg: &'a [String], tail: &[&'a str]) -> Vec<&'a str> {
    head.iter().copied().chain(cfg.iter().map(String::as_str)).chain(tail.iter().copied()).collect()
}

fn label(fam: &str, q: u64, blocks: &str) -> String {
    format!("{fam} n=2 q={q} blocks={blocks}")
}

fn failing_checks(report: &Value) -> Vec<String> {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect()
}

fn checks_matching<'a>(report: &'a Value, pred: impl Fn(&str) -> bool + 'a) -> impl Iterator<Item = &'a Value> + 'a {
    report["checks"].as_array().unwrap().iter().filter(move |c| pred(c["name"].as_str().unwrap()))
}

fn is_axiom(name: &str) -> bool {
    (name.starts_with("Ub-theory of") || name.starts_with("Gb-theory of G:"))
        && ["partition", "identity", "as many", "constant", "orthogonal", "norms"]
            .iter()
            .any(|w| name.contains(w))
}

fn main() {
    let mut outcomes = Vec::new();

    // Full verification of every configuration, shared by criteria 1-6.
    let mut c1 = Outcome::new(1, "verify --suite all exits 0 within the time limit");
    let mut c2 = Outcome::new(2, "axioms of both theories hold exactly");
    let mut c3 = Outcome::new(3, "closed-form characters equal direct induction");
    let mut c4 = Outcome::new(4, "form lemmas hold for every orbit representative");
    let mut c5 = Outcome::new(5, "Gb-orbits on u and u* match basic-pair signatures");
    let mut c6 = Outcome::new(6, "Gb-theory is coarser than the Ub-theory");
    for (fam, q, blocks) in CONFIGS {
        let cfg = config_args(fam, q, blocks);
        let name = label(fam, q, blocks);
        let start = Instant::now();
        let out = run(&with(&["verify", "--suite", "all"], &cfg, &[]));
        let elapsed = start.elapsed();
        c1.notes.push(format!("{name}: exit {} in {} ms", out.status.code().unwrap_or(-1), elapsed.as_millis()));
        if elapsed > TIME_LIMIT {
            c1.fail(&name, format!("took {} s", elapsed.as_secs()));
        }
        let report: Value = match serde_json::from_slice(&out.stdout) {
            Ok(v) => v,
            Err(e) => {
                for c in [&mut c1, &mut c2, &mut c3, &mut c4, &mut c5, &mut c6] {
                    c.fail(&name, format!("no report: {e}"));
                }
                continue;
            }
        };
        if out.status.code() != Some(0) {
            for f in failing_checks(&report) {
                c1.fail(&name, f);
            }
            if failing_checks(&report).is_empty() {
                c1.fail(&name, format!("exit {:?}", out.status.code()));
            }
        }
        let grade = |o: &mut Outcome, pred: &dyn Fn(&str) -> bool, expected: usize| {
            let hits: Vec<&Value> = checks_matching(&report, pred).collect();
            if hits.len() < expected {
                o.fail(&name, format!("only {} of {expected} checks ran", hits.len()));
            }
            for c in hits {
                if c["status"] != "pass" {
                    o.fail(&name, c["name"].as_str().unwrap());
                }
            }
        };
        // six axiom checks for each of the three theories
        grade(&mut c2, &is_axiom, 18);
        grade(&mut c3, &|n: &str| n.contains("induced"), 3);
        grade(&mut c5, &|n: &str| n.starts_with("classification") || n.starts_with("basic pairs"), 8);
        grade(&mut c6, &|n: &str| n.contains("unions of Ub-classes") || n.contains("span of Ub"), 2);

        let lemmas = run(&with(&["verify", "--suite", "lemmas"], &cfg, &[]));
        match serde_json::from_slice::<Value>(&lemmas.stdout) {
            Ok(r) => {
                let all: Vec<&Value> = checks_matching(&r, |_| true).collect();
                if all.is_empty() || lemmas.status.code() != Some(0) {
                    c4.fail(&name, format!("exit {:?}", lemmas.status.code()));
                }
                for c in all.into_iter().filter(|c| c["status"] != "pass") {
                    c4.fail(&name, c["name"].as_str().unwrap());
                }
            }
            Err(e) => c4.fail(&name, format!("no report: {e}")),
        }
    }
    outcomes.extend([c1, c2, c3, c4, c5, c6]);
    outcomes.push(pinned_values());
    outcomes.push(determinism());
    outcomes.push(negative_controls());

    let mut unexpected = 0;
    for o in &outcomes {
        o.print();
        unexpected += o.unexpected().len();
    }
    let passed = outcomes.iter().filter(|o| o.failures.is_empty()).count();
    println!("{passed}/{} criteria pass; {unexpected} unexpected failures", outcomes.len());
    if unexpected > 0 {
        std::process::exit(1);
    }
}

fn root_index(par: &Parabolic, i: i32, j: i32) -> usize {
    par.u_roots().iter().position(|r| r.i == i && r.j == j).expect("root of u")
}

fn pinned_values() -> Outcome {
    let mut o = Outcome::new(7, "merged decompositions and L_D for the Borel subgroup of B2");
    for q in [3u64, 5] {
        let name = format!("B n=2 q={q} Borel");
        let spec = GroupSpec::borel(Family::B, 2, q).unwrap();
        let s = Session::new(spec, Guards::default(), None).unwrap();
        let par = &s.parabolic;
        let inv = |a: u32| (1..q as u32).find(|b| (a as u64 * *b as u64) % q == 1).unwrap();

        let d = BasicPair { roots: vec![root_index(par, 2, 1)], phi: vec![1] };
        let dec = merged_by_pair(par, &d);
        let sets = dec.index_sets(s.spec());
        if sets != vec![vec![2, 1], vec![0], vec![-1, -2]] {
            o.fail(&name, format!("D={{(2,1)}}: runs {sets:?}"));
        }
        let l_d = l_d_subgroup(par, &dec);
        if l_d.len() as u64 != 2 * (q - 1) {
            o.fail(&name, format!("D={{(2,1)}}: |L_D| = {}", l_d.len()));
        }
        for &h in &l_d {
            let m = &par.levi()[h as usize];
            let diag: Vec<u32> = (0..5).map(|a| m.get(a, a)).collect();
            let off = (0..5).any(|a| (0..5).any(|b| a != b && m.get(a, b) != 0));
            let a = diag[0];
            let ok = !off
                && diag[1] == a
                && (diag[2] == 1 || diag[2] as u64 == q - 1)
                && diag[3] == inv(a)
                && diag[4] == inv(a);
            if !ok {
                o.fail(&name, format!("D={{(2,1)}}: element {:?}", m.rows()));
            }
        }

        let d = BasicPair { roots: vec![root_index(par, 2, -1)], phi: vec![1] };
        let dec = merged_by_pair(par, &d);
        let sets = dec.index_sets(s.spec());
        if sets != vec![vec![2, 1, 0, -1, -2]] {
            o.fail(&name, format!("D={{(2,-1)}}: runs {sets:?}"));
        }
        let l_d = l_d_subgroup(par, &dec);
        if l_d.len() != 2 {
            o.fail(&name, format!("D={{(2,-1)}}: |L_D| = {}", l_d.len()));
        }
        for &h in &l_d {
            let m = &par.levi()[h as usize];
            let c = m.get(0, 0);
            let scalar = (0..5).all(|a| (0..5).all(|b| m.get(a, b) == if a == b { c } else { 0 }));
            if !scalar || !(c == 1 || c as u64 == q - 1) {
                o.fail(&name, format!("D={{(2,-1)}}: element {:?}", m.rows()));
            }
        }
        o.notes.push(format!("{name}: checked"));
    }
    o
}

fn determinism() -> Outcome {
    let mut o = Outcome::new(8, "repeated runs give byte-identical output");
    let dir = tempfile::tempdir().unwrap();
    for (fam, q, blocks) in [("B", 3, "1,1,1"), ("C", 3, "2")] {
        let cfg = config_args(fam, q, blocks);
        let name = label(fam, q, blocks);
        let commands: Vec<Vec<&str>> = vec![
            with(&["spec"], &cfg, &[]),
            with(&["orbits"], &cfg, &["--space", "ustar", "--group", "Gb"]),
            with(&["orbits"], &cfg, &["--space", "u", "--group", "Hb"]),
            with(&["utheory"], &cfg, &["--target", "u"]),
            with(&["utheory"], &cfg, &[]),
            with(&["gtheory"], &cfg, &[]),
            with(&["table"], &cfg, &["--format", "csv"]),
            with(&["table"], &cfg, &["--theory", "ub-u"]),
            with(&["verify"], &cfg, &[]),
        ];
        for args in commands {
            let a = run(&args);
            let b = run(&args);
            if a.stdout != b.stdout || a.stderr != b.stderr || a.status.code() != b.status.code() {
                o.fail(&name, format!("{} differs between runs", args.join(" ")));
            }
            if a.stdout.is_empty() {
                o.fail(&name, format!("{} wrote nothing", args.join(" ")));
            }
        }
        // --out writes the same bytes as stdout
        let path = dir.path().join("t.json");
        let p = path.to_str().unwrap();
        let to_file = run(&with(&["gtheory"], &cfg, &["--out", p]));
        let to_stdout = run(&with(&["gtheory"], &cfg, &[]));
        if to_file.status.code() == Some(0) && std::fs::read(&path).unwrap() != to_stdout.stdout {
            o.fail(&name, "--out differs from stdout");
        }
    }
    o
}

fn negative_controls() -> Outcome {
    let mut o = Outcome::new(9, "corrupted theories make verify exit 1 with a counterexample");
    for (fam, q, blocks) in [("B", 3, "1,1,1"), ("D", 3, "1,1"), ("C", 3, "1,1")] {
        let cfg = config_args(fam, q, blocks);
        let name = label(fam, q, blocks);
        for (suite, fault) in [("utheory", "character"), ("utheory", "class"), ("gtheory", "character"), ("gtheory", "class")] {
            let args = with(&["verify", "--suite", suite, "--inject-fault", fault], &cfg, &[]);
            let a = run(&args);
            let b = run(&args);
            let what = format!("{suite} with a {fault} fault");
            if a.status.code() != Some(1) {
                o.fail(&name, format!("{what}: exit {:?}", a.status.code()));
                continue;
            }
            if a.stdout != b.stdout {
                o.fail(&name, format!("{what}: report not reproducible"));
            }
            let report: Value = serde_json::from_slice(&a.stdout).unwrap();
            let with_example = checks_matching(&report, |_| true)
                .filter(|c| c["status"] == "fail" && !c["counterexample"].is_null())
                .count();
            if with_example == 0 {
                o.fail(&name, format!("{what}: no counterexample"));
            }
        }
        let clean = run(&with(&["verify", "--suite", "gtheory"], &cfg, &[]));
        if clean.status.code() != Some(0) {
            o.fail(&name, "uncorrupted gtheory suite fails");
        }
    }
    o
}
