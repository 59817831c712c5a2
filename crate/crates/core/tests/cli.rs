use std::process::{Command, Output};

use giuga_half::cli::OutputRecord;
use num_bigint::BigUint;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_giuga-half"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_paper_instances() {
    let o = run(&["check", "2021"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("member=true"));

    let o = run(&["check", "25"]);
    assert!(stdout(&o).contains("member=false witness=5"));

    let o = run(&["check", "2^96+1"]);
    let s = stdout(&o);
    assert!(s.contains("member=true") && s.contains("method=fermat_form"), "{s}");

    let o = run(&["check", "3^6"]);
    assert!(stdout(&o).contains("member=false witness=3"));
}

#[test]
fn check_with_oracle() {
    let o = run(&["check", "85", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("oracle_g_mod=0 agree=true\n"));
    let o = run(&["check", "9", "--oracle", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["oracle"]["g_mod"], "6");
    assert_eq!(v["witness"], "3");
    let o = run(&["check", "1000003", "--oracle"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["check", "12"]).status.code(), Some(2));
    assert_eq!(run(&["check", "banana"]).status.code(), Some(2));
    assert_eq!(run(&["range", "9", "3"]).status.code(), Some(2));
    assert_eq!(run(&["range", "0", "3"]).status.code(), Some(2));
    assert_eq!(run(&["density", "exact", "--eps", "0"]).status.code(), Some(2));
    assert_eq!(run(&["density", "series", "--prime-bound", "1"]).status.code(), Some(2));
    assert_eq!(run(&["validate", "--limit", "100001"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    // product of the two largest primes below 2^64, no cheap rule applies
    let hard = "340282366920938460843936948965011886881";
    let o = run(&["check", hard, "--timeout-ms", "0"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn range_outputs() {
    let o = run(&["range", "3", "15"]);
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "n,member,witness,rules");
    let verdicts: Vec<(&str, &str)> = lines[1..]
        .iter()
        .map(|l| {
            let mut parts = l.split(',');
            (parts.next().unwrap(), parts.next().unwrap())
        })
        .collect();
    assert_eq!(
        verdicts,
        vec![("3", "true"), ("5", "true"), ("7", "true"), ("9", "false"), ("11", "true"), ("13", "true"), ("15", "true")]
    );

    let o = run(&["range", "1", "1", "--format", "json"]);
    let rec: OutputRecord = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(rec.member && rec.trivial);

    let o = run(&["range", "20", "22", "--format", "json"]);
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 1);
    let rec: OutputRecord = serde_json::from_str(s.trim()).unwrap();
    assert_eq!((rec.n.as_str(), rec.member, rec.witness.as_deref()), ("21", false, Some("3")));
}

#[test]
fn range_is_ordered_and_reproducible() {
    let a = run(&["range", "1", "3001", "--format", "json", "--jobs", "3"]);
    let b = bin().args(["range", "1", "3001", "--format", "json"]).env("GIUGA_HALF_JOBS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let ns: Vec<u64> = stdout(&a)
        .lines()
        .map(|l| serde_json::from_str::<OutputRecord>(l).unwrap().n.parse().unwrap())
        .collect();
    assert_eq!(ns, (1..=3001).step_by(2).collect::<Vec<_>>());
}

#[test]
fn huge_numbers_round_trip() {
    // 3 * 10^2000 + 7 ≡ 3 (mod 4): decided without factoring
    let n = BigUint::from(3u32) * BigUint::from(10u32).pow(2000) + 7u32;
    let literal = n.to_string();
    let o = run(&["check", &literal, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let rec: OutputRecord = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(rec.n, literal);
    let back = rec.to_record().unwrap();
    assert_eq!(back.n, n);
    assert_eq!(serde_json::to_string(&rec).unwrap(), stdout(&o).trim());
}

#[test]
fn density_commands() {
    let o = run(&["density", "series", "--prime-bound", "7"]);
    assert_eq!(stdout(&o).lines().next(), Some("2/5"));

    let o = run(&["density", "exact", "--eps", "0.00082", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["union_density"], "274510632303283394907222287246970994037/2284268907516688397400621108446881752020");
    assert_eq!(v["decimal_lower"], "0.379005");
    assert_eq!(v["decimal_upper"], "0.379826");

    let o = run(&["density", "empirical", "--limit", "1000000", "--checkpoints", "1000"]);
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "N,member_count,density");
    assert_eq!(lines.len(), 3);
    let density: f64 = lines[2].split(',').nth(2).unwrap().parse().unwrap();
    assert!((0.379..=0.381).contains(&density));
}

#[test]
fn validate_command() {
    for limit in ["10000", "100", "3"] {
        let o = run(&["validate", "--limit", limit]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), "OK\n");
    }
}
