//! End-to-end tests of the `cuspcount` binary: output values, exit-status
//! contract, CSV round-trips, ordering determinism under --jobs, and cache
//! soundness (byte-identical output with and without the cache file).

use std::path::PathBuf;
use std::process::{Command, Output};

use cuspcount::arith;
use cuspcount::estimator;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cuspcount"));
    // never let an ambient cache influence the tests
    c.env_remove("CUSPCOUNT_CACHE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn cuspcount")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cuspcount-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn dim_values_and_exit_codes() {
    let out = run(&["dim", "--k", "12", "--level", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1\n");

    let out = run(&["dim", "--k", "2", "--level", "25", "--new"]);
    assert_eq!(stdout(&out), "12\n");

    let out = run(&["dim", "--k", "1", "--level", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("error:"), "stderr: {err}");
    assert!(err.contains("out of scope"), "stderr: {err}");
}

#[test]
fn simple_commands() {
    assert_eq!(stdout(&run(&["classnum", "23"])), "3\n");
    assert_eq!(stdout(&run(&["dihedral", "13", "5"])), "0\n");
    assert_eq!(stdout(&run(&["dihedral", "7", "3"])), "42\n");
    assert_eq!(stdout(&run(&["conductor", "2", "2"])), "2 4\n");

    let out = run(&["classnum", "13"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["conductor", "1", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn weights_output() {
    let text = stdout(&run(&["weights", "5", "2"]));
    assert!(text.contains("ell=(5,3,-3,-5)"), "{text}");
    assert!(text.contains("w=0"), "{text}");
    assert!(text.contains("twist=0"), "{text}");
    assert!(text.contains("mu=(1,1,-1,-1)"), "{text}");

    let text = stdout(&run(&["weights", "4", "2"]));
    assert!(text.contains("ell=(4,2,-2,-4)"), "{text}");
    assert!(text.contains("twist=1/2"), "{text}");
    assert!(text.contains("mu=(1,1,0,0)"), "{text}");

    let text = stdout(&run(&["weights", "--sym3", "3"]));
    assert!(text.contains("ell=(6,2,-2,-6)"), "{text}");
    assert!(text.contains("w=1"), "{text}");

    let out = run(&["weights", "3", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn overlap_output() {
    let text = stdout(&run(&["overlap", "5", "2", "2"]));
    assert!(text.contains("inconclusive"), "{text}");
    assert!(text.contains("k2=k3=2"), "{text}");
    assert!(text.contains("verdict: no-overlap"), "{text}");

    let text = stdout(&run(&["overlap", "6", "4", "2"]));
    assert!(text.contains("no-overlap (both-even)"), "{text}");

    let text = stdout(&run(&["overlap", "4", "3", "2"]));
    assert!(text.contains("mixed-parity-k1-even"), "{text}");

    let out = run(&["overlap", "5", "2", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn estimate_csv_round_trip() {
    let out = run(&["estimate", "3", "2", "28", "--primes", "5..40", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "p,n1,n2,A,B,pairCount,dihedralBound,lowerBound,ratio,ratioExact,caveats"
    );

    let primes = arith::primes_in_range(5, 40);
    let reports = estimator::scan(3, 2, 28, &primes);
    let mut n_rows = 0usize;
    for (line, (p, report)) in lines.zip(&reports) {
        let report = report.as_ref().unwrap();
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 11, "row: {line}");
        assert_eq!(cells[0].parse::<u64>().unwrap(), *p);
        assert_eq!(cells[1], "4");
        assert_eq!(cells[2], "3");
        // integer columns parse back to the exact values
        assert_eq!(cells[3], report.dim_sum1.to_string());
        assert_eq!(cells[4], report.dim_sum2.to_string());
        assert_eq!(cells[5], report.pair_count.to_string());
        assert_eq!(cells[6], report.dihedral_bound.to_string());
        assert_eq!(cells[7], report.lower_bound.to_string());
        // pairCount = A * B as big integers
        let a: u128 = cells[3].parse().unwrap();
        let b: u128 = cells[4].parse().unwrap();
        assert_eq!(a.checked_mul(b).unwrap().to_string(), cells[5]);
        // the exact num/den column carries the reduced ratio
        assert_eq!(
            cells[9],
            format!(
                "{}/{}",
                report.normalized_ratio.numer(),
                report.normalized_ratio.denom()
            )
        );
        assert!(cells[10].contains("non-supercuspidal-levels-included"));
        n_rows += 1;
    }
    assert_eq!(n_rows, primes.len());
}

#[test]
fn estimate_json_shape() {
    let out = run(&["estimate", "3", "2", "28", "--primes", "5..12", "--format", "json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.trim_start().starts_with('['), "{text}");
    assert!(text.trim_end().ends_with(']'), "{text}");
    assert!(text.contains("\"ratio\": {\"num\": "), "{text}");
    assert!(text.contains("\"p\": 5"), "{text}");
    assert!(text.contains("\"p\": 7"), "{text}");
    assert!(text.contains("\"p\": 11"), "{text}");
}

#[test]
fn estimate_deterministic_under_jobs() {
    let baseline = run(&["estimate", "3", "2", "28", "--primes", "3..80", "--jobs", "1"]);
    assert!(baseline.status.success());
    for jobs in ["2", "4", "9"] {
        let out = run(&["estimate", "3", "2", "28", "--primes", "3..80", "--jobs", jobs]);
        assert!(out.status.success());
        assert_eq!(
            stdout(&baseline),
            stdout(&out),
            "output differs at --jobs {jobs}"
        );
    }
}

#[test]
fn estimate_precondition_violations() {
    let out = run(&["estimate", "3", "2", "24", "--primes", "5..40"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["estimate", "2", "3", "28", "--primes", "5..40"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["estimate", "3", "2", "28", "--primes", "banana"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["estimate", "3", "2", "28", "--primes", "5..40", "--jobs", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cache_changes_no_output_bytes() {
    let dir = tmp_dir("cache");
    let cache = dir.join("memo.cache");
    let _ = std::fs::remove_file(&cache);

    let args = ["estimate", "3", "2", "28", "--primes", "5..60", "--format", "csv"];
    let without = run(&args);
    assert!(without.status.success());

    // first cached run creates the file, second one loads it
    let create = bin()
        .args(args)
        .env("CUSPCOUNT_CACHE", &cache)
        .output()
        .unwrap();
    assert!(create.status.success());
    assert!(cache.exists(), "cache file was not created");
    let warm = bin()
        .args(args)
        .env("CUSPCOUNT_CACHE", &cache)
        .output()
        .unwrap();
    assert!(warm.status.success());

    assert_eq!(stdout(&without), stdout(&create));
    assert_eq!(stdout(&without), stdout(&warm));

    let text = std::fs::read_to_string(&cache).unwrap();
    assert!(text.starts_with("cuspcount-cache v1\n"), "{text}");
    assert!(text.contains("NEWDIM "), "{text}");

    // same game for a dim command
    let dim_args = ["dim", "--k", "6", "--level", "100"];
    let plain = run(&dim_args);
    let cached = bin()
        .args(dim_args)
        .env("CUSPCOUNT_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(stdout(&plain), stdout(&cached));

    // a corrupt line is skipped with a warning, output still identical
    std::fs::write(
        &cache,
        "cuspcount-cache v1\nDIM 6 100 whoops\nCLASSNUM -23 3\n",
    )
    .unwrap();
    let after_corruption = bin()
        .args(dim_args)
        .env("CUSPCOUNT_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(stdout(&plain), stdout(&after_corruption));
    let err = String::from_utf8(after_corruption.stderr).unwrap();
    assert!(err.contains("skipping corrupt cache line"), "stderr: {err}");

    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn estimate_header_matches_row_schema() {
    // an empty prime range still emits the (stable) header
    let out = run(&["estimate", "3", "2", "28", "--primes", "24..28", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "p,n1,n2,A,B,pairCount,dihedralBound,lowerBound,ratio,ratioExact,caveats\n"
    );
    // and it is the same header a populated scan produces
    let populated = run(&["estimate", "3", "2", "28", "--primes", "5..8", "--format", "csv"]);
    assert_eq!(
        stdout(&populated).lines().next().unwrap(),
        stdout(&out).trim_end()
    );
}

#[test]
fn skips_two_in_prime_ranges() {
    let out = run(&["estimate", "3", "2", "28", "--primes", "2..8", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 3); // 3, 5, 7
    assert!(rows[0].starts_with("3,"));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("skipping p = 2"), "stderr: {err}");
}
