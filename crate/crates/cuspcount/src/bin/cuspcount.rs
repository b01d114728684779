//! Command-line front end.
//!
//! Subcommands wrap the library operations one-to-one:
//!
//! ```text
//! cuspcount dim --k 12 --level 1 [--new]
//! cuspcount classnum 23
//! cuspcount dihedral 13 5
//! cuspcount conductor 2 2
//! cuspcount weights 5 2 | cuspcount weights --sym3 3
//! cuspcount overlap 5 2 2
//! cuspcount estimate 3 2 28 --primes 5..97 [--format csv|json] [--jobs 4]
//! ```
//!
//! Exit status: 0 success, 2 precondition violation (one-line reason on
//! stderr), 3 internal invariant failure. Data goes to stdout, diagnostics
//! to stderr. Setting `CUSPCOUNT_CACHE=<path>` enables the persistent memo
//! cache.

use std::collections::HashMap;
use std::fmt::Write as _;

use cuspcount::cache;
use cuspcount::cohomology::{self, ArchClass, OverlapVerdict};
use cuspcount::conductor;
use cuspcount::dims;
use cuspcount::estimator::{self, EstimateReport};
use cuspcount::output::{csv_header, csv_record, json_rows, OutputRow, Value};
use cuspcount::quadratic;
use cuspcount::arith;

const USAGE: &str = "usage: cuspcount <command> [args]

commands:
  dim --k K --level N [--new]       dimension of S_k(Gamma1(N)) (or its new subspace)
  classnum P                        class number of Q(sqrt(-P)), P an odd prime = 3 mod 4
  dihedral P N                      upper bound for dihedral eigenforms of level P^N
  conductor C1 C2                   Rankin-Selberg conductor window for supercuspidal conductors
  weights K1 K2                     archimedean parameter of the tensor-product lift
  weights --sym3 K3                 archimedean parameter of the symmetric-cube lift
  overlap K1 K2 K3                  tensor vs symmetric-cube overlap analysis + certificate
  estimate K1 K2 N --primes LO..HI  lower-bound scan over odd primes [--format csv|json] [--jobs J]

common flags: --format plain|csv|json (default plain; estimate defaults to csv)
environment:  CUSPCOUNT_CACHE=<path> enables the persistent memo cache";

fn main() {
    // behave like a normal unix filter when the consumer closes the pipe
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let args: Vec<String> = std::env::args().skip(1).collect();
    std::panic::set_hook(Box::new(|info| {
        eprintln!("internal invariant failure: {info}");
    }));
    let outcome = std::panic::catch_unwind(|| run(&args));
    let code = match outcome {
        Ok(Ok(())) => 0,
        Ok(Err(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(_) => 3,
    };
    std::process::exit(code);
}

fn run(args: &[String]) -> Result<(), String> {
    if args.is_empty() || args[0] == "--help" || args[0] == "help" {
        println!("{USAGE}");
        return if args.is_empty() {
            Err("missing command".into())
        } else {
            Ok(())
        };
    }
    let cache_path = cache::env_cache_path();
    if let Some(path) = &cache_path {
        match cache::load_into_memos(path) {
            Ok(outcome) => {
                for w in outcome.warnings {
                    eprintln!("cache: {w}");
                }
            }
            Err(e) => eprintln!("cache: failed to load {}: {e}", path.display()),
        }
    }
    let result = dispatch(&args[0], &args[1..]);
    if let Some(path) = &cache_path {
        if let Err(e) = cache::append_new_records(path) {
            eprintln!("cache: failed to update {}: {e}", path.display());
        }
    }
    result
}

fn dispatch(cmd: &str, rest: &[String]) -> Result<(), String> {
    match cmd {
        "dim" => cmd_dim(rest),
        "classnum" => cmd_classnum(rest),
        "dihedral" => cmd_dihedral(rest),
        "conductor" => cmd_conductor(rest),
        "weights" => cmd_weights(rest),
        "overlap" => cmd_overlap(rest),
        "estimate" => cmd_estimate(rest),
        other => Err(format!("unknown command {other:?}; run `cuspcount help`")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Plain,
    Csv,
    Json,
}

struct Parsed {
    values: HashMap<&'static str, String>,
    switches: Vec<&'static str>,
    positionals: Vec<String>,
}

impl Parsed {
    fn format(&self, default: Format) -> Result<Format, String> {
        match self.values.get("format").map(String::as_str) {
            None => Ok(default),
            Some("plain") => Ok(Format::Plain),
            Some("csv") => Ok(Format::Csv),
            Some("json") => Ok(Format::Json),
            Some(other) => Err(format!("unknown format {other:?} (want plain, csv or json)")),
        }
    }

    fn has(&self, switch: &str) -> bool {
        self.switches.contains(&switch)
    }

    fn value(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(String::as_str)
    }
}

fn parse_flags(
    args: &[String],
    valued: &[&'static str],
    switches: &[&'static str],
) -> Result<Parsed, String> {
    let mut parsed = Parsed {
        values: HashMap::new(),
        switches: Vec::new(),
        positionals: Vec::new(),
    };
    let mut it = args.iter().peekable();
    while let Some(tok) = it.next() {
        if let Some(flag) = tok.strip_prefix("--") {
            let (name, inline) = match flag.split_once('=') {
                Some((n, v)) => (n, Some(v.to_string())),
                None => (flag, None),
            };
            if let Some(&known) = valued.iter().find(|&&v| v == name) {
                let value = match inline {
                    Some(v) => v,
                    None => it
                        .next()
                        .cloned()
                        .ok_or_else(|| format!("flag --{name} needs a value"))?,
                };
                parsed.values.insert(known, value);
            } else if let Some(&known) = switches.iter().find(|&&s| s == name) {
                if inline.is_some() {
                    return Err(format!("flag --{name} takes no value"));
                }
                parsed.switches.push(known);
            } else {
                return Err(format!("unknown flag --{name}"));
            }
        } else {
            parsed.positionals.push(tok.clone());
        }
    }
    Ok(parsed)
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, String> {
    s.parse::<T>()
        .map_err(|_| format!("cannot parse {what} from {s:?}"))
}

fn emit(rows: &[OutputRow], plain: &str, format: Format) {
    match format {
        Format::Plain => println!("{plain}"),
        Format::Csv => {
            if let Some(first) = rows.first() {
                println!("{}", csv_header(first));
                for row in rows {
                    println!("{}", csv_record(row));
                }
            }
        }
        Format::Json => println!("{}", json_rows(rows)),
    }
}

fn cmd_dim(args: &[String]) -> Result<(), String> {
    let p = parse_flags(args, &["k", "level", "format"], &["new"])?;
    let k: u32 = parse_num(p.value("k").ok_or("dim requires --k")?, "--k")?;
    let level: u64 = parse_num(p.value("level").ok_or("dim requires --level")?, "--level")?;
    let new = p.has("new");
    let dim = if new {
        dims::dim_new(k, level)
    } else {
        dims::dim_cusp(k, level)
    }
    .map_err(|e| e.to_string())?;
    let row = OutputRow::new()
        .push("k", Value::UInt(k as u128))
        .push("level", Value::UInt(level as u128))
        .push("new", Value::Bool(new))
        .push("dim", Value::UInt(dim));
    emit(&[row], &dim.to_string(), p.format(Format::Plain)?);
    Ok(())
}

fn cmd_classnum(args: &[String]) -> Result<(), String> {
    let p = parse_flags(args, &["format"], &[])?;
    let [prime] = positionals::<1>(&p, "classnum P")?;
    let prime: u64 = parse_num(&prime, "P")?;
    let field = quadratic::ImagQuadField::new(prime).map_err(|e| e.to_string())?;
    let row = OutputRow::new()
        .push("p", Value::UInt(prime as u128))
        .push("discriminant", Value::Int(field.discriminant))
        .push("classNumber", Value::UInt(field.class_number as u128));
    emit(
        &[row],
        &field.class_number.to_string(),
        p.format(Format::Plain)?,
    );
    Ok(())
}

fn cmd_dihedral(args: &[String]) -> Result<(), String> {
    let p = parse_flags(args, &["format"], &[])?;
    let [prime, n] = positionals::<2>(&p, "dihedral P N")?;
    let prime: u64 = parse_num(&prime, "P")?;
    let n: u32 = parse_num(&n, "N")?;
    let bound = quadratic::dihedral_count_bound(prime, n).map_err(|e| e.to_string())?;
    let row = OutputRow::new()
        .push("p", Value::UInt(prime as u128))
        .push("n", Value::UInt(n as u128))
        .push("m", Value::UInt((n / 2) as u128))
        .push("bound", Value::UInt(bound));
    emit(&[row], &bound.to_string(), p.format(Format::Plain)?);
    Ok(())
}

fn cmd_conductor(args: &[String]) -> Result<(), String> {
    let p = parse_flags(args, &["format"], &[])?;
    let [c1, c2] = positionals::<2>(&p, "conductor C1 C2")?;
    let c1: u32 = parse_num(&c1, "C1")?;
    let c2: u32 = parse_num(&c2, "C2")?;
    let range = conductor::rs_conductor_range(c1, c2).map_err(|e| e.to_string())?;
    let row = OutputRow::new()
        .push("c1", Value::UInt(c1 as u128))
        .push("c2", Value::UInt(c2 as u128))
        .push("lo", Value::UInt(range.lo as u128))
        .push("hi", Value::UInt(range.hi as u128));
    emit(
        &[row],
        &format!("{} {}", range.lo, range.hi),
        p.format(Format::Plain)?,
    );
    Ok(())
}

fn tuple4(values: [i64; 4]) -> String {
    format!("{};{};{};{}", values[0], values[1], values[2], values[3])
}

fn arch_rows(kind: &'static str, k1: Option<u32>, k2: Option<u32>, k3: Option<u32>, a: &ArchClass) -> OutputRow {
    let mut row = OutputRow::new().push("kind", Value::Text(kind.into()));
    if let Some(k1) = k1 {
        row = row.push("k1", Value::UInt(k1 as u128));
    }
    if let Some(k2) = k2 {
        row = row.push("k2", Value::UInt(k2 as u128));
    }
    if let Some(k3) = k3 {
        row = row.push("k3", Value::UInt(k3 as u128));
    }
    row.push("w", Value::Int(a.parameter.w))
        .push("ell", Value::Text(tuple4(a.parameter.ell)))
        .push("twist", Value::Text(a.twist.to_string()))
        .push("mu", Value::Text(tuple4(a.weight.mu)))
}

fn arch_plain(a: &ArchClass) -> String {
    let mut s = String::new();
    let e = a.parameter.ell;
    let m = a.weight.mu;
    let _ = writeln!(s, "ell=({},{},{},{})", e[0], e[1], e[2], e[3]);
    let _ = writeln!(s, "w={}", a.parameter.w);
    let _ = writeln!(s, "twist={}", a.twist);
    let _ = write!(s, "mu=({},{},{},{})", m[0], m[1], m[2], m[3]);
    s
}

fn cmd_weights(args: &[String]) -> Result<(), String> {
    let p = parse_flags(args, &["sym3", "format"], &[])?;
    let format = p.format(Format::Plain)?;
    if let Some(k3) = p.value("sym3") {
        if !p.positionals.is_empty() {
            return Err("weights takes either K1 K2 or --sym3 K3, not both".into());
        }
        let k3: u32 = parse_num(k3, "--sym3")?;
        let a = cohomology::sym3_infinity(k3).map_err(|e| e.to_string())?;
        emit(
            &[arch_rows("sym3", None, None, Some(k3), &a)],
            &arch_plain(&a),
            format,
        );
    } else {
        let [k1, k2] = positionals::<2>(&p, "weights K1 K2")?;
        let k1: u32 = parse_num(&k1, "K1")?;
        let k2: u32 = parse_num(&k2, "K2")?;
        let a = cohomology::tensor_infinity(k1, k2).map_err(|e| e.to_string())?;
        emit(
            &[arch_rows("tensor", Some(k1), Some(k2), None, &a)],
            &arch_plain(&a),
            format,
        );
    }
    Ok(())
}

fn cmd_overlap(args: &[String]) -> Result<(), String> {
    let p = parse_flags(args, &["format"], &[])?;
    let [k1, k2, k3] = positionals::<3>(&p, "overlap K1 K2 K3")?;
    let k1: u32 = parse_num(&k1, "K1")?;
    let k2: u32 = parse_num(&k2, "K2")?;
    let k3: u32 = parse_num(&k3, "K3")?;
    let verdict = cohomology::overlap_at_infinity(k1, k2, k3).map_err(|e| e.to_string())?;
    let cert = cohomology::no_overlap_certificate(k1, k2, k3, true).map_err(|e| e.to_string())?;

    let (at_infinity, case, conds) = match &verdict {
        OverlapVerdict::NoOverlap { case, conditions } => {
            ("no-overlap", case.to_string(), *conditions)
        }
        OverlapVerdict::InconclusiveAtInfinity { conditions } => {
            ("inconclusive", "mixed-parity-k1-odd".to_string(), Some(*conditions))
        }
    };
    let (cond_text, cond_satisfied) = match conds {
        Some(c) => (
            format!("twist=0;k2=k3={}", c.required_weight),
            if c.satisfied { "true" } else { "false" }.to_string(),
        ),
        None => (String::new(), String::new()),
    };
    let partition = |dims: &[u32]| {
        dims.iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join("+")
    };
    let row = OutputRow::new()
        .push("k1", Value::UInt(k1 as u128))
        .push("k2", Value::UInt(k2 as u128))
        .push("k3", Value::UInt(k3 as u128))
        .push("atInfinity", Value::Text(at_infinity.into()))
        .push("parityCase", Value::Text(case.clone()))
        .push("conditions", Value::Text(cond_text.clone()))
        .push("conditionsSatisfied", Value::Text(cond_satisfied.clone()))
        .push("tensorExtSq", Value::Text(partition(&cert.tensor_dims)))
        .push("sym3ExtSq", Value::Text(partition(&cert.sym3_dims)))
        .push("unmatchedRank", Value::UInt(cert.unmatched_rank as u128))
        .push(
            "verdict",
            Value::Text(if cert.contradiction() {
                "no-overlap".into()
            } else {
                "undecided".into()
            }),
        );

    let mut plain = String::new();
    match (at_infinity, conds) {
        ("inconclusive", Some(c)) => {
            let _ = writeln!(
                plain,
                "at-infinity: inconclusive (necessary conditions satisfied: twist=0, k2=k3={})",
                c.required_weight
            );
        }
        (_, Some(c)) => {
            let _ = writeln!(
                plain,
                "at-infinity: no-overlap ({case}; conditions twist=0, k2=k3={} violated)",
                c.required_weight
            );
        }
        _ => {
            let _ = writeln!(plain, "at-infinity: no-overlap ({case})");
        }
    }
    let _ = writeln!(
        plain,
        "certificate: exterior squares split {} vs {}; no rank-{} summand on the tensor side -> contradiction",
        partition(&cert.tensor_dims),
        partition(&cert.sym3_dims),
        cert.unmatched_rank
    );
    let _ = write!(plain, "verdict: no-overlap");
    emit(&[row], &plain, p.format(Format::Plain)?);
    Ok(())
}

const ESTIMATE_CSV_HEADER: &str =
    "p,n1,n2,A,B,pairCount,dihedralBound,lowerBound,ratio,ratioExact,caveats";

fn report_row(r: &EstimateReport) -> OutputRow {
    let caveats = r
        .caveats
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(";");
    OutputRow::new()
        .push("p", Value::UInt(r.p as u128))
        .push("n1", Value::UInt(r.n1 as u128))
        .push("n2", Value::UInt(r.n2 as u128))
        .push("A", Value::Big(r.dim_sum1.clone()))
        .push("B", Value::Big(r.dim_sum2.clone()))
        .push("pairCount", Value::Big(r.pair_count.clone()))
        .push("dihedralBound", Value::Big(r.dihedral_bound.clone()))
        .push("lowerBound", Value::Big(r.lower_bound.clone()))
        .push("ratio", Value::Ratio(r.normalized_ratio.clone()))
        .push("caveats", Value::Text(caveats))
}

fn cmd_estimate(args: &[String]) -> Result<(), String> {
    let p = parse_flags(args, &["primes", "format", "jobs"], &[])?;
    let [k1, k2, n] = positionals::<3>(&p, "estimate K1 K2 N --primes LO..HI")?;
    let k1: u32 = parse_num(&k1, "K1")?;
    let k2: u32 = parse_num(&k2, "K2")?;
    let n: u32 = parse_num(&n, "N")?;
    let primes_spec = p.value("primes").ok_or("estimate requires --primes LO..HI")?;
    let (lo, hi) = primes_spec
        .split_once("..")
        .ok_or_else(|| format!("cannot parse --primes {primes_spec:?}; want LO..HI"))?;
    let lo: u64 = parse_num(lo, "--primes low endpoint")?;
    let hi: u64 = parse_num(hi, "--primes high endpoint")?;
    if hi < lo {
        return Err(format!("empty prime range {lo}..{hi}"));
    }
    let jobs: usize = match p.value("jobs") {
        Some(j) => parse_num(j, "--jobs")?,
        None => 1,
    };
    if jobs == 0 {
        return Err("--jobs must be at least 1".into());
    }
    // validate the scenario up front so bad arguments exit 2 even when the
    // range holds no primes
    estimator::split_levels(n).map_err(|e| e.to_string())?;
    if k2 < 2 || k1 <= k2 {
        return Err(format!("need K1 > K2 >= 2, got K1 = {k1}, K2 = {k2}"));
    }
    let mut primes = arith::primes_in_range(lo, hi);
    if let Some(pos) = primes.iter().position(|&q| q == 2) {
        eprintln!("note: skipping p = 2 (scan runs over odd primes)");
        primes.remove(pos);
    }
    let results = estimator::scan_parallel(k1, k2, n, &primes, jobs);
    let mut rows = Vec::new();
    for (q, r) in &results {
        match r {
            Ok(report) => rows.push(report_row(report)),
            Err(e) => eprintln!("p={q}: {e}"),
        }
    }
    let format = p.format(Format::Csv)?;
    let format = if format == Format::Plain { Format::Csv } else { format };
    if rows.is_empty() && format == Format::Csv {
        println!("{ESTIMATE_CSV_HEADER}");
        return Ok(());
    }
    emit(&rows, "", format);
    Ok(())
}

fn positionals<const N: usize>(p: &Parsed, usage: &str) -> Result<[String; N], String> {
    if p.positionals.len() != N {
        return Err(format!(
            "expected {N} positional argument(s): {usage} (got {})",
            p.positionals.len()
        ));
    }
    Ok(std::array::from_fn(|i| p.positionals[i].clone()))
}
