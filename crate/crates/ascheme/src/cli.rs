//! Command-line interface.
//!
//! Subcommands: `generate` (construct a scheme and print its text form),
//! `info` (parameters and block structure as JSON), `rkmin` (minimum rank
//! over a finite field), `check` (run one named check), and `corpus` (run
//! checks from a manifest over many schemes).
//!
//! Every report is a single JSON line on standard output carrying the
//! library version and the scheme content hash; human-readable notes go to
//! standard error.  Exit codes: 0 on success (including checks that turn
//! out not to apply), 1 when a check is violated, 2 on usage or validation
//! errors.

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};
use std::io::Read;
use std::path::{Path, PathBuf};

use crate::bounds::{
    check_min_rank_bound, check_min_rank_realization, check_rank_one_classification,
    check_scaling_relation_closure, check_semisimple_multiplicity_bound, json_uint, BoundReport,
    Verdict,
};
use crate::generators;
use crate::gf::FqField;
use crate::minrank::{min_rank, SearchOptions};
use crate::scheme::Scheme;
use crate::spectral::{analyze_seeded, DEFAULT_SEED};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "ascheme",
    version,
    about = "Association scheme toolkit",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a scheme from a named family and print its text form.
    ///
    /// Families: cyclotomic P R, cyclic N, symmetric DEG, johnson V K,
    /// hamming M A, complete N.
    Generate {
        /// Family name.
        family: String,
        /// Integer parameters of the family.
        args: Vec<u64>,
        /// Cap on the number of points (default 512).
        #[arg(long)]
        max_points: Option<usize>,
        /// Write to a file instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print parameters, flags, block structure, and frame number as JSON.
    Info {
        /// Scheme file (standard input when omitted).
        scheme: Option<PathBuf>,
        /// Seed for the floating decomposition fallback.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Search the minimum rank over a finite field across the algebra.
    Rkmin {
        /// Scheme file (standard input when omitted).
        scheme: Option<PathBuf>,
        /// Field order, as "q" or "p^f".
        #[arg(long)]
        field: String,
        /// Cap on the number of candidates examined.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Run one check by identifier.
    ///
    /// Identifiers: t1, t2, t200707b, t110707c, ha003.
    Check {
        /// Check identifier.
        #[arg(
            value_name = "CHECK",
            required_unless_present = "theorem",
            conflicts_with = "theorem"
        )]
        check: Option<String>,
        /// Alternative spelling of the check identifier.
        #[arg(long, value_name = "CHECK")]
        theorem: Option<String>,
        /// Scheme file (standard input when omitted).
        #[arg(long)]
        scheme: Option<PathBuf>,
        /// Field order for rank-based checks, as "q" or "p^f".
        #[arg(long)]
        field: Option<String>,
        /// Prime for semisimplicity-based checks.
        #[arg(long)]
        prime: Option<u32>,
        /// Random coefficient tuples for the closure check.
        #[arg(long, default_value_t = 200)]
        trials: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Cap on the number of rank-search candidates.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Run checks from a manifest over many schemes.
    ///
    /// The manifest holds one JSON object per line: {"source": ...,
    /// "checks": [...]}.  A source is either a generator expression
    /// ("cyclotomic 31 5") or a scheme file path; each check is the
    /// argument string of the check subcommand ("t1 --field 2").  Without
    /// a manifest a built-in list covering all families is run.
    Corpus {
        /// Manifest file (built-in corpus when omitted).
        manifest: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Generate {
            family,
            args,
            max_points,
            output,
        } => {
            let spec = GeneratorSpec {
                family,
                args,
                max_points,
            };
            let sch = spec.build()?;
            let text = sch.to_text();
            match output {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => print!("{text}"),
            }
            eprintln!(
                "{} points, {} classes, {}",
                sch.n(),
                sch.s(),
                sch.content_hash()
            );
            Ok(0)
        }
        Command::Info { scheme, seed } => {
            let sch = read_scheme(scheme.as_deref())?;
            let value = info_value(&sch, seed)?;
            println!("{}", serde_json::to_string(&value).unwrap());
            Ok(0)
        }
        Command::Rkmin {
            scheme,
            field,
            budget,
            threads,
        } => {
            let sch = read_scheme(scheme.as_deref())?;
            let field = parse_field(&field)?;
            let opts = SearchOptions { budget, threads };
            let report = min_rank(&sch, &field, &opts).map_err(|e| e.to_string())?;
            let mut value = serde_json::to_value(&report).unwrap();
            annotate(&mut value, &sch, None);
            println!("{}", serde_json::to_string(&value).unwrap());
            eprintln!(
                "minimum rank {} over {} candidates{}",
                report.rkmin,
                report.candidates_examined,
                if report.exhaustive {
                    " (exhaustive)"
                } else {
                    " (truncated)"
                },
            );
            Ok(0)
        }
        Command::Check {
            check,
            theorem,
            scheme,
            field,
            prime,
            trials,
            seed,
            budget,
            threads,
        } => {
            let id = check.or(theorem).expect("clap enforces one spelling");
            let spec = CheckSpec {
                id,
                field,
                prime,
                trials,
                seed,
                budget,
            };
            let sch = read_scheme(scheme.as_deref())?;
            let report = spec.run(&sch, threads)?;
            let mut value = serde_json::to_value(&report).unwrap();
            annotate(&mut value, &sch, None);
            println!("{}", serde_json::to_string(&value).unwrap());
            Ok(match report.verdict {
                Verdict::Holds => {
                    eprintln!("{}: holds", report.check);
                    0
                }
                Verdict::NotApplicable => {
                    eprintln!(
                        "{}: not applicable ({})",
                        report.check,
                        report.reason.as_deref().unwrap_or("")
                    );
                    0
                }
                Verdict::Violated => {
                    let note = dump_witness(&report)
                        .map(|p| format!(", witness written to {p}"))
                        .unwrap_or_default();
                    eprintln!(
                        "{}: VIOLATED ({}){note}",
                        report.check,
                        report.reason.as_deref().unwrap_or("")
                    );
                    1
                }
            })
        }
        Command::Corpus {
            manifest,
            threads,
            seed,
        } => run_corpus(manifest.as_deref(), threads, seed),
    }
}

/// A scheme family with its integer parameters, as written on the command
/// line or in a manifest source string.
#[derive(Debug)]
struct GeneratorSpec {
    family: String,
    args: Vec<u64>,
    max_points: Option<usize>,
}

impl GeneratorSpec {
    fn parse(source: &str) -> Result<GeneratorSpec, String> {
        let mut tokens = source.split_whitespace();
        let family = tokens
            .next()
            .ok_or("empty generator expression")?
            .to_string();
        let args = tokens
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| format!("bad integer argument '{t}'"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GeneratorSpec {
            family,
            args,
            max_points: None,
        })
    }

    fn is_known_family(name: &str) -> bool {
        matches!(
            name,
            "cyclotomic" | "cyclic" | "symmetric" | "johnson" | "hamming" | "complete"
        )
    }

    fn build(&self) -> Result<Scheme, String> {
        let cap = self.max_points.unwrap_or(generators::DEFAULT_MAX_POINTS);
        let want = |count: usize| -> Result<(), String> {
            if self.args.len() == count {
                Ok(())
            } else {
                Err(format!("{} takes {count} integer argument(s)", self.family))
            }
        };
        let sch = match self.family.as_str() {
            "cyclotomic" => {
                want(2)?;
                generators::cyclotomic_with_limit(self.args[0], self.args[1], cap)
                    .map_err(|e| e.to_string())?
            }
            "cyclic" => {
                want(1)?;
                let table = generators::cyclic_group_table(self.args[0] as usize);
                generators::from_group_with_limit(&table, cap).map_err(|e| e.to_string())?
            }
            "symmetric" => {
                want(1)?;
                if !(1..=5).contains(&self.args[0]) {
                    return Err("symmetric takes a degree between 1 and 5".into());
                }
                let table = generators::symmetric_group_table(self.args[0] as usize);
                generators::from_group_with_limit(&table, cap).map_err(|e| e.to_string())?
            }
            "johnson" => {
                want(2)?;
                generators::johnson_with_limit(self.args[0], self.args[1], cap)
                    .map_err(|e| e.to_string())?
            }
            "hamming" => {
                want(2)?;
                generators::hamming_with_limit(self.args[0], self.args[1], cap)
                    .map_err(|e| e.to_string())?
            }
            "complete" => {
                want(1)?;
                generators::complete_with_limit(self.args[0] as usize, cap)
                    .map_err(|e| e.to_string())?
            }
            other => return Err(format!("unknown family '{other}'")),
        };
        Ok(sch)
    }
}

/// One check with its parameters, shared between the check subcommand and
/// manifest entries.
#[derive(Debug)]
struct CheckSpec {
    id: String,
    field: Option<String>,
    prime: Option<u32>,
    trials: u32,
    seed: u64,
    budget: Option<u64>,
}

impl CheckSpec {
    /// Parses the argument-string form used in manifests, e.g.
    /// "t1 --field 2 --budget 1000".
    fn parse(text: &str, default_seed: u64) -> Result<CheckSpec, String> {
        let mut tokens = text.split_whitespace();
        let id = tokens.next().ok_or("empty check expression")?.to_string();
        let mut spec = CheckSpec {
            id,
            field: None,
            prime: None,
            trials: 200,
            seed: default_seed,
            budget: None,
        };
        while let Some(flag) = tokens.next() {
            let value = tokens
                .next()
                .ok_or_else(|| format!("{flag} needs a value"))?;
            match flag {
                "--field" => spec.field = Some(value.to_string()),
                "--prime" => {
                    spec.prime = Some(value.parse().map_err(|_| format!("bad prime '{value}'"))?)
                }
                "--trials" => {
                    spec.trials = value.parse().map_err(|_| format!("bad trials '{value}'"))?
                }
                "--seed" => spec.seed = value.parse().map_err(|_| format!("bad seed '{value}'"))?,
                "--budget" => {
                    spec.budget = Some(value.parse().map_err(|_| format!("bad budget '{value}'"))?)
                }
                other => return Err(format!("unknown check flag '{other}'")),
            }
        }
        Ok(spec)
    }

    fn run(&self, sch: &Scheme, threads: usize) -> Result<BoundReport, String> {
        let opts = SearchOptions {
            budget: self.budget,
            threads,
        };
        let need_field = || -> Result<FqField, String> {
            parse_field(self.field.as_deref().ok_or("this check needs --field")?)
        };
        let need_prime = || -> Result<u32, String> {
            self.prime
                .ok_or_else(|| "this check needs --prime".to_string())
        };
        let report = match self.id.as_str() {
            "t1" => check_min_rank_bound(sch, &need_field()?, &opts),
            "t2" => check_semisimple_multiplicity_bound(sch, need_prime()?, self.seed),
            "t200707b" => check_rank_one_classification(sch, &need_field()?, &opts),
            "t110707c" => {
                let field = match &self.field {
                    Some(text) => Some(parse_field(text)?),
                    None => None,
                };
                check_scaling_relation_closure(sch, field.as_ref(), self.trials, self.seed)
            }
            "ha003" => check_min_rank_realization(sch, need_prime()?, &opts, self.seed),
            other => return Err(format!("unknown check '{other}'")),
        };
        report.map_err(|e| e.to_string())
    }
}

/// Accepts "q" or "p^f".
fn parse_field(text: &str) -> Result<FqField, String> {
    let field = match text.split_once('^') {
        Some((p, f)) => {
            let p = p.parse().map_err(|_| format!("bad field '{text}'"))?;
            let f = f.parse().map_err(|_| format!("bad field '{text}'"))?;
            FqField::new(p, f)
        }
        None => {
            let q = text.parse().map_err(|_| format!("bad field '{text}'"))?;
            FqField::from_order(q)
        }
    };
    field.map_err(|e| e.to_string())
}

fn read_scheme(path: Option<&Path>) -> Result<Scheme, String> {
    let text = match path {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("cannot read standard input: {e}"))?;
            buf
        }
    };
    Scheme::parse(&text).map_err(|e| e.to_string())
}

/// Loads a corpus source: a generator expression when the first token is a
/// known family name, a scheme file path otherwise.
fn scheme_from_source(source: &str) -> Result<Scheme, String> {
    let first = source.split_whitespace().next().unwrap_or("");
    if GeneratorSpec::is_known_family(first) {
        GeneratorSpec::parse(source)?.build()
    } else {
        read_scheme(Some(Path::new(source)))
    }
}

/// Adds the library version (and the scheme reference, for reports that do
/// not already carry one) to a JSON report.
fn annotate(value: &mut Value, sch: &Scheme, source: Option<&str>) {
    if let Value::Object(map) = value {
        map.insert("version".into(), json!(VERSION));
        if !map.contains_key("scheme") {
            map.insert(
                "scheme".into(),
                serde_json::to_value(sch.reference(source.map(String::from))).unwrap(),
            );
        } else if let Some(src) = source {
            if let Some(Value::Object(scheme_map)) = map.get_mut("scheme") {
                scheme_map.insert("source".into(), json!(src));
            }
        }
    }
}

fn info_value(sch: &Scheme, seed: u64) -> Result<Value, String> {
    let data = analyze_seeded(sch, seed).map_err(|e| e.to_string())?;
    let primitive = sch.is_primitive().map_err(|e| e.to_string())?;
    let symmetric = (0..sch.s()).all(|r| sch.transpose(r as u16) == r as u16);
    Ok(json!({
        "version": VERSION,
        "scheme": sch.reference(None),
        "classes": sch.s(),
        "valencies": sch.valencies(),
        "thin": sch.is_thin(),
        "symmetric": symmetric,
        "commutative": sch.is_commutative(),
        "primitive": primitive,
        "center_dim": data.center_dim,
        "rational": data.rational,
        "blocks": data.blocks,
        "m_min": data.m_min(),
        "frame": json_uint(&data.frame),
    }))
}

/// Writes a violated report next to the working directory for later
/// reproduction; returns the file name.
fn dump_witness(report: &BoundReport) -> Option<String> {
    let digest = report
        .scheme
        .hash
        .strip_prefix("sha256:")
        .unwrap_or(&report.scheme.hash);
    let name = format!(
        "witness-{}-{}.json",
        report.check,
        &digest[..digest.len().min(12)]
    );
    let body = serde_json::to_string_pretty(report).ok()?;
    std::fs::write(&name, body).ok()?;
    Some(name)
}

#[derive(Deserialize)]
struct ManifestEntry {
    source: String,
    checks: Vec<String>,
}

/// Schemes and checks exercised by `corpus` when no manifest is given.
/// Everything here finishes in seconds and comes out holds or
/// not-applicable.
const DEFAULT_CORPUS: &[(&str, &[&str])] = &[
    (
        "cyclotomic 31 5",
        &[
            "t1 --field 2",
            "t1 --field 3",
            "t1 --field 4",
            "t200707b --field 2",
            "t110707c --field 2 --trials 24",
            "t110707c --field 5 --trials 24",
        ],
    ),
    (
        "cyclotomic 31 3",
        &["t1 --field 2", "t110707c --field 2 --trials 24", "t110707c"],
    ),
    (
        "johnson 5 2",
        &[
            "t1 --field 2",
            "t1 --field 3",
            "t1 --field 4",
            "t1 --field 5",
            "t2 --prime 2",
            "t2 --prime 7",
            "ha003 --prime 7",
            "t200707b --field 2",
            "t110707c --field 2 --trials 24",
            "t110707c --field 7 --trials 24",
            "t110707c",
        ],
    ),
    (
        "hamming 3 2",
        &[
            "t1 --field 2",
            "t110707c --field 2 --trials 24",
            "t110707c --field 3 --trials 24",
        ],
    ),
    (
        "cyclic 5",
        &[
            "t1 --field 11",
            "t200707b --field 2",
            "t200707b --field 3",
            "t200707b --field 4",
            "t200707b --field 5",
            "t200707b --field 11",
            "t200707b --field 2^4",
            "t110707c --field 4 --trials 24",
            "t110707c",
        ],
    ),
    (
        "cyclic 7",
        &[
            "t200707b --field 2",
            "t200707b --field 3",
            "t200707b --field 2^3",
        ],
    ),
    (
        "complete 5",
        &[
            "t1 --field 2",
            "t2 --prime 2",
            "t2 --prime 3",
            "ha003 --prime 2",
            "t110707c --field 3 --trials 24",
        ],
    ),
    (
        "symmetric 3",
        &[
            "t110707c --field 2 --trials 24",
            "t110707c",
            "ha003 --prime 5",
        ],
    ),
];

fn load_manifest(path: &Path) -> Result<Vec<ManifestEntry>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    text.lines()
        .map(str::trim)
        .filter(|line| !line.is_empty())
        .enumerate()
        .map(|(i, line)| {
            serde_json::from_str(line).map_err(|e| format!("manifest line {}: {e}", i + 1))
        })
        .collect()
}

fn run_corpus(manifest: Option<&Path>, threads: usize, seed: u64) -> Result<i32, String> {
    let entries = match manifest {
        Some(path) => load_manifest(path)?,
        None => DEFAULT_CORPUS
            .iter()
            .map(|(source, checks)| ManifestEntry {
                source: source.to_string(),
                checks: checks.iter().map(|c| c.to_string()).collect(),
            })
            .collect(),
    };

    let (mut holds, mut not_applicable, mut violated, mut errors) = (0u32, 0u32, 0u32, 0u32);
    for entry in &entries {
        let sch = match scheme_from_source(&entry.source) {
            Ok(sch) => sch,
            Err(msg) => {
                errors += 1;
                let line = json!({
                    "version": VERSION,
                    "source": entry.source,
                    "error": msg,
                });
                println!("{}", serde_json::to_string(&line).unwrap());
                continue;
            }
        };
        for check_text in &entry.checks {
            let result =
                CheckSpec::parse(check_text, seed).and_then(|spec| spec.run(&sch, threads));
            match result {
                Ok(report) => {
                    match report.verdict {
                        Verdict::Holds => holds += 1,
                        Verdict::NotApplicable => not_applicable += 1,
                        Verdict::Violated => {
                            violated += 1;
                            if let Some(name) = dump_witness(&report) {
                                eprintln!("witness written to {name}");
                            }
                        }
                    }
                    let mut value = serde_json::to_value(&report).unwrap();
                    annotate(&mut value, &sch, Some(&entry.source));
                    println!("{}", serde_json::to_string(&value).unwrap());
                }
                Err(msg) => {
                    errors += 1;
                    let line = json!({
                        "version": VERSION,
                        "source": entry.source,
                        "check": check_text,
                        "error": msg,
                    });
                    println!("{}", serde_json::to_string(&line).unwrap());
                }
            }
        }
    }
    eprintln!(
        "{} checks on {} schemes: {holds} holds, {not_applicable} not applicable, {violated} violated, {errors} errors",
        holds + not_applicable + violated + errors,
        entries.len(),
    );
    Ok(if violated > 0 {
        1
    } else if errors > 0 {
        2
    } else {
        0
    })
}
