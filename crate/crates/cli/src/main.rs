use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use solvrad::error::{Error, Result};
use solvrad::group::DEFAULT_CAP;
use solvrad::radical::{Kappa, SuitabilityVerdict, Verdict};
use solvrad::rootsys::{CoxeterConvention, RootType};
use solvrad::spec::{realize, GroupSpec};
use solvrad::PermGroup;
use solvrad_cli::commands::{self, Method, Settings};
use solvrad_cli::report::*;
use solvrad_cli::{exit_code, verify, EXIT_FAILED, EXIT_INPUT, EXIT_OK, EXIT_RESOURCE};

#[derive(Parser, Debug)]
#[command(name = "solvrad", version, about = "Solvable radicals, k-radical elements and radical degrees of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for every random search.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Worker threads (1 forces a serial run).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Largest group or class enumerated exhaustively.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,

    /// Write the JSON report to this path (`-` for standard output).
    #[arg(long, global = true)]
    json: Option<PathBuf>,

    /// Abort with exit status 3 after this many seconds.
    #[arg(long, global = true)]
    timeout_secs: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Realize a group and print its order and degree.
    Group { spec: String },
    /// Conjugacy classes.
    Classes { spec: String },
    /// Solvability with a derived-series or Hall-Thompson certificate.
    Solvable { spec: String },
    /// Solvable radical by up to three methods, with radical degrees.
    Radical {
        spec: String,
        #[arg(long, default_value = "nc,2gen,comm")]
        methods: String,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        /// Also report k-radical verdicts for these k (comma separated).
        #[arg(long, value_delimiter = ',')]
        k: Vec<usize>,
    },
    /// k-radical verdict for every class.
    Kradical {
        spec: String,
        #[arg(long)]
        k: usize,
        /// Certify radical classes by covering the reduced tuple space.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Radical degree of every class and of the group.
    Kappa { spec: String },
    /// Classes whose element generates a solvable group with any k conjugates.
    Suitable {
        spec: String,
        #[arg(long)]
        k: usize,
    },
    /// Reproduce the 2-radical table and diff against the shipped data.
    Table1 {
        #[arg(long, default_value_t = 2_000_000)]
        max_order: u64,
    },
    /// Check that all transposition triples of S(n) generate solvable groups.
    Sharpness {
        #[arg(long)]
        n: usize,
    },
    /// Coxeter-element positivity checks on root systems.
    Rootcheck {
        #[arg(long = "type")]
        kind: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        /// `product` uses w1 w3 ... wr w2; `literal` uses w1 w2 ... wr w2.
        #[arg(long, default_value = "product")]
        convention: String,
    },
    /// Re-check every certificate and witness in a report file.
    Verify { report: PathBuf },
}

enum Failure {
    Engine(Error),
    Other(i32, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn realize_spec(spec: &str) -> Result<(String, PermGroup)> {
    let parsed = GroupSpec::parse(spec)?;
    let g = realize(&parsed)?;
    Ok((parsed.to_string(), g))
}

fn run(cli: &Cli) -> std::result::Result<Report, Failure> {
    let settings = Settings {
        seed: cli.seed,
        cap: cli.cap,
    };
    let start = Instant::now();
    let mut spec_echo = None;
    let mut group = None;
    let mut with_group = |spec: &str| -> Result<PermGroup> {
        let (echo, g) = realize_spec(spec)?;
        spec_echo = Some(echo);
        group = Some(GroupInfo::of(&g));
        Ok(g)
    };
    let (name, (payload, ok)) = match &cli.command {
        Command::Group { spec } => {
            with_group(spec)?;
            ("group", (Payload::Group, true))
        }
        Command::Classes { spec } => ("classes", commands::classes(&with_group(spec)?, &settings)?),
        Command::Solvable { spec } => ("solvable", commands::solvable(&with_group(spec)?, &settings)?),
        Command::Radical { spec, methods, nmax, k } => {
            let methods = Method::parse_list(methods)?;
            let g = with_group(spec)?;
            ("radical", commands::radical(&g, &methods, *nmax, k, &settings)?)
        }
        Command::Kradical { spec, k, exhaustive } => {
            if *k == 0 {
                return Err(Failure::Other(EXIT_INPUT, "--k must be positive".into()));
            }
            let g = with_group(spec)?;
            ("kradical", commands::kradical(&g, *k, *exhaustive, &settings)?)
        }
        Command::Kappa { spec } => ("kappa", commands::kappa(&with_group(spec)?, &settings)?),
        Command::Suitable { spec, k } => {
            if *k == 0 {
                return Err(Failure::Other(EXIT_INPUT, "--k must be positive".into()));
            }
            let g = with_group(spec)?;
            ("suitable", commands::suitable(&g, *k, &settings)?)
        }
        Command::Table1 { max_order } => ("table1", commands::table1(*max_order, &settings)?),
        Command::Sharpness { n } => ("sharpness", commands::sharpness(*n, &settings)?),
        Command::Rootcheck {
            kind,
            rank,
            convention,
        } => {
            let convention = match convention.as_str() {
                "product" => CoxeterConvention::Product,
                "literal" => CoxeterConvention::Literal,
                other => {
                    return Err(Failure::Other(EXIT_INPUT, format!("unknown convention `{other}`")))
                }
            };
            let only = match (kind, rank) {
                (Some(k), Some(r)) => Some((RootType::parse(k)?, *r)),
                (None, None) => None,
                _ => {
                    return Err(Failure::Other(
                        EXIT_INPUT,
                        "--type and --rank must be given together".into(),
                    ))
                }
            };
            ("rootcheck", commands::rootcheck(only, convention)?)
        }
        Command::Verify { report } => {
            let text = std::fs::read_to_string(report).map_err(|e| Error::Io {
                path: report.display().to_string(),
                reason: e.to_string(),
            })?;
            let source: Report = serde_json::from_str(&text)
                .map_err(|e| Failure::Other(EXIT_INPUT, format!("not a report: {e}")))?;
            let doc = verify::verify(&source, &settings)?;
            let ok = doc.all_ok;
            spec_echo = source.spec.clone();
            ("verify", (Payload::Verify(doc), ok))
        }
    };
    Ok(Report {
        tool: TOOL.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: name.into(),
        seed: cli.seed,
        cap: cli.cap,
        spec: spec_echo,
        group,
        ok,
        payload,
        timing: Timing {
            wall_ms: start.elapsed().as_millis() as u64,
            threads: rayon::current_num_threads(),
        },
    })
}

fn summary(report: &Report) -> Vec<String> {
    let mut out = Vec::new();
    if let (Some(spec), Some(g)) = (&report.spec, &report.group) {
        out.push(format!("{spec}: order {}, degree {}", g.order, g.degree));
    }
    match &report.payload {
        Payload::Group => {}
        Payload::Classes(doc) => {
            out.push(format!("{} classes", doc.count));
            for c in &doc.classes {
                out.push(format!(
                    "  order {:>3}  size {:>8}  {}",
                    c.element_order, c.class_size, c.representative
                ));
            }
        }
        Payload::Solvable(doc) => {
            out.push(format!(
                "{} (derived series orders {})",
                if doc.solvable { "solvable" } else { "not solvable" },
                doc.series.join(" > ")
            ));
            if let Some(t) = &doc.triple {
                let o = t.orders();
                out.push(format!("Hall-Thompson triple of orders ({}, {}, {})", o[0], o[1], o[2]));
            }
        }
        Payload::Radical(doc) => {
            for m in &doc.methods {
                out.push(format!("R(G) by {}: order {}", m.method, m.order));
            }
            out.push(format!("methods agree: {}", doc.methods_agree));
            out.push(format!("kappa(G) = {}", opt(doc.kappa)));
            if let Some(q) = &doc.quotient_radical_order {
                out.push(format!("|R(G/R(G))| = {q}"));
            }
        }
        Payload::Kradical(r) => {
            out.push(format!(
                "{} nontrivial {}-radical classes, orders {:?}",
                r.radical_count, r.k, r.radical_orders
            ));
            for c in &r.classes {
                let v = match c.verdict.verdict {
                    Verdict::Radical => "radical",
                    Verdict::NotRadical { .. } => "refuted",
                    Verdict::Unknown => "unknown",
                };
                out.push(format!("  class {:>3} order {:>3}: {v}", c.class_index, c.element_order));
            }
        }
        Payload::Kappa(k) => {
            out.push(format!("kappa(G) = {}", opt(k.kappa)));
            for c in &k.classes {
                let v = match &c.kappa {
                    Kappa::InRadical => "in R(G)".to_string(),
                    Kappa::Degree { n, .. } => n.to_string(),
                };
                out.push(format!("  class {:>3} order {:>3}: {v}", c.class_index, c.element_order));
            }
        }
        Payload::Suitable(doc) => {
            out.push(format!("suitable classes (k = {}): {:?}", doc.k, doc.suitable_classes));
            out.push(format!("classes of R(G): {:?}", doc.radical_classes));
            for c in &doc.classes {
                if c.verdict == SuitabilityVerdict::Unknown {
                    out.push(format!("  class {} undecided", c.class_index));
                }
            }
        }
        Payload::Table1(doc) => {
            for r in &doc.rows {
                let obs = r
                    .observed
                    .as_ref()
                    .map_or("-".to_string(), |e| entry_text(e));
                out.push(format!(
                    "{:<8} {:<12} expected {:<12} observed {:<12} {:?}",
                    r.golden.label,
                    r.golden.realization.as_deref().unwrap_or("-"),
                    entry_text(&r.golden.expected),
                    obs,
                    r.status
                ));
            }
            out.push(format!("diff: {}", doc.diff));
        }
        Payload::Sharpness(doc) => {
            out.push(format!(
                "S({}): {} transposition triples up to conjugacy, all solvable: {}",
                doc.n, doc.scan.triples_tested, doc.scan.all_solvable
            ));
        }
        Payload::Rootcheck(doc) => {
            for r in &doc.rows {
                match (&r.w_alpha1, &r.w_inv_alpha2) {
                    (Some(a), Some(b)) => out.push(format!(
                        "{}{} word {:?}: pass, w(a1) = {}, w^-1(a2) = {}",
                        r.kind,
                        r.rank,
                        r.word,
                        root_text(a),
                        root_text(b)
                    )),
                    _ => out.push(format!(
                        "{}{} word {:?}: FAIL {}",
                        r.kind,
                        r.rank,
                        r.word,
                        r.failure.as_deref().unwrap_or("")
                    )),
                }
            }
        }
        Payload::Verify(doc) => {
            let failed: Vec<&Check> = doc.checks.iter().filter(|c| !c.ok).collect();
            out.push(format!(
                "verified {} checks on a `{}` report: {}",
                doc.checks.len(),
                doc.source_command,
                if doc.all_ok { "all ok" } else { "FAILED" }
            ));
            for c in failed {
                out.push(format!("  failed: {}", c.name));
            }
        }
    }
    out
}

fn opt(x: Option<usize>) -> String {
    x.map_or("none (solvable)".into(), |n| n.to_string())
}

fn entry_text(e: &Entry) -> String {
    if e.count == 0 {
        "0".into()
    } else {
        let o: Vec<String> = e.orders.iter().map(u64::to_string).collect();
        format!("{} ({})", e.count, o.join(","))
    }
}

/// `Σ cᵢ αᵢ` written as e.g. `2a1+a2`.
fn root_text(c: &[i64]) -> String {
    let terms: Vec<String> = c
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| match x {
            1 => format!("a{}", i + 1),
            _ => format!("{x}a{}", i + 1),
        })
        .collect();
    terms.join("+")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    }
    if let Some(secs) = cli.timeout_secs {
        std::thread::spawn(move || {
            std::thread::sleep(Duration::from_secs(secs));
            eprintln!("error: timed out after {secs} s");
            std::process::exit(EXIT_RESOURCE);
        });
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
        Err(Failure::Other(code, msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(code as u8);
        }
    };
    let to_stdout = cli.json.as_deref().is_some_and(|p| p.as_os_str() == "-");
    if !to_stdout {
        for line in summary(&report) {
            println!("{line}");
        }
    }
    if let Some(path) = &cli.json {
        let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
        let written = if to_stdout {
            std::io::stdout().write_all(text.as_bytes())
        } else {
            std::fs::write(path, text)
        };
        if let Err(e) = written {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT as u8);
        }
    }
    ExitCode::from(if report.ok { EXIT_OK } else { EXIT_FAILED } as u8)
}
