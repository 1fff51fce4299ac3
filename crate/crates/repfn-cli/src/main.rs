//! Command-line front end: constructions, solves, searches and
//! Thue-Morse utilities with reproducible, machine-readable output.
//!
//! Exit codes: 0 on success or when every assertion of a search/verify
//! run passes, 1 when a run completes but an assertion fails, 2 on usage
//! or parameter errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use repfn::construction::even_family_params;
use repfn::verifier::{self, Certificate};
use repfn::{
    check_partition_identity, construction, digit_chain_classify, solve, tm_prefix,
    IdentityOutcome, IntSet, Parity, ProgressionSpec,
};

#[derive(Parser)]
#[command(name = "repfn", version, about = "Partitions with coinciding representation functions")]
struct RunConfig {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,

    /// Write the artifact to this path instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads for searches.
    #[arg(long, global = true, env = "REPFN_WORKERS")]
    workers: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
    Both,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Parity {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
            ParityArg::Both => Parity::Both,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evil/odious prefixes and digit-chain classification.
    Tm(TmArgs),
    /// Build the level-l pair restricted to [0, horizon].
    Construct(ConstructArgs),
    /// Reconstruct the unique pair for a prescribed intersection.
    Solve(SolveArgs),
    /// Exhaustive parameter-tuple searches.
    Search {
        #[command(subcommand)]
        scenario: SearchCommand,
    },
    /// Contract checks with certificates.
    Verify {
        #[command(subcommand)]
        scenario: VerifyCommand,
    },
    /// Truncated polynomial identity check for an interval instance.
    Identity(IdentityArgs),
}

#[derive(Args)]
struct TmArgs {
    /// Prefix level l: emits the partition of [0, 2^l - 1].
    #[arg(long)]
    level: Option<u32>,
    /// Classify the subtracted-powers chain of this value instead.
    #[arg(long)]
    classify: Option<u64>,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    l: u32,
    #[arg(long)]
    horizon: u64,
}

#[derive(Args)]
struct SolveArgs {
    /// Intersection prescription: finite:{a,b}, single:r,m or pair:r1,r2,m.
    #[arg(long, conflicts_with = "family")]
    spec: Option<String>,
    /// Closed-form family parameters, written l=K.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    horizon: u64,
}

#[derive(Subcommand)]
enum SearchCommand {
    /// Two-progression intersections (r1+mk) u (r2+mk).
    Pair {
        #[arg(long = "m-max")]
        m_max: u64,
        #[arg(long, value_enum, default_value_t = ParityArg::Both)]
        parity: ParityArg,
        #[arg(long, default_value_t = 8)]
        factor: u64,
    },
    /// Single progressions r+mk.
    Single {
        #[arg(long = "m-max")]
        m_max: u64,
        #[arg(long, default_value_t = 8)]
        factor: u64,
        #[arg(long)]
        include_r_zero: bool,
    },
    /// Interval instances [0, m] with a two-point intersection.
    Interval {
        #[arg(long = "m-max")]
        m_max: u64,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Check the constructed pair at level l on [0, horizon].
    Construction {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        horizon: u64,
    },
    /// Check the explicit interval pair at level l.
    IntervalPair {
        #[arg(long)]
        l: u32,
    },
}

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match run(config) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(config: RunConfig) -> Result<ExitCode, String> {
    let workers = match config.workers {
        Some(0) => return Err("worker count must be at least 1".into()),
        Some(w) => w,
        None => std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1),
    };

    let (artifact, code) = match &config.command {
        Command::Tm(args) => run_tm(args, config.format)?,
        Command::Construct(args) => run_construct(args, config.format)?,
        Command::Solve(args) => run_solve(args, config.format)?,
        Command::Search { scenario } => {
            let cert = run_search(scenario, workers)?;
            render_certificate(&cert, config.format)
        }
        Command::Verify { scenario } => {
            let cert = run_verify(scenario)?;
            render_certificate(&cert, config.format)
        }
        Command::Identity(args) => run_identity(args, config.format)?,
    };

    match &config.output {
        Some(path) => std::fs::write(path, artifact)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{artifact}"),
    }
    Ok(code)
}

fn reject_csv(format: OutputFormat) -> Result<(), String> {
    if format == OutputFormat::Csv {
        Err("csv output is only available for search and verify".into())
    } else {
        Ok(())
    }
}

fn run_tm(args: &TmArgs, format: OutputFormat) -> Result<(String, ExitCode), String> {
    reject_csv(format)?;
    let mut out = String::new();
    let mut obj = serde_json::Map::new();
    if args.level.is_none() && args.classify.is_none() {
        return Err("tm needs --level or --classify".into());
    }
    if let Some(level) = args.level {
        let p = tm_prefix(level).map_err(|e| e.to_string())?;
        match format {
            OutputFormat::Plain => {
                let _ = writeln!(out, "evil   {}", p.evil);
                let _ = writeln!(out, "odious {}", p.odious);
            }
            OutputFormat::Json => {
                obj.insert("level".into(), json!(level));
                obj.insert("evil".into(), serde_json::to_value(&p.evil).unwrap());
                obj.insert("odious".into(), serde_json::to_value(&p.odious).unwrap());
            }
            OutputFormat::Csv => unreachable!(),
        }
    }
    if let Some(m) = args.classify {
        let c = digit_chain_classify(m).map_err(|e| e.to_string())?;
        match format {
            OutputFormat::Plain => {
                let _ = writeln!(out, "classify {m}: {}, exponent {}", c.class, c.exponent);
            }
            OutputFormat::Json => {
                obj.insert("classify".into(), json!(m));
                obj.insert("class".into(), serde_json::to_value(c.class).unwrap());
                obj.insert("exponent".into(), json!(c.exponent));
            }
            OutputFormat::Csv => unreachable!(),
        }
    }
    if format == OutputFormat::Json {
        out = pretty(&serde_json::Value::Object(obj));
    }
    Ok((out, ExitCode::SUCCESS))
}

fn check_horizon(horizon: u64) -> Result<(), String> {
    if horizon > repfn::MAX_UNIVERSE_BOUND {
        return Err(format!(
            "horizon {horizon} exceeds the supported maximum {}",
            repfn::MAX_UNIVERSE_BOUND
        ));
    }
    Ok(())
}

fn run_construct(args: &ConstructArgs, format: OutputFormat) -> Result<(String, ExitCode), String> {
    reject_csv(format)?;
    if args.l == 0 {
        return Err("construct needs l >= 1".into());
    }
    check_horizon(args.horizon)?;
    let (c, d) = construction::construct_partition(args.l, args.horizon)
        .map_err(|e| e.to_string())?;
    let inter = c.intersect(&d);
    let fam = even_family_params(args.l);
    let out = match format {
        OutputFormat::Plain => {
            let mut s = String::new();
            let _ = writeln!(s, "c            {c}");
            let _ = writeln!(s, "d            {d}");
            let _ = writeln!(s, "intersection {inter}");
            s
        }
        OutputFormat::Json => pretty(&json!({
            "l": args.l,
            "horizon": args.horizon,
            "r1": fam.r1,
            "r2": fam.r2,
            "m": fam.modulus,
            "c": c,
            "d": d,
            "intersection": inter,
        })),
        OutputFormat::Csv => unreachable!(),
    };
    Ok((out, ExitCode::SUCCESS))
}

fn parse_family(text: &str) -> Result<ProgressionSpec, String> {
    let level = text
        .strip_prefix("l=")
        .and_then(|v| v.parse::<u32>().ok())
        .filter(|&l| (1..=30).contains(&l))
        .ok_or_else(|| format!("bad family {text:?}, expected l=K with K in 1..=30"))?;
    let fam = even_family_params(level);
    Ok(ProgressionSpec::Pair {
        r1: fam.r1,
        r2: fam.r2,
        modulus: fam.modulus,
    })
}

fn run_solve(args: &SolveArgs, format: OutputFormat) -> Result<(String, ExitCode), String> {
    reject_csv(format)?;
    let spec = match (&args.spec, &args.family) {
        (Some(text), None) => ProgressionSpec::from_str(text).map_err(|e| e.to_string())?,
        (None, Some(fam)) => parse_family(fam)?,
        _ => return Err("solve needs exactly one of --spec or --family".into()),
    };
    let outcome = solve(&spec, args.horizon).map_err(|e| e.to_string())?;
    let out = match format {
        OutputFormat::Plain => {
            let mut s = String::new();
            match &outcome {
                repfn::SolveOutcome::Unique { c, d } => {
                    let _ = writeln!(s, "UNIQUE");
                    let _ = writeln!(s, "c            {c}");
                    let _ = writeln!(s, "d            {d}");
                    let _ = writeln!(s, "intersection {}", c.intersect(d));
                }
                repfn::SolveOutcome::Unsat { fail_index } => {
                    let _ = writeln!(s, "UNSAT at {fail_index}");
                }
                repfn::SolveOutcome::Branch { branch_index } => {
                    let _ = writeln!(s, "BRANCH at {branch_index}");
                }
            }
            s
        }
        OutputFormat::Json => pretty(&serde_json::to_value(&outcome).unwrap()),
        OutputFormat::Csv => unreachable!(),
    };
    Ok((out, ExitCode::SUCCESS))
}

fn run_search(scenario: &SearchCommand, workers: usize) -> Result<Certificate, String> {
    match *scenario {
        SearchCommand::Pair {
            m_max,
            parity,
            factor,
        } => {
            if m_max < 3 {
                return Err("search pair needs --m-max >= 3".into());
            }
            if factor < 4 {
                return Err("search pair needs --factor >= 4".into());
            }
            check_horizon(factor.saturating_mul(m_max))?;
            Ok(verifier::pair_search(m_max, factor, parity.into(), workers))
        }
        SearchCommand::Single {
            m_max,
            factor,
            include_r_zero,
        } => {
            if m_max < 2 {
                return Err("search single needs --m-max >= 2".into());
            }
            check_horizon(factor.saturating_mul(m_max))?;
            Ok(verifier::single_search(m_max, factor, include_r_zero, workers))
        }
        SearchCommand::Interval { m_max } => {
            if m_max < 4 {
                return Err("search interval needs --m-max >= 4".into());
            }
            check_horizon(m_max)?;
            Ok(verifier::interval_search(m_max, workers))
        }
    }
}

fn run_verify(scenario: &VerifyCommand) -> Result<Certificate, String> {
    match *scenario {
        VerifyCommand::Construction { l, horizon } => {
            if l == 0 {
                return Err("verify construction needs l >= 1".into());
            }
            check_horizon(horizon)?;
            Ok(verifier::verify_construction(l, horizon))
        }
        VerifyCommand::IntervalPair { l } => {
            if !(1..=11).contains(&l) {
                return Err("verify interval-pair needs l in 1..=11".into());
            }
            Ok(verifier::verify_interval_pair(l))
        }
    }
}

fn render_certificate(cert: &Certificate, format: OutputFormat) -> (String, ExitCode) {
    let code = if cert.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    };
    let out = match format {
        OutputFormat::Json => cert.to_json_pretty(),
        OutputFormat::Csv => cert.to_csv(),
        OutputFormat::Plain => {
            let mut s = String::new();
            let _ = writeln!(s, "scenario {}", cert.scenario);
            let _ = writeln!(s, "outcome  {}", cert.outcome);
            for check in &cert.checks {
                let _ = writeln!(
                    s,
                    "check    {} {} ({})",
                    if check.passed { "PASS" } else { "FAIL" },
                    check.name,
                    check.detail
                );
            }
            for survivor in &cert.survivors {
                let params: Vec<String> =
                    survivor.params.iter().map(u64::to_string).collect();
                let family = match survivor.family_level {
                    Some(l) => format!("family l={l}"),
                    None => "outside the family".to_string(),
                };
                let _ = writeln!(s, "survivor ({}) {family}", params.join(","));
            }
            s
        }
    };
    (out, code)
}

fn run_identity(args: &IdentityArgs, format: OutputFormat) -> Result<(String, ExitCode), String> {
    reject_csv(format)?;
    let parsed: IntSet = args.set.parse().map_err(|e: repfn::Error| e.to_string())?;
    let outcome =
        check_partition_identity(&parsed, args.r1, args.r2, args.m).map_err(|e| e.to_string())?;
    let (out, code) = match outcome {
        IdentityOutcome::Holds => {
            let text = match format {
                OutputFormat::Plain => "identity holds\n".to_string(),
                OutputFormat::Json => pretty(&json!({"holds": true})),
                OutputFormat::Csv => unreachable!(),
            };
            (text, ExitCode::SUCCESS)
        }
        IdentityOutcome::MismatchAt(k) => {
            let text = match format {
                OutputFormat::Plain => format!("identity mismatch at degree {k}\n"),
                OutputFormat::Json => pretty(&json!({"holds": false, "first_mismatch": k})),
                OutputFormat::Csv => unreachable!(),
            };
            (text, ExitCode::from(1))
        }
    };
    Ok((out, code))
}

#[derive(Args)]
struct IdentityArgs {
    /// The set C in brace form, e.g. {0,3,5,6,7,8,10,13,15,16,18,20}.
    #[arg(long)]
    set: String,
    #[arg(long)]
    r1: u64,
    #[arg(long)]
    r2: u64,
    #[arg(long)]
    m: u64,
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json value serializes");
    s.push('\n');
    s
}
