//! `asymcode`: optimal error-detecting codes for asymmetric channels.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 resource guard exceeded.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use asymcode::codes::{channel_from_params, construct_code, optimal_code_size, verify_code, CodeFile};
use asymcode::oracle::{brute_force_optimal_limited, ORACLE_LIMIT};
use asymcode::poset::LevelProfile;
use asymcode::{BigCount, Channel, Code, Error, GradedChannel, Radius};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "asymcode", version, about = "Optimal error-detecting codes for asymmetric channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum size of a code detecting up to t errors.
    Size {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Number of detectable errors, or "all".
        #[arg(long)]
        t: Radius,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write an optimal code to a file.
    Generate {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long)]
        t: Radius,
        /// Output path; the code goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a code file detects up to t errors.
    Verify {
        /// Code file to check.
        path: PathBuf,
        /// Overrides the file's channel header.
        #[command(flatten)]
        channel: ChannelArgs,
        /// Overrides the file's #t header.
        #[arg(long)]
        t: Option<Radius>,
    },
    /// Exact optimum by exhaustive search.
    Oracle {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long)]
        t: Radius,
        #[arg(long, default_value_t = ORACLE_LIMIT)]
        max_elements: u64,
    },
    /// Tab-separated sizes for a range of t.
    Table {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Inclusive range, e.g. 0..4.
        #[arg(long)]
        t: TRange,
        #[arg(long, default_value_t = ORACLE_LIMIT)]
        max_elements: u64,
    },
}

#[derive(Args)]
struct ChannelArgs {
    #[arg(long, value_enum)]
    family: Option<FamilyName>,
    #[arg(long)]
    n: Option<u64>,
    /// Alphabet size.
    #[arg(long)]
    a: Option<u64>,
    /// Field size (prime).
    #[arg(long)]
    p: Option<u64>,
    /// Weight of shift-channel words.
    #[arg(long)]
    w: Option<u64>,
    /// Lowest rank.
    #[arg(long)]
    lo: Option<u64>,
    /// Highest rank.
    #[arg(long)]
    hi: Option<u64>,
    /// Use the dual channel.
    #[arg(long)]
    dual: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Subset,
    Multiset,
    Zchannel,
    Subspace,
    Deletion,
    Shift,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy)]
struct TRange {
    from: usize,
    to: usize,
}

impl std::str::FromStr for TRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("expected a range like 0..4 or a single value, got {s:?}");
        let (from, to) = match s.split_once("..") {
            Some((a, b)) => (a.parse().map_err(|_| bad())?, b.trim_start_matches('=').parse().map_err(|_| bad())?),
            None => {
                let v = s.parse().map_err(|_| bad())?;
                (v, v)
            }
        };
        if from > to {
            return Err(format!("empty range {s:?}"));
        }
        Ok(TRange { from, to })
    }
}

impl ChannelArgs {
    fn is_empty(&self) -> bool {
        self.family.is_none()
            && [self.n, self.a, self.p, self.w, self.lo, self.hi].iter().all(Option::is_none)
            && !self.dual
    }

    fn build(&self) -> Result<Channel, Failure> {
        let family = self.family.ok_or_else(|| Failure::Usage("--family is required".into()))?;
        let family = family.to_possible_value().expect("no skipped variants").get_name().to_string();
        let mut params: Vec<(String, u64)> = [("n", self.n), ("a", self.a), ("p", self.p), ("w", self.w)]
            .into_iter()
            .chain([("lo", self.lo), ("hi", self.hi)])
            .filter_map(|(k, v)| v.map(|v| (k.to_string(), v)))
            .collect();
        if self.dual {
            params.push(("dual".into(), 1));
        }
        Ok(channel_from_params(&family, &params)?)
    }
}

enum Failure {
    Usage(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Resource { .. } => Failure::Guard(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

#[derive(Serialize)]
struct SizeJson {
    family: &'static str,
    params: BTreeMap<&'static str, u64>,
    t: String,
    size: String,
    residue: usize,
    ranks: Vec<usize>,
    bound_only: bool,
}

fn size(ch: &Channel, t: Radius, format: Format) -> Result<String, Failure> {
    let report = optimal_code_size(ch, ch.rank_range(), t)?;
    if format == Format::Json {
        let json = SizeJson {
            family: ch.family().name(),
            params: ch.header_params().into_iter().collect(),
            t: t.to_string(),
            size: report.generic_total.to_string(),
            residue: report.residue,
            ranks: report.ranks,
            bound_only: report.bound_only,
        };
        return Ok(serde_json::to_string_pretty(&json).expect("plain data") + "\n");
    }
    let mut out = String::new();
    writeln!(out, "channel: {}", describe(ch)).unwrap();
    writeln!(out, "t: {t}").unwrap();
    writeln!(out, "size: {}", report.generic_total).unwrap();
    match &report.closed_form_total {
        Some(c) if report.bound_only => writeln!(out, "closed_form: {c} (lower bound)").unwrap(),
        Some(c) => writeln!(out, "closed_form: {c}").unwrap(),
        None => writeln!(out, "closed_form: -").unwrap(),
    }
    writeln!(out, "residue: {}", report.residue).unwrap();
    writeln!(out, "ranks: {}", join(&report.ranks)).unwrap();
    Ok(out)
}

fn describe(ch: &Channel) -> String {
    let params: Vec<String> = ch.header_params().iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{} {}", ch.family().name(), params.join(" "))
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn generate(ch: &Channel, t: Radius, out: Option<&PathBuf>) -> Result<String, Failure> {
    let code = construct_code(ch, ch.rank_range(), t)?;
    let text = code.to_file_string();
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(format!("codewords: {}\n", code.len()))
        }
        None => {
            eprintln!("codewords: {}", code.len());
            Ok(text)
        }
    }
}

fn verify(path: &PathBuf, args: &ChannelArgs, t: Option<Radius>) -> Result<(String, bool), Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let file = CodeFile::parse(&text)?;
    let ch = match (args.is_empty(), file.channel.clone()) {
        (false, _) => args.build()?,
        (true, Some(ch)) => ch,
        (true, None) => return Err(Failure::Usage("no #channel header; pass --family and parameters".into())),
    };
    let t = t.or(file.radius).ok_or_else(|| Failure::Usage("no #t header; pass --t".into()))?;
    let codewords = file.elements(&ch)?;
    let report = verify_code(&ch, &Code::new(ch.clone(), t, codewords), t)?;
    if report.pass {
        return Ok(("PASS\n".into(), true));
    }
    let mut out = String::from("FAIL\n");
    for (x, y) in &report.violations {
        writeln!(out, "{x} -> {y}").unwrap();
    }
    Ok((out, false))
}

fn oracle(ch: &Channel, t: Radius, limit: u64) -> Result<String, Failure> {
    let result = brute_force_optimal_limited(ch, ch.rank_range(), t, limit)?;
    let mut out = String::new();
    writeln!(out, "channel: {}", describe(ch)).unwrap();
    writeln!(out, "t: {t}").unwrap();
    writeln!(out, "optimum: {}", result.optimum).unwrap();
    writeln!(out, "witness_size: {}", result.witness.len()).unwrap();
    writeln!(out, "nodes: {}", result.explored_nodes).unwrap();
    writeln!(out, "witness: {}", join(&result.witness)).unwrap();
    Ok(out)
}

fn table(ch: &Channel, ts: TRange, limit: u64) -> Result<String, Failure> {
    let feasible = LevelProfile::of(ch, ch.rank_range()).total() <= BigCount::from(limit);
    let mut out = String::from("t\tgeneric\tclosed_form\toracle\n");
    for t in ts.from..=ts.to {
        let t = Radius::Errors(t);
        let report = optimal_code_size(ch, ch.rank_range(), t)?;
        let closed = report.closed_form_total.map_or("-".to_string(), |c| c.to_string());
        let oracle = if feasible {
            brute_force_optimal_limited(ch, ch.rank_range(), t, limit)?.optimum.to_string()
        } else {
            "-".to_string()
        };
        writeln!(out, "{t}\t{}\t{closed}\t{oracle}", report.generic_total).unwrap();
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    let ok = |s: String| (s, true);
    match cli.command {
        Command::Size { channel, t, format } => size(&channel.build()?, t, format).map(ok),
        Command::Generate { channel, t, out } => generate(&channel.build()?, t, out.as_ref()).map(ok),
        Command::Verify { path, channel, t } => verify(&path, &channel, t),
        Command::Oracle { channel, t, max_elements } => oracle(&channel.build()?, t, max_elements).map(ok),
        Command::Table { channel, t, max_elements } => table(&channel.build()?, t, max_elements).map(ok),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, passed)) => {
            print!("{out}");
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
