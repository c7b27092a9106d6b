//! `clutter`: analyze single clutters, build named families, and run the
//! exhaustive classification on up to six vertices.
//!
//! Exit codes: 0 success, 1 usage error, 2 unparseable clutter or invalid
//! family parameters, 3 some shellability verdict stayed undecided within the
//! node budget, 4 I/O or internal failure.

mod analyze;
mod cache;
mod run;

use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use clutter_core::classify::{ClassifyOptions, Universe};
use clutter_core::enumerate::MAX_ENUMERATION_VERTICES;
use clutter_core::families::{Family, FamilySpec};
use clutter_core::homology::Coefficients;
use clutter_core::notation::{format_clutter, parse_clutter, LabeledGround};
use clutter_core::Error;

use analyze::{analyze, AnalyzeOptions};
use run::{classify_command, ClassifyRun, CACHE_DIR_VAR};

#[derive(Parser)]
#[command(name = "clutter", version, about = "Chordality and shellability of clutters and their independence complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one clutter given in compact ("12, 13, 145") or extended
    /// ("{1 2 13}, {4 5}") notation and print a JSON report.
    Analyze {
        clutter: String,
        /// Ground set size; defaults to the largest label.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        report: ReportArgs,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Classify every clutter on N vertices up to isomorphism.
    Classify {
        #[arg(value_parser = clap::value_parser!(u8).range(0..=MAX_ENUMERATION_VERTICES as i64))]
        n: u8,
        /// Output directory for records.jsonl, summary.csv, table.csv and cache.bin.
        #[arg(long)]
        out: PathBuf,
        /// Reuse verdicts from an existing cache file.
        #[arg(long)]
        resume: bool,
        /// Which classes records.jsonl and table.csv cover.
        #[arg(long, value_enum, default_value_t = UniverseArg::All)]
        universe: UniverseArg,
        /// Directory for the verdict cache instead of the output directory.
        #[arg(long, env = CACHE_DIR_VAR)]
        cache_dir: Option<PathBuf>,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Print a member of a named family, optionally with its report.
    Family {
        #[arg(value_parser = family_names())]
        name: String,
        params: Vec<usize>,
        #[arg(long)]
        analyze: bool,
        #[command(flatten)]
        report: ReportArgs,
        #[command(flatten)]
        engine: EngineArgs,
    },
}

#[derive(Args)]
struct ReportArgs {
    /// Include a shelling order and a shedding-face tree.
    #[arg(long)]
    certificates: bool,
    /// Also report the d-complement for this d (repeatable).
    #[arg(long = "complement", value_name = "D")]
    complements: Vec<usize>,
}

#[derive(Args)]
struct EngineArgs {
    #[arg(long, value_enum, default_value_t = Field::Rational)]
    coefficients: Field,
    /// Run the shelling search alongside decomposability and fail on disagreement.
    #[arg(long)]
    audit: bool,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Node cap for each shellability search; exhausted searches are undecided.
    #[arg(long, value_name = "NODES")]
    budget: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Field {
    Rational,
    Gf2,
}

#[derive(Clone, Copy, ValueEnum)]
enum UniverseArg {
    All,
    Covering,
}

fn family_names() -> clap::builder::PossibleValuesParser {
    clap::builder::PossibleValuesParser::new(Family::ALL.map(Family::name))
}

impl EngineArgs {
    fn options(&self) -> ClassifyOptions {
        ClassifyOptions {
            coefficients: match self.coefficients {
                Field::Rational => Coefficients::Rational,
                Field::Gf2 => Coefficients::Gf2,
            },
            audit: self.audit,
            budget: self.budget,
        }
    }

    fn install_pool(&self) -> Result<(), Failure> {
        if let Some(jobs) = self.jobs {
            rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build_global()
                .map_err(|e| Failure::Internal(e.to_string()))?;
        }
        Ok(())
    }
}

#[derive(Debug)]
pub enum Failure {
    Parse(Error),
    Io(io::Error),
    Internal(String),
    Undecided(usize),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Undecided(_) => 3,
            Failure::Io(_) | Failure::Internal(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Parse(Error::NotAntichain { smaller, larger }) => {
                let labels = LabeledGround::numbered(larger.span());
                write!(
                    f,
                    "not an antichain: {} is a proper subset of {}",
                    labels.format_set(*smaller),
                    labels.format_set(*larger)
                )
            }
            Failure::Parse(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "I/O error: {e}"),
            Failure::Internal(m) => f.write_str(m),
            Failure::Undecided(k) => write!(f, "{k} shellability verdict(s) undecided within the node budget"),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::NotAntichain { .. }
            | Error::LabelOutOfRange { .. }
            | Error::DuplicateLabel(_)
            | Error::GroundTooLarge(_)
            | Error::InvalidParameters(_) => Failure::Parse(e),
            other => Failure::Internal(other.to_string()),
        }
    }
}

/// Writes a line to stdout; a closed pipe is not an error.
fn emit(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match writeln!(out, "{text}").and_then(|_| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_report(
    c: &clutter_core::Clutter,
    labels: &LabeledGround,
    report: &ReportArgs,
    engine: &EngineArgs,
) -> Result<(), Failure> {
    let opts = AnalyzeOptions {
        classify: engine.options(),
        certificates: report.certificates,
        complements: report.complements.clone(),
    };
    let r = analyze(c, labels, &opts)?;
    let text = serde_json::to_string_pretty(&r).map_err(|e| Failure::Internal(e.to_string()))?;
    emit(&text)?;
    if r.record.shellable.is_none() {
        return Err(Failure::Undecided(1));
    }
    Ok(())
}

fn execute(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Analyze { clutter, n, report, engine } => {
            engine.install_pool()?;
            let (c, labels) = parse_clutter(&clutter, n)?;
            print_report(&c, &labels, &report, &engine)
        }
        Command::Classify { n, out, resume, universe, cache_dir, engine } => {
            engine.install_pool()?;
            let run = ClassifyRun {
                n: n as usize,
                out,
                resume,
                universe: match universe {
                    UniverseArg::All => Universe::All,
                    UniverseArg::Covering => Universe::Covering,
                },
                options: engine.options(),
                cache_dir,
            };
            let outcome = classify_command(&run)?;
            for (u, s) in &outcome.summaries {
                let parts: Vec<String> = clutter_core::classify::Summary::FIELDS
                    .iter()
                    .zip(s.values())
                    .map(|(name, v)| format!("{name}={v}"))
                    .collect();
                emit(&format!("{}: {}", u.name(), parts.join(" ")))?;
            }
            if outcome.undecided > 0 {
                return Err(Failure::Undecided(outcome.undecided));
            }
            Ok(())
        }
        Command::Family { name, params, analyze, report, engine } => {
            engine.install_pool()?;
            let family: Family = name.parse()?;
            let c = FamilySpec::new(family, params).build()?;
            let labels = LabeledGround::numbered(c.n());
            if analyze {
                print_report(&c, &labels, &report, &engine)
            } else {
                emit(&format_clutter(&c, &labels))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
