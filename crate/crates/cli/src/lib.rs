//! The `mealy` command-line tool.
//!
//! Exit codes: 0 pass, 1 a check failed (witnesses printed), 2 usage or
//! input error, 3 a resource cap stopped the run before it finished.

pub mod document;
pub mod dot;
pub mod family_spec;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use automaton_groups::machine::{apply_state_word, Limits, DEFAULT_MAX_ORBIT, DEFAULT_MAX_PAIRS};
use automaton_groups::transforms::{
    classify, dual_automaton, inverse_automaton, reverse_automaton,
};
use automaton_groups::verify::{run_suite, OrbitClass, Status, Suite, SuiteParams};
use automaton_groups::{MealyMachine, Scope};

use family_spec::{parse_scope, parse_state_word, with_inverses_if_needed, FamilySpec};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("document: {0}")]
    Document(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] automaton_groups::Error),
    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_resource() => EXIT_INCOMPLETE,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "mealy",
    version,
    about = "Mealy automata, automaton groups, and bounded verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a family member as a document (or a DOT diagram).
    Family {
        /// aleshin, bellaterra, inverse, u, d, e, dual-aleshin, dual-bellaterra
        /// (optionally `kind:n` or `kind:{n1,n2}`).
        kind: String,
        /// Index `n` or index set `{n1,n2}`; omitted means the classic automaton.
        n: Option<String>,
        #[arg(long)]
        dot: bool,
    },
    /// Apply the state word ξ to an input word.
    Act {
        #[command(flatten)]
        source: Source,
        /// Whitespace-separated states; `q'` is the inverse of `q`.
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Test invertibility, reversibility, or bi-reversibility.
    Check {
        #[command(flatten)]
        source: Source,
        property: Property,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Print the inverse, reverse, or dual automaton.
    Transform {
        op: TransformOp,
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Debug, Args)]
pub struct Source {
    /// Family such as `aleshin:1` or `bellaterra:{0,2}` (default: aleshin).
    #[arg(long, conflicts_with = "machine")]
    pub family: Option<String>,
    /// Path to an automaton document.
    #[arg(long)]
    pub machine: Option<PathBuf>,
}

impl Source {
    fn load(&self) -> Result<MealyMachine, CliError> {
        match (&self.family, &self.machine) {
            (_, Some(path)) => document::read_machine(&std::fs::read_to_string(path)?),
            (Some(family), None) => family.parse::<FamilySpec>()?.build(),
            (None, None) => "aleshin".parse::<FamilySpec>()?.build(),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Property {
    Invertible,
    Reversible,
    Bireversible,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TransformOp {
    Inverse,
    Reverse,
    Dual,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// freeness, free-product, identities, duality, chi, orbits, transitivity, witnesses
    pub suite: String,
    /// Single index n.
    #[arg(long, conflicts_with_all = ["big_n", "classic"])]
    pub n: Option<u32>,
    /// Index set, e.g. `{1,2}`.
    #[arg(long = "N", id = "big_n", conflicts_with = "classic")]
    pub big_n: Option<String>,
    /// The classic three-state automata (the default).
    #[arg(long)]
    pub classic: bool,
    /// Word-length bound (suite default when omitted).
    #[arg(long)]
    pub max_len: Option<usize>,
    /// Level bound for transitivity.
    #[arg(long)]
    pub max_level: Option<usize>,
    /// Cap on reachable product states per decision.
    #[arg(long, default_value_t = DEFAULT_MAX_PAIRS)]
    pub cap: usize,
    /// Cap on orbit and level sizes.
    #[arg(long, default_value_t = DEFAULT_MAX_ORBIT)]
    pub max_orbit: usize,
    /// Orbit statement: pattern, marked, no_double_letter.
    #[arg(long)]
    pub which: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Append elapsed time to text reports.
    #[arg(long)]
    pub timing: bool,
}

impl VerifyArgs {
    fn scope(&self) -> Result<Scope, CliError> {
        Ok(match (&self.n, &self.big_n) {
            (Some(n), _) => Scope::single(*n),
            (None, Some(set)) => parse_scope(set)?,
            (None, None) => Scope::Classic,
        })
    }
}

fn emit_machine(out: &mut dyn Write, m: &MealyMachine, dot: bool) -> Result<(), CliError> {
    if dot {
        out.write_all(dot::to_dot(m).as_bytes())?;
    } else {
        out.write_all(document::write_machine(m)?.as_bytes())?;
    }
    Ok(())
}

/// Runs a parsed command, writing results to `out`; returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Family { kind, n, dot } => {
            let family: FamilySpec = match n {
                Some(n) => format!("{kind}:{n}").parse()?,
                None => kind.parse()?,
            };
            emit_machine(out, &family.build()?, *dot)?;
            Ok(EXIT_PASS)
        }
        Command::Act { source, xi, word } => {
            let m = with_inverses_if_needed(source.load()?, xi)?;
            let xi = parse_state_word(m.states(), xi)?;
            let w = m.alphabet().parse_word(word)?;
            let image = apply_state_word(&m, &xi, &w)?;
            writeln!(out, "{}", m.alphabet().format_word(&image))?;
            Ok(EXIT_PASS)
        }
        Command::Check { source, property } => {
            let m = source.load()?;
            let c = classify(&m);
            let (holds, witness) = match property {
                Property::Invertible => (c.invertible, c.invertible_witness),
                Property::Reversible => (c.reversible, c.reversible_witness),
                Property::Bireversible => (c.bireversible, c.bireversible_witness),
            };
            writeln!(out, "machine {}", m.name())?;
            writeln!(out, "invertible {}", c.invertible)?;
            writeln!(out, "reversible {}", c.reversible)?;
            writeln!(out, "bireversible {}", c.bireversible)?;
            if let Some(w) = witness {
                writeln!(
                    out,
                    "witness state={} letter={}",
                    m.state_name(w.state),
                    m.alphabet().name(w.letter)
                )?;
            }
            for d in &c.defects {
                writeln!(out, "defect {d}")?;
            }
            let pass = holds && c.defects.is_empty();
            writeln!(out, "status {}", if pass { "pass" } else { "fail" })?;
            Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Verify(args) => {
            let suite: Suite = args.suite.parse()?;
            let which = args
                .which
                .as_deref()
                .map(str::parse::<OrbitClass>)
                .transpose()?;
            let params = SuiteParams {
                scope: args.scope()?,
                max_len: args.max_len,
                max_level: args.max_level,
                which,
                limits: Limits {
                    max_pairs: args.cap,
                    max_orbit: args.max_orbit,
                },
            };
            let report = run_suite(suite, &params)?;
            match args.format {
                Format::Text => out.write_all(report.to_text(args.timing).as_bytes())?,
                Format::Structured => {
                    serde_json::to_writer_pretty(&mut *out, &report)?;
                    writeln!(out)?;
                }
            }
            Ok(match report.status() {
                Status::Pass => EXIT_PASS,
                Status::Fail => EXIT_FAIL,
                Status::Incomplete => EXIT_INCOMPLETE,
            })
        }
        Command::Transform { op, source, dot } => {
            let m = source.load()?;
            let t = match op {
                TransformOp::Inverse => inverse_automaton(&m)?,
                TransformOp::Reverse => reverse_automaton(&m)?,
                TransformOp::Dual => dual_automaton(&m),
            };
            emit_machine(out, &t, *dot)?;
            Ok(EXIT_PASS)
        }
    }
}
