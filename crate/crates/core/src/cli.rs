//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure (or an internal
//! consistency error), 2 a surjectivity flag failed in `table`, 64 usage
//! error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::boundary_maps::{rank_table, v_basis};
use crate::dyer_lashof::{normalize, OpSequence};
use crate::loop_homology::{q_generators, BaseSpace};
use crate::report::{Format, Report};
use crate::verify::{run_suite, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_NOT_SURJECTIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Degree cap applied unless overridden.
pub const DEFAULT_HARD_CAP: u32 = 24;
pub const CAP_ENV: &str = "LOOPALGEBRA_MAX_DEGREE";

#[derive(Debug, Parser)]
#[command(
    name = "loopalgebra",
    version,
    about = "Mod-2 homology of Ω₀^∞MTO(1) and Ω₀^∞MTO(2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "md")]
    format: Format,
    /// Allow degrees above the hard cap (prints a warning).
    #[arg(long)]
    unsafe_max_degree: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ranks of QH_n and H_n of Ω₀^∞MTO(2).
    Table {
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Rewrite Q^{s_1}…Q^{s_k} into admissible monomials.
    Adem {
        #[arg(required = true, num_args = 1..)]
        entries: Vec<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Polynomial generators of H_n(Q₀(Y₊)).
    Generators {
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long)]
        degree: u32,
        #[command(flatten)]
        common: Common,
    },
    /// The basis v^{I,i} of ker Q(∂̄_*) in one degree.
    KernelBasis {
        #[arg(long)]
        degree: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Replaces every default degree cap of the selected suites.
        #[arg(long)]
        max_degree: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SpaceArg {
    S0,
    Bo1,
    Bo2,
}

impl From<SpaceArg> for BaseSpace {
    fn from(s: SpaceArg) -> Self {
        match s {
            SpaceArg::S0 => BaseSpace::Point,
            SpaceArg::Bo1 => BaseSpace::Bo1,
            SpaceArg::Bo2 => BaseSpace::Bo2,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Adem,
    Hopf,
    Mto1,
    Mto2,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Adem => vec![Suite::Adem],
            SuiteArg::Hopf => vec![Suite::Hopf],
            SuiteArg::Mto1 => vec![Suite::Mto1],
            SuiteArg::Mto2 => vec![Suite::Mto2],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

struct Usage(String);

/// The cap from the environment, or the default.
fn hard_cap(env_value: Option<&str>) -> Result<u32, Usage> {
    match env_value {
        None => Ok(DEFAULT_HARD_CAP),
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| Usage(format!("{CAP_ENV}={v} is not a nonnegative integer"))),
    }
}

fn check_degree(
    what: &str,
    degree: u32,
    min: u32,
    common: &Common,
    cap: u32,
    err: &mut dyn Write,
) -> Result<(), Usage> {
    if degree < min {
        return Err(Usage(format!(
            "{what} must be at least {min}, got {degree}"
        )));
    }
    if degree > cap {
        if !common.unsafe_max_degree {
            return Err(Usage(format!(
                "{what} {degree} exceeds the hard cap {cap}; pass --unsafe-max-degree or set {CAP_ENV}"
            )));
        }
        let _ = writeln!(
            err,
            "warning: {what} {degree} exceeds the hard cap {cap}; this may take a long time"
        );
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command and writes the
/// report to `out`, diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, cap_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    match execute(cli.command, echo, cap_env, err) {
        Ok((report, format, code)) => {
            let _ = write!(out, "{}", report.render(format));
            code
        }
        Err(Failure::Usage(Usage(msg))) => {
            let _ = writeln!(err, "error: {msg}\n\nFor more information, try '--help'.");
            EXIT_USAGE
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_VERIFY_FAILED
        }
    }
}

enum Failure {
    Usage(Usage),
    Internal(String),
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u)
    }
}

fn opt(v: Option<u64>) -> Value {
    v.map_or(Value::Null, Value::from)
}

fn execute(
    command: Command,
    echo: String,
    cap_env: Option<&str>,
    err: &mut dyn Write,
) -> Result<(Report, Format, i32), Failure> {
    let cap = hard_cap(cap_env)?;
    match command {
        Command::Table { max_degree, common } => {
            check_degree("--max-degree", max_degree, 1, &common, cap, err)?;
            let table = rank_table(max_degree).map_err(|e| Failure::Internal(e.to_string()))?;
            let mut report = Report::new(
                echo,
                &[
                    "degree",
                    "dim_qh_qbo2",
                    "dim_qh_mto1",
                    "rank_dpartial",
                    "surjective",
                    "qh",
                    "h",
                ],
            )
            .param("max_degree", max_degree);
            for r in &table.rows {
                report.push(vec![
                    json!(r.degree),
                    json!(r.dim_qh_qbo2),
                    json!(r.dim_qh_mto1),
                    json!(r.rank_dpartial),
                    json!(r.surjective),
                    opt(r.qh),
                    opt(r.h),
                ]);
            }
            let code = if table.all_surjective() {
                EXIT_OK
            } else {
                EXIT_NOT_SURJECTIVE
            };
            Ok((report, common.format, code))
        }
        Command::Adem { entries, common } => {
            let seq = OpSequence::new(entries);
            check_degree(
                "degree of the sequence",
                seq.degree(),
                0,
                &common,
                cap.max(64),
                err,
            )?;
            let expansion = normalize(&seq);
            let mut report = Report::new(echo, &["term", "degree", "excess"]).param("input", &seq);
            report.summary = Some(expansion.terms.to_string());
            for t in expansion.terms.iter() {
                report.push(vec![
                    json!(t.to_string()),
                    json!(t.degree()),
                    json!(t.excess().to_string()),
                ]);
            }
            Ok((report, common.format, EXIT_OK))
        }
        Command::Generators {
            space,
            degree,
            common,
        } => {
            check_degree("--degree", degree, 1, &common, cap, err)?;
            let space = BaseSpace::from(space);
            let mut report = Report::new(echo, &["index", "generator", "ops", "base", "excess"])
                .param("space", space)
                .param("degree", degree);
            for (k, g) in q_generators(space, degree).iter().enumerate() {
                report.push(vec![
                    json!(k),
                    json!(g.to_string()),
                    json!(g.ops.to_string()),
                    json!(g.base.to_string()),
                    json!(g.ops.excess().to_string()),
                ]);
            }
            report.summary = Some(format!("{} generators", report.records.len()));
            Ok((report, common.format, EXIT_OK))
        }
        Command::KernelBasis { degree, common } => {
            check_degree("--degree", degree, 1, &common, cap, err)?;
            let mut report =
                Report::new(echo, &["index", "v", "ops", "i", "ambient"]).param("degree", degree);
            for (k, v) in v_basis(degree).iter().enumerate() {
                report.push(vec![
                    json!(k),
                    json!(v.key.to_string()),
                    json!(v.key.ops.to_string()),
                    json!(v.key.index),
                    json!(v.ambient.to_string()),
                ]);
            }
            report.summary = Some(format!("{} kernel generators", report.records.len()));
            Ok((report, common.format, EXIT_OK))
        }
        Command::Verify {
            suite,
            max_degree,
            common,
        } => {
            if let Some(d) = max_degree {
                check_degree("--max-degree", d, 1, &common, cap, err)?;
            }
            let mut report = Report::new(
                echo,
                &["suite", "check", "max_degree", "cases", "status", "witness"],
            )
            .param("suite", format!("{suite:?}").to_lowercase());
            if let Some(d) = max_degree {
                report = report.param("max_degree", d);
            }
            let mut all_pass = true;
            for s in suite.suites() {
                for o in run_suite(s, max_degree) {
                    all_pass &= o.passed;
                    report.push(vec![
                        json!(o.suite),
                        json!(o.check),
                        json!(o.max_degree),
                        json!(o.cases),
                        json!(if o.passed { "pass" } else { "fail" }),
                        o.witness.map_or(Value::Null, Value::from),
                    ]);
                }
            }
            report.summary = Some(if all_pass {
                "all checks pass".into()
            } else {
                "FAILED".into()
            });
            Ok((
                report,
                common.format,
                if all_pass {
                    EXIT_OK
                } else {
                    EXIT_VERIFY_FAILED
                },
            ))
        }
    }
}
