//! Command-line driver for the proxy solvers.
//!
//! Exit codes: 0 on success, 1 when the reported arrangement is not
//! representative, 2 on any input or usage error.

pub mod document;
pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use proxyrep_core::elections::outcomes;
use proxyrep_core::restricted::{
    gen_lower_restricted, restricted_bound, solve_restricted_optimal, upper_bound_restricted,
};
use proxyrep_core::unrestricted::{
    approx_lower_bound, dual_theta_for_k, gen_lower_unrestricted, solve_unrestricted_optimal,
    unrestricted_bound, upper_bound_unrestricted,
};
use proxyrep_core::verify::verify_arrangement;
use proxyrep_core::{Arrangement, Instance, Profile, Rational, Side, TieBreak};

use document::{
    emit, parse_instance, parse_positions, parse_rational, Bounds, DocError, InstanceDocument,
    Mode, Outcome, ResultDocument, Status, ViolationDocument,
};

#[derive(Parser, Debug)]
#[command(
    name = "proxyrep",
    version,
    about = "Representative proxy placement on a line"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smallest representative arrangement.
    Solve {
        #[command(flatten)]
        io: InstanceIo,
        /// Which solver family to use.
        #[arg(long, value_enum)]
        mode: Positioning,
        /// Side that wins a voter equidistant from two candidates or proxies.
        #[arg(long, value_enum, default_value_t = Tie::Left)]
        tiebreak: Tie,
    },
    /// Arrangement within the guaranteed size bound.
    Bound {
        #[command(flatten)]
        io: InstanceIo,
        /// Which solver family to use.
        #[arg(long, value_enum)]
        mode: Positioning,
        /// Side that wins a voter equidistant from two candidates or proxies.
        #[arg(long, value_enum, default_value_t = Tie::Left)]
        tiebreak: Tie,
    },
    /// Instance on which the size bound is tight.
    Genlower {
        /// Which solver family to use.
        #[arg(long, value_enum)]
        mode: Positioning,
        /// Representation threshold, a rational in (0, 1).
        #[arg(long)]
        theta: String,
        /// Write the result here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Threshold reachable with a budget of `k` proxies, and an arrangement reaching it.
    Dual {
        #[command(flatten)]
        io: InstanceIo,
        /// Proxy budget, at least 3.
        #[arg(long)]
        k: usize,
        /// Side that wins a voter equidistant from two candidates or proxies.
        #[arg(long, value_enum, default_value_t = Tie::Left)]
        tiebreak: Tie,
    },
    /// Checks an arrangement.
    Verify {
        #[command(flatten)]
        io: InstanceIo,
        /// File holding the proxies, or an inline comma-separated list.
        #[arg(long)]
        arrangement: String,
        /// Side that wins a voter equidistant from two candidates or proxies.
        #[arg(long, value_enum, default_value_t = Tie::Left)]
        tiebreak: Tie,
    },
    /// Compares the direct and the proxy median election.
    Elect {
        #[command(flatten)]
        io: InstanceIo,
        /// File holding the proxies, or an inline comma-separated list.
        #[arg(long)]
        arrangement: String,
        /// File holding voter positions, or an inline comma-separated list.
        #[arg(long)]
        profile: String,
        /// Side that wins a voter equidistant from two candidates or proxies.
        #[arg(long, value_enum, default_value_t = Tie::Left)]
        tiebreak: Tie,
        /// Median taken for an even number of votes.
        #[arg(long, value_enum, default_value_t = MedianSide::Leftmost)]
        side: MedianSide,
    },
    /// SVG picture of an instance and optionally an arrangement.
    Render {
        #[command(flatten)]
        io: InstanceIo,
        /// File holding the proxies, or an inline comma-separated list.
        #[arg(long)]
        arrangement: Option<String>,
    },
}

#[derive(Args, Debug)]
struct InstanceIo {
    /// Instance document; standard input when absent.
    input: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Positioning {
    Restricted,
    Unrestricted,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Tie {
    Left,
    Right,
}

impl From<Tie> for TieBreak {
    fn from(t: Tie) -> TieBreak {
        match t {
            Tie::Left => TieBreak::AlwaysLeft,
            Tie::Right => TieBreak::AlwaysRight,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MedianSide {
    Leftmost,
    Rightmost,
}

impl From<MedianSide> for Side {
    fn from(s: MedianSide) -> Side {
        match s {
            MedianSide::Leftmost => Side::Leftmost,
            MedianSide::Rightmost => Side::Rightmost,
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Doc(#[from] DocError),
    #[error(transparent)]
    Core(#[from] proxyrep_core::Error),
}

/// What a command produced: text for the output and whether it reports a violation.
struct Output {
    text: String,
    violation: bool,
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(
        args,
        &mut io::stdin().lock(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    )
}

/// [`run`] with explicit streams.
pub fn run_with<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(sink, "{rendered}");
            return if code == 0 { 0 } else { 2 };
        }
    };
    let out_path = match &cli.command {
        Command::Genlower { out, .. } => out.clone(),
        Command::Solve { io, .. }
        | Command::Bound { io, .. }
        | Command::Dual { io, .. }
        | Command::Verify { io, .. }
        | Command::Elect { io, .. }
        | Command::Render { io, .. } => io.out.clone(),
    };
    let result = execute(cli.command, stdin).and_then(|output| {
        match out_path {
            Some(path) => {
                fs::write(&path, &output.text).map_err(|source| CliError::Io { path, source })?
            }
            None => {
                let _ = stdout.write_all(output.text.as_bytes());
            }
        }
        Ok(output.violation)
    });
    match result {
        Ok(false) => 0,
        Ok(true) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn read_source(path: Option<&Path>, stdin: &mut dyn Read) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = fs::read_to_string(p).map_err(|source| CliError::Io {
                path: p.to_path_buf(),
                source,
            })?;
        }
        None => {
            stdin
                .read_to_string(&mut text)
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdin>"),
                    source,
                })?;
        }
    }
    Ok(text)
}

/// A file's contents when `arg` names an existing file, otherwise `arg` itself.
fn inline_or_file(arg: &str) -> Result<String, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })
    } else {
        Ok(arg.to_string())
    }
}

fn load_instance(io: &InstanceIo, stdin: &mut dyn Read) -> Result<Instance, CliError> {
    Ok(parse_instance(&read_source(io.input.as_deref(), stdin)?)?)
}

fn load_arrangement(arg: &str) -> Result<Arrangement, CliError> {
    Ok(Arrangement::new(parse_positions(&inline_or_file(arg)?)?)?)
}

fn result_document(inst: &Instance, mode: Mode, arr: &Arrangement, tb: TieBreak) -> ResultDocument {
    let check = verify_arrangement(inst, arr, tb);
    ResultDocument {
        mode,
        theta: inst.theta().clone(),
        count: arr.len(),
        proxies: arr.proxies().to_vec(),
        status: if check.is_ok() {
            Status::Ok
        } else {
            Status::Violation
        },
        violation: check.err().map(|v| ViolationDocument::new(inst, &v)),
        bounds: None,
        outcome: None,
    }
}

fn bounds(inst: &Instance, positioning: Positioning) -> Bounds {
    let upper = match positioning {
        Positioning::Restricted => restricted_bound(inst.theta()),
        Positioning::Unrestricted => unrestricted_bound(inst.theta()),
    };
    Bounds {
        upper,
        lower: approx_lower_bound(inst),
    }
}

fn report(doc: ResultDocument) -> Output {
    Output {
        violation: doc.status == Status::Violation,
        text: emit(&doc),
    }
}

fn execute(command: Command, stdin: &mut dyn Read) -> Result<Output, CliError> {
    match command {
        Command::Solve { io, mode, tiebreak } => {
            let inst = load_instance(&io, stdin)?;
            let tb = tiebreak.into();
            let (arr, doc_mode) = match mode {
                Positioning::Restricted => (
                    solve_restricted_optimal(&inst, tb).arrangement,
                    Mode::Restricted,
                ),
                Positioning::Unrestricted => (
                    solve_unrestricted_optimal(&inst, tb).arrangement,
                    Mode::Unrestricted,
                ),
            };
            let mut doc = result_document(&inst, doc_mode, &arr, tb);
            doc.bounds = Some(bounds(&inst, mode));
            Ok(report(doc))
        }
        Command::Bound { io, mode, tiebreak } => {
            let inst = load_instance(&io, stdin)?;
            let (arr, doc_mode) = match mode {
                Positioning::Restricted => (upper_bound_restricted(&inst), Mode::BoundRestricted),
                Positioning::Unrestricted => {
                    (upper_bound_unrestricted(&inst), Mode::BoundUnrestricted)
                }
            };
            let mut doc = result_document(&inst, doc_mode, &arr, tiebreak.into());
            doc.bounds = Some(bounds(&inst, mode));
            Ok(report(doc))
        }
        Command::Genlower { mode, theta, .. } => {
            let theta = parse_rational(&theta)?;
            let (inst, label) = match mode {
                Positioning::Restricted => (gen_lower_restricted(&theta)?, "restricted"),
                Positioning::Unrestricted => (gen_lower_unrestricted(&theta)?, "unrestricted"),
            };
            let name = format!("{label} lower bound, theta {theta}");
            Ok(Output {
                text: emit(&InstanceDocument::from_instance(&inst, Some(name))),
                violation: false,
            })
        }
        Command::Dual { io, k, tiebreak } => {
            let inst = load_instance(&io, stdin)?;
            let (theta, arr) = dual_theta_for_k(&inst, k)?;
            let scaled = inst.with_theta(theta)?;
            let mut doc = result_document(&scaled, Mode::Dual, &arr, tiebreak.into());
            doc.bounds = Some(bounds(&scaled, Positioning::Unrestricted));
            Ok(report(doc))
        }
        Command::Verify {
            io,
            arrangement,
            tiebreak,
        } => {
            let inst = load_instance(&io, stdin)?;
            let arr = load_arrangement(&arrangement)?;
            Ok(report(result_document(
                &inst,
                Mode::Verify,
                &arr,
                tiebreak.into(),
            )))
        }
        Command::Elect {
            io,
            arrangement,
            profile,
            tiebreak,
            side,
        } => {
            let inst = load_instance(&io, stdin)?;
            let arr = load_arrangement(&arrangement)?;
            let profile = Profile::new(parse_positions(&inline_or_file(&profile)?)?)?;
            let tb = tiebreak.into();
            let (direct, delegated) = outcomes(&profile, &inst, &arr, tb, side.into());
            let mut doc = result_document(&inst, Mode::Elect, &arr, tb);
            let (direct, proxy) = (
                inst.candidate(direct).clone(),
                inst.candidate(delegated).clone(),
            );
            let distance: Rational = num_traits::Signed::abs(&(&direct - &proxy));
            doc.outcome = Some(Outcome {
                direct,
                proxy,
                distance,
            });
            Ok(report(doc))
        }
        Command::Render { io, arrangement } => {
            let inst = load_instance(&io, stdin)?;
            let arr = arrangement.as_deref().map(load_arrangement).transpose()?;
            Ok(Output {
                text: svg::render_svg(&inst, arr.as_ref()),
                violation: false,
            })
        }
    }
}
