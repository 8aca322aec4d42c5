use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use semisim::cli::{self, GroupKind, CAP_ENV, DEFAULT_LIST_LIMIT};
use semisim::perm::DEFAULT_CAP;
use semisim::report::{ErrorKind, Report};
use semisim::{SearchConfig, SearchMode};

#[derive(Parser, Debug)]
#[command(
    name = "semisim",
    version,
    about = "Combinatorial self-similarities of finite semimetric spaces"
)]
struct Args {
    /// Largest point count for exhaustive permutation search
    #[arg(long, global = true, env = CAP_ENV, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Emit one JSON record instead of key: value lines
    #[arg(long, global = true)]
    machine: bool,
    /// Write the report (or, for `example`, the matrix file) here
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Group search strategy
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exhaustive)]
    mode: Mode,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    Exhaustive,
    Pruned,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Which {
    Cs,
    Iso,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and check a matrix file
    Validate {
        path: PathBuf,
        /// Also require the triangle inequality
        #[arg(long)]
        metric: bool,
    },
    /// Structural classification, cross-checked by brute force
    Classify { path: PathBuf },
    /// Self-similarity (cs) or self-isometry (iso) group
    Group {
        path: PathBuf,
        #[arg(value_enum, default_value_t = Which::Cs)]
        which: Which,
        /// Omit the element list above this order
        #[arg(long, default_value_t = DEFAULT_LIST_LIMIT)]
        list_limit: usize,
    },
    /// Decide combinatorial similarity of two spaces
    Similar { a: PathBuf, b: PathBuf },
    /// Census over every equality pattern on n points
    Enumerate { n: usize },
    /// Write a named example: rectangle, pseudolinear(s,t), discrete(n,k), rigid(n), rigid(n,metric)
    Example { name: String },
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                ErrorKind::Usage.exit_code() as u8
            } else {
                0
            });
        }
    };
    let config = SearchConfig {
        cap: args.cap,
        mode: match args.mode {
            Mode::Exhaustive => SearchMode::Exhaustive,
            Mode::Pruned => SearchMode::Pruned,
        },
    };

    let report = match &args.command {
        Command::Validate { path, metric } => cli::cmd_validate(path, *metric),
        Command::Classify { path } => cli::cmd_classify(path, &config),
        Command::Group {
            path,
            which,
            list_limit,
        } => {
            let kind = match which {
                Which::Cs => GroupKind::Cs,
                Which::Iso => GroupKind::Iso,
            };
            cli::cmd_group(path, kind, &config, *list_limit)
        }
        Command::Similar { a, b } => cli::cmd_similar(a, b),
        Command::Enumerate { n } => cli::cmd_enumerate(*n, &config),
        Command::Example { name } => match &args.output {
            Some(out) => {
                let report = cli::cmd_example(name, out);
                return emit(&report, None, args.machine);
            }
            None => match cli::example_space(name) {
                Ok(space) => {
                    print!("{}", space.to_matrix_string());
                    return ExitCode::SUCCESS;
                }
                Err(e) => {
                    let mut report = Report::new("example").input("name", name);
                    report.fail(ErrorKind::Usage, e.to_string());
                    report
                }
            },
        },
    };
    emit(&report, args.output.as_ref(), args.machine)
}

fn emit(report: &Report, output: Option<&PathBuf>, machine: bool) -> ExitCode {
    let text = report.render(machine);
    match output {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(ErrorKind::Input.exit_code() as u8);
            }
        }
        None => print!("{text}"),
    }
    if !report.is_ok() {
        if let semisim::report::Status::Error { message, .. } = &report.status {
            eprintln!("semisim: {message}");
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
