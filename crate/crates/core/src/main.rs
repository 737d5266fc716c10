use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use double_brackets::cli::{run_text, Format, Outcome, EXIT_ERROR};

/// Exact double brackets, Poisson verdicts and induced brackets on representation spaces.
#[derive(Parser)]
#[command(name = "dbr", version)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, default_value = "plain", value_parser = clap::value_parser!(FormatArg))]
    format: FormatArg,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy)]
struct FormatArg(Format);

impl std::str::FromStr for FormatArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(FormatArg)
    }
}

impl clap::builder::ValueParserFactory for FormatArg {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<FormatArg>())
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a session file, or standard input when no file is given.
    Run { file: Option<PathBuf> },
    /// Yang-Baxter commands, e.g. `dbr ybe check r.txt` or `dbr ybe standard 3`.
    Ybe {
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, required = true)]
        args: Vec<String>,
    },
    /// Gradient brackets, e.g. `dbr gradient classify --family sum-power --degree 4`.
    Gradient {
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, required = true)]
        args: Vec<String>,
    },
}

fn read_input(file: Option<PathBuf>) -> Result<String, String> {
    match file {
        Some(p) => std::fs::read_to_string(&p).map_err(|e| format!("cannot read {}: {e}", p.display())),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| format!("cannot read standard input: {e}"))?;
            Ok(s)
        }
    }
}

/// One command line from shell arguments. Each argument stays a single token, so
/// `--poly "x1*x2 + x2*x1"` works.
fn command_line(head: &str, args: &[String]) -> String {
    let tokens: Vec<String> = args.iter().map(|a| a.split_whitespace().collect()).collect();
    format!("{head} {}\n", tokens.join(" "))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format.0;
    let outcome = match cli.command {
        Cmd::Run { file } => match read_input(file) {
            Ok(text) => run_text(&text, format),
            Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: EXIT_ERROR },
        },
        Cmd::Ybe { args } => run_text(&command_line("ybe", &args), format),
        Cmd::Gradient { args } => run_text(&command_line("gradient", &args), format),
    };
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code as u8)
}
