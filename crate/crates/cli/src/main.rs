use clap::{Parser, Subcommand};
use std::io::Read;
use std::process::ExitCode;
use wittbrauer_cli::{make_ctx, run_check, run_fold, run_pi, run_realize, run_witt, CliError};

/// Exact symbol calculus for cyclic algebras in characteristic p.
#[derive(Parser)]
#[command(name = "wittbrauer", version, about)]
struct Cli {
    /// Characteristic of the base field (a prime).
    #[arg(long, global = true, default_value_t = 2)]
    prime: u64,

    /// Comma-separated indeterminate names of the function field.
    #[arg(long, global = true, default_value = "t,s")]
    vars: String,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the randomized self-check suites.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fold a tensor product of symbols into one cyclic representative.
    ///
    /// Expression grammar: `[(e1,...,em), b)_{p^m}` joined by `*`.
    /// Reads stdin when no expression is given.
    Fold { expr: Option<String> },
    /// Evaluate one Witt vector operation: `op (vector) [vector]`.
    ///
    /// Ops: add, sub, mul (binary); neg, inv, frob, wp, mulp (unary).
    Witt { input: Option<String> },
    /// Solve for the correction vector of the shift beta -> beta + x^(p^m).
    Pi {
        #[arg(long)]
        beta: String,
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Realize a symbol as a structure-constant algebra.
    Realize { expr: Option<String> },
    /// Run the self-check property suites.
    Check,
}

fn read_arg_or_stdin(arg: Option<String>) -> Result<String, CliError> {
    match arg {
        Some(s) => Ok(s),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Usage(format!("cannot read stdin: {}", e)))?;
            if buf.trim().is_empty() {
                return Err(CliError::Usage("no expression given".into()));
            }
            Ok(buf)
        }
    }
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let ctx = make_ctx(cli.prime, &cli.vars)?;
    match cli.cmd {
        Command::Fold { expr } => {
            let text = read_arg_or_stdin(expr)?;
            Ok((run_fold(&text, &ctx, cli.json)?, true))
        }
        Command::Witt { input } => {
            let text = read_arg_or_stdin(input)?;
            Ok((run_witt(&text, &ctx, cli.json)?, true))
        }
        Command::Pi { beta, x, m } => Ok((run_pi(&beta, &x, m, &ctx, cli.json)?, true)),
        Command::Realize { expr } => {
            let text = read_arg_or_stdin(expr)?;
            Ok((run_realize(&text, &ctx, cli.json)?, true))
        }
        Command::Check => Ok(run_check(cli.seed, cli.json)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((output, ok)) => {
            print!("{}", output);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
