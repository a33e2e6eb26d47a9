mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::Value;

use commands::{load_text, parse_text, run, Failure, Request};

#[derive(Parser, Debug)]
#[command(
    name = "lspace",
    version,
    about = "L-space surgery intervals, Seifert fibered L-spaces and torus gluings"
)]
struct Cli {
    /// Process a JSON-lines file of requests, one output line per request.
    #[arg(long, value_name = "FILE", exclusive = true)]
    batch: Option<String>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// L-space interval of a manifold.
    Interval {
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        witness: Option<String>,
    },
    /// Decide one slope and cross-check the equivalent formulations.
    Check {
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        #[arg(long, allow_hyphen_values = true)]
        witness: Option<String>,
    },
    /// List D^tau.
    Dtau { input: String },
    /// Seifert fibered space over S^2.
    Sfs {
        input: String,
        /// Thresholds for fiber j (1-based).
        #[arg(long)]
        fiber: Option<usize>,
    },
    /// Gluing of two manifolds along their boundary tori.
    Glue { input: String },
    /// Coloring verdict for Y(nu) given the L-space filling Y(mu).
    Oracle {
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, default_value_t = 1)]
        window: i64,
    },
    /// Type D structure as a DOT graph.
    Cfd {
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long)]
        twist_compare: bool,
    },
    /// Generalized and Floer homology solid torus report.
    Gst { input: String },
    /// Run the cross-validation corpus.
    Selftest {
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn inline(arg: &str) -> Result<Value, Failure> {
    parse_text(&load_text(arg)?)
}

fn request(cmd: Command) -> Result<Request, Failure> {
    Ok(match cmd {
        Command::Interval { input, witness } => Request::Interval {
            input: inline(&input)?,
            witness,
        },
        Command::Check {
            input,
            slope,
            witness,
        } => Request::Check {
            input: inline(&input)?,
            slope,
            witness,
        },
        Command::Dtau { input } => Request::Dtau {
            input: inline(&input)?,
        },
        Command::Sfs { input, fiber } => Request::Sfs {
            input: inline(&input)?,
            fiber,
        },
        Command::Glue { input } => Request::Glue {
            input: inline(&input)?,
        },
        Command::Oracle {
            input,
            mu,
            nu,
            window,
        } => Request::Oracle {
            input: inline(&input)?,
            mu,
            nu,
            window,
        },
        Command::Cfd {
            input,
            mu,
            lambda,
            twist_compare,
        } => Request::Cfd {
            input: inline(&input)?,
            mu,
            lambda,
            twist_compare,
        },
        Command::Gst { input } => Request::Gst {
            input: inline(&input)?,
        },
        Command::Selftest { seed } => Request::Selftest { seed },
    })
}

/// Output text and exit code for one request.
fn answer(req: Result<Request, Failure>) -> (String, i32) {
    match req.and_then(|r| run(&r)) {
        Ok(s) => (s.text, s.code),
        Err(f) => (f.to_json(), f.code()),
    }
}

/// Print a line, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn batch(path: &str) -> i32 {
    let text = match load_text(path) {
        Ok(t) => t,
        Err(f) => {
            emit(&f.to_json());
            return f.code();
        }
    };
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let out: Vec<(String, i32)> = lines
        .par_iter()
        .map(|&(n, line)| {
            let req = serde_json::from_str::<Request>(line)
                .map_err(|e| Failure::new("ParseError", format!("batch line {}: {e}", n + 1)));
            let (text, code) = answer(req);
            // DOT output is multi-line; keep one JSON value per batch line
            if text.starts_with('{') {
                (text, code)
            } else {
                (serde_json::to_string(&Value::String(text)).unwrap(), code)
            }
        })
        .collect();
    let mut code = 0;
    for (text, c) in out {
        emit(&text);
        code = code.max(c);
    }
    code
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match (cli.batch, cli.command) {
        (Some(path), _) => batch(&path),
        (None, Some(cmd)) => {
            let (text, code) = answer(request(cmd));
            emit(&text);
            code
        }
        (None, None) => {
            eprintln!("no subcommand given; try `lspace --help`");
            1
        }
    };
    ExitCode::from(code as u8)
}
