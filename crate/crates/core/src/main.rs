use clap::{Args, Parser, Subcommand};
use quantrep::cli::{
    cmd_braid, cmd_fuzz, cmd_rep, cmd_verify, parse_complex, parse_complex_list, ColorSpec, Report,
    RunConfig, Suite, DEFAULT_TOL,
};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "quantrep",
    version,
    about = "Quantum representations of braid groups and M(0,4)"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Root of unity order, q = exp(iπ/r)
    #[arg(long = "r", global = true, default_value_t = 2)]
    r: u32,
    /// Colors c1,c2,c3 (λ4 = -(c1+c2+c3)); braid takes one per strand
    #[arg(long, global = true, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Unicolored shortcut: all colors λ with q^λ = A
    #[arg(
        long = "A",
        global = true,
        allow_hyphen_values = true,
        conflicts_with = "lambda"
    )]
    a: Option<String>,
    /// Relative tolerance
    #[arg(long, global = true, env = "QUANTREP_TOL", default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 50)]
    samples: usize,
    /// Emit the JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Φ on a word in s1, s2, s3
    Rep {
        #[arg(default_value = "", allow_hyphen_values = true)]
        word: String,
    },
    /// ADO braid representation on n strands, word in b1..b{n-1}
    Braid {
        #[arg(long, short)]
        n: usize,
        #[arg(default_value = "", allow_hyphen_values = true)]
        word: String,
    },
    /// Run a verification suite: relations, psl2z, yangbaxter, algebra
    Verify { suite: String },
    /// Compare Φ against the exact word-problem oracle on random words
    Fuzz {
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
}

fn config(opts: &Opts) -> quantrep::Result<RunConfig> {
    let colors = match (&opts.lambda, &opts.a) {
        (Some(l), _) => ColorSpec::Explicit(parse_complex_list(l)?),
        (None, Some(a)) => ColorSpec::Unicolored(parse_complex(a)?),
        (None, None) => ColorSpec::Random,
    };
    Ok(RunConfig {
        r: opts.r,
        colors,
        tolerance: opts.tol,
        seed: opts.seed,
        samples: opts.samples,
    })
}

fn run(cli: &Cli) -> quantrep::Result<Report> {
    let cfg = config(&cli.opts)?;
    match &cli.command {
        Command::Rep { word } => cmd_rep(&cfg, word),
        Command::Braid { n, word } => cmd_braid(&cfg, *n, word),
        Command::Verify { suite } => cmd_verify(&cfg, suite.parse::<Suite>()?),
        Command::Fuzz { max_len } => cmd_fuzz(&cfg, *max_len),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let out = if cli.opts.json {
                report.to_json() + "\n"
            } else {
                report.text.clone()
            };
            // closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
