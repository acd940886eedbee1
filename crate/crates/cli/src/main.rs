use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::BoolishValueParser;
use clap::{Args, Parser, Subcommand};
use galois_cli::commands::{cmd_cyclotomic, cmd_factor, cmd_galois, cmd_series, cmd_solve, cmd_symmetrize};
use galois_cli::config::{OutputFormat, PrecisionArg};
use galois_cli::report::{EXIT_OK, EXIT_USAGE};
use galois_cli::RunConfig;

/// Solve polynomials in radicals and compute their Galois groups.
///
/// Every flag can also be set through an environment variable with the
/// GALOIS_ prefix, e.g. GALOIS_PRECISION=standard.
#[derive(Parser, Debug)]
#[command(name = "galois", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Emit the JSON envelope instead of text.
    #[arg(long, global = true, env = "GALOIS_JSON", value_parser = BoolishValueParser::new())]
    json: bool,
    #[arg(long, global = true, value_enum, default_value = "extended", env = "GALOIS_PRECISION")]
    precision: PrecisionArg,
    /// Largest accepted distance between a radical expression and its root.
    #[arg(long, global = true, default_value_t = 1e-9, env = "GALOIS_TOL")]
    tol: f64,
    /// Seed for resolvent draws in membership tests.
    #[arg(long, global = true, default_value_t = 0, env = "GALOIS_SEED")]
    seed: u64,
    /// Half-width of the Gaussian-integer sample box.
    #[arg(long = "box", global = true, default_value_t = 2, env = "GALOIS_BOX")]
    box_half_width: i64,
    /// Resolvent retry limit.
    #[arg(long, global = true, default_value_t = 5, env = "GALOIS_RETRIES")]
    retries: usize,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true, env = "GALOIS_OUT")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a polynomial of degree 1 to 5 in radicals.
    Solve {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Identify the Galois group of an irreducible polynomial.
    Galois {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Rewrite a symmetric polynomial in r1..rn via elementary symmetric ones.
    Symmetrize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Number of variables (default: largest index used).
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Express the p-th roots of unity in radicals.
    Cyclotomic { p: u32 },
    /// Composition series of a named permutation group (S4, A5, D4, F20, ...).
    Series {
        group: String,
        /// Expected number of points the group acts on.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Factor over Q or over Q(sqrt(d1), ..., sqrt(dk)).
    Factor {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Radicands to adjoin, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        adjoin: Vec<i64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { EXIT_OK as u8 });
        }
    };
    let g = &cli.global;
    let cfg = RunConfig {
        precision: g.precision.into(),
        tolerance: g.tol,
        box_half_width: g.box_half_width,
        max_retries: g.retries,
        output: if g.json { OutputFormat::Json } else { OutputFormat::Text },
        seed: g.seed,
    };
    if let Err(msg) = cfg.validate() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    let outcome = match &cli.command {
        Command::Solve { poly } => cmd_solve(poly, &cfg),
        Command::Galois { poly } => cmd_galois(poly, &cfg),
        Command::Symmetrize { expr, vars } => cmd_symmetrize(expr, *vars, &cfg),
        Command::Cyclotomic { p } => cmd_cyclotomic(*p, &cfg),
        Command::Series { group, degree } => cmd_series(group, *degree, &cfg),
        Command::Factor { poly, adjoin } => cmd_factor(poly, adjoin, &cfg),
    };
    let rendered = outcome.render();
    let to_stderr = cfg.output == OutputFormat::Text && outcome.code == EXIT_USAGE;
    match &g.out {
        Some(path) if !to_stderr => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE as u8);
            }
        }
        _ if to_stderr => eprint!("{rendered}"),
        _ => print!("{rendered}"),
    }
    ExitCode::from(outcome.code as u8)
}
