//! `polyprod`: homology, total (co)homology, decompositions, product tables, Tor and
//! duality certificates for polyhedral products, from the command line.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 bad input, 3 refused
//! computation, 4 internal invariant violation. `POLYPROD_THREADS` sets the worker count.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polyprod::Error;

use report::Format;

#[derive(Parser)]
#[command(
    name = "polyprod",
    version,
    about = "Exact computations for polyhedral products of simplicial complexes"
)]
struct Cli {
    /// Output format. JSON is the stable machine format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
pub struct Input {
    /// Complex file (`m=…` / `facets=…` lines, or JSON).
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
}

#[derive(Subcommand)]
pub enum Command {
    /// Simplicial homology of a complex.
    Homology {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "z")]
        coeffs: String,
        /// plain, reduced or suspended.
        #[arg(long, default_value = "plain")]
        variant: String,
    },
    /// Local (co)homology of every block (σ,ω) in an index universe.
    Total {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "z")]
        coeffs: String,
        /// xm (all pairs), rm (σ = ∅) or lm (ω ≠ ∅).
        #[arg(long, default_value = "xm")]
        universe: String,
        #[arg(long)]
        cohomology: bool,
    },
    /// Homology of Z(K; X, A) or Z*(K; X, A) assembled block by block.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// Catalog name (disk1, disk:n, sphere:r:p, simplex-boundary:n) or pair file. Give one
        /// pair for every vertex, or a single pair to use everywhere.
        #[arg(long, required = true)]
        pair: Vec<String>,
        /// product or join.
        #[arg(long, default_value = "product")]
        flavor: String,
        #[arg(long, default_value = "z")]
        coeffs: String,
    },
    /// The polyhedral join Z*(K; X, A) and its homology.
    Join {
        #[command(flatten)]
        input: Input,
        /// Pairs as for `decompose`.
        #[arg(long, conflicts_with = "compose")]
        pair: Vec<String>,
        /// Complex files L_k; uses the pairs (Δ, L_k).
        #[arg(long)]
        compose: Vec<PathBuf>,
        #[arg(long, default_value = "z")]
        coeffs: String,
        /// Also list the block decomposition over this universe (xm, rm, lm).
        #[arg(long)]
        blocks: Option<String>,
    },
    /// Structure constants of a product on total cohomology.
    Ring {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "right-strictly-normal")]
        family: String,
        /// Defaults to rm for right families and xm otherwise.
        #[arg(long)]
        universe: Option<String>,
        #[arg(long, default_value = "q")]
        field: String,
        /// Ring of a polyhedral product: disk1, disk:n or sphere:r:p (overrides --family).
        #[arg(long, conflicts_with = "compose")]
        model: Option<String>,
        /// Complex files L_k; ring of the composition complex Z*(K; L).
        #[arg(long)]
        compose: Vec<PathBuf>,
    },
    /// Multigraded Tor of a monomial ideal via the Taylor complex.
    Hochster {
        /// Complex file; the ideal is I_(K;r).
        #[arg(
            long = "in",
            value_name = "FILE",
            required_unless_present = "ideal",
            conflicts_with = "ideal"
        )]
        input: Option<PathBuf>,
        /// Exponent vector r, comma separated; defaults to all ones.
        #[arg(long)]
        r: Option<String>,
        /// Ideal file: one generator per line as space-separated exponents.
        #[arg(long)]
        ideal: Option<PathBuf>,
        #[arg(long, default_value = "f2")]
        field: String,
        /// ideal or quotient.
        #[arg(long, default_value = "ideal")]
        module: String,
    },
    /// Alexander dual of a complex, with duality certificates on request.
    Dual {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value = "z")]
        coeffs: String,
        /// Include the induced matrices (field coefficients only).
        #[arg(long)]
        explicit: bool,
    },
    /// Run verification suites.
    Verify {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// List the suites and exit.
        #[arg(long)]
        list: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) => 2,
        Error::Refused(_) => 3,
        Error::Invariant(_) => 4,
    }
}

fn configure_threads() -> Result<(), Error> {
    let Ok(v) = std::env::var("POLYPROD_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Input(format!("POLYPROD_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Input(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| commands::run(cli.command));
    match outcome {
        Ok((report, ok)) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.render(cli.format).as_bytes());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("polyprod: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
