//! `cpcode`: encode, decode, repair and analyze conjugate-piggybacking
//! array codes from the command line.
//!
//! Exit codes: 0 ok, 2 usage, 3 data error, 4 math error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "cpcode",
    version,
    about = "Conjugate-piggybacking MDS array codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CodeArgs {
    /// Total number of nodes.
    #[arg(long)]
    pub n: usize,
    /// Number of data nodes.
    #[arg(long)]
    pub k: usize,
    /// Number of data-node groups, 2 <= L <= n - k.
    #[arg(long = "L")]
    pub l: usize,
    /// Field degree: symbols live in GF(2^m).
    #[arg(long, default_value_t = 8)]
    pub m: u32,
    /// Reduction polynomial in hex (defaults to the built-in one for m).
    #[arg(long)]
    pub poly: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Encode a payload file into a stripe file.
    ///
    /// One symbol is one byte when m <= 8. For m > 8 each symbol is a
    /// little-endian 2-byte unit and the input length must be even.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        /// Payload file of k*(n-k) symbols.
        input: PathBuf,
        /// Stripe file to write (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Pad short input with zero symbols; the header keeps the true length.
        #[arg(long)]
        pad: bool,
    },
    /// Recover the payload from a stripe with some nodes erased.
    Decode {
        stripe: PathBuf,
        /// Comma-separated nodes to treat as lost, 1-based.
        #[arg(long, value_delimiter = ',')]
        erase: Vec<usize>,
        /// Payload file to write (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Always solve the full linear system.
        #[arg(long)]
        generic: bool,
        /// Fall back to the full system when a column solve is singular.
        #[arg(long)]
        fallback: bool,
    },
    /// Rebuild one node from helper downloads and report the bandwidth.
    Repair {
        stripe: PathBuf,
        /// Node to rebuild, 1-based.
        #[arg(long)]
        fail: usize,
        /// Repair report to write.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every (n-k)-node erasure pattern for recoverability.
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        /// Refuse to enumerate more patterns than this.
        #[arg(long, default_value_t = 1_000_000)]
        cap: u128,
    },
    /// Group-count choice, bandwidth ratios and comparator bounds.
    Analyze {
        /// Number of parity nodes.
        #[arg(long)]
        r: usize,
        /// Number of data nodes; omit for the k -> infinity limit.
        #[arg(long)]
        k: Option<usize>,
        /// Group count for the per-node profile (default: optimal).
        #[arg(long = "L")]
        l: Option<usize>,
    },
    /// Repair-traffic simulation under uniform single-node failures.
    Simulate {
        /// Run the seven built-in rows of the published table.
        #[arg(long)]
        table3: bool,
        /// Grid rows as k:r:L, comma-separated.
        #[arg(long, value_delimiter = ',')]
        grid: Vec<String>,
        /// Rate sweep as r:kmin-kmax:L; writes plot data instead.
        #[arg(long, conflicts_with_all = ["table3", "grid", "execute"])]
        sweep: Option<String>,
        /// Encode random stripes and count real downloads.
        #[arg(long)]
        execute: bool,
        /// Stripes per row in execute mode.
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Field degree for execute mode.
        #[arg(long, default_value_t = 8)]
        m: u32,
        /// Skip the MDS search that gates execute-mode rows.
        #[arg(long)]
        no_verify: bool,
        /// CSV file to write (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Encode {
            code,
            input,
            out,
            pad,
        } => commands::encode(&code, &input, out.as_deref(), pad),
        Command::Decode {
            stripe,
            erase,
            out,
            generic,
            fallback,
        } => commands::decode(&stripe, &erase, out.as_deref(), generic, fallback),
        Command::Repair { stripe, fail, out } => commands::repair(&stripe, fail, out.as_deref()),
        Command::Verify { code, cap } => commands::verify(&code, cap),
        Command::Analyze { r, k, l } => commands::analyze(r, k, l),
        Command::Simulate {
            table3,
            grid,
            sweep,
            execute,
            trials,
            seed,
            m,
            no_verify,
            out,
        } => commands::simulate(commands::SimulateArgs {
            table3,
            grid,
            sweep,
            execute,
            trials,
            seed,
            m,
            verify: !no_verify,
            out,
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
