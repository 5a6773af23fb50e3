mod cache;
mod commands;
mod table1;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::Failure;

#[derive(Parser, Debug)]
#[command(name = "semifield", version, about = "Construct, certify and classify commutative pre-semifields of odd order")]
struct Cli {
    /// Seed for randomized property sampling; never affects the mathematics.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyArg {
    #[value(name = "field")]
    Field,
    #[value(name = "S")]
    S,
    #[value(name = "dickson")]
    Dickson,
    #[value(name = "albert")]
    Albert,
    #[value(name = "zp")]
    Zp,
    #[value(name = "bh")]
    Bh,
    #[value(name = "zkw")]
    Zkw,
    #[value(name = "b3")]
    B3,
    #[value(name = "b4")]
    B4,
    #[value(name = "cmdy")]
    Cmdy,
    #[value(name = "cg")]
    Cg,
    #[value(name = "g")]
    G,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignArg {
    Plus,
    Minus,
}

/// Family parameters. Field elements are discrete logs to the canonical
/// generator, or the word `zero`.
#[derive(clap::Args, Debug, Clone)]
pub struct ConstructArgs {
    #[arg(long)]
    pub family: FamilyArg,
    #[arg(long)]
    pub p: u64,
    /// Degree of the coefficient field: `M` for pairs, the whole field for univariate maps.
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub j: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long = "B")]
    pub b: Option<String>,
    /// Sign of the `X^6` term for `cmdy`.
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    pub sign: SignArg,
    /// Admit degenerate parameters and tag the reduced family.
    #[arg(long)]
    pub permissive: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Field context, subfield tower and Zsigmondy prime.
    FieldInfo {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        /// Exponent for the subfield tower `m/2, gcd(k,m), gcd(k+m/2,m)`.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Canonical JSON of a family member.
    Construct(ConstructArgs),
    /// Planarity certificate.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Run the brute-force oracle as well.
        #[arg(long)]
        oracle: bool,
        /// Random triples for the symmetry and bilinearity checks.
        #[arg(long, default_value_t = 256)]
        samples: u64,
    },
    /// Nucleus orders and bases, compared with the family's listed orders.
    Nuclei {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Autotopism centralizer of the torus and Condition (C), Family S only.
    Centralizer {
        #[arg(long = "in")]
        input: PathBuf,
        /// Also enumerate without the diagonal-first shortcut and compare.
        #[arg(long)]
        audit: bool,
    },
    /// Values `a'` reached from `a` by monomial isotopisms.
    Orbit {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        #[arg(long = "B")]
        b: String,
        #[arg(long)]
        a: String,
    },
    /// Isotopy class census with bound check; order is `p^{2m}`.
    Classify {
        #[arg(long)]
        family: FamilyArg,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        #[arg(long = "B")]
        b: Option<String>,
        /// One row per class as CSV instead of the JSON report.
        #[arg(long)]
        csv: bool,
    },
    /// Isotopy verdict with evidence class.
    Compare {
        #[arg(long = "a")]
        a: PathBuf,
        #[arg(long = "b")]
        b: PathBuf,
    },
    /// Biprojective family rows over `GF(p^m)` as CSV.
    Table1 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::FieldInfo { p, m, k } => commands::field_info(*p, *m, *k),
        Command::Construct(args) => commands::construct(args),
        Command::Verify { input, oracle, samples } => commands::verify(input, *oracle, *samples, cli.seed),
        Command::Nuclei { input } => commands::nuclei(input),
        Command::Centralizer { input, audit } => commands::centralizer(input, *audit),
        Command::Orbit { p, m, k, b, a } => commands::orbit(*p, *m, *k, b, a),
        Command::Classify { family, p, m, b, csv } => commands::classify(*family, *p, *m, b.as_deref(), *csv),
        Command::Compare { a, b } => commands::compare(a, b),
        Command::Table1 { p, m } => table1::run(*p, *m),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
    }
}
