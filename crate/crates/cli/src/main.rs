mod commands;
mod findim_cmds;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsubcat::report::Report;
use qsubcat::torsion::Bounds;
use qsubcat::{Error, Side};

#[derive(Parser)]
#[command(name = "qsubcat", version, about = "Closed and quotient subcategories over quantum affine spaces and finite-dimensional algebras")]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Ring specification file (TOML).
    #[arg(long, global = true)]
    ring: Option<PathBuf>,
    /// Print the full JSON report.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 12)]
    degree_bound: u32,
    #[arg(long, global = true, default_value_t = 4)]
    chain_length: usize,
}

impl Cli {
    fn bounds(&self) -> Bounds {
        Bounds { degree: self.degree_bound, chain_length: self.chain_length, ..Bounds::default() }
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SideArg {
    Right,
    TwoSided,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Right => Side::Right,
            SideArg::TwoSided => Side::TwoSided,
        }
    }
}

#[derive(Args)]
pub struct Torsion {
    /// Generators of K.
    #[arg(long)]
    ideal: String,
    /// Generators of the base ideal I of the power filter.
    #[arg(long)]
    filter: String,
    #[arg(long, value_enum, default_value = "two-sided")]
    side: SideArg,
}

#[derive(Args)]
pub struct Pair {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long, value_enum, default_value = "two-sided")]
    side: SideArg,
}

#[derive(Args)]
pub struct YPair {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long)]
    filter: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Saturation of K with respect to the powers of I.
    Saturate(Torsion),
    /// The chain (IⁿK)~ for n up to --chain-length.
    Chain(Torsion),
    /// Stability predicates of K for the powers of I.
    Check {
        #[command(subcommand)]
        which: CheckCmd,
    },
    /// Ideal arithmetic.
    Ideal {
        #[command(subcommand)]
        op: IdealCmd,
    },
    /// Lattice operations on closed subcategories.
    Lattice {
        #[command(subcommand)]
        op: LatticeCmd,
    },
    /// Exhaustive computations over a finite-dimensional algebra.
    Findim {
        #[command(subcommand)]
        op: FindimCmd,
    },
    /// Run a scripted worked example against its expectations.
    Example { id: String },
}

#[derive(Subcommand)]
pub enum CheckCmd {
    TfGenerated(Torsion),
    Stable(Torsion),
    YClosed(Torsion),
}

#[derive(Subcommand)]
pub enum IdealCmd {
    Sum(Pair),
    Product(Pair),
    Power {
        #[arg(long)]
        a: String,
        #[arg(long)]
        n: u32,
    },
    Intersect(Pair),
    /// {z : z·B ⊆ A}.
    Colon(Pair),
    Equal(Pair),
    Comaximal(Pair),
    Member {
        #[arg(long)]
        a: String,
        #[arg(long)]
        element: String,
        #[arg(long, value_enum, default_value = "two-sided")]
        side: SideArg,
    },
}

#[derive(Subcommand)]
pub enum LatticeCmd {
    Meet(Pair),
    Join(Pair),
    Distributive {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
    },
    YJoin(YPair),
    YMeet(YPair),
}

#[derive(Subcommand)]
pub enum FindimCmd {
    EnumerateIdeals {
        /// List right ideals instead of two-sided ones.
        #[arg(long)]
        right: bool,
    },
    EnumerateFilterSystems,
    Roundtrip,
    Gabriel {
        /// Largest module dimension in the extension-closure corpus.
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
}

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Undetermined,
    Mismatch,
}

fn exit_status(s: Status) -> u8 {
    match s {
        Status::Ok => 0,
        Status::Undetermined => 3,
        Status::Mismatch => 4,
    }
}

fn error_status(e: &Error) -> u8 {
    match e {
        Error::DegreeBoundTooLow { .. } | Error::IterationCapExceeded(_) | Error::CombinatorialBlowup { .. } => 3,
        _ => 2,
    }
}

fn run(cli: &Cli) -> Result<(Report, Status), Error> {
    let b = cli.bounds();
    match &cli.cmd {
        Cmd::Saturate(t) => commands::saturate(cli, t, b),
        Cmd::Chain(t) => commands::chain(cli, t, b),
        Cmd::Check { which } => commands::check(cli, which, b),
        Cmd::Ideal { op } => commands::ideal_op(cli, op, b),
        Cmd::Lattice { op } => commands::lattice_op(cli, op, b),
        Cmd::Findim { op } => findim_cmds::run(cli, op),
        Cmd::Example { id } => {
            let out = qsubcat::scenarios::run_example(id)?;
            let status = if out.passed() { Status::Ok } else { Status::Mismatch };
            Ok((out.report, status))
        }
    }
}

fn render_text(r: &Report) -> String {
    let mut out = format!("{} [{}]\nresult: {}\nexactness: {}\n", r.command, r.ring, r.result, r.exactness);
    for w in &r.witnesses {
        out += &format!("witness ({}): {}\n", w.role, w.element);
        for f in &w.facts {
            let rel = if f.member { "in" } else { "not in" };
            out += &format!("  {} {rel} ({}) [{}]\n", f.element, f.ideal.join(", "), f.exactness);
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok((mut report, status)) => {
            report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
            let text = if cli.json { report.to_json() + "\n" } else { render_text(&report) };
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(exit_status(status))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_status(&e))
        }
    }
}
