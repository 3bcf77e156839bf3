use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rhpp::census::{CensusConfig, Format};
use rhpp::commands::{self as cmd, Output};

#[derive(Parser)]
#[command(name = "rhpp", version, about = "Exact census of quotient singularities on rational homology planes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Continued fractions.
    #[command(subcommand)]
    Hjcf(HjcfCmd),
    /// Quotient singularities.
    #[command(subcommand)]
    Sing(SingCmd),
    /// Integral lattices.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Rational quadratic forms.
    #[command(subcommand)]
    Qform(QformCmd),
    /// Embedding obstructions.
    #[command(subcommand)]
    Obstruct(ObstructCmd),
    /// The full census.
    #[command(subcommand)]
    Census(CensusCmd),
}

#[derive(Subcommand)]
enum HjcfCmd {
    Eval { string: String },
    Classify { string: String },
    Tau { string: String },
    GenTd {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
}

#[derive(Subcommand)]
enum SingCmd {
    Info {
        #[arg(long)]
        spec: String,
    },
    Table2 {
        #[arg(long, default_value_t = 100)]
        b_max: u32,
    },
}

#[derive(Args)]
struct SpecArg {
    #[arg(long)]
    spec: String,
}

#[derive(Subcommand)]
enum LatticeCmd {
    Det(SpecArg),
    Disc(SpecArg),
    Diag(SpecArg),
}

#[derive(Subcommand)]
enum QformCmd {
    Eps {
        /// A prime, or `inf`; all relevant places when omitted.
        #[arg(long)]
        p: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        diag: String,
    },
    Equiv {
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
}

#[derive(Subcommand)]
enum ObstructCmd {
    Embed(SpecArg),
    Square(SpecArg),
    T6Sweep {
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
    EnriquesD5,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

#[derive(Subcommand)]
enum CensusCmd {
    Run {
        #[arg(long, overrides_with = "no_nef")]
        nef: bool,
        #[arg(long, overrides_with = "nef")]
        no_nef: bool,
        #[arg(long, default_value_t = 200)]
        max_q: u64,
        #[arg(long, default_value_t = 24)]
        max_len: usize,
        #[arg(long, default_value_t = 12)]
        sweep_len: usize,
        #[arg(long, default_value_t = 12)]
        max_b: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    VerifyLemmas {
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
fn print_out(text: &str) -> rhpp::Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn emit(o: Output) -> rhpp::Result<bool> {
    print_out(&serde_json::to_string_pretty(&o.value)?)?;
    Ok(o.ok)
}

fn run(cli: Cli) -> rhpp::Result<bool> {
    match cli.command {
        Command::Hjcf(c) => emit(match c {
            HjcfCmd::Eval { string } => cmd::hjcf_eval(&string)?,
            HjcfCmd::Classify { string } => cmd::hjcf_classify(&string)?,
            HjcfCmd::Tau { string } => cmd::hjcf_tau(&string)?,
            HjcfCmd::GenTd { d, max_len } => cmd::hjcf_gen_td(d, max_len)?,
        }),
        Command::Sing(c) => emit(match c {
            SingCmd::Info { spec } => cmd::sing_info(&spec)?,
            SingCmd::Table2 { b_max } => cmd::sing_table2(b_max)?,
        }),
        Command::Lattice(c) => emit(match c {
            LatticeCmd::Det(a) => cmd::lattice_det(&a.spec)?,
            LatticeCmd::Disc(a) => cmd::lattice_disc(&a.spec)?,
            LatticeCmd::Diag(a) => cmd::lattice_diag(&a.spec)?,
        }),
        Command::Qform(c) => emit(match c {
            QformCmd::Eps { p, diag } => cmd::qform_eps(p.as_deref(), &diag)?,
            QformCmd::Equiv { lhs, rhs } => cmd::qform_equiv(&lhs, &rhs)?,
        }),
        Command::Obstruct(c) => emit(match c {
            ObstructCmd::Embed(a) => cmd::obstruct_embed(&a.spec)?,
            ObstructCmd::Square(a) => cmd::obstruct_square(&a.spec)?,
            ObstructCmd::T6Sweep { max_len } => cmd::obstruct_t6_sweep(max_len)?,
            ObstructCmd::EnriquesD5 => cmd::obstruct_enriques_d5()?,
        }),
        Command::Census(CensusCmd::VerifyLemmas { max_len }) => emit(cmd::census_verify_lemmas(max_len)?),
        Command::Census(CensusCmd::Run { nef: _, no_nef, max_q, max_len, sweep_len, max_b, format, out }) => {
            let format = match format {
                FormatArg::Json => Format::Json,
                FormatArg::Table => Format::Table,
            };
            let cfg = CensusConfig { max_q, max_len, nef: !no_nef, sweep_len, max_b, format, out };
            let (report, ok) = cmd::census_run(&cfg)?;
            match &cfg.out {
                Some(path) => report.write(path, format)?,
                None => print_out(&report.render(format)?)?,
            }
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
