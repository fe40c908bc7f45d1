//! `tilt`: decide torsion-theory and tilting properties of two-term
//! complexes of projectives over finite-dimensional quiver algebras.

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use tilt::cli::{self, Options};
use tilt::enumerate::DEFAULT_BUDGET;
use tilt::field::FieldTag;
use tilt::report::Report;

#[derive(Parser)]
#[command(
    name = "tilt",
    version,
    about = "torsion pairs and two-term tilting complexes over quiver algebras, in exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct Common {
    /// input .alg file
    file: PathBuf,
    /// enumeration bound, comma separated (default: dimension vector of
    /// the algebra)
    #[arg(long)]
    bound: Option<String>,
    /// override the declared coefficient field (Q, F2, F3, ...)
    #[arg(long)]
    field_override: Option<String>,
    /// seed for all randomized searches
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Tilting verdict plus torsion-pair verification
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        complex: String,
    },
    /// Torsion-pair verification alone
    Torsion {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        complex: String,
    },
    /// The endomorphism algebra B presented as a quiver with relations
    Endo {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        complex: String,
    },
    /// Build a tilting complex from torsion data and verify it
    Construct {
        #[command(flatten)]
        common: Common,
        /// Ext-projective generator (module names and S/P/I builtins, '+'-separated)
        #[arg(long)]
        x_gen: String,
        /// Ext-injective cogenerator
        #[arg(long)]
        y_cogen: String,
        /// also compare the result with a named complex via add-equality
        #[arg(long)]
        compare: Option<String>,
    },
    /// Round-trip the induced module equivalences over the inventory
    BbVerify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        complex: String,
    },
    /// Dump all modules up to the bound, one per isomorphism class
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        complex: Option<String>,
    },
    /// Ext^2 splitting test for a tilting complex
    Splitting {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        complex: String,
    },
}

fn parse_field(s: &str) -> Result<FieldTag, String> {
    if s == "Q" {
        return Ok(FieldTag::Rational);
    }
    if let Some(p) = s.strip_prefix('F') {
        if let Ok(p) = p.parse::<u64>() {
            return Ok(FieldTag::Prime(p));
        }
    }
    Err(format!("unrecognized field {s} (use Q or F<p>)"))
}

fn build_options(common: &Common) -> Result<Options, String> {
    let bound = match &common.bound {
        None => None,
        Some(s) => Some(
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| format!("bad bound entry {t}"))
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    let field_override = match &common.field_override {
        None => None,
        Some(s) => Some(parse_field(s)?),
    };
    let budget = match std::env::var("TILT_BUDGET") {
        Ok(v) => v
            .parse::<u128>()
            .map_err(|_| "TILT_BUDGET must be an integer".to_string())?,
        Err(_) => DEFAULT_BUDGET,
    };
    Ok(Options {
        bound,
        field_override,
        seed: common.seed,
        budget,
    })
}

fn run(common: &Common, f: impl FnOnce(&str, &Options) -> Report) -> ExitCode {
    let opts = match build_options(common) {
        Ok(o) => o,
        Err(msg) => {
            let mut r = Report::new();
            r.set_error(msg);
            print!("{}", r.render());
            return ExitCode::from(r.exit_code() as u8);
        }
    };
    let text = match std::fs::read_to_string(&common.file) {
        Ok(t) => t,
        Err(e) => {
            let mut r = Report::new();
            r.set_error(format!("cannot read {}: {e}", common.file.display()));
            print!("{}", r.render());
            return ExitCode::from(r.exit_code() as u8);
        }
    };
    let report = f(&text, &opts);
    print!("{}", report.render());
    ExitCode::from(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let args = Cli::parse();
    match &args.command {
        Command::Check { common, complex } => run(common, |t, o| cli::cmd_check(t, complex, o)),
        Command::Torsion { common, complex } => run(common, |t, o| cli::cmd_torsion(t, complex, o)),
        Command::Endo { common, complex } => run(common, |t, o| cli::cmd_endo(t, complex, o)),
        Command::Construct {
            common,
            x_gen,
            y_cogen,
            compare,
        } => run(common, |t, o| {
            cli::cmd_construct(t, x_gen, y_cogen, compare.as_deref(), o)
        }),
        Command::BbVerify { common, complex } => {
            run(common, |t, o| cli::cmd_bb_verify(t, complex, o))
        }
        Command::Enumerate { common, complex } => {
            run(common, |t, o| cli::cmd_enumerate(t, complex.as_deref(), o))
        }
        Command::Splitting { common, complex } => {
            run(common, |t, o| cli::cmd_splitting(t, complex, o))
        }
    }
}
