use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use desitter_cli::documents::{read_json, write_json, BackboneDocument, GeneratorDocument};
use desitter_cli::{report, tables};
use desitter_core::solver::{solve_and_verify, Verdict};
use desitter_core::verifier::{verify, VerifyOptions};
use desitter_core::{canonical_generators, Algebra, CanonicalSpec, Family};

#[derive(Parser)]
#[command(name = "desitter", version, about = "Finite representations of the de Sitter and anti-de Sitter algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraArg {
    Ds,
    Ads,
}

impl From<AlgebraArg> for Algebra {
    fn from(a: AlgebraArg) -> Self {
        match a {
            AlgebraArg::Ds => Algebra::DeSitter,
            AlgebraArg::Ads => Algebra::AntiDeSitter,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    A,
    B,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Write the ten generator matrices of a canonical irrep
    Generate {
        family: FamilyArg,
        /// Number of blocks (at least 2)
        n: usize,
        #[arg(long, value_enum, default_value = "ds")]
        algebra: AlgebraArg,
        /// Output file; standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check relations, Hermiticity and Casimirs of a generator document
    Verify {
        input: PathBuf,
        /// Bound on commutation and Hermiticity residuals
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long, default_value_t = 1e-9)]
        scalar_tolerance: f64,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
        /// Also write the JSON report here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the backbone, coupling and Casimir tables
    Tables {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a backbone document carries a representation
    Validate {
        input: PathBuf,
        /// Algebra for the written generators; defaults to the document's
        #[arg(long, value_enum)]
        algebra: Option<AlgebraArg>,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
        /// Write the assembled generators here when the backbone is valid
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print_stdout(text)?,
    }
    Ok(())
}

// a closed pipe (`desitter ... | head`) is not an error
fn print_stdout(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

/// Ok(true) maps to exit 0, Ok(false) to 1, Err to 2.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Generate { family, n, algebra, out } => {
            if n < 2 {
                bail!("a representation needs at least two blocks; N = {n} has no representation");
            }
            let f = match family {
                FamilyArg::A => Family::TypeA,
                FamilyArg::B => Family::TypeB,
            };
            let g = canonical_generators(CanonicalSpec::new(f, n)?, algebra.into());
            let doc = GeneratorDocument::from_set(&g);
            match out {
                Some(p) => write_json(&p, &doc)?,
                None => print_stdout(&(serde_json::to_string_pretty(&doc)? + "\n"))?,
            }
            Ok(true)
        }
        Command::Verify { input, tolerance, scalar_tolerance, format, out } => {
            let doc: GeneratorDocument = read_json(&input)?;
            let g = doc.to_set()?;
            let mut opts = VerifyOptions { scalar_tolerance, ..VerifyOptions::default() };
            if let Some(t) = tolerance {
                opts.cr_tolerance = t;
                opts.hermiticity_tolerance = t;
            }
            let r = verify(&g, opts);
            let js = report::verification_json(&r);
            if let Some(p) = out {
                write_json(&p, &js)?;
            }
            match format {
                Format::Json => print_stdout(&(serde_json::to_string_pretty(&js)? + "\n"))?,
                Format::Pretty => print_stdout(&report::verification_text(&r))?,
            }
            Ok(r.passed())
        }
        Command::Tables { out } => {
            emit(&tables::all_tables(), out.as_ref())?;
            Ok(true)
        }
        Command::Validate { input, algebra, format, out } => {
            let doc: BackboneDocument = read_json(&input)?;
            let g = doc.to_graph()?;
            let alg = match algebra {
                Some(a) => a.into(),
                None => doc.algebra()?,
            };
            let o = solve_and_verify(&g);
            match format {
                Format::Json => print_stdout(&(serde_json::to_string_pretty(&report::outcome_json(&g, &o))? + "\n"))?,
                Format::Pretty => print_stdout(&report::outcome_text(&g, &o))?,
            }
            if let (Some(p), Some(gs)) = (out, &o.generators) {
                let gs = if alg == Algebra::AntiDeSitter { gs.to_anti_de_sitter() } else { gs.clone() };
                write_json(&p, &GeneratorDocument::from_set(&gs))?;
            }
            Ok(o.verdict == Verdict::Valid)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
