use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dqdet::verify::DEFAULT_VERIFY_CAP;
use dqdet::{
    char_poly, determinant, hermitian_eig, run_verify, DQMatrix, DetDefinition, DualRoot, Error,
    DEFAULT_DET_CAP,
};
use serde_json::json;

/// Determinants, spectra and characteristic polynomials of dual
/// quaternion matrices. JSON goes to stdout, a summary to stderr.
#[derive(Parser)]
#[command(name = "dqdet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one determinant definition.
    Det {
        file: PathBuf,
        /// moore | chen | quasi | dyson[:k] | krow[:i] | kcol[:j]
        #[arg(long, default_value = "moore")]
        method: String,
        /// Expansion index for `dyson`.
        #[arg(long)]
        k: Option<usize>,
        /// Anchor index for `krow` and `kcol`.
        #[arg(long)]
        anchor: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_DET_CAP)]
        cap: usize,
    },
    /// Eigenvalues of a Hermitian matrix.
    Eig {
        file: PathBuf,
        /// Also return the unitary eigenvector matrix.
        #[arg(long)]
        vectors: bool,
    },
    /// Characteristic polynomial, lowest degree first.
    Charpoly { file: PathBuf },
    /// Run the seeded property suite.
    Verify {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Run only the property with this id.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value_t = DEFAULT_VERIFY_CAP)]
        cap: usize,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::Shape(_)
        | Error::InvalidPermutation(_)
        | Error::IndexOutOfRange { .. } => 2,
        Error::Domain(_) | Error::SingularLu { .. } | Error::MultiplicityUnsupported { .. } => 3,
        Error::SizeCap { .. } => 4,
        Error::Convergence(_) => 5,
    }
}

fn load(path: &Path) -> Result<DQMatrix, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    DQMatrix::from_json_str(&text)
}

fn method(name: &str, k: Option<usize>, anchor: Option<usize>) -> Result<DetDefinition, Error> {
    let spelled = match (name, k, anchor) {
        ("dyson", Some(k), _) => format!("dyson:{k}"),
        ("krow" | "kcol", _, Some(a)) => format!("{name}:{a}"),
        _ => name.to_string(),
    };
    spelled.parse()
}

fn emit(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    );
}

const REPEATED_NOTE: &str =
    "repeated standard eigenvalue: the polynomial has roots that are not eigenvalues";

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Det {
            file,
            method: name,
            k,
            anchor,
            cap,
        } => {
            let a = load(&file)?;
            let def = method(&name, k, anchor)?;
            let r = determinant(&a, def, cap)?;
            emit(&json!(r));
            match r.as_dual_number {
                Some(d) => eprintln!("{def}: {d} ({} terms)", r.term_count),
                None => eprintln!("{def}: {} ({} terms)", r.value, r.term_count),
            }
            Ok(0)
        }
        Command::Eig { file, vectors } => {
            let a = load(&file)?;
            match hermitian_eig(&a, vectors) {
                Ok(s) => {
                    emit(&json!(s));
                    eprintln!("{} eigenvalues", s.eigenvalues.len());
                    Ok(0)
                }
                Err(Error::MultiplicityUnsupported { spectrum }) => {
                    // eigenvalues are still reported
                    emit(&json!(spectrum));
                    eprintln!("eigenvectors refused: {REPEATED_NOTE}");
                    Ok(3)
                }
                Err(e) => Err(e),
            }
        }
        Command::Charpoly { file } => {
            let a = load(&file)?;
            let p = char_poly(&a)?;
            let roots = p.roots()?;
            let repeated = roots.iter().any(|r| matches!(r, DualRoot::Repeated { .. }));
            let note = repeated.then_some(REPEATED_NOTE);
            emit(&json!({
                "coefficients": p.coefficients,
                "roots": roots,
                "note": note,
            }));
            eprintln!("degree {}", p.degree());
            if let Some(n) = note {
                eprintln!("note: {n}");
            }
            Ok(0)
        }
        Command::Verify {
            n,
            trials,
            seed,
            filter,
            cap,
        } => {
            let report = run_verify(n, trials, seed, filter.as_deref(), cap)?;
            emit(&json!(report));
            for p in &report.properties {
                let status = if p.failures == 0 { "PASS" } else { "FAIL" };
                eprintln!(
                    "{status} {:<30} failures {}/{} max {:.3e} (tol {:.0e})",
                    p.id, p.failures, p.trials, p.max_discrepancy, p.tolerance
                );
            }
            Ok(if report.pass { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
