//! `qtrace`: command-line front end for the qtrace library.

mod cache;
mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qtrace::Error;
use serde_json::json;

use commands::Report;

#[derive(Parser)]
#[command(name = "qtrace", version, about = "Exact Verma-module traces, q-difference operators and Macdonald checks")]
struct Cli {
    /// Output format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the JSON artifact to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Root system as a type label or an explicit Cartan matrix.
#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
pub struct SystemArgs {
    /// Type label: A1..A4, B2, G2, ...
    #[arg(long)]
    pub system: Option<String>,
    /// Cartan matrix as JSON, e.g. '[[2,-1],[-1,2]]'.
    #[arg(long)]
    pub cartan: Option<String>,
}

#[derive(Args, Clone)]
pub struct ModuleArgs {
    #[command(flatten)]
    pub sys: SystemArgs,
    /// Highest weight θ of the finite-dimensional module, in Dynkin labels (comma separated).
    #[arg(long, value_delimiter = ',', required = true)]
    pub theta: Vec<i64>,
}

#[derive(Args, Clone)]
pub struct MacArgs {
    /// N of A_{N−1}.
    #[arg(long)]
    pub n: usize,
    /// Integer k ≥ 0 (module S^{kN}V).
    #[arg(long)]
    pub k: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Gauge {
    /// Normalized gauge when the module is S^{kN}V of sl_N, otherwise raw.
    Auto,
    Raw,
    Normalized,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Tie {
    LexLargest,
    LexSmallest,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OpForm {
    Subset,
    Orbit,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DualityMode {
    Symbolic,
    Evaluated,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassicalOp {
    /// M₁ for sl₂ at the given k.
    M1,
    /// The k = 1 operator M₀ with eigenvalue q^{3λ} − [3]q^{λ}.
    M0,
    /// The k = 0 operator M₀.
    M0K0,
    /// The shift operator G₀.
    G0,
    /// ψ_k itself, through φ_k/δ_k.
    Psi,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Shapovalov matrix of M(λ) at weight λ − μ, its determinant and the product formula.
    Shapovalov {
        #[command(flatten)]
        sys: SystemArgs,
        /// μ in simple-root coordinates (comma separated, nonnegative).
        #[arg(long, value_delimiter = ',', required = true)]
        mu: Vec<i64>,
    },
    /// Singular vectors of M(λ) ⊗ U of weight λ, one per zero-weight vector of U.
    SingularVector {
        #[command(flatten)]
        module: ModuleArgs,
        /// Keep the unnormalized vector (no division by the leading coefficient).
        #[arg(long)]
        raw: bool,
    },
    /// Trace function Ψ(λ, x) truncated at height(μ) ≤ depth.
    Psi {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value = "8", value_parser = positive)]
        depth: usize,
        /// Print the normalized ψ_k (sl_N with θ = kN·Λ₁ only).
        #[arg(long)]
        normalized: bool,
    },
    /// Reconstruct the operator D_c with D_c Ψ = Ψ·c(λ+ρ).
    BuildOp {
        #[command(flatten)]
        module: ModuleArgs,
        /// Eigenvalue: c1..cr, c0 (q^{3λ} − [3]q^{λ} on A1, product formula elsewhere), c0-product, c0-appendix, or a product such as c1*c0.
        #[arg(long)]
        eigen: String,
        #[arg(long, default_value = "8", value_parser = positive)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Gauge::Auto)]
        gauge: Gauge,
        #[arg(long, value_enum, default_value_t = Tie::LexLargest)]
        tie: Tie,
    },
    /// Apply D_c to Ψ and compare with Ψ·c(λ+ρ).
    Apply {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        eigen: String,
        #[arg(long, default_value = "8", value_parser = positive)]
        depth: usize,
    },
    /// Commutator of two reconstructed operators.
    Commute {
        #[command(flatten)]
        module: ModuleArgs,
        /// Two eigenvalue names (repeat the flag).
        #[arg(long, num_args = 1, required = true)]
        eigen: Vec<String>,
        #[arg(long, default_value = "8", value_parser = positive)]
        depth: usize,
    },
    /// Closed-form Macdonald operator M_l for sl_N.
    MacOp {
        #[command(flatten)]
        mac: MacArgs,
        #[arg(long, default_value_t = 1)]
        l: usize,
        #[arg(long, value_enum, default_value_t = OpForm::Subset)]
        form: OpForm,
        /// Check M_l ψ_k = c_l ψ_k to this depth.
        #[arg(long, value_parser = positive)]
        verify_depth: Option<usize>,
    },
    /// Macdonald polynomial P_λ from the Gram–Schmidt oracle and/or the alternation of ψ_k.
    MacPoly {
        #[command(flatten)]
        mac: MacArgs,
        /// λ in Dynkin labels.
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<i64>,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        weyl: bool,
        #[arg(long, default_value = "12", value_parser = positive)]
        depth: usize,
    },
    /// Shift operator G_k with ψ_{k+1} = G_k ψ_k.
    ShiftOp {
        #[command(flatten)]
        mac: MacArgs,
        #[arg(long, default_value = "8", value_parser = positive)]
        depth: usize,
    },
    /// Symmetry of φ_k = δ_k ψ_k under exchanging λ and x.
    Duality {
        #[command(flatten)]
        mac: MacArgs,
        #[arg(long, value_enum, default_value_t = DualityMode::Symbolic)]
        mode: DualityMode,
        /// Sample pair "κ:κ'" in Dynkin labels, e.g. 1,0:0,1 (evaluated mode; repeatable).
        #[arg(long)]
        pair: Vec<String>,
        #[arg(long, default_value = "8", value_parser = positive)]
        depth: usize,
    },
    /// ε-expansion at q = e^ε of a rank-one operator or of ψ_k.
    ClassicalLimit {
        #[arg(long, value_enum)]
        op: ClassicalOp,
        #[arg(long, default_value_t = 1)]
        k: i64,
        #[arg(long, default_value_t = 3)]
        order: usize,
        /// Series depth for ψ_k.
        #[arg(long, default_value = "8", value_parser = positive)]
        depth: usize,
    },
    /// Run the acceptance suite.
    VerifyAll {
        #[arg(long, default_value = "desk")]
        profile: String,
        /// Criterion numbers to run (comma separated); all when omitted.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

fn run(cmd: Command, stream: bool) -> qtrace::Result<Report> {
    match cmd {
        Command::Shapovalov { sys, mu } => commands::shapovalov(&sys, &mu),
        Command::SingularVector { module, raw } => commands::singular_vector(&module, raw),
        Command::Psi { module, depth, normalized } => commands::psi(&module, depth, normalized),
        Command::BuildOp { module, eigen, depth, gauge, tie } => commands::build_op(&module, &eigen, depth, gauge, tie),
        Command::Apply { module, eigen, depth } => commands::apply(&module, &eigen, depth),
        Command::Commute { module, eigen, depth } => commands::commute(&module, &eigen, depth),
        Command::MacOp { mac, l, form, verify_depth } => commands::mac_op(&mac, l, form, verify_depth),
        Command::MacPoly { mac, lambda, oracle, weyl, depth } => commands::mac_poly(&mac, &lambda, oracle, weyl, depth),
        Command::ShiftOp { mac, depth } => commands::shift_op(&mac, depth),
        Command::Duality { mac, mode, pair, depth } => commands::duality(&mac, mode, &pair, depth),
        Command::ClassicalLimit { op, k, order, depth } => commands::classical(op, k, order, depth),
        Command::VerifyAll { profile, only } => commands::verify_all(&profile, &only, stream),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Invalid(_) | Error::NotFiniteType { .. } | Error::Resource(_) => 2,
        Error::Depth { .. } => 3,
        Error::Invariant { .. } => 4,
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stream = cli.format == Format::Text;
    let mut stdout = std::io::stdout().lock();
    match run(cli.command, stream) {
        Ok(report) => {
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, pretty(&report.json)) {
                    eprintln!("qtrace: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            let shown = match cli.format {
                Format::Json => pretty(&report.json),
                Format::Text => report.text.clone() + "\n",
            };
            let _ = stdout.write_all(shown.as_bytes());
            match &report.violation {
                None => ExitCode::SUCCESS,
                Some((id, detail)) => {
                    eprintln!("qtrace: invariant violated [{id}]: {detail}");
                    ExitCode::from(4)
                }
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.format == Format::Json {
                let id = match &e {
                    Error::Invariant { id, .. } => Some(*id),
                    _ => None,
                };
                let _ = stdout.write_all(pretty(&json!({"error": {"exit_code": code, "invariant": id, "message": e.to_string()}})).as_bytes());
            }
            eprintln!("qtrace: {e}");
            ExitCode::from(code)
        }
    }
}
