use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use k3glue::dh::{check_profile, minimal_circle_profile, single_block_profile, DHProfile};
use k3glue::embeddings::{period_preconditions, roots_construct};
use k3glue::planner::LatticeCert;
use k3glue::{build_certificate, plan, verify_with, ConstructionCertificate, Execution, Lattice, Rational};

#[derive(Parser)]
#[command(name = "k3glue", version, about = "Build and check K3 gluing certificates")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a certificate for k fixed-point pairs.
    Plan {
        #[arg(long)]
        k: i64,
        /// Block sizes, comma separated.
        #[arg(long, value_delimiter = ',')]
        parts: Option<Vec<i64>>,
        #[arg(long = "N")]
        n: Option<i64>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every claim in a certificate.
    Verify {
        cert: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Md)]
        report: ReportFormat,
        /// Run per-block checks on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Lattice data.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Duistermaat-Heckman fixtures.
    Dh {
        #[command(subcommand)]
        cmd: DhCmd,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Root data κ̂, β, d₁..d_k in the K3 lattice, with dual witnesses.
    Roots {
        #[arg(long)]
        k: usize,
        #[arg(long = "A", allow_negative_numbers = true)]
        a: i64,
        #[arg(long = "B", allow_negative_numbers = true)]
        b: i64,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        out: OutFormat,
    },
}

#[derive(Subcommand)]
enum DhCmd {
    /// The 10-point profile on ℝ/10ℤ.
    #[command(name = "minimal", visible_alias = "theorem2")]
    Minimal {
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        out: OutFormat,
    },
    /// One block on [−4 − w, 4 + w] with w = 1/2.
    #[command(name = "block", visible_alias = "prop61")]
    Block {
        #[arg(long)]
        k: usize,
        #[arg(long = "A", allow_negative_numbers = true)]
        a: i64,
        #[arg(long = "B", allow_negative_numbers = true)]
        b: i64,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        out: OutFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

const VERIFIED: u8 = 0;
const FAILED: u8 = 1;
const INVALID: u8 = 2;

fn invalid(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(INVALID)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Plan { k, parts, n, out } => cmd_plan(k, parts, n, out),
        Cmd::Verify { cert, report, sequential } => cmd_verify(&cert, report, sequential),
        Cmd::Lattice { cmd: LatticeCmd::Roots { k, a, b, out } } => cmd_roots(k, a, b, out),
        Cmd::Dh { cmd: DhCmd::Minimal { out } } => print_profile(&minimal_circle_profile(), out),
        Cmd::Dh { cmd: DhCmd::Block { k, a, b, out } } => {
            match single_block_profile(k, a, b, &Rational::frac(1, 2)) {
                Ok(p) => print_profile(&p, out),
                Err(e) => invalid(e),
            }
        }
    }
}

fn cmd_plan(k: i64, parts: Option<Vec<i64>>, n: Option<i64>, out: Option<PathBuf>) -> ExitCode {
    let cert = match plan(k, parts, n).and_then(|p| build_certificate(&p)) {
        Ok(c) => c,
        Err(e) => return invalid(e),
    };
    let text = cert.to_json();
    match out {
        Some(path) => {
            if let Err(e) = fs::write(&path, text) {
                return invalid(format!("{}: {e}", path.display()));
            }
            eprintln!(
                "wrote {} (k = {}, parts {:?}, N = {})",
                path.display(),
                cert.k,
                cert.parts,
                cert.n
            );
        }
        None => print!("{text}"),
    }
    ExitCode::from(VERIFIED)
}

fn cmd_verify(path: &PathBuf, format: ReportFormat, sequential: bool) -> ExitCode {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return invalid(format!("{}: {e}", path.display())),
    };
    let cert = match ConstructionCertificate::from_json(&text) {
        Ok(c) => c,
        Err(e) => return invalid(e),
    };
    let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
    let report = match verify_with(&cert, exec) {
        Ok(r) => r,
        Err(e) => return invalid(e),
    };
    match format {
        ReportFormat::Json => print!("{}", report.to_json()),
        ReportFormat::Md => print!("{}", report.to_markdown()),
    }
    ExitCode::from(if report.passed { VERIFIED } else { FAILED })
}

fn cmd_roots(k: usize, a: i64, b: i64, out: OutFormat) -> ExitCode {
    let l = Lattice::k3();
    let computed = roots_construct(k, a, b).and_then(|r| {
        let cert = LatticeCert::from_roots(&l, &r)?;
        let period = period_preconditions(&l, &r.kappa(), &r.beta, &r.d)?;
        let violations = r.pairing_violations(&l)?;
        Ok((cert, period, violations))
    });
    let (cert, period, violations) = match computed {
        Ok(x) => x,
        Err(e) => return invalid(e),
    };
    let ok = violations.is_empty() && period.all_pass() && cert.snf_divisors.iter().all(|&d| d == 1);
    match out {
        OutFormat::Json => {
            let v = json!({
                "roots": cert,
                "kappa_norm": period.kappa_norm,
                "beta_norm": period.beta_norm,
                "period_conditions": period.items().iter().map(|(n, ok)| json!({"name": n, "passed": ok})).collect::<Vec<_>>(),
                "pairing_violations": violations,
            });
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
        }
        OutFormat::Text => {
            println!("k = {k}, A = {a}, B = {b}");
            println!("κ̂  = {:?}", cert.kappa_hat);
            println!("β  = {:?}", cert.beta);
            for (i, d) in cert.d.iter().enumerate() {
                println!("d{} = {d:?}", i + 1);
            }
            println!("elementary divisors: {:?}", cert.snf_divisors);
            println!("(κ,κ) = {}, (β,β) = {}", period.kappa_norm, period.beta_norm);
            for (name, passed) in period.items() {
                println!("  [{}] {name}", if passed { "ok" } else { "FAIL" });
            }
            for v in &violations {
                println!("  pairing: {v}");
            }
        }
    }
    ExitCode::from(if ok { VERIFIED } else { FAILED })
}

fn print_profile(p: &DHProfile, out: OutFormat) -> ExitCode {
    let checks = match check_profile(p) {
        Ok(c) => c,
        Err(e) => return invalid(e),
    };
    let ok = checks.iter().all(|c| c.passed);
    match out {
        OutFormat::Json => {
            println!("{}", serde_json::to_string_pretty(p).expect("json"));
        }
        OutFormat::Text => {
            if let Some(t) = p.period() {
                println!("period {t}");
            }
            for piece in &p.pieces {
                println!("{:?} on {}: {}", piece.kind, piece.interval, piece.poly);
            }
            for w in &p.walls {
                println!("wall at {}: {} × {:?}", w.level, w.points.len(), w.points.first());
            }
            for c in &checks {
                println!("[{}] {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
                for w in &c.witnesses {
                    println!("    {w}");
                }
            }
        }
    }
    ExitCode::from(if ok { VERIFIED } else { FAILED })
}
