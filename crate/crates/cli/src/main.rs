use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cyclo_rr::verify::VerifyConfig;
use cyclo_rr_cli::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "cyclo-rr", version, about = "Exact equivariant K-theory and Riemann-Roch checks, JSON in and out")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Input: a file path, inline JSON, or `-` for stdin.
    #[arg(long, global = true)]
    input: Option<String>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Verb {
    /// Factors of Q[A^] for {"cyclic_factors": [...]}.
    Decompose,
    /// Cyclotomic inertia of a G-set.
    Inertia,
    /// L on {"gset", "class"}.
    Lrr,
    /// L^-1 on {"gset", "twisted"}.
    LrrInverse,
    /// p^* p_* = phi(r)/r on a G-set.
    CompCheck,
    /// Res . Ind on R(H) for {"group": {"degree", "generators"}, "generator"}.
    Mackey,
    /// Components of Hom(mu_r, GL_n) for {"r", "n"}.
    Homschemes,
    /// Normal-basis family for {"N"}.
    NormalBasis,
    /// Rational Riemann-Roch on {"gset", "class", "family"?}.
    RationalRr,
    /// Run invariant suites and report per-check results.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        max_group_order: u64,
        #[arg(long, default_value_t = 6)]
        max_set_size: usize,
        #[arg(long, default_value_t = 24)]
        max_n: u64,
    },
}

fn read_input(input: Option<&str>) -> CliResult<String> {
    let Some(input) = input else {
        return Err(CliError::Input("--input is required for this verb".into()));
    };
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(input.to_string());
    }
    if input == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        return Ok(text);
    }
    std::fs::read_to_string(input).map_err(|e| CliError::Input(format!("{input}: {e}")))
}

fn dispatch(cli: &Cli) -> CliResult<serde_json::Value> {
    use cyclo_rr_cli as cmd;
    let input = || read_input(cli.input.as_deref());
    match &cli.verb {
        Verb::Decompose => cmd::decompose(&input()?),
        Verb::Inertia => cmd::inertia(&input()?),
        Verb::Lrr => cmd::lrr(&input()?),
        Verb::LrrInverse => cmd::lrr_inverse_cmd(&input()?),
        Verb::CompCheck => cmd::comp_check_cmd(&input()?),
        Verb::Mackey => cmd::mackey(&input()?),
        Verb::Homschemes => cmd::homschemes(&input()?),
        Verb::NormalBasis => cmd::normal_basis(&input()?),
        Verb::RationalRr => cmd::rational_rr_cmd(&input()?),
        Verb::Verify { suite, seed, max_group_order, max_set_size, max_n } => {
            let cfg = VerifyConfig {
                seed: *seed,
                max_group_order: *max_group_order,
                max_set_size: *max_set_size,
                max_n: *max_n,
                ..VerifyConfig::default()
            };
            cmd::verify(suite, &cfg)
        }
    }
}

fn emit(cli: &Cli, value: &serde_json::Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize") + "\n";
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, code) = match dispatch(&cli) {
        Ok(v) => (v, 0),
        Err(CliError::CheckFailed(v)) => (v, 2),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    if let Err(msg) = emit(&cli, &value) {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
