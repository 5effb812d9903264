use clap::{Parser, Subcommand, ValueEnum};
use corings_cli::{
    fixture_workspace, parse_workspace, resolve_workspace, run_workspace, serialize_workspace,
    RunOptions,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "corings",
    version,
    about = "Exact verification of coring/sub-bimodule correspondences over small fields"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Commands,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Commands {
    /// Parse a workspace file and execute its tasks.
    Run {
        /// Workspace file path.
        file: PathBuf,
        /// Enumeration cap (also via CORINGS_BUDGET).
        #[arg(long)]
        budget: Option<u64>,
        /// Worker threads for enumeration filters (also via CORINGS_WORKERS).
        #[arg(long)]
        workers: Option<usize>,
        /// Report format.
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Re-run every fixture oracle before the tasks.
        #[arg(long)]
        seed_check: bool,
        /// Stop at the first non-passing task.
        #[arg(long)]
        fail_fast: bool,
    },
    /// Parse a workspace file and report success without running tasks.
    Check { file: PathBuf },
    /// Write the bundled example workspaces into a directory.
    EmitFixtures { dir: PathBuf },
}

fn env_u64(name: &str) -> Option<u64> {
    std::env::var(name).ok()?.parse().ok()
}

fn env_usize(name: &str) -> Option<usize> {
    std::env::var(name).ok()?.parse().ok()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Commands::Run {
            file,
            budget,
            workers,
            format,
            seed_check,
            fail_fast,
        } => {
            let budget = budget
                .or_else(|| env_u64("CORINGS_BUDGET"))
                .unwrap_or(1_000_000);
            let workers = workers.or_else(|| env_usize("CORINGS_WORKERS"));
            if let Some(n) = workers {
                // Ignore failure if a pool already exists.
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build_global();
            }
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", file.display());
                    return ExitCode::from(2);
                }
            };
            let parsed = match parse_workspace(&text) {
                Ok(ws) => ws,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let resolved = match resolve_workspace(&parsed) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let opts = RunOptions {
                budget,
                fail_fast,
                seed_check,
            };
            let report = run_workspace(&resolved, &opts);
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            ExitCode::from(report.summary.exit_code as u8)
        }
        Commands::Check { file } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", file.display());
                    return ExitCode::from(2);
                }
            };
            match parse_workspace(&text).and_then(|ws| resolve_workspace(&ws).map(|_| ws)) {
                Ok(ws) => {
                    println!(
                        "ok: {} algebras, {} bimodules, {} tasks",
                        ws.algebras.len(),
                        ws.bimodules.len(),
                        ws.tasks.len()
                    );
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Commands::EmitFixtures { dir } => {
            if let Err(e) = std::fs::create_dir_all(&dir) {
                eprintln!("error: cannot create {}: {e}", dir.display());
                return ExitCode::from(2);
            }
            for which in ["ex_free", "ex_sweedler", "ex_sep"] {
                let ws = fixture_workspace(which).expect("bundled fixture");
                let path = dir.join(format!("{which}.cws"));
                if let Err(e) = std::fs::write(&path, serialize_workspace(&ws)) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
                println!("wrote {}", path.display());
            }
            ExitCode::SUCCESS
        }
    }
}
