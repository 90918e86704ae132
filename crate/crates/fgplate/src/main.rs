//! Command-line driver for the plate analyses.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fgplate::config::{AnalysisConfig, AnalysisKind};
use fgplate::runner;

#[derive(Parser)]
#[command(
    name = "fgplate",
    version,
    about = "Bending and free-vibration analysis of functionally graded sandwich plates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Analysis configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory for CSV/JSON tables.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Override config values, e.g. --set mesh.nx=4 --set layup.n=2.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Compare computed cells against bundled benchmark values
    /// (exit code 4 on mismatch). The only supported argument is
    /// "golden".
    #[arg(long)]
    check: Option<String>,
    /// Print each result row.
    #[arg(short, long)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Static bending table (mechanical or thermal load).
    Static(RunArgs),
    /// Free-vibration frequency parameters.
    Modal(RunArgs),
    /// Mesh-refinement study.
    Converge(RunArgs),
    /// Through-thickness profiles (plot-ready data).
    Profile(RunArgs),
    /// Parse and validate a config, printing its canonical form.
    ValidateConfig {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Static(args) => run(args, AnalysisKind::Static),
        Command::Modal(args) => run(args, AnalysisKind::Modal),
        Command::Converge(args) => run(args, AnalysisKind::Convergence),
        Command::Profile(args) => run(args, AnalysisKind::Profile),
        Command::ValidateConfig { config, set } => validate(config, set),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn load_config(args: &RunArgs, kind: AnalysisKind) -> fgplate::Result<AnalysisConfig> {
    let mut config = AnalysisConfig::from_path(&args.config)?;
    if !args.set.is_empty() {
        config = config.with_overrides(&args.set)?;
    }
    config.analysis = kind;
    Ok(config)
}

fn run(args: RunArgs, kind: AnalysisKind) -> fgplate::Result<ExitCode> {
    if let Some(mode) = &args.check {
        if mode != "golden" {
            return Err(fgplate::Error::Config(format!(
                "unknown check mode '{mode}' (expected 'golden')"
            )));
        }
    }
    let config = load_config(&args, kind)?;
    let table = runner::run(&config)?;
    let written = runner::write_outputs(&table, &config, &args.out)?;
    for path in &written {
        println!("wrote {}", path.display());
    }
    if args.verbose {
        print_rows(&table);
    }
    if args.check.is_some() {
        let report = runner::check_golden(&table, &config);
        for line in &report.lines {
            println!("{line}");
        }
        println!(
            "golden check: {}/{} cells passed",
            report.checked.saturating_sub(report.failed),
            report.checked
        );
        if !report.passed() {
            return Ok(ExitCode::from(4));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_rows(table: &runner::ResultTable) {
    for r in &table.static_rows {
        println!(
            "{} {} {} n={} a/h={}: u={:.5} w={:.5} sxx={:.5} sxy={:.5} sxz={:.5}",
            r.loading, r.model, r.ratio, r.n, r.a_over_h,
            r.values.u, r.values.w, r.values.sxx, r.values.sxy, r.values.sxz
        );
    }
    for r in &table.modal_rows {
        let omegas: Vec<String> = r.omega.iter().map(|w| format!("{w:.4}")).collect();
        println!(
            "{} {} n={} a/h={} {}: {}",
            r.model, r.ratio, r.n, r.a_over_h, r.mesh,
            omegas.join(" ")
        );
    }
    for r in &table.convergence_rows {
        println!(
            "{} {} n={} a/h={} {}: omega1={:.4}{}",
            r.model, r.ratio, r.n, r.a_over_h, r.mesh, r.omega[0],
            if r.non_monotone { "  [non-monotone]" } else { "" }
        );
    }
    for p in &table.profiles {
        println!(
            "profile {} {} at ({}, {}) [{}]: {} samples",
            p.quantity, p.model, p.x_over_a, p.y_over_b, p.source,
            p.rows.len()
        );
    }
}

fn validate(path: PathBuf, set: Vec<String>) -> fgplate::Result<ExitCode> {
    let mut config = AnalysisConfig::from_path(&path)?;
    if !set.is_empty() {
        config = config.with_overrides(&set)?;
    }
    println!("{}", config.canonical_json());
    println!("config ok (hash {})", config.hash());
    Ok(ExitCode::SUCCESS)
}
