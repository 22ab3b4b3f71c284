mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use boxprod::verify::{Fault, Scope};
use commands::{HomFiles, Setting};
use report::RunReport;

#[derive(Parser)]
#[command(name = "boxprod", version, about = "Balanced tensor products of module categories over Vect[K]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct SettingArgs {
    /// Group file, `cyclic:n` or `symmetric:n`.
    #[arg(long, default_value = "cyclic:2")]
    group: String,
    /// `Q` or `Fp:p`.
    #[arg(long, default_value = "Q")]
    field: String,
    /// Algebra file, `group-algebra`, `flat-group-algebra` or `unit`.
    #[arg(long, default_value = "group-algebra")]
    algebra_a: String,
    #[arg(long, default_value = "group-algebra")]
    algebra_b: String,
}

impl SettingArgs {
    fn setting(self) -> Setting {
        Setting { group_spec: self.group, field_spec: self.field, a_spec: self.algebra_a, b_spec: self.algebra_b }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Linalg,
    Algebra,
    Graded,
    Modcat,
    Balanced,
    All,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Scope {
        match s {
            ScopeArg::Linalg => Scope::Linalg,
            ScopeArg::Algebra => Scope::Algebra,
            ScopeArg::Graded => Scope::Graded,
            ScopeArg::Modcat => Scope::Modcat,
            ScopeArg::Balanced => Scope::Balanced,
            ScopeArg::All => Scope::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    /// Corrupt one structure constant of every corpus group algebra.
    StructureConstant,
}

#[derive(Subcommand)]
enum Command {
    /// Build the balanced product of Mod-A and B-Mod and check it.
    BalancedProduct {
        #[command(flatten)]
        setting: SettingArgs,
        /// Seed for the randomized hom-formula instances.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        instances: usize,
    },
    /// Run the invariant suites on the built-in corpus.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        scope: ScopeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        instances: usize,
        /// Test mode: inject a known fault, which the suites must report.
        #[arg(long, value_enum)]
        inject_fault: Option<FaultArg>,
    },
    /// Compare both sides of the hom formula for modules read from files.
    Homcheck {
        #[command(flatten)]
        setting: SettingArgs,
        /// Left A-module file.
        x: PathBuf,
        /// Left A-module file.
        x_prime: PathBuf,
        /// Right B-module file.
        y: PathBuf,
        /// Right B-module file.
        y_prime: PathBuf,
    },
}

fn run(cli: Cli) -> Result<RunReport> {
    match cli.command {
        Command::BalancedProduct { setting, seed, instances } => commands::balanced_product(&setting.setting(), seed, instances),
        Command::Verify { scope, seed, instances, inject_fault } => {
            let fault = inject_fault.map(|FaultArg::StructureConstant| Fault::StructureConstant);
            Ok(commands::verify(scope.into(), seed, instances, fault))
        }
        Command::Homcheck { setting, x, x_prime, y, y_prime } => {
            commands::homcheck(&setting.setting(), &HomFiles { x, x2: x_prime, y, y2: y_prime })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report_path = cli.report.clone();
    let outcome = run(cli).and_then(|report| {
        let json = report.to_json();
        if let Some(path) = &report_path {
            std::fs::write(path, &json).with_context(|| format!("writing report to {}", path.display()))?;
        }
        Ok((report, json))
    });
    match outcome {
        Ok((report, json)) => {
            println!("{json}");
            eprintln!("{}", report.summary());
            if report.passed { ExitCode::SUCCESS } else { ExitCode::FAILURE }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
