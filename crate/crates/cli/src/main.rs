//! Batch CLI for the titankit toolkit.
//!
//! Exit codes: 0 on success, 1 on infeasibility verdicts (no rotor under
//! the Mach cap, battery depletion, calibration failure), 2 on input errors
//! (bad config, malformed tables, unknown flags).

// `!(x > 0)` in the validators rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod format;
mod report;
mod tables;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CmdError, Ctx, Scenario};
use config::RunConfig;

#[derive(Parser)]
#[command(
    name = "titankit",
    version,
    about = "Design and energetics toolkit for a soft-morphing Titan rotorcraft concept"
)]
struct Cli {
    /// TOML run configuration; builtin defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for CSV and report files.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    /// Suppress the timestamp line in reports (byte-reproducible output).
    #[arg(long, global = true)]
    no_timestamp: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the fitted rotor surfaces over the whole design domain.
    RotorSweep,
    /// Pick the lowest-shaft-power configuration under the tip-Mach cap.
    RotorSelect {
        /// Override the configured critical tip Mach.
        #[arg(long)]
        critical_mach: Option<f64>,
    },
    /// Optimal cruise speed, power, and range per scenario.
    Cruise {
        #[arg(long, value_enum, default_value = "both")]
        scenario: Scenario,
    },
    /// Power-component curves over the speed grid.
    PowerSweep {
        #[arg(long, value_enum, default_value = "both")]
        scenario: Scenario,
    },
    /// Operational range at the configured (or given) battery capacity.
    Range {
        /// Battery capacity in kWh, overriding the configured battery.
        #[arg(long)]
        battery_kwh: Option<f64>,
    },
    /// Annual energy accounting of the activity table.
    BudgetAnnual,
    /// State-of-charge timeline for a mission plan.
    BudgetSimulate {
        /// Plan CSV (start_h,duration_h,activity_name); overrides the config.
        #[arg(long)]
        plan: Option<PathBuf>,
        /// Reporting step in hours.
        #[arg(long)]
        step_h: Option<f64>,
        /// Simulation horizon in hours.
        #[arg(long)]
        horizon_h: Option<f64>,
    },
    /// Stiffness-vs-temperature curves for every material.
    MaterialSweep,
    /// Stowed-diameter reduction over fold angle.
    Fold {
        /// Fold angle in degrees, overriding the configured angle.
        #[arg(long)]
        angle_deg: Option<f64>,
    },
    /// One-page consolidated summary across all modules.
    Report,
}

fn run(cli: &Cli) -> Result<(), CmdError> {
    let cfg = RunConfig::load(cli.config.as_deref())?;
    // An explicit --out wins; the config's output.directory covers the rest.
    let out = cfg
        .output
        .directory
        .clone()
        .filter(|_| cli.out.as_os_str() == "out")
        .unwrap_or_else(|| cli.out.clone());
    fs::create_dir_all(&out)?;
    let ctx = Ctx {
        cfg: &cfg,
        out: &out,
    };

    match &cli.command {
        Command::RotorSweep => commands::rotor_sweep(&ctx),
        Command::RotorSelect { critical_mach } => commands::rotor_select(&ctx, *critical_mach),
        Command::Cruise { scenario } => commands::cruise(&ctx, *scenario),
        Command::PowerSweep { scenario } => commands::power_sweep(&ctx, *scenario),
        Command::Range { battery_kwh } => commands::range(&ctx, *battery_kwh),
        Command::BudgetAnnual => commands::budget_annual(&ctx),
        Command::BudgetSimulate {
            plan,
            step_h,
            horizon_h,
        } => commands::budget_simulate(&ctx, plan.as_deref(), *step_h, *horizon_h),
        Command::MaterialSweep => commands::material_sweep(&ctx),
        Command::Fold { angle_deg } => commands::fold(&ctx, *angle_deg),
        Command::Report => report::report(&ctx, cli.no_timestamp),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Infeasible(msg)) => {
            eprintln!("infeasible: {msg}");
            ExitCode::from(1)
        }
        Err(CmdError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
