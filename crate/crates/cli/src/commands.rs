//! Subcommand implementations. Each one resolves what it needs from the run
//! configuration, delegates to the library, and writes CSV or report files
//! with fixed column orders into the output directory.

use std::io;
use std::path::{Path, PathBuf};

use titankit::arm::folded_diameter;
use titankit::budget::{
    annual_energy, builtin_activities, max_battery_from_night, simulate_with_efficiency, Activity,
    Feasibility, MissionPlan, Schedule, HOURS_PER_YEAR,
};
use titankit::power::{calibrate, optimal_speed, total_power, CalibrationResult, VehicleParams};
use titankit::rotor::{
    builtin_table, fit_surfaces, select_configuration, CandidateGrid, REFERENCE_CONFIGURATION,
};
use titankit::{Error as CoreError, Material, RotorFit, RotorPoint, Vehicle};

use crate::config::{ConfigError, RunConfig};
use crate::format::{sig6, write_csv};
use crate::tables;

/// Command failure, split by the exit-code contract: input problems exit 2,
/// infeasibility verdicts exit 1.
#[derive(Debug)]
pub enum CmdError {
    Input(String),
    Infeasible(String),
}

impl From<CoreError> for CmdError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NoFeasibleRotor { .. } | CoreError::CalibrationStalled { .. } => {
                CmdError::Infeasible(e.to_string())
            }
            other => CmdError::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for CmdError {
    fn from(e: io::Error) -> Self {
        CmdError::Input(e.to_string())
    }
}

impl From<String> for CmdError {
    fn from(e: String) -> Self {
        CmdError::Input(e)
    }
}

impl From<ConfigError> for CmdError {
    fn from(e: ConfigError) -> Self {
        CmdError::Input(e.to_string())
    }
}

pub type CmdResult = Result<(), CmdError>;

/// Shared command context: validated config plus the output directory.
pub struct Ctx<'a> {
    pub cfg: &'a RunConfig,
    pub out: &'a Path,
}

impl Ctx<'_> {
    fn path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }

    pub fn rotor_points(&self) -> Result<Vec<RotorPoint>, CmdError> {
        match &self.cfg.rotor.table {
            Some(path) => Ok(tables::load_rotor_table(path)?),
            None => Ok(builtin_table()),
        }
    }

    pub fn rotor_fit(&self) -> Result<(Vec<RotorPoint>, RotorFit), CmdError> {
        let points = self.rotor_points()?;
        let fit = fit_surfaces(&points)?;
        Ok((points, fit))
    }

    pub fn activities(&self) -> Result<Vec<Activity<f64>>, CmdError> {
        match &self.cfg.budget.activities {
            Some(path) => Ok(tables::load_activities(path)?),
            None => Ok(builtin_activities()),
        }
    }

    /// Builtin materials take the configured crystallization multiplier;
    /// user tables are used as given. The pressurization scale applies to
    /// every baseline either way.
    pub fn materials(&self) -> Result<Vec<Material>, CmdError> {
        let mut mats = match &self.cfg.materials.table {
            Some(path) => tables::load_materials(path)?,
            None => {
                let mut mats = titankit::arm::builtin_materials::<f64>();
                for m in &mut mats {
                    if m.crystallization_temp_c.is_some() {
                        m.post_crystallization_multiplier =
                            self.cfg.materials.crystallization_multiplier;
                    }
                }
                mats
            }
        };
        for m in &mut mats {
            m.baseline_stiffness *= self.cfg.materials.pressure_stiffness_scale;
        }
        Ok(mats)
    }

    /// Rigid and deformable vehicle parameter sets: explicit geometry when
    /// the config supplies it, otherwise calibrated against the targets.
    pub fn scenarios(
        &self,
    ) -> Result<(Vehicle, Vehicle, Option<CalibrationResult<f64>>), CmdError> {
        let atm = self.cfg.atmosphere()?;
        if let (Some(frontal), Some(disk)) = (
            self.cfg.vehicle.frontal_area_m2,
            self.cfg.vehicle.disk_area_m2,
        ) {
            let build = |drag: f64| -> Result<Vehicle, CmdError> {
                Ok(VehicleParams::new(
                    self.cfg.vehicle.mass_kg,
                    frontal,
                    drag,
                    disk,
                    self.cfg.vehicle.blade_drag_coeff,
                    self.cfg.vehicle.solidity,
                    self.cfg.vehicle.rotor_count,
                )?)
            };
            return Ok((
                build(self.cfg.flight.rigid_drag_coeff)?,
                build(self.cfg.flight.deformable_drag_coeff)?,
                None,
            ));
        }
        let cal = calibrate(&atm, &self.cfg.calibration_inputs())?;
        Ok((cal.rigid, cal.deformable, Some(cal)))
    }
}

/// Which flight configuration a command works on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Scenario {
    Rigid,
    Deformable,
    Both,
}

fn scenario_list(s: Scenario) -> Vec<(&'static str, bool)> {
    match s {
        Scenario::Rigid => vec![("rigid", true)],
        Scenario::Deformable => vec![("deformable", false)],
        Scenario::Both => vec![("rigid", true), ("deformable", false)],
    }
}

pub fn rotor_sweep(ctx: &Ctx) -> CmdResult {
    let atm = ctx.cfg.atmosphere()?;
    let (_, fit) = ctx.rotor_fit()?;
    let domain = fit.domain();
    let omega = 2.0 * std::f64::consts::PI / 60.0;

    let steps = |lo: f64, hi: f64, step: f64| -> Vec<f64> {
        let n = ((hi - lo) / step + 1e-9).floor() as usize;
        let mut v: Vec<f64> = (0..=n).map(|i| lo + i as f64 * step).collect();
        if let Some(last) = v.last() {
            if hi - last > 1e-12 {
                v.push(hi);
            }
        }
        v
    };

    let mut rows = Vec::new();
    for d in steps(
        domain.d_min,
        domain.d_max,
        ctx.cfg.rotor.sweep_diameter_step_m,
    ) {
        for b in steps(domain.b_min, domain.b_max, ctx.cfg.rotor.sweep_blade_step) {
            let (rpm, torque) = fit.evaluate(d, b)?;
            let tip_mach = atm.tip_mach(rpm, d)?;
            rows.push(vec![
                sig6(d),
                sig6(b),
                sig6(rpm),
                sig6(torque),
                sig6(tip_mach),
                sig6(torque * rpm * omega),
            ]);
        }
    }

    let path = ctx.path("rotor_sweep.csv");
    write_csv(
        &path,
        "diameter_m,blades,rpm,torque_nm,tip_mach,shaft_power_w",
        &rows,
    )?;
    println!("wrote {}", path.display());
    Ok(())
}

pub fn rotor_select(ctx: &Ctx, critical_mach: Option<f64>) -> CmdResult {
    let atm = ctx.cfg.atmosphere()?;
    let (points, fit) = ctx.rotor_fit()?;
    let critical = critical_mach.unwrap_or(ctx.cfg.rotor.critical_mach);
    let grid = CandidateGrid::from_points(&points);
    let sel = select_configuration(&fit, &atm, critical, &grid)?;

    let path = ctx.path("rotor_selection.csv");
    write_csv(
        &path,
        "diameter_m,blades,rpm,torque_nm,tip_mach,shaft_power_w",
        &[vec![
            sig6(sel.diameter_m),
            sig6(sel.blades),
            sig6(sel.rpm),
            sig6(sel.torque_nm),
            sig6(sel.tip_mach),
            sig6(sel.shaft_power_w),
        ]],
    )?;
    println!(
        "selected d = {} m, B = {}, rpm = {}, torque = {} N.m, tip Mach {}, shaft power {} W",
        sig6(sel.diameter_m),
        sel.blades.round() as u32,
        sig6(sel.rpm),
        sig6(sel.torque_nm),
        sig6(sel.tip_mach),
        sig6(sel.shaft_power_w),
    );
    println!(
        "reference pick: d = {} m, B = {}, ~{} rpm, {} N.m",
        REFERENCE_CONFIGURATION.diameter_m,
        REFERENCE_CONFIGURATION.blades,
        REFERENCE_CONFIGURATION.rpm,
        REFERENCE_CONFIGURATION.torque_nm,
    );
    println!("wrote {}", path.display());
    Ok(())
}

/// Cruise table text shared by `cruise` and `report`.
pub fn cruise_block(ctx: &Ctx, scenario: Scenario) -> Result<String, CmdError> {
    let atm = ctx.cfg.atmosphere()?;
    let (rigid, deformable, cal) = ctx.scenarios()?;
    let battery = ctx.cfg.battery()?;
    let mode = ctx.cfg.induced_mode();

    let mut lines = Vec::new();
    lines.push(format!(
        "{:<14}{:>14}{:>14}{:>12}{:>16}",
        "scenario", "v_opt (m/s)", "power (W)", "C_D", "range (km)"
    ));
    let mut solutions = Vec::new();
    for (name, is_rigid) in scenario_list(scenario) {
        let vp = if is_rigid { &rigid } else { &deformable };
        let sol = optimal_speed(
            &atm,
            vp,
            mode,
            ctx.cfg.flight.max_speed_mps,
            ctx.cfg.flight.speed_tolerance_mps,
        )?
        .with_range(battery.capacity_kwh)?;
        lines.push(format!(
            "{:<14}{:>14}{:>14}{:>12}{:>16}",
            name,
            sig6(sol.optimal_speed_mps),
            sig6(sol.power_w),
            sig6(vp.body_drag_coeff),
            sig6(sol.range_km.unwrap_or(f64::NAN)),
        ));
        solutions.push((name, sol));
    }
    lines.push(format!("battery: {} kWh", sig6(battery.capacity_kwh)));
    if solutions.len() == 2 {
        let rigid_power = solutions[0].1.power_w;
        let deform_power = solutions[1].1.power_w;
        let saving = 1.0 - deform_power / rigid_power;
        let mut line = format!("power saving at the optimum: {} %", sig6(100.0 * saving));
        if deform_power / rigid_power <= 0.75 {
            line.push_str(" (reference claim: up to 28% lower)");
        }
        lines.push(line);
    }
    if let Some(cal) = cal {
        lines.push(format!(
            "calibrated: S_rigid = {} m^2, S_deformable = {} m^2, blade term k_p = {} m^2, \
             A_eff rigid = {} m^2, A_eff deformable = {} m^2 (residual {:.2e})",
            sig6(cal.frontal_area_rigid_m2),
            sig6(cal.frontal_area_deformable_m2),
            sig6(cal.blade_term),
            sig6(cal.disk_area_rigid_m2),
            sig6(cal.disk_area_deformable_m2),
            cal.residual,
        ));
    }
    Ok(lines.join("\n"))
}

pub fn cruise(ctx: &Ctx, scenario: Scenario) -> CmdResult {
    let block = cruise_block(ctx, scenario)?;
    let path = ctx.path("cruise_report.txt");
    std::fs::write(&path, format!("{block}\n"))?;
    println!("{block}");
    println!("wrote {}", path.display());
    Ok(())
}

pub fn power_sweep(ctx: &Ctx, scenario: Scenario) -> CmdResult {
    let atm = ctx.cfg.atmosphere()?;
    let (rigid, deformable, _) = ctx.scenarios()?;
    let mode = ctx.cfg.induced_mode();

    for (name, is_rigid) in scenario_list(scenario) {
        let vp = if is_rigid { &rigid } else { &deformable };
        let mut rows = Vec::new();
        let (start, end, step) = (
            ctx.cfg.flight.sweep_start_mps,
            ctx.cfg.flight.sweep_end_mps,
            ctx.cfg.flight.sweep_step_mps,
        );
        let n = ((end - start) / step + 1e-9).floor() as usize;
        for i in 0..=n {
            let v = start + i as f64 * step;
            let b = total_power(&atm, vp, v, mode);
            rows.push(vec![
                sig6(v),
                sig6(b.body_drag_w),
                sig6(b.induced_w),
                sig6(b.profile_w),
                sig6(b.total_w),
            ]);
        }
        let path = ctx.path(&format!("power_sweep_{name}.csv"));
        write_csv(
            &path,
            "speed_mps,p_body_w,p_induced_w,p_profile_w,p_total_w",
            &rows,
        )?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

pub fn range(ctx: &Ctx, battery_kwh: Option<f64>) -> CmdResult {
    let atm = ctx.cfg.atmosphere()?;
    let (rigid, deformable, _) = ctx.scenarios()?;
    let mode = ctx.cfg.induced_mode();
    let battery_kwh = match battery_kwh {
        Some(kwh) if kwh > 0.0 => kwh,
        Some(kwh) => {
            return Err(CmdError::Input(format!(
                "--battery-kwh must be positive (got {kwh})"
            )))
        }
        None => ctx.cfg.battery()?.capacity_kwh,
    };

    let mut rows = Vec::new();
    for (name, vp) in [("rigid", &rigid), ("deformable", &deformable)] {
        let sol = optimal_speed(
            &atm,
            vp,
            mode,
            ctx.cfg.flight.max_speed_mps,
            ctx.cfg.flight.speed_tolerance_mps,
        )?
        .with_range(battery_kwh)?;
        let range = sol.range_km.unwrap_or(f64::NAN);
        rows.push(vec![
            name.to_string(),
            sig6(sol.optimal_speed_mps),
            sig6(sol.power_w),
            sig6(battery_kwh),
            sig6(range),
        ]);
        println!(
            "{name}: {} km at {} m/s",
            sig6(range),
            sig6(sol.optimal_speed_mps)
        );
    }

    let path = ctx.path("range.csv");
    write_csv(
        &path,
        "scenario,optimal_speed_mps,power_w,battery_kwh,range_km",
        &rows,
    )?;
    println!("wrote {}", path.display());
    Ok(())
}

pub fn budget_annual(ctx: &Ctx) -> CmdResult {
    let activities = ctx.activities()?;
    let annual = annual_energy(&activities);

    let mut rows = Vec::new();
    for line in &annual.lines {
        let hours = activities
            .iter()
            .find(|a| a.name == line.name)
            .map(|a| match a.schedule {
                Schedule::AnnualHours(h) => sig6(h),
                Schedule::Continuous => "CONT".to_string(),
            })
            .unwrap_or_default();
        rows.push(vec![
            line.name.clone(),
            sig6(line.power_w),
            hours,
            sig6(line.energy_kwh),
        ]);
    }
    rows.push(vec![
        "TOTAL".to_string(),
        String::new(),
        String::new(),
        sig6(annual.total_kwh),
    ]);

    let path = ctx.path("annual_budget.csv");
    write_csv(&path, "activity,power_w,annual_hours,energy_kwh", &rows)?;

    let generator_annual = ctx.cfg.mmrtg.output_w * HOURS_PER_YEAR / 1000.0;
    println!(
        "annual demand {} kWh vs generator {} kWh at {} W",
        sig6(annual.total_kwh),
        sig6(generator_annual),
        sig6(ctx.cfg.mmrtg.output_w),
    );
    println!("wrote {}", path.display());
    Ok(())
}

pub fn budget_simulate(
    ctx: &Ctx,
    plan_path: Option<&Path>,
    step_h: Option<f64>,
    horizon_h: Option<f64>,
) -> CmdResult {
    let plan_path = plan_path
        .map(Path::to_path_buf)
        .or_else(|| ctx.cfg.budget.plan.clone())
        .ok_or_else(|| {
            CmdError::Input("budget-simulate needs a plan: set budget.plan or pass --plan".into())
        })?;
    let activities = ctx.activities()?;
    let entries = tables::load_plan_entries(&plan_path, &activities)?;
    let residual = activities
        .iter()
        .filter(|a| a.schedule == Schedule::Continuous)
        .map(|a| a.power_w)
        .sum::<f64>();
    let horizon = horizon_h.or(ctx.cfg.budget.horizon_h);
    let plan = MissionPlan::new(entries, residual, horizon)?;

    let source = ctx.cfg.power_source()?;
    let battery = ctx.cfg.battery()?;
    let step = step_h.unwrap_or(ctx.cfg.budget.step_h);
    let trajectory = simulate_with_efficiency(
        &plan,
        &source,
        &battery,
        step,
        ctx.cfg.budget.charge_efficiency,
    )?;

    let verdict_token = |sample_time: f64| match trajectory.verdict {
        Feasibility::Feasible => "ok",
        Feasibility::Depleted { first_violation_h } if sample_time >= first_violation_h => {
            "depleted"
        }
        _ => "ok",
    };
    let rows: Vec<Vec<String>> = trajectory
        .samples
        .iter()
        .map(|s| {
            vec![
                sig6(s.time_h),
                sig6(s.soc_kwh),
                sig6(s.load_w),
                verdict_token(s.time_h).to_string(),
            ]
        })
        .collect();

    let path = ctx.path("soc_trajectory.csv");
    write_csv(&path, "time_h,soc_kwh,load_w,verdict", &rows)?;
    println!("wrote {}", path.display());

    match trajectory.verdict {
        Feasibility::Feasible => {
            println!(
                "feasible: final state of charge {} kWh of {} kWh",
                sig6(trajectory.final_soc_kwh),
                sig6(battery.capacity_kwh),
            );
            Ok(())
        }
        Feasibility::Depleted { first_violation_h } => Err(CmdError::Infeasible(format!(
            "battery depleted at t = {} h",
            sig6(first_violation_h)
        ))),
    }
}

pub fn material_sweep(ctx: &Ctx) -> CmdResult {
    let materials = ctx.materials()?;
    let (start, end, step) = (
        ctx.cfg.materials.sweep_start_c,
        ctx.cfg.materials.sweep_end_c,
        ctx.cfg.materials.sweep_step_c,
    );

    let mut rows = Vec::new();
    let n = ((end - start) / step + 1e-9).floor() as usize;
    for i in 0..=n {
        let t = start + i as f64 * step;
        for m in &materials {
            rows.push(vec![sig6(t), m.name.clone(), sig6(m.stiffness_at(t)?)]);
        }
    }

    let path = ctx.path("material_sweep.csv");
    write_csv(&path, "temp_c,material,stiffness", &rows)?;
    println!("wrote {}", path.display());
    Ok(())
}

pub fn fold(ctx: &Ctx, angle_deg: Option<f64>) -> CmdResult {
    let geom = ctx.cfg.arm_geometry()?;
    let angle_deg = angle_deg.unwrap_or(ctx.cfg.arm.fold_angle_deg);
    if !(0.0..=90.0).contains(&angle_deg) {
        return Err(CmdError::Input(format!(
            "fold angle must lie in 0..=90 degrees (got {angle_deg})"
        )));
    }

    let mut rows = Vec::new();
    for i in 0..=18 {
        let deg = 5.0 * i as f64;
        let r = folded_diameter(&geom, deg.to_radians());
        rows.push(vec![
            sig6(deg),
            sig6(r.extended_diameter_m),
            sig6(r.folded_diameter_m),
            sig6(r.reduction_fraction),
        ]);
    }
    let path = ctx.path("fold_geometry.csv");
    write_csv(
        &path,
        "fold_angle_deg,extended_diameter_m,folded_diameter_m,reduction_fraction",
        &rows,
    )?;

    let at = folded_diameter(&geom, angle_deg.to_radians());
    println!(
        "fold {} deg: stowed diameter {} m -> {} m, reduction {} %",
        sig6(angle_deg),
        sig6(at.extended_diameter_m),
        sig6(at.folded_diameter_m),
        sig6(100.0 * at.reduction_fraction),
    );
    println!("wrote {}", path.display());
    Ok(())
}

/// Night-limited battery sizing used by `report`.
pub fn night_battery(ctx: &Ctx) -> Result<titankit::BatteryPack, CmdError> {
    Ok(max_battery_from_night(
        &ctx.cfg.power_source()?,
        ctx.cfg.budget.night_hours,
        ctx.cfg.battery.specific_energy_wh_per_kg,
    )?)
}
