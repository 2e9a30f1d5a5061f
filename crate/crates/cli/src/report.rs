//! The consolidated one-page summary: rotor selection, cruise comparison,
//! energy budget, material verdicts, and folding geometry, each annotated
//! with the reference figure it mirrors where one exists.

use titankit::arm::folded_diameter;
use titankit::budget::{annual_energy, HOURS_PER_YEAR};
use titankit::rotor::{
    required_thrust_per_rotor, select_configuration, CandidateGrid, REFERENCE_CONFIGURATION,
};

use crate::commands::{cruise_block, night_battery, CmdError, Ctx, Scenario};
use crate::format::sig6;

pub fn build_report(ctx: &Ctx, timestamp: Option<String>) -> Result<String, CmdError> {
    let cfg = ctx.cfg;
    let atm = cfg.atmosphere()?;
    let mut out = String::new();
    let mut push = |line: &str| {
        out.push_str(line);
        out.push('\n');
    };

    push("======================================================================");
    push(" titankit consolidated report");
    push("======================================================================");
    if let Some(ts) = timestamp {
        push(&format!("generated: {ts}"));
    }
    push("");

    push("environment");
    push(&format!(
        "  density {} kg/m^3, viscosity {} Pa.s, gravity {} m/s^2",
        sig6(atm.density),
        sig6(atm.dynamic_viscosity),
        sig6(atm.gravity),
    ));
    push(&format!(
        "  speed of sound {} m/s, ambient {} C",
        sig6(atm.speed_of_sound),
        sig6(atm.ambient_temperature_c),
    ));
    push("");

    push(&format!(
        "rotor sizing (critical tip Mach {})",
        sig6(cfg.rotor.critical_mach)
    ));
    let (points, fit) = ctx.rotor_fit()?;
    let selection = select_configuration(
        &fit,
        &atm,
        cfg.rotor.critical_mach,
        &CandidateGrid::from_points(&points),
    );
    match selection {
        Ok(sel) => {
            push(&format!(
                "  selected: d = {} m, B = {}, rpm = {}, torque = {} N.m",
                sig6(sel.diameter_m),
                sel.blades.round() as u32,
                sig6(sel.rpm),
                sig6(sel.torque_nm),
            ));
            push(&format!(
                "            tip Mach {}, shaft power {} W",
                sig6(sel.tip_mach),
                sig6(sel.shaft_power_w),
            ));
        }
        Err(e) => push(&format!("  selection infeasible: {e}")),
    }
    push(&format!(
        "  reference pick: d = {} m, B = {}, ~{} rpm, {} N.m",
        REFERENCE_CONFIGURATION.diameter_m,
        REFERENCE_CONFIGURATION.blades,
        REFERENCE_CONFIGURATION.rpm,
        REFERENCE_CONFIGURATION.torque_nm,
    ));
    match fit.evaluate(
        REFERENCE_CONFIGURATION.diameter_m,
        REFERENCE_CONFIGURATION.blades as f64,
    ) {
        Ok((rpm, torque)) => push(&format!(
            "  table interpolation at the reference point: rpm = {}, torque = {} N.m \
             (discrepancy vs the quoted ~{} rpm / {} N.m is documented, not reconciled)",
            sig6(rpm),
            sig6(torque),
            REFERENCE_CONFIGURATION.rpm,
            REFERENCE_CONFIGURATION.torque_nm,
        )),
        Err(_) => push("  reference point lies outside the supplied table domain"),
    }
    let thrust = required_thrust_per_rotor(cfg.vehicle.mass_kg, &atm, cfg.vehicle.rotor_count)?;
    push(&format!(
        "  required thrust per rotor ({} kg, {} rotors): {} N (reference: 100 N)",
        sig6(cfg.vehicle.mass_kg),
        cfg.vehicle.rotor_count,
        sig6(thrust),
    ));
    push("");

    push(&format!(
        "cruise ({} induced-power mode)",
        cfg.flight.induced_mode
    ));
    let cruise = cruise_block(ctx, Scenario::Both)?;
    for line in cruise.lines() {
        push(&format!("  {line}"));
    }
    push(
        "  reference ranges: 55 km rigid (not reproducible from the quoted \
         power and speed), 74 km deformable",
    );
    push("");

    push("energy budget");
    push(&format!(
        "  generator {} W continuous, night {} h",
        sig6(cfg.mmrtg.output_w),
        sig6(cfg.budget.night_hours),
    ));
    let night = night_battery(ctx)?;
    push(&format!(
        "  night-limited battery: {} kWh ({} kg at {} Wh/kg; reference rounds to 14 kWh)",
        sig6(night.capacity_kwh),
        sig6(night.mass_kg),
        sig6(cfg.battery.specific_energy_wh_per_kg),
    ));
    let battery = cfg.battery()?;
    push(&format!(
        "  configured battery: {} kWh ({} kg)",
        sig6(battery.capacity_kwh),
        sig6(battery.mass_kg),
    ));
    let annual = annual_energy(&ctx.activities()?);
    let generator_annual = cfg.mmrtg.output_w * HOURS_PER_YEAR / 1000.0;
    push(&format!(
        "  annual activity energy {} kWh vs generator annual {} kWh (margin {} kWh)",
        sig6(annual.total_kwh),
        sig6(generator_annual),
        sig6(generator_annual - annual.total_kwh),
    ));
    push("");

    push(&format!(
        "arm materials at {} C (feasible when stiffness ratio <= {})",
        sig6(cfg.materials.verdict_temp_c),
        sig6(cfg.materials.feasibility_multiplier),
    ));
    for m in ctx.materials()? {
        let ratio = m.stiffness_at(cfg.materials.verdict_temp_c)? / m.baseline_stiffness;
        let verdict = if m.feasible_at(
            cfg.materials.verdict_temp_c,
            cfg.materials.feasibility_multiplier,
        )? {
            "feasible"
        } else {
            "infeasible"
        };
        push(&format!(
            "  {:<10} stiffness ratio {:<10} {}",
            m.name,
            sig6(ratio),
            verdict,
        ));
    }
    push("");

    push("folding");
    let geom = cfg.arm_geometry()?;
    let at = folded_diameter(&geom, cfg.arm.fold_angle_deg.to_radians());
    push(&format!(
        "  arms {} m on body radius {} m, fold angle {} deg",
        sig6(geom.length_m),
        sig6(geom.body_radius_m),
        sig6(cfg.arm.fold_angle_deg),
    ));
    push(&format!(
        "  stowed diameter {} m -> {} m, reduction {} % (reference: up to 33%)",
        sig6(at.extended_diameter_m),
        sig6(at.folded_diameter_m),
        sig6(100.0 * at.reduction_fraction),
    ));

    Ok(out)
}

pub fn report(ctx: &Ctx, no_timestamp: bool) -> Result<(), CmdError> {
    let timestamp = if no_timestamp {
        None
    } else {
        Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true))
    };
    let text = build_report(ctx, timestamp)?;
    let path = ctx.out.join("report.txt");
    std::fs::write(&path, &text).map_err(|e| CmdError::Input(e.to_string()))?;
    print!("{text}");
    println!("wrote {}", path.display());
    Ok(())
}
