//! Parsers for the toolkit's CSV input files. Headers are mandatory and
//! checked verbatim; parse errors carry the offending line number.

use std::fs;
use std::path::Path;

use titankit::budget::{Activity, PlanEntry, Schedule};
use titankit::{Material, RotorPoint};

pub const ROTOR_HEADER: &str = "thrust_n,blades,diameter_m,torque_nm,rpm";
pub const ACTIVITIES_HEADER: &str = "name,power_w,annual_hours_or_CONT";
pub const MATERIALS_HEADER: &str =
    "name,baseline_kgcm_per_invcm,crystallization_c_or_NONE,multiplier,drift_fraction,infill";
pub const PLAN_HEADER: &str = "start_h,duration_h,activity_name";

fn read_rows(path: &Path, expected_header: &str) -> Result<Vec<(usize, Vec<String>)>, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, line)) if line.trim().is_empty() => continue,
            Some((_, line)) => break line.trim(),
            None => return Err(format!("{}: empty file, expected header", path.display())),
        }
    };
    if header != expected_header {
        return Err(format!(
            "{}: bad header, expected \"{expected_header}\", got \"{header}\"",
            path.display()
        ));
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        rows.push((
            idx + 1,
            line.split(',').map(|f| f.trim().to_string()).collect(),
        ));
    }
    Ok(rows)
}

fn parse_f64(path: &Path, line: usize, field: &str, value: &str) -> Result<f64, String> {
    value.parse::<f64>().map_err(|_| {
        format!(
            "{}:{line}: cannot parse {field} from \"{value}\"",
            path.display()
        )
    })
}

fn expect_fields(path: &Path, line: usize, fields: &[String], count: usize) -> Result<(), String> {
    if fields.len() != count {
        return Err(format!(
            "{}:{line}: expected {count} fields, got {}",
            path.display(),
            fields.len()
        ));
    }
    Ok(())
}

pub fn load_rotor_table(path: &Path) -> Result<Vec<RotorPoint>, String> {
    let mut points = Vec::new();
    for (line, fields) in read_rows(path, ROTOR_HEADER)? {
        expect_fields(path, line, &fields, 5)?;
        let thrust = parse_f64(path, line, "thrust_n", &fields[0])?;
        let blades: u32 = fields[1]
            .parse()
            .map_err(|_| format!("{}:{line}: blades must be an integer", path.display()))?;
        let diameter = parse_f64(path, line, "diameter_m", &fields[2])?;
        let torque = parse_f64(path, line, "torque_nm", &fields[3])?;
        let rpm = parse_f64(path, line, "rpm", &fields[4])?;
        points.push(
            RotorPoint::new(thrust, blades, diameter, torque, rpm)
                .map_err(|e| format!("{}:{line}: {e}", path.display()))?,
        );
    }
    Ok(points)
}

pub fn load_activities(path: &Path) -> Result<Vec<Activity<f64>>, String> {
    let mut activities = Vec::new();
    for (line, fields) in read_rows(path, ACTIVITIES_HEADER)? {
        expect_fields(path, line, &fields, 3)?;
        let power = parse_f64(path, line, "power_w", &fields[1])?;
        let schedule = if fields[2].eq_ignore_ascii_case("CONT") {
            Schedule::Continuous
        } else {
            Schedule::AnnualHours(parse_f64(path, line, "annual_hours", &fields[2])?)
        };
        activities.push(
            Activity::new(fields[0].clone(), power, schedule)
                .map_err(|e| format!("{}:{line}: {e}", path.display()))?,
        );
    }
    Ok(activities)
}

pub fn load_materials(path: &Path) -> Result<Vec<Material>, String> {
    let mut materials = Vec::new();
    for (line, fields) in read_rows(path, MATERIALS_HEADER)? {
        expect_fields(path, line, &fields, 6)?;
        let baseline = parse_f64(path, line, "baseline_kgcm_per_invcm", &fields[1])?;
        let crystallization = if fields[2].eq_ignore_ascii_case("NONE") {
            None
        } else {
            Some(parse_f64(path, line, "crystallization_c", &fields[2])?)
        };
        let multiplier = parse_f64(path, line, "multiplier", &fields[3])?;
        let drift = parse_f64(path, line, "drift_fraction", &fields[4])?;
        let infill = parse_f64(path, line, "infill", &fields[5])?;
        materials.push(
            Material::new(
                fields[0].clone(),
                baseline,
                crystallization,
                multiplier,
                drift,
                infill,
            )
            .map_err(|e| format!("{}:{line}: {e}", path.display()))?,
        );
    }
    Ok(materials)
}

/// Plan rows reference activities by name; scheduled windows take the named
/// activity's power, while continuous activities may not be scheduled (they
/// already run across the whole horizon as the residual load).
pub fn load_plan_entries(
    path: &Path,
    activities: &[Activity<f64>],
) -> Result<Vec<PlanEntry<f64>>, String> {
    let mut entries = Vec::new();
    for (line, fields) in read_rows(path, PLAN_HEADER)? {
        expect_fields(path, line, &fields, 3)?;
        let start = parse_f64(path, line, "start_h", &fields[0])?;
        let duration = parse_f64(path, line, "duration_h", &fields[1])?;
        let name = &fields[2];
        let activity = activities.iter().find(|a| &a.name == name).ok_or_else(|| {
            let known: Vec<&str> = activities.iter().map(|a| a.name.as_str()).collect();
            format!(
                "{}:{line}: unknown activity \"{name}\" (known: {})",
                path.display(),
                known.join(", ")
            )
        })?;
        if activity.schedule == Schedule::Continuous {
            return Err(format!(
                "{}:{line}: \"{name}\" is a continuous load and cannot be scheduled",
                path.display()
            ));
        }
        entries.push(PlanEntry {
            start_h: start,
            duration_h: duration,
            name: name.clone(),
            power_w: activity.power_w,
        });
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn rotor_table_round_trip() {
        let f = write_temp(
            "thrust_n,blades,diameter_m,torque_nm,rpm\n100,6,0.15,3.7,6080\n100,10,0.15,3.9,4900\n",
        );
        let points = load_rotor_table(f.path()).unwrap();
        assert_eq!(points.len(), 2);
        assert_eq!(points[0].rpm, 6080.0);
    }

    #[test]
    fn rotor_table_bad_header() {
        let f = write_temp("thrust,blades,diameter_m,torque_nm,rpm\n");
        assert!(load_rotor_table(f.path()).unwrap_err().contains("header"));
    }

    #[test]
    fn rotor_table_bad_value_names_line() {
        let f = write_temp("thrust_n,blades,diameter_m,torque_nm,rpm\n100,6,abc,3.7,6080\n");
        let err = load_rotor_table(f.path()).unwrap_err();
        assert!(err.contains(":2:"), "{err}");
    }

    #[test]
    fn activities_with_continuous_token() {
        let f = write_temp("name,power_w,annual_hours_or_CONT\nFlight,1600,60\nResidual,30,CONT\n");
        let acts = load_activities(f.path()).unwrap();
        assert_eq!(acts[1].schedule, Schedule::Continuous);
    }

    #[test]
    fn plan_resolves_names_and_rejects_continuous() {
        let acts =
            write_temp("name,power_w,annual_hours_or_CONT\nFlight,1600,60\nResidual,30,CONT\n");
        let activities = load_activities(acts.path()).unwrap();

        let plan = write_temp("start_h,duration_h,activity_name\n0,1,Flight\n");
        let entries = load_plan_entries(plan.path(), &activities).unwrap();
        assert_eq!(entries[0].power_w, 1600.0);

        let bad = write_temp("start_h,duration_h,activity_name\n0,1,Residual\n");
        assert!(load_plan_entries(bad.path(), &activities)
            .unwrap_err()
            .contains("continuous"));

        let unknown = write_temp("start_h,duration_h,activity_name\n0,1,Nap\n");
        assert!(load_plan_entries(unknown.path(), &activities)
            .unwrap_err()
            .contains("unknown activity"));
    }

    #[test]
    fn materials_with_none_token() {
        let f = write_temp(
            "name,baseline_kgcm_per_invcm,crystallization_c_or_NONE,multiplier,drift_fraction,infill\n\
             PTFE-15,1.6,NONE,1.0,0.15,0.15\nTPU-10,0.6,-120,10,0.05,0.10\n",
        );
        let mats = load_materials(f.path()).unwrap();
        assert_eq!(mats[0].crystallization_temp_c, None);
        assert_eq!(mats[1].crystallization_temp_c, Some(-120.0));
    }
}
