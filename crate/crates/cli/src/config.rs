//! Strict TOML run configuration.
//!
//! Every key has a default, unknown keys are rejected outright, and all
//! invariant violations are collected and reported together rather than one
//! at a time. Referenced files must exist at load time.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

#[derive(Debug)]
pub enum ConfigError {
    Io(String),
    Parse(String),
    Invalid(Vec<String>),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io(m) => write!(f, "cannot read config: {m}"),
            ConfigError::Parse(m) => write!(f, "config parse error: {m}"),
            ConfigError::Invalid(violations) => {
                writeln!(f, "config validation failed:")?;
                for v in violations {
                    writeln!(f, "  - {v}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub atmosphere: AtmosphereSection,
    pub vehicle: VehicleSection,
    pub rotor: RotorSection,
    pub flight: FlightSection,
    pub battery: BatterySection,
    pub mmrtg: MmrtgSection,
    pub budget: BudgetSection,
    pub materials: MaterialsSection,
    pub arm: ArmSection,
    pub output: OutputSection,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AtmosphereSection {
    pub density: f64,
    pub viscosity: f64,
    pub gravity: f64,
    pub speed_of_sound: f64,
    pub ambient_temp_c: f64,
}

impl Default for AtmosphereSection {
    fn default() -> Self {
        Self {
            density: titankit::atmosphere::TITAN_DENSITY_RATIO
                * titankit::atmosphere::EARTH_SEA_LEVEL_DENSITY,
            viscosity: titankit::atmosphere::EARTH_SEA_LEVEL_VISCOSITY
                / titankit::atmosphere::TITAN_VISCOSITY_DIVISOR,
            gravity: titankit::atmosphere::TITAN_GRAVITY,
            speed_of_sound: titankit::atmosphere::TITAN_SPEED_OF_SOUND,
            ambient_temp_c: titankit::atmosphere::TITAN_AMBIENT_TEMPERATURE_C,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VehicleSection {
    pub mass_kg: f64,
    pub rotor_count: u32,
    pub blade_drag_coeff: f64,
    pub solidity: f64,
    /// Bypass calibration with explicit geometry (both must be set).
    pub frontal_area_m2: Option<f64>,
    pub disk_area_m2: Option<f64>,
}

impl Default for VehicleSection {
    fn default() -> Self {
        Self {
            mass_kg: titankit::power::DEFAULT_MASS_KG,
            rotor_count: titankit::power::DEFAULT_ROTOR_COUNT,
            blade_drag_coeff: titankit::power::DEFAULT_BLADE_DRAG_COEFF,
            solidity: titankit::power::DEFAULT_SOLIDITY,
            frontal_area_m2: None,
            disk_area_m2: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RotorSection {
    /// CSV of design points; the builtin table when absent.
    pub table: Option<PathBuf>,
    pub critical_mach: f64,
    pub sweep_diameter_step_m: f64,
    pub sweep_blade_step: f64,
}

impl Default for RotorSection {
    fn default() -> Self {
        Self {
            table: None,
            critical_mach: 0.3,
            sweep_diameter_step_m: 0.01,
            sweep_blade_step: 1.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlightSection {
    /// "corrected" or "as-printed".
    pub induced_mode: String,
    pub max_speed_mps: f64,
    pub speed_tolerance_mps: f64,
    pub sweep_start_mps: f64,
    pub sweep_end_mps: f64,
    pub sweep_step_mps: f64,
    pub rigid_target_speed_mps: f64,
    pub rigid_target_power_w: f64,
    pub rigid_drag_coeff: f64,
    pub deformable_target_speed_mps: f64,
    pub deformable_target_power_w: f64,
    pub deformable_drag_coeff: f64,
}

impl Default for FlightSection {
    fn default() -> Self {
        Self {
            induced_mode: "corrected".to_string(),
            max_speed_mps: titankit::power::DEFAULT_MAX_SPEED_MPS,
            speed_tolerance_mps: titankit::power::DEFAULT_SPEED_TOLERANCE_MPS,
            sweep_start_mps: 0.5,
            sweep_end_mps: 30.0,
            sweep_step_mps: 0.1,
            rigid_target_speed_mps: titankit::power::RIGID_TARGET.optimal_speed_mps,
            rigid_target_power_w: titankit::power::RIGID_TARGET.power_w,
            rigid_drag_coeff: titankit::power::RIGID_TARGET.body_drag_coeff,
            deformable_target_speed_mps: titankit::power::DEFORMABLE_TARGET.optimal_speed_mps,
            deformable_target_power_w: titankit::power::DEFORMABLE_TARGET.power_w,
            deformable_drag_coeff: titankit::power::DEFORMABLE_TARGET.body_drag_coeff,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BatterySection {
    /// "flight" (2.5 kWh / 25 kg) or "night-max" (generator x night).
    pub preset: Option<String>,
    /// Custom capacity; mutually exclusive with `preset`.
    pub capacity_kwh: Option<f64>,
    pub specific_energy_wh_per_kg: f64,
}

impl Default for BatterySection {
    fn default() -> Self {
        Self {
            preset: None,
            capacity_kwh: None,
            specific_energy_wh_per_kg: titankit::budget::DEFAULT_SPECIFIC_ENERGY_WH_PER_KG,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MmrtgSection {
    pub output_w: f64,
}

impl Default for MmrtgSection {
    fn default() -> Self {
        Self {
            output_w: titankit::budget::DEFAULT_GENERATOR_OUTPUT_W,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BudgetSection {
    pub night_hours: f64,
    /// CSV of activities; the builtin table when absent.
    pub activities: Option<PathBuf>,
    /// CSV plan for `budget-simulate`.
    pub plan: Option<PathBuf>,
    pub step_h: f64,
    pub horizon_h: Option<f64>,
    /// Fraction of generator surplus that actually reaches the battery.
    pub charge_efficiency: f64,
}

impl Default for BudgetSection {
    fn default() -> Self {
        Self {
            night_hours: titankit::budget::TITAN_NIGHT_HOURS,
            activities: None,
            plan: None,
            step_h: 1.0,
            horizon_h: None,
            charge_efficiency: 1.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MaterialsSection {
    /// CSV of materials; the builtin set when absent.
    pub table: Option<PathBuf>,
    pub crystallization_multiplier: f64,
    pub feasibility_multiplier: f64,
    pub verdict_temp_c: f64,
    pub sweep_start_c: f64,
    pub sweep_end_c: f64,
    pub sweep_step_c: f64,
    /// Stiffness scale for arm pressurization (applied to every baseline).
    pub pressure_stiffness_scale: f64,
}

impl Default for MaterialsSection {
    fn default() -> Self {
        Self {
            table: None,
            crystallization_multiplier: titankit::arm::DEFAULT_CRYSTALLIZATION_MULTIPLIER,
            feasibility_multiplier: titankit::arm::DEFAULT_FEASIBILITY_MULTIPLIER,
            verdict_temp_c: -180.0,
            sweep_start_c: titankit::arm::MIN_TEMPERATURE_C,
            sweep_end_c: titankit::arm::MAX_TEMPERATURE_C,
            sweep_step_c: 0.5,
            pressure_stiffness_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ArmSection {
    pub length_m: f64,
    pub body_radius_m: f64,
    pub segments: u32,
    pub fold_angle_deg: f64,
}

impl Default for ArmSection {
    fn default() -> Self {
        Self {
            length_m: 0.49,
            body_radius_m: 1.0,
            segments: 1,
            fold_angle_deg: 90.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    /// Output directory; the `--out` flag wins over this.
    pub directory: Option<PathBuf>,
}

impl RunConfig {
    /// Loads and validates, applying defaults for everything absent. No
    /// path means all defaults.
    pub fn load(path: Option<&Path>) -> Result<Self, ConfigError> {
        let config: RunConfig = match path {
            None => RunConfig::default(),
            Some(p) => {
                let text = fs::read_to_string(p)
                    .map_err(|e| ConfigError::Io(format!("{}: {e}", p.display())))?;
                toml::from_str(&text).map_err(|e| ConfigError::Parse(e.to_string()))?
            }
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        fn positive(violations: &mut Vec<String>, name: &str, v: f64) {
            if !(v > 0.0) {
                violations.push(format!("{name} must be positive (got {v})"));
            }
        }
        let mut v = Vec::new();

        positive(&mut v, "atmosphere.density", self.atmosphere.density);
        positive(&mut v, "atmosphere.viscosity", self.atmosphere.viscosity);
        positive(&mut v, "atmosphere.gravity", self.atmosphere.gravity);
        positive(
            &mut v,
            "atmosphere.speed_of_sound",
            self.atmosphere.speed_of_sound,
        );

        positive(&mut v, "vehicle.mass_kg", self.vehicle.mass_kg);
        positive(
            &mut v,
            "vehicle.blade_drag_coeff",
            self.vehicle.blade_drag_coeff,
        );
        if let Some(s) = self.vehicle.frontal_area_m2 {
            positive(&mut v, "vehicle.frontal_area_m2", s);
        }
        if let Some(a) = self.vehicle.disk_area_m2 {
            positive(&mut v, "vehicle.disk_area_m2", a);
        }
        if self.vehicle.frontal_area_m2.is_some() != self.vehicle.disk_area_m2.is_some() {
            v.push(
                "vehicle.frontal_area_m2 and vehicle.disk_area_m2 must be set together".to_string(),
            );
        }
        if !(self.vehicle.solidity > 0.0 && self.vehicle.solidity < 1.0) {
            v.push(format!(
                "vehicle.solidity must lie in (0, 1) (got {})",
                self.vehicle.solidity
            ));
        }
        if self.vehicle.rotor_count < 1 {
            v.push("vehicle.rotor_count must be at least 1".to_string());
        }

        if !(self.rotor.critical_mach > 0.0 && self.rotor.critical_mach < 1.0) {
            v.push(format!(
                "rotor.critical_mach must lie in (0, 1) (got {})",
                self.rotor.critical_mach
            ));
        }
        positive(
            &mut v,
            "rotor.sweep_diameter_step_m",
            self.rotor.sweep_diameter_step_m,
        );
        positive(
            &mut v,
            "rotor.sweep_blade_step",
            self.rotor.sweep_blade_step,
        );

        positive(
            &mut v,
            "flight.speed_tolerance_mps",
            self.flight.speed_tolerance_mps,
        );
        positive(&mut v, "flight.sweep_step_mps", self.flight.sweep_step_mps);
        positive(
            &mut v,
            "flight.rigid_target_speed_mps",
            self.flight.rigid_target_speed_mps,
        );
        positive(
            &mut v,
            "flight.rigid_target_power_w",
            self.flight.rigid_target_power_w,
        );
        positive(
            &mut v,
            "flight.deformable_target_speed_mps",
            self.flight.deformable_target_speed_mps,
        );
        positive(
            &mut v,
            "flight.deformable_target_power_w",
            self.flight.deformable_target_power_w,
        );
        positive(
            &mut v,
            "flight.rigid_drag_coeff",
            self.flight.rigid_drag_coeff,
        );
        positive(
            &mut v,
            "flight.deformable_drag_coeff",
            self.flight.deformable_drag_coeff,
        );
        if self.flight.max_speed_mps <= titankit::power::SEARCH_FLOOR_MPS {
            v.push(format!(
                "flight.max_speed_mps must exceed {} (got {})",
                titankit::power::SEARCH_FLOOR_MPS,
                self.flight.max_speed_mps
            ));
        }
        if self.flight.sweep_start_mps <= 0.0
            || self.flight.sweep_end_mps <= self.flight.sweep_start_mps
        {
            v.push(format!(
                "flight sweep range must satisfy 0 < start < end (got {}..{})",
                self.flight.sweep_start_mps, self.flight.sweep_end_mps
            ));
        }
        match self.flight.induced_mode.as_str() {
            "corrected" | "as-printed" => {}
            other => v.push(format!(
                "flight.induced_mode must be \"corrected\" or \"as-printed\" (got \"{other}\")"
            )),
        }

        if let Some(preset) = &self.battery.preset {
            if preset != "flight" && preset != "night-max" {
                v.push(format!(
                    "battery.preset must be \"flight\" or \"night-max\" (got \"{preset}\")"
                ));
            }
            if self.battery.capacity_kwh.is_some() {
                v.push("battery.preset and battery.capacity_kwh are mutually exclusive".into());
            }
        }
        if let Some(c) = self.battery.capacity_kwh {
            if !(c > 0.0) {
                v.push(format!("battery.capacity_kwh must be positive (got {c})"));
            }
        }
        positive(
            &mut v,
            "battery.specific_energy_wh_per_kg",
            self.battery.specific_energy_wh_per_kg,
        );

        positive(&mut v, "mmrtg.output_w", self.mmrtg.output_w);

        positive(&mut v, "budget.step_h", self.budget.step_h);
        if !(self.budget.charge_efficiency > 0.0 && self.budget.charge_efficiency <= 1.0) {
            v.push(format!(
                "budget.charge_efficiency must lie in (0, 1] (got {})",
                self.budget.charge_efficiency
            ));
        }
        if self.budget.night_hours < 0.0 {
            v.push(format!(
                "budget.night_hours must be non-negative (got {})",
                self.budget.night_hours
            ));
        }
        if let Some(h) = self.budget.horizon_h {
            if !(h > 0.0) {
                v.push(format!("budget.horizon_h must be positive (got {h})"));
            }
        }

        if self.materials.crystallization_multiplier < 1.0 {
            v.push(format!(
                "materials.crystallization_multiplier must be at least 1 (got {})",
                self.materials.crystallization_multiplier
            ));
        }
        if self.materials.feasibility_multiplier < 1.0 {
            v.push(format!(
                "materials.feasibility_multiplier must be at least 1 (got {})",
                self.materials.feasibility_multiplier
            ));
        }
        positive(
            &mut v,
            "materials.sweep_step_c",
            self.materials.sweep_step_c,
        );
        positive(
            &mut v,
            "materials.pressure_stiffness_scale",
            self.materials.pressure_stiffness_scale,
        );
        let temp_range = titankit::arm::MIN_TEMPERATURE_C..=titankit::arm::MAX_TEMPERATURE_C;
        for (name, t) in [
            ("materials.verdict_temp_c", self.materials.verdict_temp_c),
            ("materials.sweep_start_c", self.materials.sweep_start_c),
            ("materials.sweep_end_c", self.materials.sweep_end_c),
        ] {
            if !temp_range.contains(&t) {
                v.push(format!("{name} must lie in {temp_range:?} (got {t})"));
            }
        }
        if self.materials.sweep_end_c <= self.materials.sweep_start_c {
            v.push("materials sweep range must satisfy start < end".to_string());
        }

        positive(&mut v, "arm.length_m", self.arm.length_m);
        positive(&mut v, "arm.body_radius_m", self.arm.body_radius_m);
        if self.arm.segments < 1 {
            v.push("arm.segments must be at least 1".to_string());
        }
        if !(0.0..=90.0).contains(&self.arm.fold_angle_deg) {
            v.push(format!(
                "arm.fold_angle_deg must lie in 0..=90 (got {})",
                self.arm.fold_angle_deg
            ));
        }

        for (name, path) in [
            ("rotor.table", &self.rotor.table),
            ("budget.activities", &self.budget.activities),
            ("budget.plan", &self.budget.plan),
            ("materials.table", &self.materials.table),
        ] {
            if let Some(p) = path {
                if !p.exists() {
                    v.push(format!("{name}: file not found: {}", p.display()));
                }
            }
        }

        if v.is_empty() {
            Ok(())
        } else {
            Err(ConfigError::Invalid(v))
        }
    }

    pub fn atmosphere(&self) -> titankit::Result<titankit::Atmosphere> {
        titankit::Atmosphere::new(
            self.atmosphere.density,
            self.atmosphere.viscosity,
            self.atmosphere.gravity,
            self.atmosphere.speed_of_sound,
            self.atmosphere.ambient_temp_c,
        )
    }

    pub fn induced_mode(&self) -> titankit::power::InducedPowerMode {
        match self.flight.induced_mode.as_str() {
            "as-printed" => titankit::power::InducedPowerMode::AsPrinted,
            _ => titankit::power::InducedPowerMode::Corrected,
        }
    }

    pub fn power_source(&self) -> titankit::Result<titankit::budget::PowerSource<f64>> {
        titankit::budget::PowerSource::new(self.mmrtg.output_w)
    }

    /// Battery per config: explicit capacity, a named preset, or the
    /// default 2.5 kWh flight battery.
    pub fn battery(&self) -> titankit::Result<titankit::BatteryPack> {
        if let Some(kwh) = self.battery.capacity_kwh {
            return titankit::BatteryPack::from_capacity(
                kwh,
                self.battery.specific_energy_wh_per_kg,
            );
        }
        match self.battery.preset.as_deref() {
            Some("night-max") => titankit::budget::max_battery_from_night(
                &self.power_source()?,
                self.budget.night_hours,
                self.battery.specific_energy_wh_per_kg,
            ),
            _ => titankit::BatteryPack::flight_preset(),
        }
    }

    pub fn calibration_inputs(&self) -> titankit::power::CalibrationInputs<f64> {
        titankit::power::CalibrationInputs {
            mass_kg: self.vehicle.mass_kg,
            rotor_count: self.vehicle.rotor_count,
            mode: self.induced_mode(),
            rigid: titankit::power::ScenarioTarget {
                optimal_speed_mps: self.flight.rigid_target_speed_mps,
                power_w: self.flight.rigid_target_power_w,
                body_drag_coeff: self.flight.rigid_drag_coeff,
            },
            deformable: titankit::power::ScenarioTarget {
                optimal_speed_mps: self.flight.deformable_target_speed_mps,
                power_w: self.flight.deformable_target_power_w,
                body_drag_coeff: self.flight.deformable_drag_coeff,
            },
            blade_drag_coeff: self.vehicle.blade_drag_coeff,
            solidity: self.vehicle.solidity,
            reference_disk_area_m2: titankit::power::disk_area_from_ducts(
                titankit::power::REFERENCE_DUCT_DIAMETER_M,
                self.vehicle.rotor_count,
            ),
        }
    }

    pub fn arm_geometry(&self) -> titankit::Result<titankit::Arm> {
        titankit::Arm::new(self.arm.length_m, self.arm.segments, self.arm.body_radius_m)
    }
}
