//! Radioisotope-generator and battery energy system: battery sizing against
//! the long Titan night, annual activity energy accounting, and a
//! state-of-charge timeline simulator.
//!
//! Loads are piecewise constant, so every segment integrates exactly; the
//! simulation step only sets the reporting resolution and never contributes
//! integrator error to a feasibility verdict.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Hours in the accounting year.
pub const HOURS_PER_YEAR: f64 = 8760.0;
/// Length of the Titan night the battery has to bridge, h.
pub const TITAN_NIGHT_HOURS: f64 = 192.0;
/// Specific energy assumed for space-qualified batteries, Wh/kg.
pub const DEFAULT_SPECIFIC_ENERGY_WH_PER_KG: f64 = 100.0;
/// Generator output used for battery sizing, W.
pub const DEFAULT_GENERATOR_OUTPUT_W: f64 = 75.0;
/// Alternate quoted generator output, W.
pub const ALTERNATE_GENERATOR_OUTPUT_W: f64 = 100.0;

/// A continuous power source (the radioisotope generator).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSource<R> {
    pub continuous_output_w: R,
}

impl<R: Real> PowerSource<R> {
    pub fn new(continuous_output_w: R) -> Result<Self> {
        if !(continuous_output_w > R::zero()) {
            return Err(Error::NonPositive {
                name: "continuous_output_w",
                value: continuous_output_w.as_f64(),
            });
        }
        Ok(Self {
            continuous_output_w,
        })
    }
}

/// Battery with capacity, mass, and current state of charge (all linked
/// through the specific energy).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Battery<R> {
    pub capacity_kwh: R,
    pub specific_energy_wh_per_kg: R,
    pub mass_kg: R,
    pub state_of_charge_kwh: R,
}

impl<R: Real> Battery<R> {
    /// Battery of the given capacity, mass derived, starting full.
    pub fn from_capacity(capacity_kwh: R, specific_energy_wh_per_kg: R) -> Result<Self> {
        if capacity_kwh < R::zero() {
            return Err(Error::Negative {
                name: "capacity_kwh",
                value: capacity_kwh.as_f64(),
            });
        }
        if !(specific_energy_wh_per_kg > R::zero()) {
            return Err(Error::NonPositive {
                name: "specific_energy_wh_per_kg",
                value: specific_energy_wh_per_kg.as_f64(),
            });
        }
        Ok(Self {
            capacity_kwh,
            specific_energy_wh_per_kg,
            mass_kg: capacity_kwh * R::of(1000.0) / specific_energy_wh_per_kg,
            state_of_charge_kwh: capacity_kwh,
        })
    }

    /// Battery of the given mass, capacity derived, starting full.
    pub fn from_mass(mass_kg: R, specific_energy_wh_per_kg: R) -> Result<Self> {
        if mass_kg < R::zero() {
            return Err(Error::Negative {
                name: "mass_kg",
                value: mass_kg.as_f64(),
            });
        }
        if !(specific_energy_wh_per_kg > R::zero()) {
            return Err(Error::NonPositive {
                name: "specific_energy_wh_per_kg",
                value: specific_energy_wh_per_kg.as_f64(),
            });
        }
        let capacity = mass_kg * specific_energy_wh_per_kg / R::of(1000.0);
        Ok(Self {
            capacity_kwh: capacity,
            specific_energy_wh_per_kg,
            mass_kg,
            state_of_charge_kwh: capacity,
        })
    }

    /// The 25 kg flight battery: 2.5 kWh at 100 Wh/kg.
    pub fn flight_preset() -> Result<Self> {
        Self::from_mass(R::of(25.0), R::of(DEFAULT_SPECIFIC_ENERGY_WH_PER_KG))
    }

    pub fn with_state_of_charge(mut self, soc_kwh: R) -> Result<Self> {
        if soc_kwh < R::zero() || soc_kwh > self.capacity_kwh {
            return Err(Error::OutOfRange {
                name: "state_of_charge_kwh",
                value: soc_kwh.as_f64(),
                min: 0.0,
                max: self.capacity_kwh.as_f64(),
            });
        }
        self.state_of_charge_kwh = soc_kwh;
        Ok(self)
    }
}

/// Largest battery the generator can fill across one night:
/// capacity = output * night_hours, mass from the specific energy.
pub fn max_battery_from_night<R: Real>(
    source: &PowerSource<R>,
    night_hours: R,
    specific_energy_wh_per_kg: R,
) -> Result<Battery<R>> {
    if night_hours < R::zero() {
        return Err(Error::Negative {
            name: "night_hours",
            value: night_hours.as_f64(),
        });
    }
    let capacity_kwh = source.continuous_output_w * night_hours / R::of(1000.0);
    Battery::from_capacity(capacity_kwh, specific_energy_wh_per_kg)
}

/// How an activity consumes power over the year.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Schedule<R> {
    /// Runs for the given number of hours per year.
    AnnualHours(R),
    /// Runs around the clock.
    Continuous,
}

/// One named load.
#[derive(Debug, Clone, PartialEq)]
pub struct Activity<R> {
    pub name: String,
    pub power_w: R,
    pub schedule: Schedule<R>,
}

impl<R: Real> Activity<R> {
    pub fn new(name: impl Into<String>, power_w: R, schedule: Schedule<R>) -> Result<Self> {
        if power_w < R::zero() {
            return Err(Error::Negative {
                name: "power_w",
                value: power_w.as_f64(),
            });
        }
        if let Schedule::AnnualHours(h) = schedule {
            if h < R::zero() {
                return Err(Error::Negative {
                    name: "annual_hours",
                    value: h.as_f64(),
                });
            }
        }
        Ok(Self {
            name: name.into(),
            power_w,
            schedule,
        })
    }
}

/// The builtin annual power budget.
pub fn builtin_activities<R: Real>() -> Vec<Activity<R>> {
    let annual = |name: &str, w: f64, h: f64| Activity {
        name: name.to_string(),
        power_w: R::of(w),
        schedule: Schedule::AnnualHours(R::of(h)),
    };
    vec![
        annual("Atmospheric Flight", 1600.0, 60.0),
        annual("Communications", 350.0, 300.0),
        annual("Sample Acquisition", 1200.0, 12.0),
        annual("Chemical Analysis", 800.0, 25.0),
        annual("Other Experiments", 200.0, 100.0),
        Activity {
            name: "Residual Consumption".to_string(),
            power_w: R::of(30.0),
            schedule: Schedule::Continuous,
        },
    ]
}

/// Energy attributed to one activity over a year.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyLine<R> {
    pub name: String,
    pub power_w: R,
    pub hours: R,
    pub energy_kwh: R,
}

/// Per-activity annual energy plus the total.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnualEnergy<R> {
    pub lines: Vec<EnergyLine<R>>,
    pub total_kwh: R,
}

/// Energy = power * hours per activity; continuous loads count the full
/// year. The total is summed in sorted order so it is invariant under
/// permutation of the activity list.
pub fn annual_energy<R: Real>(activities: &[Activity<R>]) -> AnnualEnergy<R> {
    let lines: Vec<EnergyLine<R>> = activities
        .iter()
        .map(|a| {
            let hours = match a.schedule {
                Schedule::AnnualHours(h) => h,
                Schedule::Continuous => R::of(HOURS_PER_YEAR),
            };
            EnergyLine {
                name: a.name.clone(),
                power_w: a.power_w,
                hours,
                energy_kwh: a.power_w * hours / R::of(1000.0),
            }
        })
        .collect();
    let mut energies: Vec<R> = lines.iter().map(|l| l.energy_kwh).collect();
    energies.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let total_kwh = energies.into_iter().fold(R::zero(), |acc, e| acc + e);
    AnnualEnergy { lines, total_kwh }
}

/// One scheduled load window.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanEntry<R> {
    pub start_h: R,
    pub duration_h: R,
    pub name: String,
    pub power_w: R,
}

/// A normalized activity timeline: non-overlapping scheduled windows plus a
/// continuous residual load over the whole horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct MissionPlan<R> {
    entries: Vec<PlanEntry<R>>,
    pub residual_load_w: R,
    pub horizon_h: R,
}

impl<R: Real> MissionPlan<R> {
    /// Validates and sorts the entries. The horizon defaults to the end of
    /// the last entry when not given; entries running past an explicit
    /// horizon are rejected.
    pub fn new(
        mut entries: Vec<PlanEntry<R>>,
        residual_load_w: R,
        horizon_h: Option<R>,
    ) -> Result<Self> {
        if residual_load_w < R::zero() {
            return Err(Error::Negative {
                name: "residual_load_w",
                value: residual_load_w.as_f64(),
            });
        }
        for e in &entries {
            if e.start_h < R::zero() {
                return Err(Error::Negative {
                    name: "start_h",
                    value: e.start_h.as_f64(),
                });
            }
            if !(e.duration_h > R::zero()) {
                return Err(Error::NonPositive {
                    name: "duration_h",
                    value: e.duration_h.as_f64(),
                });
            }
            if e.power_w < R::zero() {
                return Err(Error::Negative {
                    name: "power_w",
                    value: e.power_w.as_f64(),
                });
            }
        }
        entries.sort_by(|a, b| a.start_h.partial_cmp(&b.start_h).unwrap());
        for pair in entries.windows(2) {
            let end = pair[0].start_h + pair[0].duration_h;
            if pair[1].start_h < end {
                return Err(Error::OverlappingPlanEntries {
                    first: pair[0].name.clone(),
                    second: pair[1].name.clone(),
                    time_h: pair[1].start_h.as_f64(),
                });
            }
        }
        let last_end = entries
            .iter()
            .map(|e| e.start_h + e.duration_h)
            .fold(R::zero(), |m, e| m.max(e));
        let horizon_h = match horizon_h {
            Some(h) => {
                if !(h > R::zero()) {
                    return Err(Error::NonPositive {
                        name: "horizon_h",
                        value: h.as_f64(),
                    });
                }
                if last_end > h {
                    let over = entries
                        .iter()
                        .find(|e| e.start_h + e.duration_h > h)
                        .unwrap();
                    return Err(Error::PlanBeyondHorizon {
                        name: over.name.clone(),
                        end_h: (over.start_h + over.duration_h).as_f64(),
                        horizon_h: h.as_f64(),
                    });
                }
                h
            }
            None => {
                if entries.is_empty() {
                    R::of(TITAN_NIGHT_HOURS)
                } else {
                    last_end
                }
            }
        };
        Ok(Self {
            entries,
            residual_load_w,
            horizon_h,
        })
    }

    pub fn entries(&self) -> &[PlanEntry<R>] {
        &self.entries
    }

    /// Constant-load segments covering [0, horizon].
    fn segments(&self) -> Vec<(R, R, R)> {
        let mut segments = Vec::new();
        let mut cursor = R::zero();
        for e in &self.entries {
            if e.start_h > cursor {
                segments.push((cursor, e.start_h, self.residual_load_w));
            }
            let end = e.start_h + e.duration_h;
            segments.push((e.start_h, end, self.residual_load_w + e.power_w));
            cursor = end;
        }
        if cursor < self.horizon_h {
            segments.push((cursor, self.horizon_h, self.residual_load_w));
        }
        segments
    }
}

/// Verdict of a simulation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Feasibility<R> {
    Feasible,
    /// The battery would have gone below empty at this time.
    Depleted {
        first_violation_h: R,
    },
}

/// One reported sample of the state-of-charge trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SocSample<R> {
    pub time_h: R,
    pub soc_kwh: R,
    pub load_w: R,
}

/// Simulated trajectory with the energy ledger needed for conservation
/// audits: generated = delivered + discarded + lost + (final - initial SoC).
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<R> {
    pub samples: Vec<SocSample<R>>,
    pub verdict: Feasibility<R>,
    pub initial_soc_kwh: R,
    pub final_soc_kwh: R,
    pub generated_kwh: R,
    pub delivered_kwh: R,
    /// Surplus thrown away while the battery was full.
    pub discarded_kwh: R,
    /// Charging-conversion losses; zero at unit efficiency.
    pub lost_kwh: R,
}

/// Runs the energy balance dE/dt = source - load over the plan with
/// lossless charging.
///
/// Charge clamps at capacity (surplus is discarded as heat; the generator
/// cannot throttle) and is never clamped at the bottom: the first instant
/// the state of charge would cross zero yields a `Depleted` verdict with
/// the exact crossing time, and the simulation stops there.
pub fn simulate<R: Real>(
    plan: &MissionPlan<R>,
    source: &PowerSource<R>,
    battery: &Battery<R>,
    step_h: R,
) -> Result<Trajectory<R>> {
    simulate_with_efficiency(plan, source, battery, step_h, R::one())
}

/// Like [`simulate`], but only `charge_efficiency` (in (0, 1]) of any
/// surplus reaches the battery; the rest is booked under `lost_kwh`.
/// Discharge is lossless either way.
pub fn simulate_with_efficiency<R: Real>(
    plan: &MissionPlan<R>,
    source: &PowerSource<R>,
    battery: &Battery<R>,
    step_h: R,
    charge_efficiency: R,
) -> Result<Trajectory<R>> {
    if !(step_h > R::zero()) {
        return Err(Error::NonPositive {
            name: "step_h",
            value: step_h.as_f64(),
        });
    }
    if !(charge_efficiency > R::zero() && charge_efficiency <= R::one()) {
        return Err(Error::OutOfRange {
            name: "charge_efficiency",
            value: charge_efficiency.as_f64(),
            min: 0.0,
            max: 1.0,
        });
    }

    let thousand = R::of(1000.0);
    let mut soc = battery.state_of_charge_kwh;
    let mut generated = R::zero();
    let mut delivered = R::zero();
    let mut discarded = R::zero();
    let mut lost = R::zero();
    let mut samples = Vec::new();
    let mut tick = 0_u64;

    // Advances the state across [t0, t1) under a constant load; returns the
    // depletion time if the charge would cross zero inside the window.
    let mut advance = |soc: &mut R, t0: R, t1: R, load_w: R| -> Option<R> {
        let dt = t1 - t0;
        if dt <= R::zero() {
            return None;
        }
        let net_w = source.continuous_output_w - load_w;
        if net_w >= R::zero() {
            let headroom_wh = (battery.capacity_kwh - *soc) * thousand;
            let gain_wh = charge_efficiency * net_w * dt;
            if gain_wh <= headroom_wh {
                *soc = *soc + gain_wh / thousand;
                lost = lost + (net_w * dt - gain_wh) / thousand;
            } else {
                // Time to fill, then pure discard for the remainder.
                let dt_full = headroom_wh / (charge_efficiency * net_w);
                *soc = battery.capacity_kwh;
                lost = lost + (net_w * dt_full - headroom_wh) / thousand;
                discarded = discarded + net_w * (dt - dt_full) / thousand;
            }
            generated = generated + source.continuous_output_w * dt / thousand;
            delivered = delivered + load_w * dt / thousand;
            None
        } else {
            let draw_wh = -net_w * dt;
            let stored_wh = *soc * thousand;
            if draw_wh <= stored_wh {
                *soc = *soc - draw_wh / thousand;
                generated = generated + source.continuous_output_w * dt / thousand;
                delivered = delivered + load_w * dt / thousand;
                None
            } else {
                let t_empty = t0 + stored_wh / -net_w;
                let run = t_empty - t0;
                generated = generated + source.continuous_output_w * run / thousand;
                delivered = delivered + load_w * run / thousand;
                *soc = R::zero();
                Some(t_empty)
            }
        }
    };

    samples.push(SocSample {
        time_h: R::zero(),
        soc_kwh: soc,
        load_w: plan
            .segments()
            .first()
            .map(|&(_, _, l)| l)
            .unwrap_or(plan.residual_load_w),
    });

    let mut verdict = Feasibility::Feasible;
    'segments: for (seg_start, seg_end, load_w) in plan.segments() {
        let mut t = seg_start;
        loop {
            // Next reporting tick strictly after t, capped at the segment end.
            let mut next_tick_time = R::of((tick + 1) as f64) * step_h;
            while next_tick_time <= t {
                tick += 1;
                next_tick_time = R::of((tick + 1) as f64) * step_h;
            }
            let t_next = next_tick_time.min(seg_end);

            if let Some(t_empty) = advance(&mut soc, t, t_next, load_w) {
                samples.push(SocSample {
                    time_h: t_empty,
                    soc_kwh: R::zero(),
                    load_w,
                });
                verdict = Feasibility::Depleted {
                    first_violation_h: t_empty,
                };
                break 'segments;
            }

            if t_next == next_tick_time {
                tick += 1;
                samples.push(SocSample {
                    time_h: t_next,
                    soc_kwh: soc,
                    load_w,
                });
            }
            if t_next >= seg_end {
                break;
            }
            t = t_next;
        }
    }

    if verdict == Feasibility::Feasible {
        let last_time = samples.last().map(|s| s.time_h).unwrap_or(R::zero());
        if last_time < plan.horizon_h {
            samples.push(SocSample {
                time_h: plan.horizon_h,
                soc_kwh: soc,
                load_w: plan
                    .segments()
                    .last()
                    .map(|&(_, _, l)| l)
                    .unwrap_or(plan.residual_load_w),
            });
        }
    }

    Ok(Trajectory {
        samples,
        verdict,
        initial_soc_kwh: battery.state_of_charge_kwh,
        final_soc_kwh: soc,
        generated_kwh: generated,
        delivered_kwh: delivered,
        discarded_kwh: discarded,
        lost_kwh: lost,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mmrtg() -> PowerSource<f64> {
        PowerSource::new(75.0).unwrap()
    }

    fn flight_entry(start: f64, hours: f64) -> PlanEntry<f64> {
        PlanEntry {
            start_h: start,
            duration_h: hours,
            name: "Atmospheric Flight".into(),
            power_w: 1600.0,
        }
    }

    #[test]
    fn battery_sizing_from_night() {
        let b = max_battery_from_night(&mmrtg(), 192.0, 100.0).unwrap();
        assert_eq!(b.capacity_kwh, 14.4);
        assert_eq!(b.mass_kg, 144.0);

        let zero = max_battery_from_night(&mmrtg(), 0.0, 100.0).unwrap();
        assert_eq!(zero.capacity_kwh, 0.0);

        let alt: PowerSource<f64> = PowerSource::new(100.0).unwrap();
        let b2 = max_battery_from_night(&alt, 192.0, 100.0).unwrap();
        assert!((b2.capacity_kwh - 19.2).abs() < 1e-12);
    }

    #[test]
    fn flight_preset_battery() {
        let b = Battery::<f64>::flight_preset().unwrap();
        assert_eq!(b.capacity_kwh, 2.5);
        assert_eq!(b.mass_kg, 25.0);
        assert_eq!(b.state_of_charge_kwh, 2.5);
    }

    #[test]
    fn builtin_activity_table() {
        let acts = builtin_activities::<f64>();
        assert_eq!(acts.len(), 6);
        assert_eq!(acts[0].power_w, 1600.0);
        assert_eq!(acts[0].schedule, Schedule::AnnualHours(60.0));
        assert_eq!(acts[5].power_w, 30.0);
        assert_eq!(acts[5].schedule, Schedule::Continuous);
    }

    #[test]
    fn annual_energy_breakdown() {
        let acts = builtin_activities::<f64>();
        let annual = annual_energy(&acts);
        assert_eq!(annual.lines[0].energy_kwh, 96.0);
        assert!((annual.lines[5].energy_kwh - 262.8).abs() < 1e-12);
        assert!((annual.total_kwh - 518.2).abs() < 1e-9);
        // fits inside the generator's annual output at 75 W
        assert!(annual.total_kwh < 75.0 * HOURS_PER_YEAR / 1000.0);
    }

    #[test]
    fn annual_energy_is_permutation_invariant() {
        let acts = builtin_activities::<f64>();
        let forward = annual_energy(&acts).total_kwh;
        let mut reversed = acts.clone();
        reversed.reverse();
        assert_eq!(forward, annual_energy(&reversed).total_kwh);
        let mut rotated = acts;
        rotated.rotate_left(3);
        assert_eq!(forward, annual_energy(&rotated).total_kwh);
    }

    #[test]
    fn empty_plan_keeps_battery_full() {
        let plan = MissionPlan::new(vec![], 0.0, Some(48.0)).unwrap();
        let battery = Battery::from_capacity(2.5, 100.0).unwrap();
        let traj = simulate(&plan, &mmrtg(), &battery, 1.0).unwrap();
        assert_eq!(traj.verdict, Feasibility::Feasible);
        assert!(traj.samples.iter().all(|s| s.soc_kwh == 2.5));
        // surplus all discarded
        assert!((traj.discarded_kwh - 75.0 * 48.0 / 1000.0).abs() < 1e-12);
    }

    #[test]
    fn single_flight_hour_drop() {
        let plan = MissionPlan::new(vec![flight_entry(0.0, 1.0)], 0.0, Some(1.0)).unwrap();
        let battery = Battery::from_capacity(2.5, 100.0).unwrap();
        let traj = simulate(&plan, &mmrtg(), &battery, 0.25).unwrap();
        assert_eq!(traj.verdict, Feasibility::Feasible);
        // (1600 - 75) * 1 h = 1.525 kWh
        assert!((traj.initial_soc_kwh - traj.final_soc_kwh - 1.525).abs() < 1e-12);
    }

    #[test]
    fn over_long_flight_depletes_at_closed_form_time() {
        let plan = MissionPlan::new(vec![flight_entry(0.0, 3.0)], 0.0, Some(3.0)).unwrap();
        let battery = Battery::from_capacity(2.5, 100.0).unwrap();
        let traj = simulate(&plan, &mmrtg(), &battery, 0.5).unwrap();
        match traj.verdict {
            Feasibility::Depleted { first_violation_h } => {
                let closed_form = 2.5 * 1000.0 / (1600.0 - 75.0);
                assert!(
                    (first_violation_h - closed_form).abs() < 1e-9,
                    "{first_violation_h} vs {closed_form}"
                );
            }
            other => panic!("expected depletion, got {other:?}"),
        }
        assert_eq!(traj.final_soc_kwh, 0.0);
    }

    #[test]
    fn energy_conservation_audit_closes() {
        // Discharge, recharge with clamping at the top, then idle.
        let entries = vec![flight_entry(2.0, 1.0), flight_entry(100.0, 0.5)];
        let plan = MissionPlan::new(entries, 30.0, Some(192.0)).unwrap();
        let battery = Battery::from_capacity(2.5, 100.0)
            .unwrap()
            .with_state_of_charge(2.0)
            .unwrap();
        let traj = simulate(&plan, &mmrtg(), &battery, 1.0).unwrap();
        assert_eq!(traj.verdict, Feasibility::Feasible);
        let balance = traj.generated_kwh
            - traj.delivered_kwh
            - traj.discarded_kwh
            - (traj.final_soc_kwh - traj.initial_soc_kwh);
        assert!(balance.abs() < 1e-9, "audit residual {balance}");
    }

    #[test]
    fn charge_efficiency_scales_stored_energy() {
        let plan = MissionPlan::new(vec![], 0.0, Some(10.0)).unwrap();
        let battery = Battery::from_capacity(5.0, 100.0)
            .unwrap()
            .with_state_of_charge(1.0)
            .unwrap();
        let lossless = simulate_with_efficiency(&plan, &mmrtg(), &battery, 1.0, 1.0).unwrap();
        let lossy = simulate_with_efficiency(&plan, &mmrtg(), &battery, 1.0, 0.5).unwrap();
        // 75 W for 10 h = 0.75 kWh at unit efficiency, half of that at 0.5.
        assert!((lossless.final_soc_kwh - 1.75).abs() < 1e-12);
        assert!((lossy.final_soc_kwh - 1.375).abs() < 1e-12);
        assert!((lossy.lost_kwh - 0.375).abs() < 1e-12);
        let audit = lossy.generated_kwh
            - lossy.delivered_kwh
            - lossy.discarded_kwh
            - lossy.lost_kwh
            - (lossy.final_soc_kwh - lossy.initial_soc_kwh);
        assert!(audit.abs() < 1e-12, "lossy audit residual {audit}");

        assert!(simulate_with_efficiency(&plan, &mmrtg(), &battery, 1.0, 0.0).is_err());
        assert!(simulate_with_efficiency(&plan, &mmrtg(), &battery, 1.0, 1.5).is_err());
    }

    #[test]
    fn step_size_only_affects_reporting() {
        let entries = vec![flight_entry(2.0, 1.0), flight_entry(10.0, 0.75)];
        let plan = MissionPlan::new(entries, 30.0, Some(48.0)).unwrap();
        let battery = Battery::from_capacity(2.5, 100.0).unwrap();
        let coarse = simulate(&plan, &mmrtg(), &battery, 1.0).unwrap();
        let fine = simulate(&plan, &mmrtg(), &battery, 0.5).unwrap();
        assert!((coarse.final_soc_kwh - fine.final_soc_kwh).abs() < 1e-12);
        assert!(fine.samples.len() > coarse.samples.len());
    }

    #[test]
    fn soc_respects_bounds_at_every_sample() {
        let entries = vec![flight_entry(1.0, 1.0), flight_entry(50.0, 1.0)];
        let plan = MissionPlan::new(entries, 30.0, Some(192.0)).unwrap();
        let battery = Battery::from_capacity(4.0, 100.0)
            .unwrap()
            .with_state_of_charge(3.0)
            .unwrap();
        let traj = simulate(&plan, &mmrtg(), &battery, 0.25).unwrap();
        for s in &traj.samples {
            assert!(
                s.soc_kwh >= 0.0 && s.soc_kwh <= 4.0,
                "SoC {} at {}",
                s.soc_kwh,
                s.time_h
            );
        }
    }

    #[test]
    fn overlapping_entries_are_rejected() {
        let entries = vec![flight_entry(0.0, 2.0), flight_entry(1.5, 1.0)];
        match MissionPlan::new(entries, 0.0, None) {
            Err(Error::OverlappingPlanEntries { time_h, .. }) => assert_eq!(time_h, 1.5),
            other => panic!("expected overlap error, got {other:?}"),
        }
    }

    #[test]
    fn touching_entries_are_fine() {
        let entries = vec![flight_entry(0.0, 2.0), flight_entry(2.0, 1.0)];
        assert!(MissionPlan::new(entries, 0.0, None).is_ok());
    }

    #[test]
    fn plan_beyond_horizon_is_rejected() {
        let entries = vec![flight_entry(10.0, 2.0)];
        assert!(matches!(
            MissionPlan::new(entries, 0.0, Some(11.0)),
            Err(Error::PlanBeyondHorizon { .. })
        ));
    }

    #[test]
    fn default_horizon_is_last_entry_end() {
        let plan = MissionPlan::new(vec![flight_entry(3.0, 2.0)], 0.0, None).unwrap();
        assert_eq!(plan.horizon_h, 5.0);
    }

    proptest! {
        /// The audit identity must close for arbitrary single-window plans.
        #[test]
        fn conservation_holds_for_random_plans(
            start in 0.0..50.0f64,
            duration in 0.1..20.0f64,
            load in 0.0..2000.0f64,
            residual in 0.0..50.0f64,
            soc0 in 0.0..2.5f64,
        ) {
            let entries = vec![PlanEntry {
                start_h: start,
                duration_h: duration,
                name: "window".into(),
                power_w: load,
            }];
            let plan = MissionPlan::new(entries, residual, Some(100.0)).unwrap();
            let battery = Battery::from_capacity(2.5, 100.0)
                .unwrap()
                .with_state_of_charge(soc0)
                .unwrap();
            let traj = simulate(&plan, &mmrtg(), &battery, 1.0).unwrap();
            let simulated_until = match traj.verdict {
                Feasibility::Feasible => 100.0,
                Feasibility::Depleted { first_violation_h } => first_violation_h,
            };
            let balance = traj.generated_kwh
                - traj.delivered_kwh
                - traj.discarded_kwh
                - (traj.final_soc_kwh - traj.initial_soc_kwh);
            prop_assert!(balance.abs() < 1e-9);
            prop_assert!(traj.generated_kwh <= 75.0 * simulated_until / 1000.0 + 1e-9);
        }
    }
}
