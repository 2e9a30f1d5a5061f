//! Desk-scale design and energetics toolkit for a soft-morphing rotorcraft
//! concept operating in Titan's atmosphere.
//!
//! Four analysis areas, one per module:
//!
//! * [`rotor`] — sizing a ducted-rotor configuration from a small
//!   CFD-derived design table under a blade-tip Mach cap;
//! * [`power`] — the forward-flight power model, optimal cruise speed,
//!   range, and calibration against known operating points;
//! * [`budget`] — generator + battery energy budgeting and a
//!   state-of-charge timeline simulator;
//! * [`arm`] — cryogenic stiffness of the deformable arms, constant-
//!   curvature kinematics, and folding geometry.
//!
//! [`atmosphere`] holds the environment constants all of them read.
//!
//! Every computation is generic over the scalar type through
//! [`scalar::Real`] (`f32` or `f64`); the aliases at the crate root fix
//! `f64`, which is the precision the CLI and the builtin presets use.

// `!(x > 0)` in the validators rejects NaN along with non-positive values;
// `x <= 0` would wave NaN through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arm;
pub mod atmosphere;
pub mod budget;
pub mod error;
mod numeric;
pub mod power;
pub mod rotor;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

/// f64 atmosphere model.
pub type Atmosphere = atmosphere::AtmosphereModel<f64>;
/// f64 rotor design point.
pub type RotorPoint = rotor::RotorDesignPoint<f64>;
/// f64 rotor response-surface fit.
pub type RotorFit = rotor::RotorSurfaceFit<f64>;
/// f64 rotor selection.
pub type RotorChoice = rotor::RotorSelection<f64>;
/// f64 vehicle parameter set.
pub type Vehicle = power::VehicleParams<f64>;
/// f64 power breakdown.
pub type Breakdown = power::PowerBreakdown<f64>;
/// f64 cruise solution.
pub type Cruise = power::CruiseSolution<f64>;
/// f64 battery.
pub type BatteryPack = budget::Battery<f64>;
/// f64 mission plan.
pub type Plan = budget::MissionPlan<f64>;
/// f64 material model.
pub type Material = arm::MaterialModel<f64>;
/// f64 arm geometry.
pub type Arm = arm::ArmGeometry<f64>;
