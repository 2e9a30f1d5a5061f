//! Cryogenic behavior of the tendon-driven deformable arms: a parametric
//! bending-stiffness model with a crystallization transition, single-arc
//! constant-curvature tip kinematics, and the folding geometry that shrinks
//! the stowed diameter.
//!
//! The stiffness curves themselves were never published as data, so the
//! model is a documented surrogate: a linear drift with cooling plus a
//! smoothstep-blended stiffness jump across a 10 degC band centered at the
//! crystallization temperature. Its shape constants are configuration knobs.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Lowest modelled temperature, degC (liquid-nitrogen floor of the rig).
pub const MIN_TEMPERATURE_C: f64 = -196.0;
/// Highest modelled temperature, degC.
pub const MAX_TEMPERATURE_C: f64 = 25.0;
/// Reference temperature the baseline stiffness is anchored at, degC.
pub const BASELINE_TEMPERATURE_C: f64 = 20.0;
/// Width of the crystallization transition band, degC.
pub const CRYSTALLIZATION_BAND_C: f64 = 10.0;
/// Default post-crystallization stiffness multiplier.
pub const DEFAULT_CRYSTALLIZATION_MULTIPLIER: f64 = 10.0;
/// Default feasibility threshold on the stiffness ratio.
pub const DEFAULT_FEASIBILITY_MULTIPLIER: f64 = 1.5;

/// Temperature-dependent bending stiffness of one arm material.
///
/// Stiffness is kept in the test rig's units, kg.cm of tendon moment per
/// 1/cm of curvature; see [`kgcm_per_invcm_to_si`] for the SI view.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialModel<R> {
    pub name: String,
    /// Stiffness at +20 degC, kg.cm per (1/cm).
    pub baseline_stiffness: R,
    /// Crystallization temperature, degC; `None` for materials that stay
    /// compliant across the whole range.
    pub crystallization_temp_c: Option<R>,
    /// Stiffness multiplier once fully crystallized.
    pub post_crystallization_multiplier: R,
    /// Fractional stiffness rise across +20..-180 degC, before any
    /// crystallization effect.
    pub linear_drift_fraction: R,
    /// Print infill fraction (1.0 for molded solids).
    pub infill_fraction: R,
}

impl<R: Real> MaterialModel<R> {
    pub fn new(
        name: impl Into<String>,
        baseline_stiffness: R,
        crystallization_temp_c: Option<R>,
        post_crystallization_multiplier: R,
        linear_drift_fraction: R,
        infill_fraction: R,
    ) -> Result<Self> {
        if !(baseline_stiffness > R::zero()) {
            return Err(Error::NonPositive {
                name: "baseline_stiffness",
                value: baseline_stiffness.as_f64(),
            });
        }
        if post_crystallization_multiplier < R::one() {
            return Err(Error::OutOfRange {
                name: "post_crystallization_multiplier",
                value: post_crystallization_multiplier.as_f64(),
                min: 1.0,
                max: f64::INFINITY,
            });
        }
        if linear_drift_fraction < R::zero() {
            return Err(Error::Negative {
                name: "linear_drift_fraction",
                value: linear_drift_fraction.as_f64(),
            });
        }
        if !(infill_fraction > R::zero() && infill_fraction <= R::one()) {
            return Err(Error::OutOfRange {
                name: "infill_fraction",
                value: infill_fraction.as_f64(),
                min: 0.0,
                max: 1.0,
            });
        }
        Ok(Self {
            name: name.into(),
            baseline_stiffness,
            crystallization_temp_c,
            post_crystallization_multiplier,
            linear_drift_fraction,
            infill_fraction,
        })
    }

    /// Bending stiffness at a temperature in [-196, +25] degC.
    ///
    /// Above the crystallization band the stiffness follows the linear
    /// drift; below it the drifted value is further multiplied by the
    /// post-crystallization factor, blended smoothly across the band so the
    /// curve stays continuous.
    pub fn stiffness_at(&self, temp_c: R) -> Result<R> {
        if temp_c < R::of(MIN_TEMPERATURE_C) || temp_c > R::of(MAX_TEMPERATURE_C) {
            return Err(Error::TemperatureOutOfRange {
                temp_c: temp_c.as_f64(),
                min_c: MIN_TEMPERATURE_C,
                max_c: MAX_TEMPERATURE_C,
            });
        }
        let drift = R::one()
            + self.linear_drift_fraction * (R::of(BASELINE_TEMPERATURE_C) - temp_c) / R::of(200.0);
        let mut stiffness = self.baseline_stiffness * drift;
        if let Some(tc) = self.crystallization_temp_c {
            let half_band = R::of(CRYSTALLIZATION_BAND_C / 2.0);
            let x = ((tc + half_band - temp_c) / R::of(CRYSTALLIZATION_BAND_C))
                .max(R::zero())
                .min(R::one());
            let blend = x * x * (R::of(3.0) - R::of(2.0) * x);
            stiffness =
                stiffness * (R::one() + blend * (self.post_crystallization_multiplier - R::one()));
        }
        Ok(stiffness)
    }

    /// Tendon moment for a bend of the given curvature (linear law):
    /// stiffness * curvature, in kg.cm.
    pub fn tendon_moment(&self, temp_c: R, curvature_per_cm: R) -> Result<R> {
        Ok(self.stiffness_at(temp_c)? * curvature_per_cm)
    }

    /// Whether the material still bends acceptably at this temperature:
    /// stiffness ratio to baseline at most `max_multiplier`.
    pub fn feasible_at(&self, temp_c: R, max_multiplier: R) -> Result<bool> {
        Ok(self.stiffness_at(temp_c)? / self.baseline_stiffness <= max_multiplier)
    }
}

/// The five materials characterized on the cryogenic test rig.
///
/// TPU crystallizes around -120 degC and the silicone elastomer around
/// -96 degC; PTFE shows no transition and only drifts 15 % stiffer across
/// the whole range, which is what makes it the arm material of choice.
/// Baseline stiffness magnitudes are representative placeholders (the
/// measured curves were not published as numbers) and are configurable.
pub fn builtin_materials<R: Real>() -> Vec<MaterialModel<R>> {
    let mult = R::of(DEFAULT_CRYSTALLIZATION_MULTIPLIER);
    vec![
        MaterialModel {
            name: "TPU-10".into(),
            baseline_stiffness: R::of(0.6),
            crystallization_temp_c: Some(R::of(-120.0)),
            post_crystallization_multiplier: mult,
            linear_drift_fraction: R::of(0.05),
            infill_fraction: R::of(0.10),
        },
        MaterialModel {
            name: "TPU-20".into(),
            baseline_stiffness: R::of(1.1),
            crystallization_temp_c: Some(R::of(-120.0)),
            post_crystallization_multiplier: mult,
            linear_drift_fraction: R::of(0.05),
            infill_fraction: R::of(0.20),
        },
        MaterialModel {
            name: "PTFE-15".into(),
            baseline_stiffness: R::of(1.6),
            crystallization_temp_c: None,
            post_crystallization_multiplier: R::one(),
            linear_drift_fraction: R::of(0.15),
            infill_fraction: R::of(0.15),
        },
        MaterialModel {
            name: "PTFE-30".into(),
            baseline_stiffness: R::of(2.6),
            crystallization_temp_c: None,
            post_crystallization_multiplier: R::one(),
            linear_drift_fraction: R::of(0.15),
            infill_fraction: R::of(0.30),
        },
        MaterialModel {
            name: "silicone".into(),
            baseline_stiffness: R::of(0.35),
            crystallization_temp_c: Some(R::of(-96.0)),
            post_crystallization_multiplier: mult,
            linear_drift_fraction: R::of(0.05),
            infill_fraction: R::one(),
        },
    ]
}

/// Converts the rig units kg.cm per (1/cm) to N.m per (1/m):
/// 1 kgf.cm = 0.0980665 N.m and 1/cm = 100/m, so the factor is 9.80665e-4.
pub fn kgcm_per_invcm_to_si<R: Real>(stiffness: R) -> R {
    stiffness * R::of(9.80665e-4)
}

/// Geometry of one deformable arm on the vehicle body.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmGeometry<R> {
    pub length_m: R,
    /// Joint count used when the arm is approximated as a linkage; the
    /// closed-form kinematics below treat the arm as a single arc.
    pub segments: u32,
    pub body_radius_m: R,
}

impl<R: Real> ArmGeometry<R> {
    pub fn new(length_m: R, segments: u32, body_radius_m: R) -> Result<Self> {
        if !(length_m > R::zero()) {
            return Err(Error::NonPositive {
                name: "length_m",
                value: length_m.as_f64(),
            });
        }
        if !(body_radius_m > R::zero()) {
            return Err(Error::NonPositive {
                name: "body_radius_m",
                value: body_radius_m.as_f64(),
            });
        }
        if segments < 1 {
            return Err(Error::OutOfRange {
                name: "segments",
                value: segments as f64,
                min: 1.0,
                max: f64::INFINITY,
            });
        }
        Ok(Self {
            length_m,
            segments,
            body_radius_m,
        })
    }
}

/// Tip position of an arm bent into a circular arc of the given curvature
/// (1/m), in the bending plane: x across, z along the undeformed axis.
///
/// A straight arm (zero curvature) points to (0, L). The bend angle
/// |curvature| * L must stay below 2*pi (one full loop).
pub fn arm_tip_position<R: Real>(geom: &ArmGeometry<R>, curvature_per_m: R) -> Result<(R, R)> {
    let bend = curvature_per_m.abs() * geom.length_m;
    if bend >= R::of(2.0 * std::f64::consts::PI) {
        return Err(Error::WorkspaceLimit {
            bend_rad: bend.as_f64(),
        });
    }
    if curvature_per_m == R::zero() {
        return Ok((R::zero(), geom.length_m));
    }
    let s = curvature_per_m * geom.length_m;
    let half = s / R::of(2.0);
    // 1 - cos(s) written as 2 sin^2(s/2) to stay accurate for tiny bends.
    let x = R::of(2.0) * half.sin() * half.sin() / curvature_per_m;
    let z = s.sin() / curvature_per_m;
    Ok((x, z))
}

/// Stowed-diameter geometry at one fold angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoldResult<R> {
    pub extended_diameter_m: R,
    pub folded_diameter_m: R,
    pub reduction_fraction: R,
}

/// Diameter reduction from folding the arms by `fold_angle_rad` in
/// [0, pi/2]: the swept radius shrinks from R + L to R + L*cos(angle).
pub fn folded_diameter<R: Real>(geom: &ArmGeometry<R>, fold_angle_rad: R) -> FoldResult<R> {
    debug_assert!(
        fold_angle_rad >= R::zero() && fold_angle_rad <= R::of(std::f64::consts::PI / 2.0)
    );
    let two = R::of(2.0);
    let extended = two * (geom.body_radius_m + geom.length_m);
    let folded = two * (geom.body_radius_m + geom.length_m * fold_angle_rad.cos());
    FoldResult {
        extended_diameter_m: extended,
        folded_diameter_m: folded,
        reduction_fraction: R::one() - folded / extended,
    }
}
