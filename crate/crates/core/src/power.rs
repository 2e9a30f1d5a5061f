//! Forward-flight power model and its inverse calibration.
//!
//! Total power splits into three parts:
//!
//! * body drag      P_D = 0.5 * rho * v^3 * S * C_D
//! * induced        P_I = P_Ih / sqrt(1 + (v / (2*sqrt(2)*sqrt(m*g/(rho*A))))^2)
//! * blade profile  P_P = rho * v^3 * A * C_Db * sigma / 8
//!
//! with the hover induced power P_Ih given by momentum theory,
//! P_Ih = (m*g)^(3/2) / sqrt(2*rho*A). An alternative "as printed" hover
//! variant sqrt((m*g)^3 * rho / (2*A)) is kept for auditing; it is
//! dimensionally inconsistent and exceeds the standard form by exactly a
//! factor rho, which is what makes it easy to flag.
//!
//! Body drag and profile power share the same v^3 shape, so cruise data can
//! never separate them; the calibrator therefore pins the profile aggregate
//! k_p = A_ref * C_Db * sigma / 8 from reference geometry and recovers the
//! per-scenario frontal area and effective induced-power disk area from a
//! known (optimal speed, power) operating point.

use crate::atmosphere::AtmosphereModel;
use crate::error::{Error, Result};
use crate::numeric::{golden_section_min, solve_linear};
use crate::scalar::Real;

/// Default vehicle mass, kg.
pub const DEFAULT_MASS_KG: f64 = 420.0;
/// Default rotor count.
pub const DEFAULT_ROTOR_COUNT: u32 = 6;
/// Default blade drag coefficient used to pin the profile aggregate.
pub const DEFAULT_BLADE_DRAG_COEFF: f64 = 0.02;
/// Default rotor solidity used to pin the profile aggregate.
pub const DEFAULT_SOLIDITY: f64 = 0.25;
/// Duct diameter of the quoted reference configuration, m.
pub const REFERENCE_DUCT_DIAMETER_M: f64 = 0.22;
/// Default golden-section bracket top, m/s.
pub const DEFAULT_MAX_SPEED_MPS: f64 = 60.0;
/// Default golden-section bracket width, m/s.
pub const DEFAULT_SPEED_TOLERANCE_MPS: f64 = 1e-3;
/// Lower end of the cruise-speed search bracket, m/s.
pub const SEARCH_FLOOR_MPS: f64 = 0.1;

/// Geometric disk area of `count` ducts of diameter `d`: count * pi * (d/2)^2.
pub fn disk_area_from_ducts<R: Real>(diameter_m: R, count: u32) -> R {
    let radius = diameter_m / R::of(2.0);
    R::of(count as f64) * R::of(std::f64::consts::PI) * radius * radius
}

/// Which hover induced-power formula to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InducedPowerMode {
    /// Standard momentum theory, (m*g)^(3/2) / sqrt(2*rho*A). The default.
    #[default]
    Corrected,
    /// sqrt((m*g)^3 * rho / (2*A)); equals `Corrected` times rho. Retained
    /// so the discrepancy can be demonstrated, not for design work.
    AsPrinted,
}

/// Mass, geometry, and drag coefficients of one flight configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VehicleParams<R> {
    /// Vehicle mass m, kg.
    pub mass_kg: R,
    /// Frontal area S, m^2.
    pub frontal_area_m2: R,
    /// Body drag coefficient C_D.
    pub body_drag_coeff: R,
    /// Total rotor disk area A (all rotors), m^2.
    pub rotor_disk_area_m2: R,
    /// Blade drag coefficient C_Db.
    pub blade_drag_coeff: R,
    /// Solidity sigma, blade planform area over disk area.
    pub solidity: R,
    /// Number of rotors.
    pub rotor_count: u32,
}

impl<R: Real> VehicleParams<R> {
    pub fn new(
        mass_kg: R,
        frontal_area_m2: R,
        body_drag_coeff: R,
        rotor_disk_area_m2: R,
        blade_drag_coeff: R,
        solidity: R,
        rotor_count: u32,
    ) -> Result<Self> {
        for (name, value) in [
            ("mass_kg", mass_kg),
            ("frontal_area_m2", frontal_area_m2),
            ("rotor_disk_area_m2", rotor_disk_area_m2),
            ("blade_drag_coeff", blade_drag_coeff),
        ] {
            if !(value > R::zero()) {
                return Err(Error::NonPositive {
                    name,
                    value: value.as_f64(),
                });
            }
        }
        if !(solidity > R::zero() && solidity < R::one()) {
            return Err(Error::OutOfRange {
                name: "solidity",
                value: solidity.as_f64(),
                min: 0.0,
                max: 1.0,
            });
        }
        if !(body_drag_coeff > R::zero() && body_drag_coeff < R::of(5.0)) {
            return Err(Error::OutOfRange {
                name: "body_drag_coeff",
                value: body_drag_coeff.as_f64(),
                min: 0.0,
                max: 5.0,
            });
        }
        if rotor_count < 1 {
            return Err(Error::OutOfRange {
                name: "rotor_count",
                value: rotor_count as f64,
                min: 1.0,
                max: f64::INFINITY,
            });
        }
        Ok(Self {
            mass_kg,
            frontal_area_m2,
            body_drag_coeff,
            rotor_disk_area_m2,
            blade_drag_coeff,
            solidity,
            rotor_count,
        })
    }

    /// Profile-power aggregate k_p = A * C_Db * sigma / 8.
    pub fn blade_term(&self) -> R {
        self.rotor_disk_area_m2 * self.blade_drag_coeff * self.solidity / R::of(8.0)
    }
}

/// Power split at one airspeed. `total_w` is always the ordered sum
/// body + induced + profile, so the decomposition is bit-reproducible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBreakdown<R> {
    pub speed_mps: R,
    pub body_drag_w: R,
    pub induced_w: R,
    pub profile_w: R,
    pub total_w: R,
}

/// Body drag power 0.5 * rho * v^3 * S * C_D.
pub fn body_drag_power<R: Real>(atm: &AtmosphereModel<R>, vp: &VehicleParams<R>, v: R) -> R {
    debug_assert!(v >= R::zero());
    R::of(0.5) * atm.density * v.powi(3) * vp.frontal_area_m2 * vp.body_drag_coeff
}

/// Hover induced power in the chosen mode.
pub fn induced_power_hover<R: Real>(
    atm: &AtmosphereModel<R>,
    vp: &VehicleParams<R>,
    mode: InducedPowerMode,
) -> R {
    let weight = vp.mass_kg * atm.gravity;
    let two = R::of(2.0);
    match mode {
        InducedPowerMode::Corrected => {
            weight.powf(R::of(1.5)) / (two * atm.density * vp.rotor_disk_area_m2).sqrt()
        }
        InducedPowerMode::AsPrinted => {
            (weight.powi(3) * atm.density / two / vp.rotor_disk_area_m2).sqrt()
        }
    }
}

/// Velocity scale of the forward-flight induced-power decay,
/// 2*sqrt(2)*sqrt(m*g/(rho*A)).
fn induced_velocity_scale<R: Real>(atm: &AtmosphereModel<R>, vp: &VehicleParams<R>) -> R {
    let two = R::of(2.0);
    two * two.sqrt() * (vp.mass_kg * atm.gravity / (atm.density * vp.rotor_disk_area_m2)).sqrt()
}

/// Forward-flight induced power; equals the hover value at v = 0 and decays
/// monotonically with speed.
pub fn induced_power<R: Real>(
    atm: &AtmosphereModel<R>,
    vp: &VehicleParams<R>,
    v: R,
    mode: InducedPowerMode,
) -> R {
    debug_assert!(v >= R::zero());
    let hover = induced_power_hover(atm, vp, mode);
    if v == R::zero() {
        return hover;
    }
    let u = v / induced_velocity_scale(atm, vp);
    hover / (R::one() + u * u).sqrt()
}

/// Blade profile power rho * v^3 * A * C_Db * sigma / 8.
pub fn profile_power<R: Real>(atm: &AtmosphereModel<R>, vp: &VehicleParams<R>, v: R) -> R {
    debug_assert!(v >= R::zero());
    atm.density * v.powi(3) * vp.blade_term()
}

/// All three components at one speed, summed in the fixed order
/// body + induced + profile.
pub fn total_power<R: Real>(
    atm: &AtmosphereModel<R>,
    vp: &VehicleParams<R>,
    v: R,
    mode: InducedPowerMode,
) -> PowerBreakdown<R> {
    let body = body_drag_power(atm, vp, v);
    let induced = induced_power(atm, vp, v, mode);
    let profile = profile_power(atm, vp, v);
    PowerBreakdown {
        speed_mps: v,
        body_drag_w: body,
        induced_w: induced,
        profile_w: profile,
        total_w: body + induced + profile,
    }
}

/// Analytic d(P_total)/dv. The cubic terms differentiate to 3*c*v^2 and the
/// induced term to -P_Ih * (v/w^2) * (1 + (v/w)^2)^(-3/2).
fn total_power_slope<R: Real>(
    atm: &AtmosphereModel<R>,
    vp: &VehicleParams<R>,
    v: R,
    mode: InducedPowerMode,
) -> R {
    let cubic_coeff = R::of(0.5) * atm.density * vp.frontal_area_m2 * vp.body_drag_coeff
        + atm.density * vp.blade_term();
    let hover = induced_power_hover(atm, vp, mode);
    let w = induced_velocity_scale(atm, vp);
    let u = v / w;
    let decay = (R::one() + u * u).powf(R::of(-1.5));
    R::of(3.0) * cubic_coeff * v * v - hover * v / (w * w) * decay
}

/// Cruise operating point found by [`optimal_speed`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CruiseSolution<R> {
    pub optimal_speed_mps: R,
    pub power_w: R,
    pub breakdown: PowerBreakdown<R>,
    /// Populated by [`range_km`] / [`CruiseSolution::with_range`].
    pub range_km: Option<R>,
}

impl<R: Real> CruiseSolution<R> {
    pub fn with_range(mut self, battery_kwh: R) -> Result<Self> {
        self.range_km = Some(range_km(&self, battery_kwh)?);
        Ok(self)
    }
}

/// Minimizes total power over v in [0.1, v_max] by golden-section search to
/// bracket width `tol`. The curve rises like v^3 at speed and tends to the
/// hover induced power at rest, so a unique interior minimum exists for
/// every positive parameter set encountered in practice.
pub fn optimal_speed<R: Real>(
    atm: &AtmosphereModel<R>,
    vp: &VehicleParams<R>,
    mode: InducedPowerMode,
    v_max: R,
    tol: R,
) -> Result<CruiseSolution<R>> {
    let floor = R::of(SEARCH_FLOOR_MPS);
    if !(v_max > floor) {
        return Err(Error::OutOfRange {
            name: "v_max",
            value: v_max.as_f64(),
            min: SEARCH_FLOOR_MPS,
            max: f64::INFINITY,
        });
    }
    if !(tol > R::zero()) {
        return Err(Error::NonPositive {
            name: "tol",
            value: tol.as_f64(),
        });
    }
    let (speed, power) =
        golden_section_min(|v| total_power(atm, vp, v, mode).total_w, floor, v_max, tol);
    Ok(CruiseSolution {
        optimal_speed_mps: speed,
        power_w: power,
        breakdown: total_power(atm, vp, speed, mode),
        range_km: None,
    })
}

/// Range E / P * v, with E in kWh, P in W, v in m/s, result in km.
pub fn range_km<R: Real>(sol: &CruiseSolution<R>, battery_kwh: R) -> Result<R> {
    if !(battery_kwh > R::zero()) {
        return Err(Error::NonPositive {
            name: "battery_kwh",
            value: battery_kwh.as_f64(),
        });
    }
    let joules = battery_kwh * R::of(3.6e6);
    Ok(joules / sol.power_w * sol.optimal_speed_mps / R::of(1000.0))
}

/// One scenario's calibration target: where its power curve must bottom out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioTarget<R> {
    pub optimal_speed_mps: R,
    pub power_w: R,
    pub body_drag_coeff: R,
}

/// Rigid-arm cruise target: 10.8 m/s at 2.3 kW with C_D = 1.32.
pub const RIGID_TARGET: ScenarioTarget<f64> = ScenarioTarget {
    optimal_speed_mps: 10.8,
    power_w: 2300.0,
    body_drag_coeff: 1.32,
};

/// Deformable-arm cruise target: 13.9 m/s at 1.67 kW with C_D = 0.93.
pub const DEFORMABLE_TARGET: ScenarioTarget<f64> = ScenarioTarget {
    optimal_speed_mps: 13.9,
    power_w: 1670.0,
    body_drag_coeff: 0.93,
};

/// Everything the calibrator needs besides the atmosphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationInputs<R> {
    pub mass_kg: R,
    pub rotor_count: u32,
    pub mode: InducedPowerMode,
    pub rigid: ScenarioTarget<R>,
    pub deformable: ScenarioTarget<R>,
    pub blade_drag_coeff: R,
    pub solidity: R,
    /// Geometric disk area that pins the profile aggregate k_p.
    pub reference_disk_area_m2: R,
}

impl CalibrationInputs<f64> {
    /// The builtin targets with default mass, blade parameters, and the
    /// reference 22 cm duct geometry.
    pub fn builtin() -> Self {
        Self {
            mass_kg: DEFAULT_MASS_KG,
            rotor_count: DEFAULT_ROTOR_COUNT,
            mode: InducedPowerMode::Corrected,
            rigid: RIGID_TARGET,
            deformable: DEFORMABLE_TARGET,
            blade_drag_coeff: DEFAULT_BLADE_DRAG_COEFF,
            solidity: DEFAULT_SOLIDITY,
            reference_disk_area_m2: disk_area_from_ducts(
                REFERENCE_DUCT_DIAMETER_M,
                DEFAULT_ROTOR_COUNT,
            ),
        }
    }
}

/// Calibrated geometry and the vehicle parameter sets that realize it.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationResult<R> {
    pub frontal_area_rigid_m2: R,
    pub frontal_area_deformable_m2: R,
    /// The pinned profile aggregate k_p = A_ref * C_Db * sigma / 8, shared
    /// by both scenarios.
    pub blade_term: R,
    /// Effective induced-power disk areas recovered per scenario.
    pub disk_area_rigid_m2: R,
    pub disk_area_deformable_m2: R,
    /// Largest relative residual of the four calibration equations.
    pub residual: R,
    pub iterations: usize,
    pub rigid: VehicleParams<R>,
    pub deformable: VehicleParams<R>,
}

/// Recovers frontal areas and effective disk areas so that each scenario's
/// power curve has a stationary point of the target value at the target
/// speed. Damped Newton on the joint four-unknown system
/// (ln S_r, ln A_r, ln S_d, ln A_d); the log parametrization keeps every
/// unknown positive. Converges to machine precision when the targets are
/// reachable and errors out with the residual when they are not.
pub fn calibrate<R: Real>(
    atm: &AtmosphereModel<R>,
    inputs: &CalibrationInputs<R>,
) -> Result<CalibrationResult<R>> {
    for (name, value) in [
        ("mass_kg", inputs.mass_kg),
        ("blade_drag_coeff", inputs.blade_drag_coeff),
        ("solidity", inputs.solidity),
        ("reference_disk_area_m2", inputs.reference_disk_area_m2),
        ("rigid.optimal_speed_mps", inputs.rigid.optimal_speed_mps),
        ("rigid.power_w", inputs.rigid.power_w),
        (
            "deformable.optimal_speed_mps",
            inputs.deformable.optimal_speed_mps,
        ),
        ("deformable.power_w", inputs.deformable.power_w),
    ] {
        if !(value > R::zero()) {
            return Err(Error::NonPositive {
                name,
                value: value.as_f64(),
            });
        }
    }

    let blade_term =
        inputs.reference_disk_area_m2 * inputs.blade_drag_coeff * inputs.solidity / R::of(8.0);

    // Residuals, scaled to be dimensionless: power mismatch over P*, and
    // slope times v*/P*.
    let residuals = |x: &[R; 4]| -> [R; 4] {
        let scenarios = [
            (&inputs.rigid, x[0].exp(), x[1].exp()),
            (&inputs.deformable, x[2].exp(), x[3].exp()),
        ];
        let mut out = [R::zero(); 4];
        for (i, (target, frontal, disk)) in scenarios.into_iter().enumerate() {
            let vp = shadow_params(inputs, target.body_drag_coeff, frontal, disk, blade_term);
            let v = target.optimal_speed_mps;
            let slope = total_power_slope(atm, &vp, v, inputs.mode);
            let power = total_power(atm, &vp, v, inputs.mode).total_w;
            out[2 * i] = slope * v / target.power_w;
            out[2 * i + 1] = (power - target.power_w) / target.power_w;
        }
        out
    };
    let max_abs = |f: &[R; 4]| f.iter().fold(R::zero(), |m, r| m.max(r.abs()));

    let mut x = [
        R::one().ln(),
        R::of(5.0).ln(),
        R::one().ln(),
        R::of(5.0).ln(),
    ];
    let mut f = residuals(&x);
    let converged = R::epsilon() * R::of(1e3);
    let max_iterations = 100;
    let mut iterations = 0;

    while max_abs(&f) > converged && iterations < max_iterations {
        iterations += 1;

        // Finite-difference Jacobian in the log variables.
        let eps = R::epsilon().sqrt();
        let mut jacobian = vec![vec![R::zero(); 4]; 4];
        for col in 0..4 {
            let mut xp = x;
            xp[col] = xp[col] + eps;
            let fp = residuals(&xp);
            for row in 0..4 {
                jacobian[row][col] = (fp[row] - f[row]) / eps;
            }
        }

        let rhs: Vec<R> = f.iter().map(|&r| -r).collect();
        let Some(step) = solve_linear(jacobian, rhs) else {
            break;
        };

        // Backtracking line search on the residual norm.
        let norm0 = max_abs(&f);
        let mut damping = R::one();
        let mut advanced = false;
        for _ in 0..40 {
            let mut xn = x;
            for k in 0..4 {
                xn[k] = xn[k] + damping * step[k];
            }
            let fn_ = residuals(&xn);
            if max_abs(&fn_) < norm0 {
                x = xn;
                f = fn_;
                advanced = true;
                break;
            }
            damping = damping / R::of(2.0);
        }
        if !advanced {
            break;
        }
    }

    let residual = max_abs(&f);
    if residual > R::of(1e-6) {
        return Err(Error::CalibrationStalled {
            residual: residual.as_f64(),
            iterations,
        });
    }

    let frontal_rigid = x[0].exp();
    let disk_rigid = x[1].exp();
    let frontal_deformable = x[2].exp();
    let disk_deformable = x[3].exp();
    let rigid = shadow_params(
        inputs,
        inputs.rigid.body_drag_coeff,
        frontal_rigid,
        disk_rigid,
        blade_term,
    );
    let deformable = shadow_params(
        inputs,
        inputs.deformable.body_drag_coeff,
        frontal_deformable,
        disk_deformable,
        blade_term,
    );

    Ok(CalibrationResult {
        frontal_area_rigid_m2: frontal_rigid,
        frontal_area_deformable_m2: frontal_deformable,
        blade_term,
        disk_area_rigid_m2: disk_rigid,
        disk_area_deformable_m2: disk_deformable,
        residual,
        iterations,
        rigid,
        deformable,
    })
}

/// Vehicle parameters whose induced term uses the effective disk area while
/// the profile term still evaluates to the pinned aggregate k_p: the blade
/// drag coefficient is back-computed as 8*k_p / (A * sigma).
fn shadow_params<R: Real>(
    inputs: &CalibrationInputs<R>,
    body_drag_coeff: R,
    frontal_area: R,
    disk_area: R,
    blade_term: R,
) -> VehicleParams<R> {
    VehicleParams {
        mass_kg: inputs.mass_kg,
        frontal_area_m2: frontal_area,
        body_drag_coeff,
        rotor_disk_area_m2: disk_area,
        blade_drag_coeff: R::of(8.0) * blade_term / (disk_area * inputs.solidity),
        solidity: inputs.solidity,
        rotor_count: inputs.rotor_count,
    }
}
