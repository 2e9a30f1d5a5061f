use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the toolkit's library layer.
///
/// Payloads are widened to `f64` so the error type stays independent of the
/// scalar parameter used by the computation that produced it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("{name} must be non-negative, got {value}")]
    Negative { name: &'static str, value: f64 },

    #[error("{name} = {value} is outside the valid range {min}..={max}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error(
        "design points do not form a full diameter x blade-count grid: \
         missing point at d = {diameter_m} m, B = {blades}"
    )]
    MissingGridPoint { diameter_m: f64, blades: f64 },

    #[error("duplicate design point at d = {diameter_m} m, B = {blades}")]
    DuplicateGridPoint { diameter_m: f64, blades: f64 },

    #[error("design grid needs at least two distinct diameters and two distinct blade counts")]
    DegenerateGrid,

    #[error(
        "point (d = {diameter_m} m, B = {blades}) is outside the fitted domain \
         {d_min}..={d_max} m x {b_min}..={b_max} blades"
    )]
    OutsideFitDomain {
        diameter_m: f64,
        blades: f64,
        d_min: f64,
        d_max: f64,
        b_min: f64,
        b_max: f64,
    },

    #[error(
        "no candidate satisfies tip Mach <= {critical_mach}; \
         smallest tip Mach over the grid is {min_tip_mach}"
    )]
    NoFeasibleRotor {
        critical_mach: f64,
        min_tip_mach: f64,
    },

    #[error(
        "calibration stalled at relative residual {residual} \
         after {iterations} iterations (positive-unknown solution not found)"
    )]
    CalibrationStalled { residual: f64, iterations: usize },

    #[error("plan entries '{first}' and '{second}' overlap at t = {time_h} h")]
    OverlappingPlanEntries {
        first: String,
        second: String,
        time_h: f64,
    },

    #[error("plan entry '{name}' ends at {end_h} h, beyond the {horizon_h} h horizon")]
    PlanBeyondHorizon {
        name: String,
        end_h: f64,
        horizon_h: f64,
    },

    #[error("temperature {temp_c} C is outside the modelled range {min_c}..={max_c} C")]
    TemperatureOutOfRange { temp_c: f64, min_c: f64, max_c: f64 },

    #[error(
        "arm workspace limit exceeded: |curvature| x length = {bend_rad} rad \
         must stay below 2*pi"
    )]
    WorkspaceLimit { bend_rad: f64 },

    #[error("linear system is singular; cannot fit the requested surface")]
    SingularSystem,
}
