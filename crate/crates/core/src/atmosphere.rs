//! Planetary environment constants and the flow-regime utilities every
//! aerodynamic formula in the toolkit reads from.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Earth sea-level air density, kg/m^3 (ISA reference).
pub const EARTH_SEA_LEVEL_DENSITY: f64 = 1.225;
/// Earth sea-level dynamic viscosity, Pa.s (ISA reference).
pub const EARTH_SEA_LEVEL_VISCOSITY: f64 = 1.81e-5;
/// Titan air is four times denser than Earth sea-level air.
pub const TITAN_DENSITY_RATIO: f64 = 4.0;
/// Titan air viscosity is one third of Earth sea-level viscosity.
pub const TITAN_VISCOSITY_DIVISOR: f64 = 3.0;
/// Titan surface gravity, m/s^2.
pub const TITAN_GRAVITY: f64 = 1.35;
/// Titan surface speed of sound, m/s.
pub const TITAN_SPEED_OF_SOUND: f64 = 194.0;
/// Titan surface ambient temperature, degrees C (94 K, stored canonically).
pub const TITAN_AMBIENT_TEMPERATURE_C: f64 = -179.0;

/// Fluid and gravity constants for one operating environment.
///
/// Immutable after construction; share freely across threads.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtmosphereModel<R> {
    /// Fluid density rho, kg/m^3.
    pub density: R,
    /// Dynamic viscosity mu, Pa.s.
    pub dynamic_viscosity: R,
    /// Surface gravity g, m/s^2.
    pub gravity: R,
    /// Speed of sound a, m/s.
    pub speed_of_sound: R,
    /// Ambient temperature, degrees C. The only field that may be negative.
    pub ambient_temperature_c: R,
}

impl<R: Real> AtmosphereModel<R> {
    /// Builds a model from explicit constants, rejecting non-positive
    /// density, viscosity, gravity, or speed of sound.
    pub fn new(
        density: R,
        dynamic_viscosity: R,
        gravity: R,
        speed_of_sound: R,
        ambient_temperature_c: R,
    ) -> Result<Self> {
        for (name, value) in [
            ("density", density),
            ("dynamic_viscosity", dynamic_viscosity),
            ("gravity", gravity),
            ("speed_of_sound", speed_of_sound),
        ] {
            if !(value > R::zero()) {
                return Err(Error::NonPositive {
                    name,
                    value: value.as_f64(),
                });
            }
        }
        Ok(Self {
            density,
            dynamic_viscosity,
            gravity,
            speed_of_sound,
            ambient_temperature_c,
        })
    }

    /// Titan surface conditions.
    ///
    /// Density and viscosity are anchored to the ISA sea-level references
    /// through the published ratios (4x denser, 3x less viscous), which makes
    /// the x12 Reynolds-number claim reproduce exactly. The real Titan
    /// surface density (~5.4 kg/m^3) is deliberately not used.
    pub fn titan() -> Self {
        Self {
            density: R::of(TITAN_DENSITY_RATIO * EARTH_SEA_LEVEL_DENSITY),
            dynamic_viscosity: R::of(EARTH_SEA_LEVEL_VISCOSITY / TITAN_VISCOSITY_DIVISOR),
            gravity: R::of(TITAN_GRAVITY),
            speed_of_sound: R::of(TITAN_SPEED_OF_SOUND),
            ambient_temperature_c: R::of(TITAN_AMBIENT_TEMPERATURE_C),
        }
    }

    /// ISA sea-level Earth reference the Titan ratios are measured against.
    pub fn earth_sea_level() -> Self {
        Self {
            density: R::of(EARTH_SEA_LEVEL_DENSITY),
            dynamic_viscosity: R::of(EARTH_SEA_LEVEL_VISCOSITY),
            gravity: R::of(9.80665),
            speed_of_sound: R::of(340.29),
            ambient_temperature_c: R::of(15.0),
        }
    }

    /// Reynolds number rho * u * L / mu.
    pub fn reynolds(&self, speed: R, length: R) -> Result<R> {
        if !(length > R::zero()) {
            return Err(Error::NonPositive {
                name: "length",
                value: length.as_f64(),
            });
        }
        if speed < R::zero() {
            return Err(Error::Negative {
                name: "speed",
                value: speed.as_f64(),
            });
        }
        Ok(self.density * speed * length / self.dynamic_viscosity)
    }

    /// Blade-tip Mach number for a rotor of the given diameter spinning at
    /// `rpm`: (rpm * 2*pi/60) * (d/2) / a.
    pub fn tip_mach(&self, rpm: R, diameter: R) -> Result<R> {
        if !(diameter > R::zero()) {
            return Err(Error::NonPositive {
                name: "diameter",
                value: diameter.as_f64(),
            });
        }
        if rpm < R::zero() {
            return Err(Error::Negative {
                name: "rpm",
                value: rpm.as_f64(),
            });
        }
        let angular = rpm * R::of(2.0 * std::f64::consts::PI / 60.0);
        Ok(angular * diameter / R::of(2.0) / self.speed_of_sound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Atm = AtmosphereModel<f64>;

    #[test]
    fn titan_constants() {
        let t = Atm::titan();
        assert_eq!(t.gravity, 1.35);
        assert_eq!(t.density, 4.9);
        assert_eq!(t.speed_of_sound, 194.0);
        assert_eq!(t.dynamic_viscosity, 1.81e-5 / 3.0);
        assert_eq!(t.ambient_temperature_c, -179.0);
    }

    #[test]
    fn titan_to_earth_reynolds_ratio_is_twelve() {
        let titan = Atm::titan();
        let earth = Atm::earth_sea_level();
        for (u, l) in [(1.0, 1.0), (34.6, 0.22), (120.0, 0.015)] {
            let ratio = titan.reynolds(u, l).unwrap() / earth.reynolds(u, l).unwrap();
            assert!((ratio - 12.0).abs() < 1e-9, "ratio {ratio}");
        }
    }

    #[test]
    fn reynolds_matches_hand_arithmetic() {
        // 4.9 * 34.6 * 0.22 / (1.81e-5 / 3)
        let re = Atm::titan().reynolds(34.6, 0.22).unwrap();
        assert!((re / 6182121.546961328 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reynolds_zero_speed_is_zero() {
        assert_eq!(Atm::titan().reynolds(0.0, 0.2).unwrap(), 0.0);
    }

    #[test]
    fn reynolds_rejects_bad_inputs() {
        let t = Atm::titan();
        assert!(matches!(
            t.reynolds(1.0, 0.0),
            Err(Error::NonPositive { name: "length", .. })
        ));
        assert!(matches!(
            t.reynolds(1.0, -0.1),
            Err(Error::NonPositive { name: "length", .. })
        ));
        assert!(matches!(
            t.reynolds(-1.0, 0.1),
            Err(Error::Negative { name: "speed", .. })
        ));
    }

    #[test]
    fn tip_mach_hand_values() {
        let t = Atm::titan();
        assert_eq!(t.tip_mach(0.0, 0.25).unwrap(), 0.0);
        // 6080 * 2*pi/60 * 0.075 / 194
        let m1 = t.tip_mach(6080.0, 0.15).unwrap();
        assert!((m1 / 0.2461454037864168 - 1.0).abs() < 1e-12);
        assert!((m1 - 0.246).abs() < 1e-3);
        // 2550 * 2*pi/60 * 0.125 / 194
        let m2 = t.tip_mach(2550.0, 0.25).unwrap();
        assert!((m2 / 0.1720588760020183 - 1.0).abs() < 1e-12);
        assert!((m2 - 0.172).abs() < 1e-3);
    }

    #[test]
    fn tip_mach_rejects_bad_diameter() {
        assert!(Atm::titan().tip_mach(100.0, 0.0).is_err());
    }

    #[test]
    fn constructor_rejects_nonpositive_fields() {
        assert!(Atm::new(0.0, 1e-5, 1.0, 100.0, 0.0).is_err());
        assert!(Atm::new(1.0, -1e-5, 1.0, 100.0, 0.0).is_err());
        assert!(Atm::new(1.0, 1e-5, 1.0, 100.0, -179.0).is_ok());
    }

    #[test]
    fn works_at_f32() {
        let t: AtmosphereModel<f32> = AtmosphereModel::titan();
        assert!((t.reynolds(10.0, 0.2).unwrap() - 1624309.4).abs() / 1624309.4 < 1e-5);
    }

    proptest! {
        #[test]
        fn reynolds_linear_in_speed_and_length(
            u in 1e-3..1e3f64,
            l in 1e-3..1e2f64,
            c in 1e-2..1e2f64,
        ) {
            let t = Atm::titan();
            let base = t.reynolds(u, l).unwrap();
            let scaled_u = t.reynolds(c * u, l).unwrap();
            let scaled_l = t.reynolds(u, c * l).unwrap();
            prop_assert!((scaled_u / (c * base) - 1.0).abs() < 1e-12);
            prop_assert!((scaled_l / (c * base) - 1.0).abs() < 1e-12);
        }

        #[test]
        fn tip_mach_linear_in_rpm_and_diameter(
            rpm in 1.0..2e4f64,
            d in 1e-3..2.0f64,
            c in 1e-2..1e2f64,
        ) {
            let t = Atm::titan();
            let base = t.tip_mach(rpm, d).unwrap();
            prop_assert!((t.tip_mach(c * rpm, d).unwrap() / (c * base) - 1.0).abs() < 1e-12);
            prop_assert!((t.tip_mach(rpm, c * d).unwrap() / (c * base) - 1.0).abs() < 1e-12);
        }
    }
}
