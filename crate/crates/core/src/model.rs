//! Device constants, unit conventions, and closed-form parameter derivations.
//!
//! Unit conventions
//! ----------------
//! * All internal rates (`kappa`, `gamma_m`, `j_coupling`, `epsilon`,
//!   `delta_c`, `g0`) are dimensionless, in units of the mechanical angular
//!   frequency `ω_m`; time is measured in `1/ω_m`.
//! * `omega_m` itself is stored in rad/s. Quoted device values like
//!   "ω_m = 50 MHz" are interpreted as angular frequencies (5e7 rad/s); only
//!   `g0` and the Sagnac shift depend on this absolute scale, every other
//!   rate enters through its ratio to `ω_m`.
//! * The rotation rate `Omega` is stored in rad/s, signed, positive for
//!   clockwise (CW) spin. Config files accept either `omega_rad_per_s`
//!   (default convention: axis labels like "2 kHz" read as 2000 rad/s) or
//!   `omega_hz` (converted by 2π).
//!
//! Sagnac sign convention
//! ----------------------
//! For CW spin (`Omega > 0`) the counter-clockwise mode is red-shifted and
//! the clockwise mode blue-shifted:
//!
//! ```text
//! ω_⟲ = ω_c − |Δ_F|,   ω_⟳ = ω_c + |Δ_F|,   |Δ_F| = |Ω| n R ω_c / c.
//! ```
//!
//! Signs flip for `Omega < 0`. This orientation reproduces the measured
//! nonreciprocity (CCW-driven QFI an order of magnitude above CW-driven at
//! `Δ_c/ω_m = +0.5`) and puts the CCW-drive precision optimum at positive
//! detuning.

use crate::constants::{C_LIGHT, HBAR, K_B};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Which cavity mode carries the external drive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DriveDirection {
    /// Counter-clockwise mode driven (left-side pump).
    Ccw,
    /// Clockwise mode driven (right-side pump).
    Cw,
}

/// One of the two counter-propagating optical modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Ccw,
    Cw,
}

impl Mode {
    /// Sign of this mode's Sagnac shift for CW rotation (`Omega > 0`).
    pub fn sagnac_sign(self) -> f64 {
        match self {
            Mode::Ccw => -1.0,
            Mode::Cw => 1.0,
        }
    }
}

/// Interpretation of rotation-rate inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OmegaInputUnit {
    /// Input is an ordinary frequency in Hz; converted by 2π.
    Hz,
    /// Input is an angular frequency in rad/s (shipped default).
    #[default]
    RadPerS,
}

impl OmegaInputUnit {
    /// Convert an input rotation rate to angular rad/s.
    pub fn to_rad_per_s(self, value: f64) -> f64 {
        match self {
            OmegaInputUnit::Hz => TAU * value,
            OmegaInputUnit::RadPerS => value,
        }
    }
}

/// Full device parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Refractive index of the resonator material.
    pub n: f64,
    /// Resonator mass (kg).
    pub m: f64,
    /// Resonator radius (m).
    pub r: f64,
    /// Pump wavelength (m).
    pub lambda: f64,
    /// Mechanical angular frequency (rad/s).
    pub omega_m: f64,
    /// Cavity amplitude decay rate (units of ω_m).
    pub kappa: f64,
    /// Mechanical decay rate (units of ω_m).
    pub gamma_m: f64,
    /// Backscattering coupling between the modes (units of ω_m).
    pub j_coupling: f64,
    /// Drive amplitude (units of ω_m).
    pub epsilon: f64,
    /// Thermal phonon occupation of the mechanical bath.
    pub n_bar_m: f64,
    /// Pump-cavity detuning ω_c − ω_L (units of ω_m).
    pub delta_c: f64,
    /// Which mode is driven.
    pub drive_direction: DriveDirection,
    /// Rotation angular velocity (rad/s, CW positive).
    pub omega: f64,
}

/// Parameter-validation failure, naming the offending field.
#[derive(Debug, thiserror::Error, PartialEq)]
#[error("invalid parameter `{field}`: {reason}")]
pub struct ParamError {
    pub field: &'static str,
    pub reason: String,
}

fn require(ok: bool, field: &'static str, reason: &str) -> Result<(), ParamError> {
    if ok {
        Ok(())
    } else {
        Err(ParamError {
            field,
            reason: reason.to_string(),
        })
    }
}

impl PhysicalParams {
    /// Experimentally quoted device values: n = 1.48, m = 10 ng, R = 1.1 mm,
    /// λ = 0.78 µm, ω_m = 50 MHz (angular), κ = 0.44 ω_m, γ_m = 3.5e-3 ω_m.
    pub fn paper_defaults() -> Self {
        PhysicalParams {
            n: 1.48,
            m: 1.0e-11,
            r: 1.1e-3,
            lambda: 0.78e-6,
            omega_m: 5.0e7,
            kappa: 0.44,
            gamma_m: 3.5e-3,
            j_coupling: 0.0,
            epsilon: 6000.0,
            n_bar_m: 0.0,
            delta_c: 0.5,
            drive_direction: DriveDirection::Ccw,
            omega: 2000.0,
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        require(self.n > 0.0 && self.n.is_finite(), "n", "must be > 0")?;
        require(self.m > 0.0 && self.m.is_finite(), "m", "must be > 0")?;
        require(self.r > 0.0 && self.r.is_finite(), "r", "must be > 0")?;
        require(
            self.lambda > 0.0 && self.lambda.is_finite(),
            "lambda",
            "must be > 0",
        )?;
        require(
            self.omega_m > 0.0 && self.omega_m.is_finite(),
            "omega_m",
            "must be > 0",
        )?;
        require(
            self.kappa > 0.0 && self.kappa.is_finite(),
            "kappa",
            "must be > 0",
        )?;
        require(
            self.gamma_m > 0.0 && self.gamma_m.is_finite(),
            "gamma_m",
            "must be > 0",
        )?;
        require(
            self.n_bar_m >= 0.0 && self.n_bar_m.is_finite(),
            "n_bar_m",
            "must be >= 0",
        )?;
        require(self.j_coupling.is_finite(), "j_coupling", "must be finite")?;
        require(
            self.epsilon >= 0.0 && self.epsilon.is_finite(),
            "epsilon",
            "must be >= 0",
        )?;
        require(self.delta_c.is_finite(), "delta_c", "must be finite")?;
        require(self.omega.is_finite(), "omega", "must be finite")?;
        let omega_c = self.optical_frequency();
        require(
            omega_c > 0.0 && omega_c > 100.0 * self.omega_m,
            "lambda",
            "derived ω_c must be positive and far above ω_m",
        )?;
        Ok(())
    }

    /// Optical resonance frequency ω_c = 2πc/λ of the stationary resonator (rad/s).
    pub fn optical_frequency(&self) -> f64 {
        TAU * C_LIGHT / self.lambda
    }

    /// All derived quantities in one record.
    pub fn derived(&self) -> DerivedRates {
        let omega_c = self.optical_frequency();
        DerivedRates {
            omega_c,
            g0: single_photon_coupling(self),
            sagnac_slope: self.n * self.r * omega_c / C_LIGHT,
        }
    }

    /// Convert a rate in ω_m units to SI rad/s.
    pub fn to_si(&self, rate_omega_m_units: f64) -> f64 {
        rate_omega_m_units * self.omega_m
    }

    /// Convert a rate in SI rad/s to ω_m units.
    pub fn from_si(&self, rate_rad_per_s: f64) -> f64 {
        rate_rad_per_s / self.omega_m
    }
}

/// Quantities derived from [`PhysicalParams`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedRates {
    /// Optical angular frequency ω_c = 2πc/λ (rad/s).
    pub omega_c: f64,
    /// Single-photon optomechanical coupling (units of ω_m).
    pub g0: f64,
    /// ∂Δ_F/∂Ω = nRω_c/c (dimensionless).
    pub sagnac_slope: f64,
}

/// Sagnac-Fizeau shift of `mode` at rotation rate `omega` (rad/s, CW
/// positive), in units of ω_m.
///
/// Magnitude `|Ω| n R ω_c / c`; sign per the module convention (CCW mode
/// shifted down for Ω > 0). Odd and exactly linear in Ω.
pub fn sagnac_shift(p: &PhysicalParams, omega: f64, mode: Mode) -> f64 {
    let slope = p.n * p.r * p.optical_frequency() / C_LIGHT;
    mode.sagnac_sign() * slope * omega / p.omega_m
}

/// Single-photon coupling g₀ = (ω_c/R)·sqrt(ħ/(m·ω_m)), in units of ω_m.
pub fn single_photon_coupling(p: &PhysicalParams) -> f64 {
    let g0_si = (p.optical_frequency() / p.r) * (HBAR / (p.m * p.omega_m)).sqrt();
    g0_si / p.omega_m
}

/// Static effective detunings (Δ_⟲, Δ_⟳) = Δ_c + Δ_F per mode, in ω_m units.
///
/// The dynamical back-action correction −2g₀Re[β] is applied in the dynamics
/// module, not here. Independent of the drive direction.
pub fn effective_static_detunings(p: &PhysicalParams) -> (f64, f64) {
    (
        p.delta_c + sagnac_shift(p, p.omega, Mode::Ccw),
        p.delta_c + sagnac_shift(p, p.omega, Mode::Cw),
    )
}

/// Bose-Einstein occupation n̄ = 1/(exp(ħω/k_BT) − 1); 0 at T = 0.
pub fn thermal_occupation(omega_m_rad_per_s: f64, temperature_k: f64) -> f64 {
    if temperature_k <= 0.0 {
        return 0.0;
    }
    let x = HBAR * omega_m_rad_per_s / (K_B * temperature_k);
    1.0 / (x.exp() - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn p() -> PhysicalParams {
        PhysicalParams::paper_defaults()
    }

    #[test]
    fn paper_defaults_validate() {
        p().validate().unwrap();
    }

    #[test]
    fn sagnac_zero_rotation() {
        assert_eq!(sagnac_shift(&p(), 0.0, Mode::Ccw), 0.0);
        assert_eq!(sagnac_shift(&p(), 0.0, Mode::Cw), 0.0);
    }

    #[test]
    fn sagnac_magnitude_matches_hand_calculation() {
        // |Δ_F| = Ω·n·R·ω_c/c with ω_c = 2πc/λ ≈ 2.4149e15 rad/s.
        // At Ω = 2π·2000 rad/s: 1.48·1.1e-3·2.4149e15/2.9979e8·2π·2000
        // ≈ 1.648e8 rad/s.
        let params = p();
        let omega = TAU * 2000.0;
        let shift_si = sagnac_shift(&params, omega, Mode::Cw) * params.omega_m;
        assert_relative_eq!(shift_si, 1.648e8, max_relative = 1e-3);
        // independent recomputation of the slope
        let omega_c = TAU * C_LIGHT / 0.78e-6;
        let slope = 1.48 * 1.1e-3 * omega_c / C_LIGHT;
        assert_relative_eq!(shift_si, slope * omega, max_relative = 1e-12);
    }

    #[test]
    fn sagnac_odd_and_linear_in_omega() {
        let params = p();
        for &omega in &[1.0, 137.0, 2.0e3, 9.9e4] {
            let plus = sagnac_shift(&params, omega, Mode::Ccw);
            let minus = sagnac_shift(&params, -omega, Mode::Ccw);
            assert_abs_diff_eq!(plus + minus, 0.0, epsilon = 1e-18 * plus.abs().max(1.0));
            // linearity: f(2Ω) = 2 f(Ω) to 1e-12 relative
            let twice = sagnac_shift(&params, 2.0 * omega, Mode::Ccw);
            assert_relative_eq!(twice, 2.0 * plus, max_relative = 1e-12);
        }
    }

    #[test]
    fn sagnac_signs_opposite_across_modes() {
        let params = p();
        let ccw = sagnac_shift(&params, 2000.0, Mode::Ccw);
        let cw = sagnac_shift(&params, 2000.0, Mode::Cw);
        assert_abs_diff_eq!(ccw + cw, 0.0, epsilon = 1e-15);
        // CW rotation red-shifts the CCW mode
        assert!(ccw < 0.0);
        assert!(cw > 0.0);
    }

    #[test]
    fn coupling_value_under_shipped_convention() {
        // Frozen fixture: g0 for the shipped convention (ω_m = 5e7 rad/s
        // angular). In SI: ≈ 1008.25 rad/s, order 1e2–1e3 rad/s.
        let g0 = single_photon_coupling(&p());
        assert_relative_eq!(g0, 2.0164913e-5, max_relative = 1e-6);
        let g0_si = g0 * p().omega_m;
        assert!((1e2..1e4).contains(&g0_si));
    }

    #[test]
    fn coupling_scales_with_mass_and_radius() {
        let base = single_photon_coupling(&p());
        let mut heavier = p();
        heavier.m *= 2.0;
        assert_relative_eq!(
            single_photon_coupling(&heavier),
            base / 2.0f64.sqrt(),
            max_relative = 1e-12
        );
        let mut bigger = p();
        bigger.r *= 2.0;
        assert_relative_eq!(
            single_photon_coupling(&bigger),
            base / 2.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn detunings_at_zero_rotation_collapse_to_delta_c() {
        let mut params = p();
        params.omega = 0.0;
        let (dl, dr) = effective_static_detunings(&params);
        assert_eq!(dl, params.delta_c);
        assert_eq!(dr, params.delta_c);
    }

    #[test]
    fn detunings_split_symmetrically() {
        let mut params = p();
        params.delta_c = 0.5;
        params.omega = 2000.0;
        let (dl, dr) = effective_static_detunings(&params);
        let shift = sagnac_shift(&params, 2000.0, Mode::Cw);
        assert_relative_eq!(dl, 0.5 - shift, max_relative = 1e-12);
        assert_relative_eq!(dr, 0.5 + shift, max_relative = 1e-12);
    }

    #[test]
    fn detunings_independent_of_drive_direction() {
        let mut a = p();
        a.drive_direction = DriveDirection::Ccw;
        let mut b = p();
        b.drive_direction = DriveDirection::Cw;
        assert_eq!(effective_static_detunings(&a), effective_static_detunings(&b));
    }

    #[test]
    fn mode_swap_symmetry_under_rotation_reversal() {
        let mut params = p();
        params.omega = 1234.5;
        let ccw_fwd = sagnac_shift(&params, params.omega, Mode::Ccw);
        let cw_rev = sagnac_shift(&params, -params.omega, Mode::Cw);
        assert_relative_eq!(ccw_fwd, cw_rev, max_relative = 1e-14);
    }

    #[test]
    fn thermal_occupation_limits() {
        assert_eq!(thermal_occupation(5e7, 0.0), 0.0);
        // ħω/k_BT = ln 2  →  n̄ = 1
        let t = HBAR * 5e7 / (K_B * std::f64::consts::LN_2);
        assert_relative_eq!(thermal_occupation(5e7, t), 1.0, max_relative = 1e-12);
        // monotone in T
        let mut last = 0.0;
        for i in 1..50 {
            let n = thermal_occupation(5e7, 1e-4 * i as f64);
            assert!(n > last);
            last = n;
        }
    }

    #[test]
    fn unit_round_trip() {
        let params = p();
        for &r in &[1e-9, 0.44, 3.5e-3, 6000.0] {
            let si = params.to_si(r);
            assert_relative_eq!(params.from_si(si), r, max_relative = 1e-12);
        }
    }

    #[test]
    fn omega_input_units() {
        assert_eq!(OmegaInputUnit::RadPerS.to_rad_per_s(2000.0), 2000.0);
        assert_relative_eq!(
            OmegaInputUnit::Hz.to_rad_per_s(2000.0),
            TAU * 2000.0,
            max_relative = 1e-15
        );
    }
}
