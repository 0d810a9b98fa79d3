//! Coupled mean-field + second-moment + Ω-sensitivity dynamics.
//!
//! The state is the classical amplitude triple (α_⟲, α_⟳, β), the 21
//! second-order fluctuation moments `X` of the displaced (linearized) frame,
//! and the derivatives of all of those with respect to the rotation rate Ω
//! (in rad/s). The moment block evolves as `dX/dt = A(t)·X + D(t)` with the
//! drift matrix of [`moments`]; the sensitivity block obeys the
//! block-triangular augmentation
//!
//! ```text
//! [ dX/dt; d(∂X)/dt ] = [[A, 0], [∂A, A]]·[X; ∂X] + [D; ∂D]
//! ```
//!
//! with `∂A`, `∂D` assembled analytically by the chain rule through the only
//! Ω-dependent scalars (the effective detunings and the linearized couplings
//! G_j = g₀α_j).

mod integrator;
pub mod moments;
mod rhs;

pub use integrator::integrate_segment;
pub use moments::{build_drift_matrix, build_inhomogeneous, idx, CONJ_PAIRS};
pub use rhs::{augmented_rhs, classical_rhs};

use crate::model::{DriveDirection, Mode, PhysicalParams};
use crate::C64;
use serde::{Deserialize, Serialize};

/// Classical mean-field amplitudes of the two optical modes and the
/// mechanical mode.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ClassicalAmplitudes {
    pub alpha_ccw: C64,
    pub alpha_cw: C64,
    pub beta: C64,
}

impl ClassicalAmplitudes {
    /// Total intracavity photon number |α_⟲|² + |α_⟳|².
    pub fn photon_number(&self) -> f64 {
        self.alpha_ccw.norm_sqr() + self.alpha_cw.norm_sqr()
    }
}

/// The 21 second-order moments, ordered as documented in [`moments::idx`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentVector(pub [C64; 21]);

impl Default for MomentVector {
    fn default() -> Self {
        MomentVector([C64::new(0.0, 0.0); 21])
    }
}

impl MomentVector {
    /// Worst deviation from the conjugate-pair structure
    /// (x[3] = conj(x[4]) and the eight analogous pairs).
    pub fn conjugate_pair_residual(&self) -> f64 {
        CONJ_PAIRS
            .iter()
            .map(|&(a, b)| (self.0[a] - self.0[b].conj()).norm())
            .fold(0.0, f64::max)
    }
}

/// Full augmented state: amplitudes, moments, and their ∂_Ω blocks.
///
/// Sensitivities are derivatives with respect to Ω in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AugmentedState {
    pub amps: ClassicalAmplitudes,
    pub d_amps: ClassicalAmplitudes,
    pub x: MomentVector,
    pub dx: MomentVector,
    /// Time in units of 1/ω_m.
    pub t: f64,
}

pub(crate) const STATE_LEN: usize = 48;

impl AugmentedState {
    pub(crate) fn flatten(&self) -> [C64; STATE_LEN] {
        let mut y = [C64::new(0.0, 0.0); STATE_LEN];
        y[0] = self.amps.alpha_ccw;
        y[1] = self.amps.alpha_cw;
        y[2] = self.amps.beta;
        y[3] = self.d_amps.alpha_ccw;
        y[4] = self.d_amps.alpha_cw;
        y[5] = self.d_amps.beta;
        y[6..27].copy_from_slice(&self.x.0);
        y[27..48].copy_from_slice(&self.dx.0);
        y
    }

    pub(crate) fn unflatten(y: &[C64; STATE_LEN], t: f64) -> Self {
        let mut x = MomentVector::default();
        let mut dx = MomentVector::default();
        x.0.copy_from_slice(&y[6..27]);
        dx.0.copy_from_slice(&y[27..48]);
        AugmentedState {
            amps: ClassicalAmplitudes {
                alpha_ccw: y[0],
                alpha_cw: y[1],
                beta: y[2],
            },
            d_amps: ClassicalAmplitudes {
                alpha_ccw: y[3],
                alpha_cw: y[4],
                beta: y[5],
            },
            x,
            dx,
            t,
        }
    }
}

/// Dimensionless dynamics parameters (everything in ω_m units), reduced from
/// [`PhysicalParams`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedParams {
    pub kappa: f64,
    pub gamma_m: f64,
    pub j_coupling: f64,
    pub epsilon: f64,
    pub n_bar_m: f64,
    /// Single-photon coupling (ω_m units).
    pub g0: f64,
    pub drive: DriveDirection,
    /// Rotation rate (rad/s, CW positive).
    pub omega: f64,
    /// d(Δ_F in ω_m units)/dΩ = sagnac_slope/ω_m (per rad/s).
    pub sagnac_slope_per_omega_m: f64,
    /// Start the mechanical moments in thermal equilibrium (⟨b†b⟩ = n̄_m)
    /// rather than the ground state.
    pub thermal_start: bool,
}

impl ReducedParams {
    pub fn from_physical(p: &PhysicalParams) -> Self {
        let derived = p.derived();
        ReducedParams {
            kappa: p.kappa,
            gamma_m: p.gamma_m,
            j_coupling: p.j_coupling,
            epsilon: p.epsilon,
            n_bar_m: p.n_bar_m,
            g0: derived.g0,
            drive: p.drive_direction,
            omega: p.omega,
            sagnac_slope_per_omega_m: derived.sagnac_slope / p.omega_m,
            thermal_start: true,
        }
    }

    /// Sagnac shift of `mode` at the configured Ω (ω_m units).
    pub fn sagnac_shift(&self, mode: Mode) -> f64 {
        mode.sagnac_sign() * self.sagnac_slope_per_omega_m * self.omega
    }

    /// Drive amplitudes (ε_⟲, ε_⟳): ε on the driven mode, 0 on the other.
    pub fn drive_amplitudes(&self) -> (f64, f64) {
        match self.drive {
            DriveDirection::Ccw => (self.epsilon, 0.0),
            DriveDirection::Cw => (0.0, self.epsilon),
        }
    }

    /// Initial condition: vacuum amplitudes, moments at vacuum except
    /// ⟨b†b⟩ = n̄_m when `thermal_start` is set, zero sensitivities.
    pub fn initial_state(&self) -> AugmentedState {
        let mut s = AugmentedState::default();
        if self.thermal_start {
            s.x.0[idx::BDB] = C64::new(self.n_bar_m, 0.0);
        }
        s
    }
}

/// Piecewise-constant detuning schedule; intervals are left-closed:
/// Δ_c(t) = value of the last breakpoint with t_start ≤ t.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetuningSchedule {
    points: Vec<(f64, f64)>,
}

impl DetuningSchedule {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self, DynamicsError> {
        if points.is_empty() {
            return Err(DynamicsError::InvalidSchedule("schedule must be nonempty"));
        }
        if !points.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(DynamicsError::InvalidSchedule(
                "breakpoints must be strictly increasing in t_start",
            ));
        }
        Ok(DetuningSchedule { points })
    }

    pub fn constant(delta_c: f64) -> Self {
        DetuningSchedule {
            points: vec![(0.0, delta_c)],
        }
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// Δ_c at time `t`. Times before the first breakpoint take its value.
    pub fn value_at(&self, t: f64) -> f64 {
        match self.points.iter().rev().find(|(t0, _)| *t0 <= t) {
            Some(&(_, v)) => v,
            None => self.points[0].1,
        }
    }

    /// Breakpoint times strictly inside (t0, t1).
    fn interior_breakpoints(&self, t0: f64, t1: f64) -> Vec<f64> {
        self.points
            .iter()
            .map(|&(t, _)| t)
            .filter(|&t| t > t0 && t < t1)
            .collect()
    }
}

/// Failures of the dynamics integrator.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DynamicsError {
    /// The adaptive step fell below 1e-12/ω_m: the system is too stiff or
    /// diverging at the reported time.
    #[error("step size underflow at t = {t}")]
    StepSizeUnderflow { t: f64 },
    /// A state entry became NaN or infinite.
    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },
    #[error("tolerance {0} outside (0, 1e-2]")]
    InvalidTolerance(f64),
    #[error("invalid schedule: {0}")]
    InvalidSchedule(&'static str),
}

/// Integrate the augmented system from `s0` to `t_end`, returning states at
/// every requested sample time plus every schedule breakpoint in range.
///
/// The integrator restarts at each breakpoint so that discontinuities in
/// Δ_c never straddle a step.
pub fn integrate(
    p: &ReducedParams,
    s0: &AugmentedState,
    schedule: &DetuningSchedule,
    t_end: f64,
    tol: f64,
    sample_times: &[f64],
) -> Result<Vec<AugmentedState>, DynamicsError> {
    if !(tol > 0.0 && tol <= 1e-2) {
        return Err(DynamicsError::InvalidTolerance(tol));
    }
    let t0 = s0.t;
    assert!(t_end > t0, "t_end must exceed the initial time");

    // event times: samples in (t0, t_end] plus breakpoints, deduplicated
    let mut events: Vec<f64> = sample_times
        .iter()
        .copied()
        .filter(|&t| t > t0 && t <= t_end)
        .chain(schedule.interior_breakpoints(t0, t_end))
        .chain(std::iter::once(t_end))
        .collect();
    events.sort_by(|a, b| a.partial_cmp(b).unwrap());
    events.dedup_by(|a, b| (*a - *b).abs() < 1e-12);

    let sample_set: Vec<f64> = {
        let mut s: Vec<f64> = sample_times
            .iter()
            .copied()
            .filter(|&t| t > t0 && t <= t_end)
            .chain(schedule.interior_breakpoints(t0, t_end))
            .collect();
        s.sort_by(|a, b| a.partial_cmp(b).unwrap());
        s.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        s
    };

    let mut y = s0.flatten();
    let mut t = t0;
    let mut out = Vec::with_capacity(sample_set.len() + 1);
    let mut si = 0;
    for &te in &events {
        let delta_c = schedule.value_at(0.5 * (t + te));
        integrate_segment(p, delta_c, &mut y, t, te, tol)?;
        t = te;
        while si < sample_set.len() && sample_set[si] <= t + 1e-12 {
            out.push(AugmentedState::unflatten(&y, sample_set[si]));
            si += 1;
        }
        if (te - t_end).abs() < 1e-12 && out.last().map(|s| s.t) != Some(t_end) {
            let already = sample_set.iter().any(|&s| (s - t_end).abs() < 1e-12);
            if !already {
                out.push(AugmentedState::unflatten(&y, t_end));
            }
        }
    }
    Ok(out)
}

/// Advance a state in place by `dt` under a constant detuning. Used by the
/// RL environment, whose actions are piecewise-constant by construction.
pub fn advance(
    p: &ReducedParams,
    state: &mut AugmentedState,
    delta_c: f64,
    dt: f64,
    tol: f64,
) -> Result<(), DynamicsError> {
    if !(tol > 0.0 && tol <= 1e-2) {
        return Err(DynamicsError::InvalidTolerance(tol));
    }
    let mut y = state.flatten();
    integrate_segment(p, delta_c, &mut y, state.t, state.t + dt, tol)?;
    *state = AugmentedState::unflatten(&y, state.t + dt);
    Ok(())
}

/// CSV header for trajectory export: time, then re/im pairs of the 3
/// amplitudes, the 21 moments, and their 24 sensitivities (97 columns).
pub fn trajectory_csv_header() -> String {
    let mut cols = vec!["t".to_string()];
    let amp_names = ["alpha_ccw", "alpha_cw", "beta"];
    for n in amp_names {
        cols.push(format!("re_{n}"));
        cols.push(format!("im_{n}"));
    }
    for i in 0..21 {
        cols.push(format!("re_x{i:02}"));
        cols.push(format!("im_x{i:02}"));
    }
    for n in amp_names {
        cols.push(format!("re_d_{n}"));
        cols.push(format!("im_d_{n}"));
    }
    for i in 0..21 {
        cols.push(format!("re_dx{i:02}"));
        cols.push(format!("im_dx{i:02}"));
    }
    cols.join(",")
}

/// One CSV row in the [`trajectory_csv_header`] column order.
pub fn trajectory_csv_row(s: &AugmentedState) -> String {
    let mut f = Vec::with_capacity(97);
    f.push(format!("{:.12e}", s.t));
    let mut push = |z: C64| {
        f.push(format!("{:.12e}", z.re));
        f.push(format!("{:.12e}", z.im));
    };
    push(s.amps.alpha_ccw);
    push(s.amps.alpha_cw);
    push(s.amps.beta);
    for z in s.x.0 {
        push(z);
    }
    push(s.d_amps.alpha_ccw);
    push(s.d_amps.alpha_cw);
    push(s.d_amps.beta);
    for z in s.dx.0 {
        push(z);
    }
    f.join(",")
}

#[cfg(test)]
mod tests;
