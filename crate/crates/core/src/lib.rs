//! Simulation and optimization toolkit for a spinning whispering-gallery-mode
//! optomechanical gyroscope.
//!
//! The crate models two counter-propagating cavity modes coupled to a
//! mechanical breathing mode. Rotation at angular velocity `Ω` splits the
//! optical resonances by opposite Sagnac-Fizeau shifts; the angular velocity
//! is then read out from the cavity output field. The pipeline is:
//!
//! 1. [`model`] — device constants, unit conventions, and derived rates
//!    (Sagnac slope, single-photon coupling, thermal occupation).
//! 2. [`dynamics`] — classical mean-field amplitudes, the 21 second-order
//!    moments, and their `∂_Ω` sensitivities, integrated as one augmented ODE
//!    with an adaptive embedded Runge-Kutta pair.
//! 3. [`metrology`] — input-output mapping to the two-mode Gaussian output
//!    state and the quantum Fisher information / Cramér-Rao bound for `Ω`.
//! 4. [`oracle`] — an independent truncated-Fock-space integrator of the full
//!    nonlinear master equation, used to validate the moment solver.
//! 5. [`rl`] — a from-scratch PPO agent driving piecewise-constant detuning
//!    schedules that maximize the band-averaged QFI.
//! 6. [`experiments`] — scripted sweeps (QFI dynamics, detuning sweeps,
//!    power scaling, fixed-detuning baselines) with CSV/manifest output.
//!
//! All internal rates are expressed in units of the mechanical frequency
//! `ω_m` and time in units of `1/ω_m`. See [`model::PhysicalParams`] for the
//! unit conventions and [`config`] for the JSON parameter-file schema.

pub mod config;
pub mod constants;
pub mod dynamics;
pub mod experiments;
pub mod metrology;
pub mod model;
pub mod oracle;
pub mod rl;

pub use config::ParamFile;
pub use dynamics::{
    AugmentedState, ClassicalAmplitudes, DetuningSchedule, DynamicsError, MomentVector,
    ReducedParams,
};
pub use metrology::{GaussianState, MetrologyError, QfiBranch, QfiResult};
pub use model::{DerivedRates, DriveDirection, Mode, OmegaInputUnit, PhysicalParams};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
