//! Drift matrix `A` and inhomogeneous vector `D` of the second-moment system.
//!
//! Moment ordering (see [`idx`]): number moments first, then same-mode pair
//! moments, then cross-mode and optomechanical coherences. The conjugate
//! pairs listed in [`CONJ_PAIRS`] satisfy `x[a] = conj(x[b])` along any
//! physical trajectory; the drift preserves that structure exactly, which is
//! how the ordering of the two trailing coherence slots (19 = ⟨a_⟳†b†⟩,
//! 20 = ⟨a_⟳b⟩) is fixed.

use super::{ClassicalAmplitudes, ReducedParams};
use crate::model::Mode;
use crate::C64;
use nalgebra::SMatrix;

/// Indices into the 21-entry moment vector.
pub mod idx {
    /// ⟨a_⟲†a_⟲⟩
    pub const ADA_CCW: usize = 0;
    /// ⟨a_⟳†a_⟳⟩
    pub const ADA_CW: usize = 1;
    /// ⟨b†b⟩
    pub const BDB: usize = 2;
    /// ⟨a_⟲†a_⟲†⟩
    pub const ADAD_CCW: usize = 3;
    /// ⟨a_⟲a_⟲⟩
    pub const AA_CCW: usize = 4;
    /// ⟨a_⟳†a_⟳†⟩
    pub const ADAD_CW: usize = 5;
    /// ⟨a_⟳a_⟳⟩
    pub const AA_CW: usize = 6;
    /// ⟨b†b†⟩
    pub const BDBD: usize = 7;
    /// ⟨bb⟩
    pub const BB: usize = 8;
    /// ⟨a_⟲†a_⟳⟩
    pub const AD_CCW_A_CW: usize = 9;
    /// ⟨a_⟳†a_⟲⟩
    pub const AD_CW_A_CCW: usize = 10;
    /// ⟨a_⟲†a_⟳†⟩
    pub const AD_CCW_AD_CW: usize = 11;
    /// ⟨a_⟲a_⟳⟩
    pub const A_CCW_A_CW: usize = 12;
    /// ⟨a_⟲†b⟩
    pub const AD_CCW_B: usize = 13;
    /// ⟨a_⟲b†⟩
    pub const A_CCW_BD: usize = 14;
    /// ⟨a_⟲†b†⟩
    pub const AD_CCW_BD: usize = 15;
    /// ⟨a_⟲b⟩
    pub const A_CCW_B: usize = 16;
    /// ⟨a_⟳†b⟩
    pub const AD_CW_B: usize = 17;
    /// ⟨a_⟳b†⟩
    pub const A_CW_BD: usize = 18;
    /// ⟨a_⟳†b†⟩
    pub const AD_CW_BD: usize = 19;
    /// ⟨a_⟳b⟩
    pub const A_CW_B: usize = 20;
}

/// Index pairs (a, b) with x[a] = conj(x[b]) on physical states.
pub const CONJ_PAIRS: [(usize, usize); 9] = [
    (3, 4),
    (5, 6),
    (7, 8),
    (9, 10),
    (11, 12),
    (13, 14),
    (15, 16),
    (17, 18),
    (19, 20),
];

/// Scalar coefficients that define one application of the drift matrix.
///
/// `base` builds the physical `A`; `sensitivity` builds `∂_Ω A` by replacing
/// every coefficient with its Ω-derivative (decay rates and J drop out, the
/// h-diagonals keep only their detuning derivative, G_j → ∂_Ω G_j).
#[derive(Debug, Clone, Copy)]
pub struct DriftCoeffs {
    /// Diagonal of the three number-moment rows: (−κ, −κ, −γ_m) in `base`.
    pub diag_n: [C64; 3],
    /// h₃..h₂₀ diagonal coefficients (indexed h[0] = h₃).
    pub h: [C64; 18],
    pub g_ccw: C64,
    pub g_cw: C64,
    pub j: f64,
}

impl DriftCoeffs {
    /// Physical drift coefficients at effective detunings (Δ̃_⟲, Δ̃_⟳) and
    /// linearized couplings G_j = g₀α_j. All rates in ω_m units (ω_m = 1).
    pub fn base(
        delta_ccw: f64,
        delta_cw: f64,
        kappa: f64,
        gamma_m: f64,
        j: f64,
        g_ccw: C64,
        g_cw: C64,
    ) -> Self {
        let i = C64::i();
        let hk = 0.5 * (kappa + gamma_m);
        let h = [
            2.0 * i * delta_ccw - kappa,                   // h3
            -(2.0 * i * delta_ccw + kappa),                // h4
            2.0 * i * delta_cw - kappa,                    // h5
            -(2.0 * i * delta_cw + kappa),                 // h6
            2.0 * i - gamma_m,                             // h7
            -(2.0 * i + gamma_m),                          // h8
            i * (delta_ccw - delta_cw) - kappa,            // h9
            -i * (delta_ccw - delta_cw) - kappa,           // h10
            i * (delta_ccw + delta_cw) - kappa,            // h11
            -i * (delta_ccw + delta_cw) - kappa,           // h12
            i * (delta_ccw - 1.0) - hk,                    // h13
            -(i * (delta_ccw - 1.0) + hk),                 // h14
            i * (delta_ccw + 1.0) - hk,                    // h15
            -(i * (delta_ccw + 1.0) + hk),                 // h16
            i * (delta_cw - 1.0) - hk,                     // h17
            -(i * (delta_cw - 1.0) + hk),                  // h18
            i * (delta_cw + 1.0) - hk,                     // h19
            -(i * (delta_cw + 1.0) + hk),                  // h20
        ];
        DriftCoeffs {
            diag_n: [
                C64::new(-kappa, 0.0),
                C64::new(-kappa, 0.0),
                C64::new(-gamma_m, 0.0),
            ],
            h,
            g_ccw,
            g_cw,
            j,
        }
    }

    /// Ω-derivative of the drift coefficients given ∂_ΩΔ̃_j and ∂_ΩG_j.
    pub fn sensitivity(d_delta_ccw: f64, d_delta_cw: f64, dg_ccw: C64, dg_cw: C64) -> Self {
        let i = C64::i();
        let h = [
            2.0 * i * d_delta_ccw,
            -2.0 * i * d_delta_ccw,
            2.0 * i * d_delta_cw,
            -2.0 * i * d_delta_cw,
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            i * (d_delta_ccw - d_delta_cw),
            -i * (d_delta_ccw - d_delta_cw),
            i * (d_delta_ccw + d_delta_cw),
            -i * (d_delta_ccw + d_delta_cw),
            i * d_delta_ccw,
            -i * d_delta_ccw,
            i * d_delta_ccw,
            -i * d_delta_ccw,
            i * d_delta_cw,
            -i * d_delta_cw,
            i * d_delta_cw,
            -i * d_delta_cw,
        ];
        DriftCoeffs {
            diag_n: [C64::new(0.0, 0.0); 3],
            h,
            g_ccw: dg_ccw,
            g_cw: dg_cw,
            j: 0.0,
        }
    }
}

/// Accumulate `out += A(c)·x`. The caller zeroes `out` when a plain product
/// is wanted. Hand-coded sparse form of the 21×21 drift.
#[inline]
pub fn apply_drift(c: &DriftCoeffs, x: &[C64; 21], out: &mut [C64; 21]) {
    let i = C64::i();
    let gl = c.g_ccw;
    let gr = c.g_cw;
    let cgl = gl.conj();
    let cgr = gr.conj();
    let ij = i * c.j;
    let h = &c.h;

    out[0] += c.diag_n[0] * x[0] - ij * x[9] + ij * x[10] + i * gl * x[13] - i * cgl * x[14]
        + i * gl * x[15]
        - i * cgl * x[16];
    out[1] += c.diag_n[1] * x[1] + ij * x[9] - ij * x[10] + i * gr * x[17] - i * cgr * x[18]
        + i * gr * x[19]
        - i * cgr * x[20];
    out[2] += c.diag_n[2] * x[2] - i * gl * x[13] + i * cgl * x[14] + i * gl * x[15]
        - i * cgl * x[16]
        - i * gr * x[17]
        + i * cgr * x[18]
        + i * gr * x[19]
        - i * cgr * x[20];
    out[3] += h[0] * x[3] + 2.0 * ij * x[11] - 2.0 * i * cgl * x[13] - 2.0 * i * cgl * x[15];
    out[4] += h[1] * x[4] - 2.0 * ij * x[12] + 2.0 * i * gl * x[14] + 2.0 * i * gl * x[16];
    out[5] += h[2] * x[5] + 2.0 * ij * x[11] - 2.0 * i * cgr * x[17] - 2.0 * i * cgr * x[19];
    out[6] += h[3] * x[6] - 2.0 * ij * x[12] + 2.0 * i * gr * x[18] + 2.0 * i * gr * x[20];
    out[7] += h[4] * x[7] - 2.0 * i * cgl * x[14] - 2.0 * i * gl * x[15] - 2.0 * i * cgr * x[18]
        - 2.0 * i * gr * x[19];
    out[8] += h[5] * x[8] + 2.0 * i * gl * x[13] + 2.0 * i * cgl * x[16] + 2.0 * i * gr * x[17]
        + 2.0 * i * cgr * x[20];
    out[9] += -ij * x[0] + ij * x[1] + h[6] * x[9] + i * gr * x[13] + i * gr * x[15]
        - i * cgl * x[18]
        - i * cgl * x[20];
    out[10] += ij * x[0] - ij * x[1] + h[7] * x[10] - i * cgr * x[14] - i * cgr * x[16]
        + i * gl * x[17]
        + i * gl * x[19];
    out[11] += ij * x[3] + ij * x[5] + h[8] * x[11] - i * cgr * x[13] - i * cgr * x[15]
        - i * cgl * x[17]
        - i * cgl * x[19];
    out[12] += -ij * x[4] - ij * x[6] + h[9] * x[12] + i * gr * x[14] + i * gr * x[16]
        + i * gl * x[18]
        + i * gl * x[20];
    out[13] += i * cgl * x[0] - i * cgl * x[2] + i * gl * x[3] - i * cgl * x[8] + i * cgr * x[9]
        + i * gr * x[11]
        + h[10] * x[13]
        + ij * x[17];
    out[14] += -i * gl * x[0] + i * gl * x[2] - i * cgl * x[4] + i * gl * x[7] - i * gr * x[10]
        - i * cgr * x[12]
        + h[11] * x[14]
        - ij * x[18];
    out[15] += -i * cgl * x[0] - i * cgl * x[2] - i * gl * x[3] - i * cgl * x[7] - i * cgr * x[9]
        - i * gr * x[11]
        + h[12] * x[15]
        + ij * x[19];
    out[16] += i * gl * x[0] + i * gl * x[2] + i * cgl * x[4] + i * gl * x[8] + i * gr * x[10]
        + i * cgr * x[12]
        + h[13] * x[16]
        - ij * x[20];
    out[17] += i * cgr * x[1] - i * cgr * x[2] + i * gr * x[5] - i * cgr * x[8] + i * cgl * x[10]
        + i * gl * x[11]
        + h[14] * x[17]
        + ij * x[13];
    out[18] += -i * gr * x[1] + i * gr * x[2] - i * cgr * x[6] + i * gr * x[7] - i * gl * x[9]
        - i * cgl * x[12]
        + h[15] * x[18]
        - ij * x[14];
    out[19] += -i * cgr * x[1] - i * cgr * x[2] - i * gr * x[5] - i * cgr * x[7] - i * cgl * x[10]
        - i * gl * x[11]
        + h[16] * x[19]
        + ij * x[15];
    out[20] += i * gr * x[1] + i * gr * x[2] + i * cgr * x[6] + i * gr * x[8] + i * gl * x[9]
        + i * cgl * x[12]
        + h[17] * x[20]
        - ij * x[16];
}

/// Accumulate `out += D` for couplings (G_⟲, G_⟳) and thermal feed γ_m·n̄_m.
#[inline]
pub fn apply_inhomogeneous(g_ccw: C64, g_cw: C64, gamma_n_bar: f64, out: &mut [C64; 21]) {
    let i = C64::i();
    out[2] += C64::new(gamma_n_bar, 0.0);
    out[15] += -i * g_ccw.conj();
    out[16] += i * g_ccw;
    out[19] += -i * g_cw.conj();
    out[20] += i * g_cw;
}

/// Effective detunings Δ̃_j = Δ_c + Δ_F,j − 2g₀Re[β] at the given amplitudes.
pub fn effective_detunings(amps: &ClassicalAmplitudes, p: &ReducedParams, delta_c: f64) -> (f64, f64) {
    let spring = 2.0 * p.g0 * amps.beta.re;
    (
        delta_c + p.sagnac_shift(Mode::Ccw) - spring,
        delta_c + p.sagnac_shift(Mode::Cw) - spring,
    )
}

/// Dense drift matrix A(t), assembled from the same kernel used by the
/// integrator (columns are kernel images of unit vectors).
pub fn build_drift_matrix(
    amps: &ClassicalAmplitudes,
    p: &ReducedParams,
    delta_c: f64,
) -> SMatrix<C64, 21, 21> {
    let (dl, dr) = effective_detunings(amps, p, delta_c);
    let c = DriftCoeffs::base(
        dl,
        dr,
        p.kappa,
        p.gamma_m,
        p.j_coupling,
        p.g0 * amps.alpha_ccw,
        p.g0 * amps.alpha_cw,
    );
    let mut m = SMatrix::<C64, 21, 21>::zeros();
    for k in 0..21 {
        let mut e = [C64::new(0.0, 0.0); 21];
        e[k] = C64::new(1.0, 0.0);
        let mut col = [C64::new(0.0, 0.0); 21];
        apply_drift(&c, &e, &mut col);
        for r in 0..21 {
            m[(r, k)] = col[r];
        }
    }
    m
}

/// Inhomogeneous vector D(t) at the given amplitudes.
pub fn build_inhomogeneous(amps: &ClassicalAmplitudes, p: &ReducedParams) -> [C64; 21] {
    let mut d = [C64::new(0.0, 0.0); 21];
    apply_inhomogeneous(
        p.g0 * amps.alpha_ccw,
        p.g0 * amps.alpha_cw,
        p.gamma_m * p.n_bar_m,
        &mut d,
    );
    d
}
