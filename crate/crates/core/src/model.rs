//! Two-qubit Heisenberg XXX coupling with a Dzyaloshinskii–Moriya term along z.
//!
//! All operators use the ordered product basis
//! `{|ee>, |eg>, |ge>, |gg>}` (indices 0..4), with `|e>` the +1 eigenstate
//! of sigma_z. Every other module inherits this ordering.
//!
//! The Hamiltonian is
//!
//! ```text
//! H = J/2 [ (σx⊗σx + σy⊗σy + σz⊗σz) + D (σx⊗σy − σy⊗σx) ]
//! ```
//!
//! with spectrum `{J/2, J/2, J√(1+D²) − J/2, −J√(1+D²) − J/2}`. The thermal
//! state is available through two independent routes: the spectral oracle
//! [`thermal_state_numeric`] and the closed-form matrix elements
//! [`thermal_state_closed`].

use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix, EigenSystem, ONE, ZERO};
use crate::state::DensityMatrix;

pub const EE: usize = 0;
pub const EG: usize = 1;
pub const GE: usize = 2;
pub const GG: usize = 3;

/// Coupling `J`, DM strength `D` and temperature `T` (Boltzmann constant 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    j: f64,
    d: f64,
    t: f64,
}

impl ModelParams {
    pub fn new(j: f64, d: f64, t: f64) -> Result<Self> {
        if !j.is_finite() || j == 0.0 {
            return Err(Error::ParamDomain(format!(
                "coupling J must be finite and nonzero, got {j}"
            )));
        }
        if !d.is_finite() || d < 0.0 {
            return Err(Error::ParamDomain(format!(
                "DM strength D must be finite and >= 0, got {d}"
            )));
        }
        if !t.is_finite() || t <= 0.0 {
            return Err(Error::ParamDomain(format!(
                "temperature T must be finite and > 0, got {t}"
            )));
        }
        Ok(Self { j, d, t })
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn beta(&self) -> f64 {
        1.0 / self.t
    }

    /// δ = 2J√(1 + D²), the splitting of the |±> doublet.
    pub fn delta(&self) -> f64 {
        2.0 * self.j * self.d.hypot(1.0)
    }

    /// θ = arctan D, the relative phase inside |±>.
    pub fn theta(&self) -> f64 {
        self.d.atan()
    }
}

/// H in the `{|ee>, |eg>, |ge>, |gg>}` basis.
pub fn build_hamiltonian(p: &ModelParams) -> ComplexMatrix {
    hamiltonian(p.j(), p.d())
}

pub(crate) fn hamiltonian(j: f64, d: f64) -> ComplexMatrix {
    let mut h = ComplexMatrix::from_real_diag(&[j / 2.0, -j / 2.0, -j / 2.0, j / 2.0]);
    h[(EG, GE)] = Complex64::new(j, j * d);
    h[(GE, EG)] = Complex64::new(j, -j * d);
    h
}

/// Energy levels of the model, labelled by their eigenvector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Ee,
    Gg,
    /// (|ge> + e^{iθ}|eg>)/√2, energy J√(1+D²) − J/2
    Plus,
    /// (|ge> − e^{iθ}|eg>)/√2, energy −J√(1+D²) − J/2
    Minus,
}

impl Level {
    pub const ALL: [Level; 4] = [Level::Ee, Level::Gg, Level::Plus, Level::Minus];

    pub fn energy(self, j: f64, d: f64) -> f64 {
        let root = j * d.hypot(1.0);
        match self {
            Level::Ee | Level::Gg => j / 2.0,
            Level::Plus => root - j / 2.0,
            Level::Minus => -root - j / 2.0,
        }
    }

    /// Eigenvector as written, before any phase normalization.
    pub fn ket(self, d: f64) -> Vec<Complex64> {
        let phase = Complex64::from_polar(FRAC_1_SQRT_2, d.atan());
        let mut v = vec![ZERO; 4];
        match self {
            Level::Ee => v[EE] = ONE,
            Level::Gg => v[GG] = ONE,
            Level::Plus => {
                v[GE] = Complex64::new(FRAC_1_SQRT_2, 0.0);
                v[EG] = phase;
            }
            Level::Minus => {
                v[GE] = Complex64::new(FRAC_1_SQRT_2, 0.0);
                v[EG] = -phase;
            }
        }
        v
    }
}

/// Closed-form eigensystem, sorted ascending with the same phase convention
/// as [`hermitian_eig`].
pub fn analytic_eigensystem(p: &ModelParams) -> EigenSystem {
    let values = Level::ALL.iter().map(|l| l.energy(p.j(), p.d())).collect();
    let vectors = Level::ALL.iter().map(|l| l.ket(p.d())).collect();
    EigenSystem::normalized(values, vectors)
}

/// Pure eigenstate |level><level| at DM strength `d`.
pub fn eigenstate(level: Level, d: f64) -> Result<DensityMatrix> {
    DensityMatrix::pure(&level.ket(d))
}

/// The T → 0⁺ limit of the Gibbs state: the uniform mixture over the ground
/// manifold. Pure (|−> for J > 0, |+> for J < 0 and D > 0) except for the
/// ferromagnetic D = 0 triplet.
pub fn zero_temperature_state(j: f64, d: f64) -> Result<DensityMatrix> {
    ModelParams::new(j, d, 1.0)?;
    let energies: Vec<f64> = Level::ALL.iter().map(|l| l.energy(j, d)).collect();
    let e0 = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let scale = j.abs().max(1.0);
    let ground: Vec<Level> = Level::ALL
        .iter()
        .zip(&energies)
        .filter(|(_, &e)| (e - e0).abs() <= 1e-12 * scale)
        .map(|(l, _)| *l)
        .collect();
    let weight = 1.0 / ground.len() as f64;
    let mut mat = ComplexMatrix::zeros(4);
    for level in ground {
        mat = &mat + &ComplexMatrix::projector(&level.ket(d)).scale_real(weight);
    }
    DensityMatrix::new(mat)
}

/// The β → 0 limit, I/4.
pub fn infinite_temperature_state() -> DensityMatrix {
    DensityMatrix::maximally_mixed(4)
}

/// Gibbs state exp(−βH)/Z through the spectral decomposition of H. Energies
/// are shifted by the ground energy before exponentiation, which leaves the
/// normalized state unchanged and keeps every weight in (0, 1].
pub fn thermal_state_numeric(p: &ModelParams) -> Result<DensityMatrix> {
    let es = hermitian_eig(&build_hamiltonian(p))?;
    let beta = p.beta();
    let e0 = es.values[0];
    let unnormalized = es.map_values(|e| (-beta * (e - e0)).exp());
    let z = unnormalized.trace().re;
    DensityMatrix::new(unnormalized.scale_real(1.0 / z))
}

pub(crate) fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// ln Z with Z = 2e^{−βJ/2}[1 + e^{βJ} cosh(βδ/2)].
pub fn log_partition_function(p: &ModelParams) -> f64 {
    let (bj, bd) = (p.beta() * p.j(), p.beta() * p.delta());
    log_sum_exp(&[LN_2 - bj / 2.0, (bj - bd) / 2.0, (bj + bd) / 2.0])
}

/// Gibbs state assembled from its closed-form matrix elements:
///
/// ```text
/// ρ11 = ρ44 = e^{−βJ/2} / Z
/// ρ22 = ρ33 = e^{β(J−δ)/2} (1 + e^{βδ}) / 2Z
/// ρ23 = e^{iθ} e^{β(J−δ)/2} (1 − e^{βδ}) / 2Z,   ρ32 = conj(ρ23)
/// ```
///
/// Note the coherence carries (1 − e^{βδ}), not (1 + e^{βδ}). Exponentials
/// are evaluated against ln Z so the elements stay finite at any β.
pub fn thermal_state_closed(p: &ModelParams) -> Result<DensityMatrix> {
    let (bj, bd) = (p.beta() * p.j(), p.beta() * p.delta());
    let ln_z = log_partition_function(p);
    let corner = (-bj / 2.0 - ln_z).exp();
    let low = ((bj - bd) / 2.0 - ln_z).exp();
    let high = ((bj + bd) / 2.0 - ln_z).exp();
    let diag = 0.5 * (low + high);
    let coherence = Complex64::from_polar(0.5 * (low - high), p.theta());

    let mut mat = ComplexMatrix::from_real_diag(&[corner, diag, diag, corner]);
    mat[(EG, GE)] = coherence;
    mat[(GE, EG)] = coherence.conj();
    DensityMatrix::new(mat)
}
