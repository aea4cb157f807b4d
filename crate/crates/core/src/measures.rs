//! Functionals of a state: von Neumann entropy, concurrence, linear entropy.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use num_complex::Complex64;

use crate::linalg::{hermitian_eig, inner, kron, pauli, ComplexMatrix};
use crate::model::{log_partition_function, log_sum_exp, thermal_state_numeric, ModelParams};
use crate::state::DensityMatrix;
use crate::tol;

/// Concurrence, in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Concurrence(f64);

impl Concurrence {
    pub fn get(self) -> f64 {
        self.0
    }
}

/// Linear entropy Y = 1 − tr ρ², in [0, 1 − 1/d].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Mixedness(f64);

impl Mixedness {
    pub fn get(self) -> f64 {
        self.0
    }
}

/// Clamps round-off negatives in a spectrum and rejects genuine ones.
fn clamp_spectrum(values: &mut [f64]) -> Result<()> {
    for x in values.iter_mut() {
        if *x < -tol::ATOL_EIG {
            return Err(Error::InvalidState(format!("eigenvalue {x:e} below zero")));
        }
        if *x < 0.0 {
            *x = 0.0;
        }
    }
    Ok(())
}

/// −Σ p log₂ p with 0·log 0 = 0.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

/// −tr(ρ log₂ ρ), in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let mut values = rho.eigenvalues()?;
    clamp_spectrum(&mut values)?;
    Ok(shannon_entropy(&values).max(0.0))
}

/// Wootters concurrence. With ρ = Σ pᵢ|vᵢ⟩⟨vᵢ| and wᵢ = √pᵢ vᵢ, the square
/// roots of the spin-flip spectrum of ρρ̃ are the singular values of
/// τᵢⱼ = ⟨wᵢ|σy⊗σy|wⱼ*⟩. They are read off the Hermitian dilation
/// [[0, τ], [τ†, 0]], whose spectrum is ±σ, so no square root of a
/// near-zero eigenvalue is ever taken.
pub fn concurrence_wootters(rho: &DensityMatrix) -> Result<Concurrence> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    let es = hermitian_eig(rho.matrix())?;
    let mut probs = es.values.clone();
    clamp_spectrum(&mut probs)?;
    let theta = kron(&pauli::sigma_y(), &pauli::sigma_y());
    let w: Vec<Vec<Complex64>> = probs
        .iter()
        .zip(&es.vectors)
        .map(|(p, v)| v.iter().map(|z| z * p.sqrt()).collect())
        .collect();
    let mut dilation = ComplexMatrix::zeros(8);
    for i in 0..4 {
        let flipped: Vec<Complex64> = w[i].iter().map(|z| z.conj()).collect();
        let theta_wi = theta.mul_vec(&flipped);
        for j in 0..4 {
            // τⱼᵢ = ⟨wⱼ|Θ|wᵢ*⟩
            let tau = inner(&w[j], &theta_wi);
            dilation[(j, 4 + i)] = tau;
            dilation[(4 + i, j)] = tau.conj();
        }
    }
    let values = hermitian_eig(&dilation)?.values;
    let mut roots: Vec<f64> = values[4..].iter().map(|x| x.max(0.0)).collect();
    roots.sort_by(|a, b| b.total_cmp(a));
    let c = roots[0] - roots[1] - roots[2] - roots[3];
    Ok(Concurrence(c.clamp(0.0, 1.0)))
}

/// Closed-form concurrence of the thermal state,
///
/// ```text
/// C = (2/Z) max[ ½|e^{β(J−δ)/2}(1 − e^{βδ})| − e^{−βJ/2}, 0 ]
/// ```
///
/// i.e. twice the excess of |ρ23| over √(ρ11 ρ44).
pub fn concurrence_closed(p: &ModelParams) -> Concurrence {
    let (bj, bd) = (p.beta() * p.j(), p.beta() * p.delta());
    let ln_z = log_partition_function(p);
    let coherence = 0.5 * (((bj - bd) / 2.0 - ln_z).exp() - ((bj + bd) / 2.0 - ln_z).exp()).abs();
    let corner = (-bj / 2.0 - ln_z).exp();
    Concurrence((2.0 * (coherence - corner)).clamp(0.0, 1.0))
}

/// Y = 1 − tr(ρ²).
pub fn mixedness(rho: &DensityMatrix) -> Mixedness {
    let d = rho.dim() as f64;
    Mixedness((1.0 - rho.purity()).clamp(0.0, 1.0 - 1.0 / d))
}

/// Outcome of evaluating the closed-form thermal mixedness against the
/// numeric state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixednessCheck {
    pub closed: f64,
    pub numeric: f64,
    /// Set when the two disagree by more than [`tol::ATOL_NUM`].
    pub deviates: bool,
}

impl MixednessCheck {
    /// The closed form when it agrees, otherwise the numeric value.
    pub fn value(&self) -> Mixedness {
        Mixedness(if self.deviates {
            self.numeric
        } else {
            self.closed
        })
    }
}

/// Closed-form thermal mixedness
///
/// ```text
/// Y = 4 e^{β(J+δ)} [cosh βJ + 2 cosh(βδ/2)] / [e^{β(J+δ)} + e^{βJ} + 2 e^{βδ/2}]²
/// ```
///
/// evaluated in the log domain.
pub fn mixedness_closed_value(p: &ModelParams) -> f64 {
    let (bj, bd) = (p.beta() * p.j(), p.beta() * p.delta());
    // cosh a + 2 cosh b = (e^a + e^-a)/2 + e^b + e^-b
    let ln_bracket = log_sum_exp(&[bj - LN_2, -bj - LN_2, bd / 2.0, -bd / 2.0]);
    let ln_num = 2.0 * LN_2 + bj + bd + ln_bracket;
    let ln_den = 2.0 * log_sum_exp(&[bj + bd, bj, LN_2 + bd / 2.0]);
    (ln_num - ln_den).exp()
}

pub fn mixedness_closed(p: &ModelParams) -> Result<MixednessCheck> {
    let closed = mixedness_closed_value(p);
    let numeric = mixedness(&thermal_state_numeric(p)?).get();
    Ok(MixednessCheck {
        closed,
        numeric,
        deviates: (closed - numeric).abs() > tol::ATOL_NUM,
    })
}

/// Y(xρA + (1−x)ρB) − [x Y(ρA) + (1−x) Y(ρB)]; nonnegative by concavity of
/// tr ρ² ↦ 1 − tr ρ².
pub fn convexity_margin(rho_a: &DensityMatrix, rho_b: &DensityMatrix, x: f64) -> Result<f64> {
    let mix = DensityMatrix::mixture(rho_a, rho_b, x)?;
    let y = |r: &DensityMatrix| 1.0 - r.purity();
    Ok(y(&mix) - (x * y(rho_a) + (1.0 - x) * y(rho_b)))
}
