//! Memory-assisted entropic uncertainty for measurements on qubit A.
//!
//! For two observables R and S measured on A, with B acting as a quantum
//! memory,
//!
//! ```text
//! H(R|B) + H(S|B) >= log2(1/c) + H(A|B)
//! ```
//!
//! where H(X|B) = H(ρ_XB) − H(ρ_B), ρ_XB is the post-measurement state and c
//! is the maximal squared overlap of the two eigenbases. The report tracks the
//! right-hand side W, the left-hand side L, their ratio U and difference V.
//!
//! The measurement-channel pipeline is the system of record. The closed-form
//! conditional entropies for σx/σz on the thermal state are kept as a
//! validation layer and their deviation is reported alongside.

use std::f64::consts::LN_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, inner, kron, partial_trace_a, pauli, CVector, ComplexMatrix};
use crate::measures::{
    concurrence_wootters, mixedness, shannon_entropy, von_neumann_entropy, Concurrence, Mixedness,
};
use crate::model::{log_partition_function, log_sum_exp, thermal_state_numeric, ModelParams};
use crate::state::DensityMatrix;
use crate::tol;

/// A non-degenerate qubit observable with its orthonormal eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    mat: ComplexMatrix,
    values: [f64; 2],
    basis: [CVector; 2],
}

impl Observable {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if mat.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: mat.dim(),
            });
        }
        let es = hermitian_eig(&mat)?;
        let gap = es.values[1] - es.values[0];
        if gap <= tol::ATOL_EIG {
            return Err(Error::DegenerateObservable { gap });
        }
        let [v0, v1]: [CVector; 2] = es.vectors.try_into().expect("two eigenvectors");
        Ok(Self {
            mat,
            values: [es.values[0], es.values[1]],
            basis: [v0, v1],
        })
    }

    pub fn sigma_x() -> Self {
        Self::new(pauli::sigma_x()).expect("sigma_x is non-degenerate")
    }

    pub fn sigma_y() -> Self {
        Self::new(pauli::sigma_y()).expect("sigma_y is non-degenerate")
    }

    pub fn sigma_z() -> Self {
        Self::new(pauli::sigma_z()).expect("sigma_z is non-degenerate")
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        self.values
    }

    pub fn eigenbasis(&self) -> &[CVector; 2] {
        &self.basis
    }

    /// The same observable with its eigenvectors listed in the opposite
    /// order and multiplied by arbitrary phases.
    pub fn relabeled(&self, phases: [f64; 2]) -> Self {
        let rephase = |v: &CVector, phi: f64| -> CVector {
            let u = Complex64::from_polar(1.0, phi);
            v.iter().map(|z| z * u).collect()
        };
        Self {
            mat: self.mat.clone(),
            values: [self.values[1], self.values[0]],
            basis: [
                rephase(&self.basis[1], phases[0]),
                rephase(&self.basis[0], phases[1]),
            ],
        }
    }

    pub fn projectors(&self) -> [ComplexMatrix; 2] {
        [
            ComplexMatrix::projector(&self.basis[0]),
            ComplexMatrix::projector(&self.basis[1]),
        ]
    }
}

/// ρ_XB = Σ_i (P_i ⊗ I) ρ (P_i ⊗ I) with P_i the eigenprojectors of `obs`.
pub fn post_measurement_state(rho: &DensityMatrix, obs: &Observable) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    let id = pauli::identity();
    let mut out = ComplexMatrix::zeros(4);
    for p in obs.projectors() {
        let lifted = kron(&p, &id);
        out = &out + &(&(&lifted * rho.matrix()) * &lifted);
    }
    DensityMatrix::new(out)
}

/// Outcome probabilities tr[(P_i ⊗ I) ρ].
pub fn outcome_probabilities(rho: &DensityMatrix, obs: &Observable) -> Result<[f64; 2]> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    let id = pauli::identity();
    let [p0, p1] = obs.projectors();
    let prob = |p: &ComplexMatrix| (&kron(p, &id) * rho.matrix()).trace().re;
    Ok([prob(&p0), prob(&p1)])
}

/// c = max_{r,s} |<ψ_r|φ_s>|².
pub fn complementarity(r: &Observable, s: &Observable) -> f64 {
    let mut c: f64 = 0.0;
    for u in r.eigenbasis() {
        for v in s.eigenbasis() {
            c = c.max(inner(u, v).norm_sqr());
        }
    }
    c
}

/// H(X|B) = H(ρ_XB) − H(tr_A ρ_XB).
pub fn conditional_entropy(rho: &DensityMatrix) -> Result<f64> {
    let reduced = DensityMatrix::new(partial_trace_a(rho.matrix())?)?;
    Ok(von_neumann_entropy(rho)? - von_neumann_entropy(&reduced)?)
}

/// ρ_B = tr_A ρ(T); equal to I/2 everywhere in this model.
pub fn reduced_memory_state(p: &ModelParams) -> Result<DensityMatrix> {
    let rho = thermal_state_numeric(p)?;
    DensityMatrix::new(partial_trace_a(rho.matrix())?)
}

/// Conditional entropies of the thermal state for R = σx, S = σz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalEntropies {
    pub h_rb: f64,
    pub h_sb: f64,
    pub h_ab: f64,
}

impl ConditionalEntropies {
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.h_rb - other.h_rb)
            .abs()
            .max((self.h_sb - other.h_sb).abs())
            .max((self.h_ab - other.h_ab).abs())
    }
}

/// −[a log₂(a / 2(a+b)) + b log₂(b / 2(a+b))] / (a+b) − 1, from ln a and ln b.
fn two_weight_conditional_entropy(ln_a: f64, ln_b: f64) -> f64 {
    let ln_s = log_sum_exp(&[ln_a, ln_b]);
    let term = |ln_x: f64| {
        let frac = (ln_x - ln_s).exp();
        frac * ((ln_x - ln_s) / LN_2 - 1.0)
    };
    -(term(ln_a) + term(ln_b)) - 1.0
}

/// The closed-form conditional entropies of the thermal state:
///
/// ```text
/// H(R|B) = −[Λ1 log₂(Λ1/2(Λ1+Λ2)) + Λ2 log₂(Λ2/2(Λ1+Λ2))]/(Λ1+Λ2) − 1
/// H(S|B) = −[Δ1 log₂(Δ1/2(Δ1+Δ2)) + Δ2 log₂(Δ2/2(Δ1+Δ2))]/(Δ1+Δ2) − 1
/// H(A|B) = log₂O1/O1 + 2 log₂O2/O2 + O3 log₂O2/O2 − O3 log₂O3/O2 − 1
///
/// Λ1 = e^{βJ} + e^{βδ/2}        Λ2 = e^{βδ/2} + e^{β(J+δ)}
/// Δ1 = 1                        Δ2 = e^{βJ} cosh(βδ/2)
/// O1 = 1 + e^{βδ} + 2e^{−βJ+βδ/2}
/// O2 = Z e^{βJ/2}               O3 = e^{βJ+βδ/2}
/// ```
///
/// Every Λ, Δ and O is carried as its logarithm so the expressions stay
/// finite at large β.
pub fn closed_form_entropies(p: &ModelParams) -> ConditionalEntropies {
    let (bj, bd) = (p.beta() * p.j(), p.beta() * p.delta());

    let ln_lambda1 = log_sum_exp(&[bj, bd / 2.0]);
    let ln_lambda2 = log_sum_exp(&[bd / 2.0, bj + bd]);
    let h_rb = two_weight_conditional_entropy(ln_lambda1, ln_lambda2);

    let ln_delta1 = 0.0;
    let ln_delta2 = bj + log_sum_exp(&[bd / 2.0, -bd / 2.0]) - LN_2;
    let h_sb = two_weight_conditional_entropy(ln_delta1, ln_delta2);

    let ln_o1 = log_sum_exp(&[0.0, bd, LN_2 - bj + bd / 2.0]);
    let ln_o2 = log_partition_function(p) + bj / 2.0;
    let ln_o3 = bj + bd / 2.0;
    let log2 = |ln_x: f64| ln_x / LN_2;
    let o3_over_o2 = (ln_o3 - ln_o2).exp();
    let h_ab = log2(ln_o1) * (-ln_o1).exp()
        + 2.0 * log2(ln_o2) * (-ln_o2).exp()
        + o3_over_o2 * log2(ln_o2)
        - o3_over_o2 * log2(ln_o3)
        - 1.0;

    ConditionalEntropies { h_rb, h_sb, h_ab }
}

/// Conditional entropies of the thermal state through the measurement
/// channel.
pub fn numeric_entropies(p: &ModelParams) -> Result<ConditionalEntropies> {
    let rho = thermal_state_numeric(p)?;
    Ok(ConditionalEntropies {
        h_rb: conditional_entropy(&post_measurement_state(&rho, &Observable::sigma_x())?)?,
        h_sb: conditional_entropy(&post_measurement_state(&rho, &Observable::sigma_z())?)?,
        h_ab: conditional_entropy(&rho)?,
    })
}

/// Everything the uncertainty relation says about one state.
#[derive(Debug, Clone, PartialEq)]
pub struct UncertaintyReport {
    /// `None` when the report was built directly from a state.
    pub params: Option<ModelParams>,
    pub complementarity: f64,
    pub h_rb: f64,
    pub h_sb: f64,
    pub h_ab: f64,
    /// Lower bound log₂(1/c) + H(A|B).
    pub w: f64,
    /// Left-hand side H(R|B) + H(S|B).
    pub l: f64,
    /// L / W; `None` where |W| < [`tol::RATIO_UNDEFINED`].
    pub u: Option<f64>,
    /// L − W.
    pub v: f64,
    pub concurrence: Concurrence,
    pub mixedness: Mixedness,
    /// Max deviation of the closed-form entropies from the pipeline, when
    /// they apply (thermal state, R = σx, S = σz).
    pub closed_form_deviation: Option<f64>,
}

impl UncertaintyReport {
    /// True when the closed-form entropies disagree with the pipeline beyond
    /// [`tol::ATOL_ENTROPY_CLOSED`].
    pub fn closed_form_deviates(&self) -> bool {
        self.closed_form_deviation
            .is_some_and(|d| d > tol::ATOL_ENTROPY_CLOSED)
    }
}

/// Report for an arbitrary two-qubit state.
pub fn evaluate_state(
    rho: &DensityMatrix,
    r: &Observable,
    s: &Observable,
) -> Result<UncertaintyReport> {
    let c = complementarity(r, s);
    let h_rb = conditional_entropy(&post_measurement_state(rho, r)?)?;
    let h_sb = conditional_entropy(&post_measurement_state(rho, s)?)?;
    let h_ab = conditional_entropy(rho)?;
    let w = (1.0 / c).log2() + h_ab;
    let l = h_rb + h_sb;
    let u = (w.abs() >= tol::RATIO_UNDEFINED).then(|| l / w);
    Ok(UncertaintyReport {
        params: None,
        complementarity: c,
        h_rb,
        h_sb,
        h_ab,
        w,
        l,
        u,
        v: l - w,
        concurrence: concurrence_wootters(rho)?,
        mixedness: mixedness(rho),
        closed_form_deviation: None,
    })
}

/// Report for the thermal state at `p`.
pub fn uncertainty_report(
    p: &ModelParams,
    r: &Observable,
    s: &Observable,
) -> Result<UncertaintyReport> {
    let rho = thermal_state_numeric(p)?;
    let mut report = evaluate_state(&rho, r, s)?;
    report.params = Some(*p);
    let standard = r.matrix() == Observable::sigma_x().matrix()
        && s.matrix() == Observable::sigma_z().matrix();
    if standard {
        let pipeline = ConditionalEntropies {
            h_rb: report.h_rb,
            h_sb: report.h_sb,
            h_ab: report.h_ab,
        };
        report.closed_form_deviation = Some(closed_form_entropies(p).max_abs_diff(&pipeline));
    }
    Ok(report)
}

/// Report with R = σx and S = σz.
pub fn default_report(p: &ModelParams) -> Result<UncertaintyReport> {
    uncertainty_report(p, &Observable::sigma_x(), &Observable::sigma_z())
}

/// Shannon entropies of the two outcome distributions, H(R) + H(S).
pub fn memoryless_uncertainty(rho: &DensityMatrix, r: &Observable, s: &Observable) -> Result<f64> {
    Ok(shannon_entropy(&outcome_probabilities(rho, r)?)
        + shannon_entropy(&outcome_probabilities(rho, s)?))
}
