use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, vec_norm, ComplexMatrix};
use crate::tol;

/// A validated density operator: Hermitian, unit trace, positive
/// semidefinite (all within [`tol::ATOL_EIG`]).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_finite() {
            return Err(Error::InvalidState("non-finite entries".into()));
        }
        let defect = mat.hermiticity_defect();
        if defect > tol::ATOL_EIG {
            return Err(Error::InvalidState(format!(
                "not Hermitian (defect {defect:e})"
            )));
        }
        let tr = mat.trace().re;
        if (tr - 1.0).abs() > tol::ATOL_EIG {
            return Err(Error::InvalidState(format!("trace {tr} != 1")));
        }
        let min_eig = hermitian_eig(&mat)?.values[0];
        if min_eig < -tol::ATOL_EIG {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(Self { mat })
    }

    /// |psi><psi| for a normalized copy of `psi`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm = vec_norm(psi);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState(
                "zero or non-finite state vector".into(),
            ));
        }
        let unit: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::projector(&unit))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    /// x·a + (1 − x)·b
    pub fn mixture(a: &Self, b: &Self, x: f64) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: b.dim(),
            });
        }
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::ParamDomain(format!(
                "mixing weight {x} outside [0, 1]"
            )));
        }
        Self::new(&a.mat.scale_real(x) + &b.mat.scale_real(1.0 - x))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// Spectrum in ascending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eig(&self.mat)?.values)
    }

    /// tr(ρ²), computed as the squared Frobenius norm.
    pub fn purity(&self) -> f64 {
        self.mat.entries().iter().map(|z| z.norm_sqr()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{pauli, ONE, ZERO};

    #[test]
    fn rejects_invalid_operators() {
        assert!(DensityMatrix::new(pauli::sigma_z()).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::from_real_diag(&[1.5, -0.5])).is_err());
        assert!(DensityMatrix::new(pauli::sigma_plus()).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::from_real_diag(&[f64::NAN, 1.0])).is_err());
    }

    #[test]
    fn pure_normalizes() {
        let rho = DensityMatrix::pure(&[ONE, ONE, ZERO, ZERO]).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-15);
        assert!((rho.matrix()[(0, 1)].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mixture_checks_inputs() {
        let a = DensityMatrix::maximally_mixed(2);
        let b = DensityMatrix::maximally_mixed(4);
        assert!(matches!(
            DensityMatrix::mixture(&a, &b, 0.5),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            DensityMatrix::mixture(&a, &a, 1.5),
            Err(Error::ParamDomain(_))
        ));
    }
}
