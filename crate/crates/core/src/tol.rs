//! Numerical tolerances used across the crate.
//!
//! Every threshold that appears in a validation check or a test lives here,
//! so a change of policy is a one-line edit.

/// Eigen-residuals, Hermiticity, orthonormality, trace and positivity checks.
pub const ATOL_EIG: f64 = 1e-10;

/// Agreement between two numerical routes to the same quantity
/// (closed form vs spectral oracle, power series vs `mat_func`).
pub const ATOL_NUM: f64 = 1e-9;

/// Agreement between the printed conditional-entropy formulas and the
/// measurement-channel pipeline.
pub const ATOL_ENTROPY_CLOSED: f64 = 1e-6;

/// Jacobi stopping criterion on the off-diagonal Frobenius mass, relative
/// to the Frobenius norm of the input.
pub const JACOBI_OFF_DIAG: f64 = 1e-12;

/// Maximum number of cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Components with modulus below this are treated as zero when fixing the
/// eigenvector phase.
pub const PHASE_ZERO: f64 = 1e-12;

/// Below this |W| the ratio U = L / W is reported as undefined.
pub const RATIO_UNDEFINED: f64 = 1e-9;

/// Maximum allowed deviation for the V-collapse claim.
pub const V_COLLAPSE: f64 = 1e-3;

/// Minimum number of shared interpolation points for the V-collapse check.
pub const V_COLLAPSE_MIN_POINTS: usize = 10;
