//! Thermal entanglement, mixedness and quantum-memory-assisted entropic
//! uncertainty for a two-qubit Heisenberg chain with a Dzyaloshinskii–Moriya
//! interaction along z.
//!
//! Every closed-form quantity has an independent numeric counterpart built on
//! the spectral decomposition of the Hamiltonian:
//!
//! | quantity | closed form | oracle |
//! |---|---|---|
//! | thermal state | [`model::thermal_state_closed`] | [`model::thermal_state_numeric`] |
//! | concurrence | [`measures::concurrence_closed`] | [`measures::concurrence_wootters`] |
//! | mixedness | [`measures::mixedness_closed`] | [`measures::mixedness`] |
//! | conditional entropies | [`uncertainty::closed_form_entropies`] | [`uncertainty::numeric_entropies`] |
//!
//! The numeric routes are the system of record; see [`uncertainty`] for the
//! report assembled from them and [`sweep`] for grids and CSV output.

pub mod error;
pub mod linalg;
pub mod measures;
pub mod model;
pub mod random;
pub mod state;
pub mod sweep;
pub mod tol;
pub mod uncertainty;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenSystem};
pub use measures::{Concurrence, Mixedness};
pub use model::ModelParams;
pub use state::DensityMatrix;
pub use uncertainty::{Observable, UncertaintyReport};
