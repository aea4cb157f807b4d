//! Seeded generators for random states and Hermitian matrices.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::ComplexMatrix;
use crate::state::DensityMatrix;

pub const DEFAULT_SEED: u64 = 42;

pub struct RandomStates {
    rng: ChaCha8Rng,
}

impl RandomStates {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn gaussian(&mut self) -> Complex64 {
        Complex64::new(
            self.rng.sample(StandardNormal),
            self.rng.sample(StandardNormal),
        )
    }

    /// Square matrix with i.i.d. standard complex Gaussian entries.
    pub fn ginibre(&mut self, dim: usize) -> ComplexMatrix {
        let mut g = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                g[(i, j)] = self.gaussian();
            }
        }
        g
    }

    /// G G† / tr(G G†).
    pub fn density_matrix(&mut self, dim: usize) -> DensityMatrix {
        let g = self.ginibre(dim);
        let gg = &g * &g.adjoint();
        let tr = gg.trace().re;
        DensityMatrix::new(gg.scale_real(1.0 / tr)).expect("G G^dagger is a valid state")
    }

    pub fn pure_state(&mut self, dim: usize) -> DensityMatrix {
        let psi: Vec<Complex64> = (0..dim).map(|_| self.gaussian()).collect();
        DensityMatrix::pure(&psi).expect("nonzero Gaussian vector")
    }

    /// (G + G†)/2 scaled so the Frobenius norm equals `norm`.
    pub fn hermitian(&mut self, dim: usize, norm: f64) -> ComplexMatrix {
        let g = self.ginibre(dim);
        let h = (&g + &g.adjoint()).scale_real(0.5);
        let f = h.frobenius_norm();
        h.scale_real(norm / f)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }
}
