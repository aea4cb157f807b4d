use dmeur::linalg::{hermitian_eig, kron, mat_func, partial_trace_a, ComplexMatrix};
use dmeur::measures::{
    concurrence_closed, concurrence_wootters, convexity_margin, mixedness, mixedness_closed,
    von_neumann_entropy,
};
use dmeur::model::{
    analytic_eigensystem, build_hamiltonian, thermal_state_closed, thermal_state_numeric,
};
use dmeur::random::{RandomStates, DEFAULT_SEED};
use dmeur::tol::{ATOL_EIG, ATOL_NUM};
use dmeur::uncertainty::{closed_form_entropies, default_report, numeric_entropies};
use dmeur::{DensityMatrix, ModelParams};
use num_complex::Complex64;
use proptest::prelude::*;

fn hermitian_from(raw: &[f64], dim: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    let mut it = raw.iter();
    for i in 0..dim {
        m[(i, i)] = Complex64::new(*it.next().unwrap(), 0.0);
        for j in (i + 1)..dim {
            let z = Complex64::new(*it.next().unwrap(), *it.next().unwrap());
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

fn complex_from(raw: &[f64], dim: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let k = 2 * (i * dim + j);
            m[(i, j)] = Complex64::new(raw[k], raw[k + 1]);
        }
    }
    m
}

fn model_params() -> impl Strategy<Value = ModelParams> {
    (
        prop_oneof![-3.0..-0.05f64, 0.05..3.0f64],
        0.0..3.0f64,
        0.05..10.0f64,
    )
        .prop_map(|(j, d, t)| ModelParams::new(j, d, t).unwrap())
}

/// Σ_{k≤20} a^k / k!
fn exp_series(a: &ComplexMatrix) -> ComplexMatrix {
    let mut term = ComplexMatrix::identity(a.dim());
    let mut sum = term.clone();
    for k in 1..=20 {
        term = (&term * a).scale_real(1.0 / k as f64);
        sum = &sum + &term;
    }
    sum
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn eig_reconstructs_random_hermitian(raw in prop::collection::vec(-5.0..5.0f64, 16)) {
        let a = hermitian_from(&raw, 4);
        let es = hermitian_eig(&a).unwrap();
        prop_assert!(es.reconstruct().max_abs_diff(&a) <= ATOL_NUM);
        let norm = a.frobenius_norm().max(1.0);
        for (lambda, v) in es.values.iter().zip(&es.vectors) {
            let av = a.mul_vec(v);
            let resid = av.iter().zip(v).map(|(x, y)| (x - y * lambda).norm_sqr()).sum::<f64>().sqrt();
            prop_assert!(resid <= ATOL_EIG * norm);
        }
    }

    #[test]
    fn kron_is_associative_on_integers(raw in prop::collection::vec(-4i32..5, 24)) {
        let f: Vec<f64> = raw.iter().map(|&x| x as f64).collect();
        let a = complex_from(&f[0..8], 2);
        let b = complex_from(&f[8..16], 2);
        let c = complex_from(&f[16..24], 2);
        prop_assert_eq!(kron(&kron(&a, &b), &c), kron(&a, &kron(&b, &c)));
    }

    #[test]
    fn partial_trace_of_product(raw in prop::collection::vec(-1.0..1.0f64, 16)) {
        let a = complex_from(&raw[0..8], 2);
        let b = complex_from(&raw[8..16], 2);
        let got = partial_trace_a(&kron(&a, &b)).unwrap();
        prop_assert!(got.max_abs_diff(&b.scale(a.trace())) <= 1e-12);
    }

    #[test]
    fn mat_exp_matches_power_series(raw in prop::collection::vec(-1.0..1.0f64, 16), norm in 0.0..2.0f64) {
        let h = hermitian_from(&raw, 4);
        let f = h.frobenius_norm();
        prop_assume!(f > 1e-6);
        let a = h.scale_real(norm / f);
        let got = mat_func(&a, f64::exp).unwrap();
        prop_assert!(got.max_abs_diff(&exp_series(&a)) <= ATOL_NUM);
    }

    #[test]
    fn analytic_spectrum_matches_solver(p in model_params()) {
        let num = hermitian_eig(&build_hamiltonian(&p)).unwrap();
        let an = analytic_eigensystem(&p);
        for (a, b) in num.values.iter().zip(&an.values) {
            prop_assert!((a - b).abs() <= ATOL_EIG * p.j().abs().max(1.0) * 10.0);
        }
    }

    #[test]
    fn thermal_state_invariants(p in model_params()) {
        let rho = thermal_state_numeric(&p).unwrap();
        prop_assert!((rho.matrix().trace().re - 1.0).abs() <= ATOL_EIG);
        prop_assert!(rho.eigenvalues().unwrap()[0] >= -ATOL_EIG);
        let h = build_hamiltonian(&p);
        prop_assert!(rho.matrix().commutator(&h).max_abs() <= ATOL_NUM);
        let closed = thermal_state_closed(&p).unwrap();
        prop_assert!(closed.matrix().max_abs_diff(rho.matrix()) <= ATOL_NUM);
    }

    #[test]
    fn entropy_vanishes_iff_pure(seed in any::<u64>(), pure in any::<bool>()) {
        let mut rng = RandomStates::new(seed);
        let rho = if pure { rng.pure_state(4) } else { rng.density_matrix(4) };
        let s = von_neumann_entropy(&rho).unwrap();
        let y = mixedness(&rho).get();
        prop_assert_eq!(s <= ATOL_NUM, y <= ATOL_NUM);
    }

    #[test]
    fn report_satisfies_memory_bound(p in model_params()) {
        let r = default_report(&p).unwrap();
        prop_assert!(r.l - r.w >= -ATOL_NUM);
        prop_assert!((r.v - (r.l - r.w)).abs() <= 1e-12);
        prop_assert!(!r.closed_form_deviates());
    }
}

#[test]
fn convexity_margin_on_seeded_triples() {
    let mut rng = RandomStates::new(DEFAULT_SEED);
    for k in 0..1000 {
        let dim = if k % 2 == 0 { 4 } else { 2 };
        let a = rng.density_matrix(dim);
        let b = if k % 5 == 0 {
            rng.pure_state(dim)
        } else {
            rng.density_matrix(dim)
        };
        let x = rng.uniform(0.0, 1.0);
        assert!(convexity_margin(&a, &b, x).unwrap() >= -1e-10);
    }
}

#[test]
fn mixedness_maximum_is_one_minus_inverse_dimension() {
    let mut rng = RandomStates::new(7);
    for dim in [2, 4] {
        let cap = 1.0 - 1.0 / dim as f64;
        assert!((mixedness(&DensityMatrix::maximally_mixed(dim)).get() - cap).abs() < 1e-15);
        for _ in 0..200 {
            assert!(mixedness(&rng.density_matrix(dim)).get() <= cap + 1e-12);
        }
    }
}

#[test]
fn thermal_mixedness_decreases_with_beta() {
    let ys: Vec<f64> = (0..50)
        .map(|i| {
            let t = 0.1 + (10.0 - 0.1) * i as f64 / 49.0;
            mixedness(&thermal_state_numeric(&ModelParams::new(1.0, 1.0, t).unwrap()).unwrap())
                .get()
        })
        .collect();
    // increasing in T == decreasing in β
    assert!(ys.windows(2).all(|w| w[1] > w[0]));
    assert!(ys.iter().all(|&y| y < 0.75));
}

#[test]
fn seeded_oracle_grid() {
    let mut rng = RandomStates::new(DEFAULT_SEED);
    for _ in 0..200 {
        let sign = if rng.uniform(0.0, 1.0) < 0.5 {
            -1.0
        } else {
            1.0
        };
        let p = ModelParams::new(
            sign * rng.uniform(0.01, 3.0),
            rng.uniform(0.0, 3.0),
            rng.uniform(0.05, 10.0),
        )
        .unwrap();
        let rho = thermal_state_numeric(&p).unwrap();
        let c = concurrence_wootters(&rho).unwrap().get();
        assert!((concurrence_closed(&p).get() - c).abs() <= ATOL_NUM);
        assert!(!mixedness_closed(&p).unwrap().deviates);
        let closed = closed_form_entropies(&p);
        let numeric = numeric_entropies(&p).unwrap();
        assert!(closed.max_abs_diff(&numeric) <= 1e-6);
    }
}
