//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Tolerances are fixed here.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use dmeur::linalg::ComplexMatrix;
use dmeur::measures::{concurrence_closed, concurrence_wootters, convexity_margin, mixedness};
use dmeur::model::{infinite_temperature_state, thermal_state_closed, thermal_state_numeric};
use dmeur::random::{RandomStates, DEFAULT_SEED};
use dmeur::sweep::{v_collapse_check, Axis};
use dmeur::uncertainty::{
    closed_form_entropies, complementarity, default_report, memoryless_uncertainty,
    numeric_entropies, reduced_memory_state, Observable,
};
use dmeur::{Error, ModelParams, UncertaintyReport};

const TOL_STATE: f64 = 1e-9;
const TOL_CONCURRENCE: f64 = 1e-9;
const TOL_ENTROPY: f64 = 1e-6;
const TOL_BOUND: f64 = 1e-9;
const TOL_MEMORY: f64 = 1e-10;
const TOL_HOT: f64 = 1e-3;
const TOL_COLD: f64 = 1e-2;
const TOL_CONVEXITY: f64 = 1e-10;
const TOL_COLLAPSE: f64 = 1e-3;
const GRID_POINTS: usize = 200;
const CONVEXITY_TRIPLES: usize = 1000;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// J ∈ [−3, 3] \ {0}, D ∈ [0, 3], T ∈ [0.05, 10], seeded.
fn random_grid() -> Vec<ModelParams> {
    let mut rng = RandomStates::new(DEFAULT_SEED);
    let mut grid = Vec::with_capacity(GRID_POINTS);
    while grid.len() < GRID_POINTS {
        let j = rng.uniform(-3.0, 3.0);
        let d = rng.uniform(0.0, 3.0);
        let t = rng.uniform(0.05, 10.0);
        if j.abs() > 1e-6 {
            grid.push(ModelParams::new(j, d, t).unwrap());
        }
    }
    grid
}

fn report(j: f64, d: f64, t: f64) -> UncertaintyReport {
    default_report(&ModelParams::new(j, d, t).unwrap()).unwrap()
}

fn states(grid: &[ModelParams]) -> Outcome {
    let worst = grid
        .iter()
        .map(|p| {
            let closed = thermal_state_closed(p).unwrap();
            let numeric = thermal_state_numeric(p).unwrap();
            closed.matrix().max_abs_diff(numeric.matrix())
        })
        .fold(0.0, f64::max);
    outcome(worst <= TOL_STATE, format!("max |Δρ| = {worst:.2e}"))
}

fn concurrence(grid: &[ModelParams]) -> Outcome {
    let worst = grid
        .iter()
        .map(|p| {
            let oracle = concurrence_wootters(&thermal_state_numeric(p).unwrap()).unwrap();
            (concurrence_closed(p).get() - oracle.get()).abs()
        })
        .fold(0.0, f64::max);
    let cold = concurrence_closed(&ModelParams::new(1.0, 1.0, 0.01).unwrap()).get();
    let hot = concurrence_closed(&ModelParams::new(1.0, 1.0, 10.0).unwrap()).get();
    outcome(
        worst <= TOL_CONCURRENCE && cold >= 0.99 && hot <= 0.01,
        format!("max |ΔC| = {worst:.2e}, C(T=0.01) = {cold:.6}, C(T=10) = {hot:.6}"),
    )
}

fn entropies(grid: &[ModelParams]) -> Outcome {
    let worst = grid
        .iter()
        .map(|p| closed_form_entropies(p).max_abs_diff(&numeric_entropies(p).unwrap()))
        .fold(0.0, f64::max);
    outcome(
        worst <= TOL_ENTROPY,
        format!("max closed-form deviation = {worst:.2e} (bits)"),
    )
}

fn bounds(grid: &[ModelParams]) -> Outcome {
    let (x, z) = (Observable::sigma_x(), Observable::sigma_z());
    let mut berta = f64::INFINITY;
    let mut mu = f64::INFINITY;
    for p in grid {
        let r = default_report(p).unwrap();
        berta = berta.min(r.l - r.w);
        let rho = thermal_state_numeric(p).unwrap();
        mu = mu.min(memoryless_uncertainty(&rho, &x, &z).unwrap() - 1.0);
    }
    outcome(
        berta >= -TOL_BOUND && mu >= -TOL_BOUND,
        format!("min (L − W) = {berta:.2e}, min (H(R) + H(S) − 1) = {mu:.2e}"),
    )
}

fn structure(grid: &[ModelParams]) -> Outcome {
    let c = complementarity(&Observable::sigma_x(), &Observable::sigma_z());
    let bits = (1.0 / c).log2();
    let half = ComplexMatrix::identity(2).scale_real(0.5);
    let memory = grid
        .iter()
        .map(|p| {
            reduced_memory_state(p)
                .unwrap()
                .matrix()
                .max_abs_diff(&half)
        })
        .fold(0.0, f64::max);
    let y_max = mixedness(&infinite_temperature_state()).get();
    outcome(
        (c - 0.5).abs() <= 1e-15
            && (bits - 1.0).abs() <= 1e-15
            && memory <= TOL_MEMORY
            && (y_max - 0.75).abs() <= 1e-15,
        format!("c = {c}, log2(1/c) = {bits}, max |ρ_B − I/2| = {memory:.2e}, Y(β=0) = {y_max}"),
    )
}

fn limits() -> Outcome {
    let hot = report(1.0, 1.0, 1e6);
    let u = hot.u.unwrap_or(f64::NAN);
    let hot_values = [
        (hot.w, 2.0),
        (hot.l, 2.0),
        (u, 1.0),
        (hot.v, 0.0),
        (hot.concurrence.get(), 0.0),
        (hot.mixedness.get(), 0.75),
    ];
    let hot_err = hot_values
        .iter()
        .map(|(a, b)| (a - b).abs())
        .fold(
            0.0,
            |m: f64, e| if e.is_nan() { f64::INFINITY } else { m.max(e) },
        );
    let cold = report(1.0, 1.0, 0.01);
    let cold_ok = cold.w <= TOL_COLD
        && cold.v <= TOL_COLD
        && cold.concurrence.get() >= 0.99
        && cold.mixedness.get() <= TOL_COLD;
    outcome(
        hot_err <= TOL_HOT && cold_ok,
        format!(
            "T=1e6 max err = {hot_err:.2e}; T=0.01 (W, V, C, Y) = ({:.1e}, {:.1e}, {:.6}, {:.1e})",
            cold.w,
            cold.v,
            cold.concurrence.get(),
            cold.mixedness.get()
        ),
    )
}

fn convexity() -> Outcome {
    let mut rng = RandomStates::new(DEFAULT_SEED);
    let mut worst = f64::INFINITY;
    for k in 0..CONVEXITY_TRIPLES {
        let dim = if k % 2 == 0 { 4 } else { 2 };
        let a = rng.density_matrix(dim);
        let b = rng.density_matrix(dim);
        let x = rng.uniform(0.0, 1.0);
        worst = worst.min(convexity_margin(&a, &b, x).unwrap());
    }
    outcome(
        worst >= -TOL_CONVEXITY,
        format!("{CONVEXITY_TRIPLES} triples, min margin = {worst:.2e}"),
    )
}

fn monotonicity() -> Outcome {
    let curve: Vec<UncertaintyReport> = Axis::linear(0.2, 5.0, 50)
        .values()
        .into_iter()
        .map(|t| report(1.0, 1.0, t))
        .collect();
    let w_up = curve.windows(2).all(|p| p[1].w >= p[0].w);
    let l_up = curve.windows(2).all(|p| p[1].l >= p[0].l);
    let u_down = curve.windows(2).all(|p| match (p[0].u, p[1].u) {
        (Some(a), Some(b)) => b <= a,
        _ => false,
    });
    let mut by_y: Vec<(f64, f64)> = curve.iter().map(|r| (r.mixedness.get(), r.w)).collect();
    by_y.sort_by(|a, b| a.0.total_cmp(&b.0));
    let w_of_y = by_y.windows(2).all(|p| p[1].0 > p[0].0 && p[1].1 > p[0].1);
    outcome(
        w_up && l_up && u_down && w_of_y,
        format!(
            "W non-decreasing: {w_up}, L non-decreasing: {l_up}, U non-increasing: {u_down}, W strictly increasing in Y: {w_of_y}"
        ),
    )
}

fn collapse() -> Outcome {
    let (j1, j2) = (0.5, 2.0);
    let t_grid = Axis::log(0.05 * j1, 10.0 * j2, 200).values();
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for d in [1.0, 0.5, 1.5, 2.5] {
        let dev = v_collapse_check(d, j1, j2, &t_grid).unwrap();
        worst = worst.max(dev);
        parts.push(format!("D={d}: {dev:.2e}"));
    }
    let rejected = matches!(
        v_collapse_check(1.0, 1.0, -1.0, &t_grid),
        Err(Error::ParamDomain(_))
    );
    outcome(
        worst <= TOL_COLLAPSE && rejected,
        format!("{}; opposite signs rejected: {rejected}", parts.join(", ")),
    )
}

fn sweep(out: &Path, threads: usize) -> Vec<u8> {
    let status = Command::new(env!("CARGO_BIN_EXE_dmeur"))
        .args([
            "sweep",
            "--j",
            "-3:3:7",
            "--d",
            "0:3:13",
            "--t",
            "0.05:5:20:log",
        ])
        .args(["--threads", &threads.to_string(), "--out"])
        .arg(out)
        .output()
        .unwrap();
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    std::fs::read(out).unwrap()
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let a = sweep(&dir.path().join("a.csv"), 1);
    let b = sweep(&dir.path().join("b.csv"), 1);
    let c = sweep(&dir.path().join("c.csv"), 4);
    let rows = a.iter().filter(|&&byte| byte == b'\n').count() - 1;
    outcome(
        a == b && a == c,
        format!(
            "{rows} rows; repeat identical: {}, 1 vs 4 threads identical: {}",
            a == b,
            a == c
        ),
    )
}

fn main() {
    let start = Instant::now();
    let grid = random_grid();
    let criteria: [Criterion; 10] = [
        ("oracle equivalence, states", Box::new(|| states(&grid))),
        (
            "oracle equivalence, concurrence",
            Box::new(|| concurrence(&grid)),
        ),
        (
            "oracle equivalence, entropies",
            Box::new(|| entropies(&grid)),
        ),
        ("entropic bounds", Box::new(|| bounds(&grid))),
        ("structural facts", Box::new(|| structure(&grid))),
        ("limit values", Box::new(limits)),
        ("mixedness convexity", Box::new(convexity)),
        ("temperature monotonicity", Box::new(monotonicity)),
        ("V collapse across |J|", Box::new(collapse)),
        ("sweep determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            n + 1,
            o.detail
        );
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
