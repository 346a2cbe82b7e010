//! Brute-force search over quantum operations, used to check that nothing
//! beats the analytic frontiers and that the constructive solutions reach
//! them.
//!
//! The search is one-sided: every reported point comes from an operation
//! whose trace-non-increasing condition and probability constraint are
//! re-verified after the search, so a positive violation beyond tolerance
//! would be a genuine counterexample.

mod nelder_mead;
pub mod suite;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::inversion::{contracted_pair, worst_case_input, Contraction};
use crate::linalg::{Mat2, C64};
use crate::qstate::{
    uhlmann_fidelity, DensityMatrix, QuantumOperation, MAX_KRAUS, PROB_FLOOR, TOL_OPERATION,
};
use crate::tradeoff::{tradeoff_fidelity, worst_case_merit, xi_pair_toward, TradeoffPoint};
use crate::transform::{build_balanced_kraus, StatePair};

use nelder_mead::NelderMead;

pub use suite::{run_suite, SuiteKind, SuiteRow};

/// Weight of the probability shortfall in the penalized objective.
pub const PENALTY: f64 = 1e3;
/// Slack on the probability constraint when filtering candidates.
pub const FEASIBILITY_SLACK: f64 = 1e-12;
/// Points on the `x` grid for the semiclassical worst case.
pub const X_GRID: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub restarts: usize,
    pub refine_iters: usize,
    pub kraus_rank: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            restarts: 256,
            refine_iters: 500,
            kraus_rank: 2,
            seed: 0,
            tolerance: 1e-6,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be positive"));
        }
        if self.refine_iters == 0 {
            return Err(Error::InvalidConfig("refine iterations must be positive"));
        }
        if !(1..=MAX_KRAUS).contains(&self.kraus_rank) {
            return Err(Error::InvalidConfig("Kraus rank must be in 1..=4"));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidConfig("tolerance must be positive"));
        }
        Ok(())
    }
}

/// Outcome of the search at one demanded probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReport {
    /// Demanded worst-case probability.
    pub target_p: f64,
    /// Best feasible merit found.
    pub best_point: TradeoffPoint,
    /// Analytic frontier fidelity at `target_p`.
    pub frontier_value: f64,
    /// `best_point.f − frontier_value`.
    pub violation: f64,
    pub samples_evaluated: usize,
}

impl OracleReport {
    pub fn within(&self, tolerance: f64) -> bool {
        self.violation.abs() <= tolerance
    }
}

/// Operation family searched by the refinement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// Any Kraus list of the given length.
    General { rank: usize },
    /// Single real diagonal operator `diag(a, b)`.
    Diagonal,
}

impl Family {
    fn encode(&self, op: &QuantumOperation) -> Vec<f64> {
        match *self {
            Family::General { rank } => {
                let mut x = Vec::with_capacity(8 * rank);
                for j in 0..rank {
                    let k = op.kraus().get(j).copied().unwrap_or(Mat2::ZERO);
                    for z in k.0.iter().flatten() {
                        x.push(z.re);
                        x.push(z.im);
                    }
                }
                x
            }
            Family::Diagonal => {
                let k = op.kraus()[0];
                vec![k.get(0, 0).norm(), k.get(1, 1).norm()]
            }
        }
    }

    fn kraus(&self, x: &[f64]) -> Vec<Mat2> {
        match self {
            Family::General { .. } => x
                .chunks_exact(8)
                .map(|c| {
                    Mat2::new(
                        C64::new(c[0], c[1]),
                        C64::new(c[2], c[3]),
                        C64::new(c[4], c[5]),
                        C64::new(c[6], c[7]),
                    )
                })
                .collect(),
            Family::Diagonal => vec![Mat2::diag(x[0], x[1])],
        }
    }

    /// Rescales parameters so that `ΣK†K ≤ I`.
    fn project(&self, x: &mut [f64]) {
        let norm = match self {
            Family::General { .. } => self
                .kraus(x)
                .iter()
                .fold(Mat2::ZERO, |a, k| a + k.adjoint() * *k)
                .hermitian_eigenvalues()[1],
            Family::Diagonal => x[0].abs().max(x[1].abs()).powi(2),
        };
        if norm > 1.0 {
            let s = 1.0 / norm.sqrt();
            x.iter_mut().for_each(|v| *v *= s);
        }
    }

    fn decode(&self, x: &[f64]) -> Result<QuantumOperation> {
        QuantumOperation::new(self.kraus(x))
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> Result<QuantumOperation> {
        match *self {
            Family::General { rank } => random_operation(rank, rng),
            Family::Diagonal => {
                let a: f64 = rng.random_range(-1.0..=1.0);
                let b: f64 = rng.random_range(-1.0..=1.0);
                QuantumOperation::single(Mat2::diag(a, b))
            }
        }
    }
}

/// Random operation with `rank` Kraus operators: Gaussian entries, jointly
/// rescaled so that the largest eigenvalue of `ΣK†K` is uniform in `(0, 1]`.
pub fn random_operation<R: Rng + ?Sized>(rank: usize, rng: &mut R) -> Result<QuantumOperation> {
    if !(1..=MAX_KRAUS).contains(&rank) {
        return Err(Error::KrausCount(rank));
    }
    let mut gauss = || C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    let kraus: Vec<Mat2> = (0..rank)
        .map(|_| Mat2::new(gauss(), gauss(), gauss(), gauss()))
        .collect();
    let norm = kraus
        .iter()
        .fold(Mat2::ZERO, |a, k| a + k.adjoint() * *k)
        .hermitian_eigenvalues()[1];
    let target = 1.0 - rng.random::<f64>(); // (0, 1]
    let s = (target / norm).sqrt();
    let scaled: Vec<Mat2> = kraus.iter().map(|k| k.scale(s)).collect();
    let over = scaled
        .iter()
        .fold(Mat2::ZERO, |a, k| a + k.adjoint() * *k)
        .hermitian_eigenvalues()[1];
    if over > 1.0 {
        let t = 1.0 / over.sqrt();
        return QuantumOperation::new(scaled.iter().map(|k| k.scale(t)).collect());
    }
    QuantumOperation::new(scaled)
}

/// Result of a local refinement.
#[derive(Debug, Clone)]
pub struct Refinement {
    pub operation: QuantumOperation,
    pub objective: f64,
    pub evaluations: usize,
}

/// Derivative-free local maximization of `objective` over Kraus lists of the
/// same length as `start`, re-projecting onto `ΣK†K ≤ I` after every
/// candidate.
pub fn refine_operation<F>(start: &QuantumOperation, objective: F, iters: usize) -> Refinement
where
    F: FnMut(&QuantumOperation) -> f64,
{
    refine_in(
        Family::General { rank: start.rank() },
        start,
        objective,
        iters,
    )
}

/// Projects `op` onto the trace-non-increasing set by a global rescale.
pub fn project_operation(op: &QuantumOperation) -> QuantumOperation {
    let family = Family::General { rank: op.rank() };
    let mut x = family.encode(op);
    family.project(&mut x);
    family.decode(&x).expect("projected operation is valid")
}

fn refine_in<F>(
    family: Family,
    start: &QuantumOperation,
    mut objective: F,
    iters: usize,
) -> Refinement
where
    F: FnMut(&QuantumOperation) -> f64,
{
    let nm = NelderMead {
        max_iters: iters,
        step: 0.1,
    };
    let x0 = family.encode(start);
    let out = nm.maximize(
        &x0,
        |x| family.project(x),
        |x| match family.decode(x) {
            Ok(op) => objective(&op),
            Err(_) => f64::NEG_INFINITY,
        },
    );
    Refinement {
        operation: family.decode(&out.x).expect("projected operation is valid"),
        objective: out.value,
        evaluations: out.evaluations,
    }
}

fn penalized(pt: TradeoffPoint, target_p: f64) -> f64 {
    pt.f - PENALTY * (target_p - pt.p).max(0.0)
}

struct Candidate {
    point: TradeoffPoint,
    index: usize,
}

/// Runs every start, keeps the best feasible point and merges
/// deterministically on (F, then p, then lowest start index).
fn search_point<M>(
    family: Family,
    seeds: &[QuantumOperation],
    cfg: &SearchConfig,
    stream: u64,
    target_p: f64,
    merit: M,
) -> Result<(Option<TradeoffPoint>, usize)>
where
    M: Fn(&QuantumOperation) -> TradeoffPoint + Sync,
{
    let starts = seeds.len() + cfg.restarts;
    let results: Vec<Result<(Option<Candidate>, usize)>> = (0..starts)
        .into_par_iter()
        .map(|index| {
            let start = if index < seeds.len() {
                seeds[index].clone()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream((stream << 32) | index as u64);
                family.random(&mut rng)?
            };
            let mut best: Option<TradeoffPoint> = None;
            let objective = |op: &QuantumOperation| {
                let pt = merit(op);
                if pt.p >= target_p - FEASIBILITY_SLACK
                    && best.is_none_or(|b| (pt.f, pt.p) > (b.f, b.p))
                {
                    best = Some(pt);
                }
                penalized(pt, target_p)
            };
            let refined = refine_in(family, &start, objective, cfg.refine_iters);
            // re-verify the final operation from scratch
            let verified = QuantumOperation::new(refined.operation.kraus().to_vec())
                .ok()
                .filter(|op| op.effect_norm() <= 1.0 + TOL_OPERATION)
                .map(|op| merit(&op))
                .filter(|pt| pt.p >= target_p - FEASIBILITY_SLACK);
            let point = match (best, verified) {
                (Some(b), Some(v)) => Some(if (v.f, v.p) > (b.f, b.p) { v } else { b }),
                (b, v) => b.or(v),
            };
            Ok((
                point.map(|point| Candidate { point, index }),
                refined.evaluations,
            ))
        })
        .collect();

    let mut evaluations = 0;
    let mut best: Option<Candidate> = None;
    for r in results {
        let (cand, evals) = r?;
        evaluations += evals;
        if let Some(c) = cand {
            let better = match &best {
                None => true,
                Some(b) => {
                    (c.point.f, c.point.p, std::cmp::Reverse(c.index))
                        > (b.point.f, b.point.p, std::cmp::Reverse(b.index))
                }
            };
            if better {
                best = Some(c);
            }
        }
    }
    Ok((best.map(|c| c.point), evaluations))
}

fn check_grid(p_grid: &[f64]) -> Result<()> {
    for &p in p_grid {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::OutOfRange {
                name: "p",
                value: p,
                range: "(0, 1]",
            });
        }
    }
    Ok(())
}

fn report(target_p: f64, best: Option<TradeoffPoint>, frontier: f64, evals: usize) -> OracleReport {
    let best_point = best.unwrap_or(TradeoffPoint { p: 0.0, f: 0.0 });
    OracleReport {
        target_p,
        best_point,
        frontier_value: frontier,
        violation: best_point.f - frontier,
        samples_evaluated: evals,
    }
}

fn pad_seed(op: QuantumOperation, family: Family) -> QuantumOperation {
    match family {
        Family::General { rank } if op.rank() < rank => {
            let mut k = op.kraus().to_vec();
            k.resize(rank, Mat2::ZERO);
            QuantumOperation::new(k).expect("zero padding keeps the operation valid")
        }
        _ => op,
    }
}

/// Constructive frontier operation at probability `p`: the balanced exact
/// transformation onto the intermediate pair with fidelity `F(p)`.
fn constructive_seed(psi: &StatePair, phi: &StatePair, p: f64, f: f64) -> Option<QuantumOperation> {
    let xi = xi_pair_toward(phi, psi, f).ok()?;
    build_balanced_kraus(psi, &xi, p).ok()
}

fn probe_pair_frontier(
    psi: &StatePair,
    phi: &StatePair,
    s_psi: f64,
    s_phi: f64,
    p_grid: &[f64],
    cfg: &SearchConfig,
    stream_base: u64,
) -> Result<Vec<OracleReport>> {
    let family = Family::General {
        rank: cfg.kraus_rank,
    };
    p_grid
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let frontier = tradeoff_fidelity(p, s_psi, s_phi)?;
            let seeds: Vec<QuantumOperation> = constructive_seed(psi, phi, p, frontier)
                .filter(|op| op.rank() <= cfg.kraus_rank)
                .map(|op| pad_seed(op, family))
                .into_iter()
                .collect();
            let (best, evals) = search_point(
                family,
                &seeds,
                cfg,
                stream_base + i as u64,
                p,
                |op: &QuantumOperation| worst_case_merit(op, psi, phi),
            )?;
            Ok(report(p, best, frontier, evals))
        })
        .collect()
}

/// Searches general operations for a better worst-case fidelity than the
/// state-pair frontier at each demanded probability. Inputs and targets are
/// the canonical symmetric pairs with overlaps `s_psi` and `s_phi`.
pub fn probe_transform_frontier(
    s_psi: f64,
    s_phi: f64,
    p_grid: &[f64],
    cfg: &SearchConfig,
) -> Result<Vec<OracleReport>> {
    cfg.validate()?;
    check_grid(p_grid)?;
    crate::tradeoff::anchor_points(s_psi, s_phi)?;
    let psi = StatePair::canonical(s_psi)?;
    let phi = StatePair::canonical(s_phi)?;
    probe_pair_frontier(&psi, &phi, s_psi, s_phi, p_grid, cfg, 0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InversionMode {
    /// Diagonal inputs `ρ_x` and diagonal single-Kraus inverters.
    Semiclassical,
    /// Two pure inputs and arbitrary inverting operations.
    Quantum(StatePair),
}

/// Semiclassical merit of an inverter `r`: minimum over `x` of the success
/// probability and of the fidelity with `ρ_x`, evaluated through the general
/// state machinery on a grid plus a golden-section polish.
pub fn semiclassical_merit(contraction: &Contraction, r: &QuantumOperation) -> TradeoffPoint {
    let m = contraction.operation();
    let eval = |x: f64| -> (f64, f64) {
        let Ok(rho) = DensityMatrix::diagonal(x) else {
            return (0.0, 0.0);
        };
        let Ok(primed) = m.apply(&rho).state() else {
            return (0.0, 0.0);
        };
        let out = r.apply(&primed);
        if !out.occurred() {
            return (out.probability.max(0.0), 0.0);
        }
        let f = out.state().map_or(0.0, |s| uhlmann_fidelity(&rho, &s));
        (out.probability, f)
    };
    worst_over_x(eval)
}

/// Same merit as [`semiclassical_merit`] for `diag(a, b)`, using the fact
/// that every state involved is diagonal.
pub fn diagonal_merit(beta: f64, a: f64, b: f64) -> TradeoffPoint {
    let b2 = beta * beta;
    let eval = |x: f64| -> (f64, f64) {
        let norm = x + b2 * (1.0 - x);
        let out = a * a * x + b * b * b2 * (1.0 - x);
        if norm <= 0.0 {
            return (0.0, 0.0);
        }
        let p = out / norm;
        if p < PROB_FLOOR {
            return (p.max(0.0), 0.0);
        }
        let f = (a.abs() * x + b.abs() * beta * (1.0 - x)) / out.sqrt();
        (p, f)
    };
    worst_over_x(eval)
}

fn worst_over_x(eval: impl Fn(f64) -> (f64, f64)) -> TradeoffPoint {
    let mut p_min = f64::INFINITY;
    let mut f_min = f64::INFINITY;
    let mut arg = 0;
    for k in 0..X_GRID {
        let x = k as f64 / (X_GRID - 1) as f64;
        let (p, f) = eval(x);
        p_min = p_min.min(p);
        if f < f_min {
            f_min = f;
            arg = k;
        }
    }
    let step = 1.0 / (X_GRID - 1) as f64;
    let lo = (arg as f64 - 1.0).max(0.0) * step;
    let hi = (arg as f64 + 1.0).min((X_GRID - 1) as f64) * step;
    let polished = golden_min(lo, hi, |x| eval(x).1);
    TradeoffPoint {
        p: p_min.clamp(0.0, 1.0),
        f: f_min.min(polished).clamp(0.0, 1.0),
    }
}

fn golden_min(mut a: f64, mut b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-10 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    fc.min(fd)
}

/// Semiclassical frontier value: `2√(γβ)/(γ + β)` at `γ = √p̄`, 1 below `β²`.
fn semiclassical_frontier_value(beta: f64, p: f64) -> Result<f64> {
    if p <= beta * beta {
        return Ok(1.0);
    }
    Ok(worst_case_input(p.sqrt(), beta)?.1)
}

/// Searches inverters of `M_β` for a better worst-case fidelity than the
/// inversion frontier at each demanded probability.
pub fn probe_inversion_frontier(
    beta: f64,
    mode: &InversionMode,
    p_grid: &[f64],
    cfg: &SearchConfig,
) -> Result<Vec<OracleReport>> {
    cfg.validate()?;
    check_grid(p_grid)?;
    if beta == 0.0 {
        return Err(Error::DegenerateContraction);
    }
    Contraction::new(beta)?;
    match mode {
        InversionMode::Semiclassical => p_grid
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let frontier = semiclassical_frontier_value(beta, p)?;
                let seed = QuantumOperation::single(Mat2::diag(p.sqrt().max(beta), 1.0))?;
                let (best, evals) = search_point(
                    Family::Diagonal,
                    &[seed],
                    cfg,
                    (1 << 20) + i as u64,
                    p,
                    |op: &QuantumOperation| {
                        let k = op.kraus()[0];
                        diagonal_merit(beta, k.get(0, 0).norm(), k.get(1, 1).norm())
                    },
                )?;
                Ok(report(p, best, frontier, evals))
            })
            .collect(),
        InversionMode::Quantum(psi) => {
            let primed = contracted_pair(beta, psi)?;
            let (s_in, s_out) = (primed.overlap(), psi.overlap());
            if s_out >= s_in {
                // inversion is exact: frontier is F = 1 everywhere
                let family = Family::General {
                    rank: cfg.kraus_rank,
                };
                let seed = constructive_seed(&primed, psi, 1.0, 1.0)
                    .filter(|op| op.rank() <= cfg.kraus_rank)
                    .map(|op| pad_seed(op, family));
                return p_grid
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| {
                        let (best, evals) = search_point(
                            family,
                            seed.as_slice(),
                            cfg,
                            (2 << 20) + i as u64,
                            p,
                            |op: &QuantumOperation| worst_case_merit(op, &primed, psi),
                        )?;
                        Ok(report(p, best, 1.0, evals))
                    })
                    .collect();
            }
            probe_pair_frontier(&primed, psi, s_in, s_out, p_grid, cfg, 2 << 20)
        }
    }
}

/// `n` probabilities uniform on `[lo, 1]`, or just `[1]` when `lo ≥ 1`.
pub fn uniform_grid(lo: f64, n: usize) -> Vec<f64> {
    if lo >= 1.0 || n < 2 {
        return vec![1.0];
    }
    (0..n)
        .map(|i| {
            if i + 1 == n {
                1.0
            } else {
                lo + (1.0 - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> SearchConfig {
        SearchConfig {
            restarts: 8,
            refine_iters: 200,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn random_operations_are_valid_and_reproducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for rank in 1..=4 {
            for _ in 0..200 {
                let op = random_operation(rank, &mut rng).unwrap();
                assert_eq!(op.rank(), rank);
                assert!(op.effect_norm() <= 1.0 + 1e-10);
            }
        }
        let a = random_operation(3, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        let b = random_operation(3, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        assert_eq!(a, b);
        assert!(random_operation(0, &mut rng).is_err());
        assert!(random_operation(5, &mut rng).is_err());
    }

    #[test]
    fn rank_one_at_full_scale_has_unit_norm() {
        // rescale target is uniform in (0, 1]; construct a unit-norm one directly
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let op = random_operation(1, &mut rng).unwrap();
        let k = op.kraus()[0];
        let s = k.singular_values()[0];
        let unit = QuantumOperation::single(k.scale(1.0 / s)).unwrap();
        assert!((unit.kraus()[0].singular_values()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projection_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let op = random_operation(2, &mut rng).unwrap();
        assert_eq!(project_operation(&op), op);
        let big = QuantumOperation::new(op.kraus().to_vec()).unwrap();
        let once = project_operation(&big);
        assert_eq!(project_operation(&once), once);
    }

    #[test]
    fn projection_fixes_trace_increasing_params() {
        let family = Family::General { rank: 2 };
        let mut x = vec![0.9; 16];
        family.project(&mut x);
        let op = family.decode(&x).unwrap();
        assert!((op.effect_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn refinement_is_stationary_at_the_constructive_optimum() {
        let psi = StatePair::canonical(0.6).unwrap();
        let phi = StatePair::canonical(0.0).unwrap();
        let p = 0.7;
        let f = tradeoff_fidelity(p, 0.6, 0.0).unwrap();
        let seed = constructive_seed(&psi, &phi, p, f).unwrap();
        let objective = |op: &QuantumOperation| penalized(worst_case_merit(op, &psi, &phi), p);
        let start = objective(&seed);
        let refined = refine_operation(&seed, objective, 500);
        assert!(
            refined.objective >= start - 1e-12,
            "{} {}",
            refined.objective,
            start
        );
        assert!(
            refined.objective - start <= 1e-8,
            "{}",
            refined.objective - start
        );
    }

    #[test]
    fn refinement_improves_from_zero() {
        let psi = StatePair::canonical(0.6).unwrap();
        let phi = StatePair::canonical(0.2).unwrap();
        let zero = QuantumOperation::new(vec![Mat2::ZERO, Mat2::ZERO]).unwrap();
        let objective = |op: &QuantumOperation| penalized(worst_case_merit(op, &psi, &phi), 0.8);
        let start = objective(&zero);
        let refined = refine_operation(&zero, objective, 50);
        assert!(refined.objective > start);
        assert!(refined.operation.effect_norm() <= 1.0 + 1e-10);
    }

    #[test]
    fn transform_probe_small() {
        let reports = probe_transform_frontier(0.6, 0.0, &[0.4, 0.7, 1.0], &small_cfg()).unwrap();
        for r in &reports {
            assert!(r.within(1e-6), "{r:?}");
        }
        assert!((reports[1].frontier_value - 0.97558).abs() < 1e-5);
        assert!((reports[0].best_point.f - 1.0).abs() < 1e-9);
    }

    #[test]
    fn identical_overlaps_give_unit_fidelity() {
        let reports = probe_transform_frontier(0.4, 0.4, &[0.5, 1.0], &small_cfg()).unwrap();
        for r in &reports {
            assert_eq!(r.frontier_value, 1.0);
            assert!(r.within(1e-6), "{r:?}");
        }
    }

    #[test]
    fn semiclassical_probe_small() {
        let cfg = small_cfg();
        let r = probe_inversion_frontier(0.1, &InversionMode::Semiclassical, &[0.01, 1.0], &cfg)
            .unwrap();
        assert!((r[0].best_point.f - 1.0).abs() < 1e-9, "{:?}", r[0]);
        assert!((r[1].frontier_value - 0.57496).abs() < 1e-5);
        assert!(r.iter().all(|r| r.within(1e-6)), "{r:?}");
    }

    #[test]
    fn quantum_probe_at_p0() {
        let had = StatePair::canonical_z(0.0).unwrap();
        let r = probe_inversion_frontier(0.5, &InversionMode::Quantum(had), &[0.4], &small_cfg())
            .unwrap();
        assert!((r[0].best_point.f - 1.0).abs() < 1e-9, "{:?}", r[0]);
    }

    #[test]
    fn probes_validate_inputs() {
        let cfg = small_cfg();
        assert!(probe_transform_frontier(0.6, 0.0, &[1.2], &cfg).is_err());
        assert!(probe_transform_frontier(0.6, 0.0, &[0.0], &cfg).is_err());
        assert_eq!(
            probe_inversion_frontier(0.0, &InversionMode::Semiclassical, &[0.5], &cfg),
            Err(Error::DegenerateContraction)
        );
        let bad = SearchConfig {
            tolerance: -1.0,
            ..cfg
        };
        assert!(probe_transform_frontier(0.6, 0.0, &[0.5], &bad).is_err());
    }

    #[test]
    fn diagonal_merit_matches_general_path() {
        for (beta, a, b) in [
            (0.1, 0.3, 1.0),
            (0.5, 0.8, 0.9),
            (0.9, 1.0, 0.2),
            (0.3, 0.0, 1.0),
        ] {
            let c = Contraction::new(beta).unwrap();
            let r = QuantumOperation::single(Mat2::diag(a, b)).unwrap();
            let g = semiclassical_merit(&c, &r);
            let d = diagonal_merit(beta, a, b);
            assert!(
                (g.p - d.p).abs() < 1e-12 && (g.f - d.f).abs() < 1e-9,
                "{g:?} {d:?}"
            );
        }
    }

    #[test]
    fn semiclassical_merit_matches_closed_form() {
        let c = Contraction::new(0.5).unwrap();
        let r = QuantumOperation::single(Mat2::diag(0.8, 1.0)).unwrap();
        let pt = semiclassical_merit(&c, &r);
        assert!((pt.p - 0.64).abs() < 1e-12);
        assert!((pt.f - 2.0 * 0.4f64.sqrt() / 1.3).abs() < 1e-9);
    }
}
