//! Default verification grids: the standard transform, semiclassical and
//! quantum inversion curve families.

use crate::error::Result;
use crate::inversion::contracted_pair;
use crate::transform::StatePair;

use super::{
    probe_inversion_frontier, probe_transform_frontier, uniform_grid, InversionMode, OracleReport,
    SearchConfig,
};

/// Probability points per probed curve.
pub const SUITE_POINTS: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    Transform,
    Semiclassical,
    Quantum,
    All,
}

impl SuiteKind {
    fn includes(self, other: SuiteKind) -> bool {
        self == SuiteKind::All || self == other
    }
}

/// Which curve a report belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Probe {
    Transform { s_psi: f64, s_phi: f64 },
    Semiclassical { beta: f64 },
    Quantum { beta: f64, overlap_in: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteRow {
    pub probe: Probe,
    pub report: OracleReport,
}

fn tenths(lo: u32, hi: u32) -> impl Iterator<Item = f64> {
    (lo..=hi).map(|k| k as f64 / 10.0)
}

/// `(s_psi, s_phi)` families for input overlaps 0.6, 0.9 and 0.99.
pub fn transform_curves() -> Vec<(f64, f64)> {
    let mut curves: Vec<(f64, f64)> = tenths(0, 6).map(|s| (0.6, s)).collect();
    curves.extend(tenths(0, 9).map(|s| (0.9, s)));
    curves.extend((0..=9).map(|k| (0.99, (9 + 10 * k) as f64 / 100.0)));
    curves
}

/// Contraction strengths 0.1, 0.2, ..., 1.0.
pub fn semiclassical_betas() -> Vec<f64> {
    tenths(1, 10).collect()
}

/// `(β, input overlap)` pairs for the quantum inversion suite.
pub fn quantum_cases() -> Vec<(f64, f64)> {
    let mut cases = Vec::new();
    for overlap in [0.0, 0.5] {
        for beta in [0.1, 0.3, 0.5, 0.7, 0.9] {
            cases.push((beta, overlap));
        }
    }
    cases
}

/// Runs the selected oracle probes over their default grids.
pub fn run_suite(kind: SuiteKind, cfg: &SearchConfig) -> Result<Vec<SuiteRow>> {
    cfg.validate()?;
    let mut rows = Vec::new();
    if kind.includes(SuiteKind::Transform) {
        for (s_psi, s_phi) in transform_curves() {
            let (p0, _) = crate::tradeoff::anchor_points(s_psi, s_phi)?;
            let grid = uniform_grid(p0, SUITE_POINTS);
            for report in probe_transform_frontier(s_psi, s_phi, &grid, cfg)? {
                rows.push(SuiteRow {
                    probe: Probe::Transform { s_psi, s_phi },
                    report,
                });
            }
        }
    }
    if kind.includes(SuiteKind::Semiclassical) {
        for beta in semiclassical_betas() {
            let grid = uniform_grid(beta * beta, SUITE_POINTS);
            for report in probe_inversion_frontier(beta, &InversionMode::Semiclassical, &grid, cfg)?
            {
                rows.push(SuiteRow {
                    probe: Probe::Semiclassical { beta },
                    report,
                });
            }
        }
    }
    if kind.includes(SuiteKind::Quantum) {
        for (beta, overlap_in) in quantum_cases() {
            let psi = StatePair::canonical_z(overlap_in)?;
            let primed = contracted_pair(beta, &psi)?;
            let (s_in, s_out) = (primed.overlap(), psi.overlap());
            let lo = if s_out >= s_in {
                1.0
            } else {
                (1.0 - s_in) / (1.0 - s_out)
            };
            let grid = uniform_grid(lo, SUITE_POINTS);
            for report in probe_inversion_frontier(beta, &InversionMode::Quantum(psi), &grid, cfg)?
            {
                rows.push(SuiteRow {
                    probe: Probe::Quantum { beta, overlap_in },
                    report,
                });
            }
        }
    }
    Ok(rows)
}

/// Largest `|violation|` over the rows, 0 for an empty suite.
pub fn max_violation(rows: &[SuiteRow]) -> f64 {
    rows.iter()
        .map(|r| r.report.violation.abs())
        .fold(0.0, f64::max)
}
