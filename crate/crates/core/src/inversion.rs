//! Probabilistic inversion of the atomic contraction `M_β = diag(1, β)`.
//!
//! In the semiclassical case inputs are `ρ_x = diag(x, 1 − x)` and the
//! inverters are `N_γ = diag(γ, 1)`; the frontier has a closed form. In the
//! quantum case the inputs are a pure pair and the problem reduces to the
//! state-pair frontier of [`crate::tradeoff`] with the contracted pair as
//! input and the original pair as target. That reduction restricts outputs
//! to the target span; [`crate::oracle`] probes general operations on it
//! independently.

use crate::error::{check_unit, Error, Result};
use crate::linalg::Mat2;
use crate::qstate::{PureQubit, QuantumOperation};
use crate::tradeoff::{frontier_curve, CurveParams, TradeoffCurve, TradeoffPoint};
use crate::transform::StatePair;

/// `M_β = diag(1, β)` with `β ∈ [0, 1]` its smallest singular value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contraction {
    beta: f64,
}

impl Contraction {
    pub fn new(beta: f64) -> Result<Self> {
        Ok(Contraction {
            beta: check_unit("beta", beta)?,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::diag(1.0, self.beta)
    }

    pub fn operation(&self) -> QuantumOperation {
        QuantumOperation::single(self.matrix()).expect("diag(1, β) is a contraction")
    }

    /// `N_γ = diag(γ, 1)`; at `γ = β` this is `M_β⁻¹/‖M_β⁻¹‖`.
    pub fn inverter(gamma: f64) -> Result<QuantumOperation> {
        check_unit("gamma", gamma)?;
        QuantumOperation::single(Mat2::diag(gamma, 1.0))
    }

    /// `M|ψ⟩/‖M|ψ⟩‖`
    pub fn contract(&self, psi: &PureQubit) -> Result<PureQubit> {
        let [a, b] = self.matrix().apply(psi.amplitudes());
        PureQubit::normalized(a, b).map_err(|_| Error::Annihilated)
    }
}

/// Input `ρ_x = diag(x, 1 − x)` jointly diagonal with the contraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalState {
    x: f64,
}

impl DiagonalState {
    pub fn new(x: f64) -> Result<Self> {
        Ok(DiagonalState {
            x: check_unit("x", x)?,
        })
    }

    pub fn x(&self) -> f64 {
        self.x
    }
}

pub fn contraction_matrix(beta: f64) -> Result<QuantumOperation> {
    Ok(Contraction::new(beta)?.operation())
}

pub fn inverter_matrix(gamma: f64) -> Result<QuantumOperation> {
    Contraction::inverter(gamma)
}

fn check_semiclassical(gamma: f64, beta: f64, x: f64) -> Result<()> {
    check_unit("beta", beta)?;
    check_unit("x", x)?;
    if !(gamma >= beta && gamma <= 1.0) {
        return Err(Error::OutOfRange {
            name: "gamma",
            value: gamma,
            range: "[beta, 1]",
        });
    }
    if beta == 0.0 && x == 0.0 {
        return Err(Error::Annihilated);
    }
    Ok(())
}

/// `p(N_γ; ρ_x) = (γ²x + β²(1 − x)) / (x + β²(1 − x))`
pub fn semiclassical_probability(gamma: f64, beta: f64, x: f64) -> Result<f64> {
    check_semiclassical(gamma, beta, x)?;
    let b2 = beta * beta;
    let p = (gamma * gamma * x + b2 * (1.0 - x)) / (x + b2 * (1.0 - x));
    Ok(p.clamp(0.0, 1.0))
}

/// `f(N_γ; ρ_x) = (γx + β(1 − x)) / √(γ²x + β²(1 − x))`
pub fn semiclassical_fidelity(gamma: f64, beta: f64, x: f64) -> Result<f64> {
    check_semiclassical(gamma, beta, x)?;
    let den = (gamma * gamma * x + beta * beta * (1.0 - x)).sqrt();
    if den == 0.0 {
        // γ = β = 0 only leaves x = 1, which passes untouched
        return Ok(1.0);
    }
    Ok(((gamma * x + beta * (1.0 - x)) / den).min(1.0))
}

/// `1 − f(N_γ; ρ_x)` in the cancellation-free form
/// `x(1 − x)(γ − β)² / (√n (√n + γx + β(1 − x)))` with `n = γ²x + β²(1 − x)`.
pub fn semiclassical_infidelity(gamma: f64, beta: f64, x: f64) -> Result<f64> {
    check_semiclassical(gamma, beta, x)?;
    let n = gamma * gamma * x + beta * beta * (1.0 - x);
    if n == 0.0 {
        return Ok(0.0);
    }
    let root = n.sqrt();
    let d = gamma - beta;
    Ok((x * (1.0 - x) * d * d / (root * (root + gamma * x + beta * (1.0 - x)))).max(0.0))
}

/// Smallest admissible `γ` for success probability at least `p̄`: `√p̄`.
pub fn admissible_set_floor(p_bar: f64) -> Result<f64> {
    Ok(check_unit("p_bar", p_bar)?.sqrt())
}

/// Worst input for `N_γ`: `x* = β/(γ + β)` with fidelity `2√(γβ)/(γ + β)`.
///
/// From stationarity of `f` in `x`; `f` is convex-like on `[0, 1]` with
/// `f(0) = f(1) = 1`.
pub fn worst_case_input(gamma: f64, beta: f64) -> Result<(f64, f64)> {
    check_semiclassical(gamma, beta, 0.5)?;
    if gamma + beta == 0.0 {
        return Err(Error::DegenerateContraction);
    }
    let x = beta / (gamma + beta);
    let f = 2.0 * (gamma * beta).sqrt() / (gamma + beta);
    Ok((x, f.min(1.0)))
}

fn check_beta(beta: f64) -> Result<Contraction> {
    if beta == 0.0 {
        return Err(Error::DegenerateContraction);
    }
    Contraction::new(beta)
}

/// Frontier `F(p̄) = min_x f(N_√p̄; ρ_x)` for `p̄` uniform on `[β², 1]`.
pub fn semiclassical_frontier(beta: f64, n: usize) -> Result<TradeoffCurve> {
    check_beta(beta)?;
    if n < 2 {
        return Err(Error::TooFewPoints(n));
    }
    let params = CurveParams::Contraction { beta };
    let lo = beta * beta;
    if lo >= 1.0 {
        return Ok(TradeoffCurve::single(1.0, 1.0, params));
    }
    let points = (0..n)
        .map(|i| {
            let p = if i + 1 == n {
                1.0
            } else {
                lo + (1.0 - lo) * i as f64 / (n - 1) as f64
            };
            let gamma = admissible_set_floor(p)?.max(beta);
            let f = if i == 0 {
                1.0
            } else {
                worst_case_input(gamma, beta)?.1
            };
            Ok(TradeoffPoint { p, f })
        })
        .collect::<Result<Vec<_>>>()?;
    TradeoffCurve::new(points, params)
}

/// The pair after the contraction, `|ψ±′⟩ = M_β|ψ±⟩/‖M_β|ψ±⟩‖`.
pub fn contracted_pair(beta: f64, psi: &StatePair) -> Result<StatePair> {
    let m = check_beta(beta)?;
    Ok(StatePair::new(
        m.contract(&psi.plus)?,
        m.contract(&psi.minus)?,
    ))
}

/// Inversion frontier for a pure pair: the state-pair frontier from the
/// contracted overlap back to the original one. If the contraction did not
/// make the pair less distinguishable, inversion is exact and deterministic.
pub fn quantum_inversion_frontier(beta: f64, psi: &StatePair, n: usize) -> Result<TradeoffCurve> {
    let primed = contracted_pair(beta, psi)?;
    let s_in = primed.overlap();
    let s_out = psi.overlap();
    if s_out >= s_in {
        if n < 2 {
            return Err(Error::TooFewPoints(n));
        }
        return Ok(TradeoffCurve::single(
            1.0,
            1.0,
            CurveParams::Overlaps {
                s_psi: s_in,
                s_phi: s_out,
            },
        ));
    }
    frontier_curve(s_in, s_out, n)
}
