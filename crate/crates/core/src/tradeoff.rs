//! Worst-case probability-fidelity frontier for `ψ± → φ±`.
//!
//! Everything here works in the canonical frame of [`StatePair::canonical`]:
//! both pairs lie in the x-z Bloch plane, mirror-symmetric about the x-axis,
//! with `ψ₊` next to `φ₊`. The frontier joins `(1, f₀)` (do nothing) to
//! `(p₀, 1)` (exact transformation) and is swept by pure intermediate pairs
//! `ξ±` on the arcs between the two pairs.

use crate::error::{check_unit, Error, Result};
use crate::linalg::{dot3, norm3, scale3, sub3};
use crate::qstate::{pure_state_fidelity, PureQubit, QuantumOperation, PROB_FLOOR};
use crate::transform::{rotate_toward, symmetry_axis, StatePair};

/// Worst-case success probability and fidelity of one operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeoffPoint {
    pub p: f64,
    pub f: f64,
}

impl TradeoffPoint {
    pub fn new(p: f64, f: f64) -> Result<Self> {
        check_unit("p", p)?;
        check_unit("F", f)?;
        Ok(TradeoffPoint { p, f })
    }
}

/// Parameters identifying a sampled frontier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveParams {
    /// Input overlap `|⟨ψ₊|ψ₋⟩|` and target overlap `|⟨φ₊|φ₋⟩|`.
    Overlaps { s_psi: f64, s_phi: f64 },
    /// Smallest singular value of the contraction being inverted.
    Contraction { beta: f64 },
}

/// Frontier samples, strictly increasing in `p` with non-increasing `F`.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffCurve {
    points: Vec<TradeoffPoint>,
    params: CurveParams,
}

impl TradeoffCurve {
    pub fn new(points: Vec<TradeoffPoint>, params: CurveParams) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidCurve("no points"));
        }
        for w in points.windows(2) {
            if !(w[1].p > w[0].p) {
                return Err(Error::InvalidCurve("p is not strictly increasing"));
            }
            if w[1].f > w[0].f {
                return Err(Error::InvalidCurve("F increases along the curve"));
            }
        }
        Ok(TradeoffCurve { points, params })
    }

    pub(crate) fn single(p: f64, f: f64, params: CurveParams) -> Self {
        TradeoffCurve {
            points: vec![TradeoffPoint { p, f }],
            params,
        }
    }

    pub fn points(&self) -> &[TradeoffPoint] {
        &self.points
    }

    pub fn params(&self) -> CurveParams {
        self.params
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `p = min{p₊, p₋}` and `F = min{F(φ₊, ρ₊), F(φ₋, ρ₋)}`. If either outcome
/// has negligible probability, `F` is 0.
pub fn worst_case_merit(op: &QuantumOperation, psi: &StatePair, phi: &StatePair) -> TradeoffPoint {
    let plus = op.apply_pure(&psi.plus);
    let minus = op.apply_pure(&psi.minus);
    let p = plus.probability.min(minus.probability).clamp(0.0, 1.0);
    if p < PROB_FLOOR {
        return TradeoffPoint { p, f: 0.0 };
    }
    let fid = |target: &PureQubit, out: &crate::qstate::Outcome| {
        out.state()
            .map(|rho| pure_state_fidelity(target, &rho))
            .unwrap_or(0.0)
    };
    let f = fid(&phi.plus, &plus).min(fid(&phi.minus, &minus));
    TradeoffPoint { p, f }
}

fn check_overlaps(s_psi: f64, s_phi: f64) -> Result<()> {
    check_unit("s_phi", s_phi)?;
    if !(0.0..1.0).contains(&s_psi) {
        return Err(Error::OutOfRange {
            name: "s_psi",
            value: s_psi,
            range: "[0, 1)",
        });
    }
    if s_phi > s_psi {
        return Err(Error::TargetsLessDistinguishable { s_psi, s_phi });
    }
    Ok(())
}

/// Frontier endpoints: `p₀ = (1 − s_ψ)/(1 − s_φ)` and the do-nothing
/// fidelity `f₀ = cos((arccos s_φ − arccos s_ψ)/2)`.
pub fn anchor_points(s_psi: f64, s_phi: f64) -> Result<(f64, f64)> {
    check_overlaps(s_psi, s_phi)?;
    let p0 = (1.0 - s_psi) / (1.0 - s_phi);
    let f0 = (0.5 * (s_phi.acos() - s_psi.acos())).cos();
    Ok((p0, f0))
}

/// Best worst-case fidelity at worst-case probability `p`.
///
/// `F(p) = cos[(arccos s_φ − arccos(1 − (1 − s_ψ)/p))/2]` on `[p₀, 1]`, and 1
/// for `p ≤ p₀` where the exact transformation is already available.
pub fn tradeoff_fidelity(p: f64, s_psi: f64, s_phi: f64) -> Result<f64> {
    check_overlaps(s_psi, s_phi)?;
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::OutOfRange {
            name: "p",
            value: p,
            range: "(0, 1]",
        });
    }
    let p0 = (1.0 - s_psi) / (1.0 - s_phi);
    if p <= p0 {
        return Ok(1.0);
    }
    let s_xi = (1.0 - (1.0 - s_psi) / p).clamp(-1.0, 1.0);
    Ok((0.5 * (s_phi.acos() - s_xi.acos())).cos().min(1.0))
}

/// Pure pair with `|⟨ξ±|φ±⟩| = f`, obtained by tilting each `φ±` towards
/// the symmetry axis by Bloch angle `2 arccos f`.
pub fn xi_pair(phi: &StatePair, f: f64) -> Result<StatePair> {
    check_unit("f", f)?;
    let axis = symmetry_axis(phi);
    let tilt = 2.0 * f.acos();
    let (rp, rm) = phi.bloch();
    let mut out = [PureQubit::zero(); 2];
    for (slot, r) in out.iter_mut().zip([rp, rm]) {
        let along = dot3(r, axis);
        let perp = norm3(sub3(r, scale3(axis, along)));
        let angle = perp.atan2(along);
        if tilt > angle + 1e-12 {
            return Err(Error::TiltTooLarge {
                f,
                min: (0.5 * angle).cos(),
            });
        }
        let dir = rotate_toward(r, axis, tilt.min(angle));
        *slot = PureQubit::from_direction(dir)?;
    }
    Ok(StatePair::new(out[0], out[1]))
}

/// Like [`xi_pair`] but tilting along the arcs from `φ±` towards `ψ±`, which
/// stays well defined when `φ±` are orthogonal.
pub fn xi_pair_toward(phi: &StatePair, psi: &StatePair, f: f64) -> Result<StatePair> {
    check_unit("f", f)?;
    let tilt = 2.0 * f.acos();
    let (fp, fm) = phi.bloch();
    let (pp, pm) = psi.bloch();
    let mut out = [PureQubit::zero(); 2];
    for (slot, (r, to)) in out.iter_mut().zip([(fp, pp), (fm, pm)]) {
        let angle = dot3(r, to).clamp(-1.0, 1.0).acos();
        if tilt > angle + 1e-9 {
            return Err(Error::TiltTooLarge {
                f,
                min: (0.5 * angle).cos(),
            });
        }
        *slot = PureQubit::from_direction(rotate_toward(r, to, tilt.min(angle)))?;
    }
    Ok(StatePair::new(out[0], out[1]))
}

/// `n` frontier samples, uniform in `p` on `[p₀, 1]`. When the targets are no
/// more distinguishable than the inputs the frontier is the single point
/// `(1, 1)`.
pub fn frontier_curve(s_psi: f64, s_phi: f64, n: usize) -> Result<TradeoffCurve> {
    let (p0, _) = anchor_points(s_psi, s_phi)?;
    if n < 2 {
        return Err(Error::TooFewPoints(n));
    }
    let params = CurveParams::Overlaps { s_psi, s_phi };
    if p0 >= 1.0 {
        return Ok(TradeoffCurve::single(1.0, 1.0, params));
    }
    let points = (0..n)
        .map(|i| {
            let p = if i + 1 == n {
                1.0
            } else {
                p0 + (1.0 - p0) * i as f64 / (n - 1) as f64
            };
            Ok(TradeoffPoint {
                p,
                f: tradeoff_fidelity(p, s_psi, s_phi)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    TradeoffCurve::new(points, params)
}
