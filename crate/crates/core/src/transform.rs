//! Maximum-probability transformations of a pair of pure states, and an
//! explicit balanced Kraus realization of the optimum.

use crate::error::{check_unit, Error, Result};
use crate::linalg::{add3, dot3, norm3, scale3, sub3, Mat2, C64, ZERO};
use crate::qstate::{
    pure_overlap, uhlmann_fidelity, DensityMatrix, PureQubit, QuantumOperation, SIGMA_X, SIGMA_Y,
    SIGMA_Z, TOL_OPERATION,
};

/// Two pure states with equal prior weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatePair {
    pub plus: PureQubit,
    pub minus: PureQubit,
}

impl StatePair {
    pub fn new(plus: PureQubit, minus: PureQubit) -> Self {
        StatePair { plus, minus }
    }

    pub fn overlap(&self) -> f64 {
        pure_overlap(&self.plus, &self.minus)
    }

    /// Canonical symmetric pair with the given overlap: Bloch vectors in the
    /// x-z plane, mirror images about the x-axis, `plus` on the `+z` side.
    pub fn canonical(overlap: f64) -> Result<Self> {
        let a = check_unit("overlap", overlap)?.acos();
        Ok(StatePair {
            plus: PureQubit::from_direction([a.cos(), 0.0, a.sin()])?,
            minus: PureQubit::from_direction([a.cos(), 0.0, -a.sin()])?,
        })
    }

    /// Symmetric pair about the z-axis in the x-z plane, `plus` on the `+x`
    /// side. Overlap 0 gives `(|0⟩ ± |1⟩)/√2`.
    pub fn canonical_z(overlap: f64) -> Result<Self> {
        let s = check_unit("overlap", overlap)?;
        let c = ((1.0 + s) / 2.0).sqrt();
        let d = ((1.0 - s) / 2.0).sqrt();
        Ok(StatePair {
            plus: PureQubit::new(C64::new(c, 0.0), C64::new(d, 0.0))?,
            minus: PureQubit::new(C64::new(c, 0.0), C64::new(-d, 0.0))?,
        })
    }

    pub fn bloch(&self) -> ([f64; 3], [f64; 3]) {
        (
            self.plus.bloch().components(),
            self.minus.bloch().components(),
        )
    }

    pub fn swapped(&self) -> Self {
        StatePair {
            plus: self.minus,
            minus: self.plus,
        }
    }
}

/// `min{(1 − s_in)/(1 − s_out), 1}` for pure targets.
pub fn max_probability_pure(s_in: f64, s_out: f64) -> Result<f64> {
    check_unit("s_in", s_in)?;
    check_unit("s_out", s_out)?;
    ratio_bound(s_in, s_out)
}

fn ratio_bound(s_in: f64, target_fidelity: f64) -> Result<f64> {
    if target_fidelity >= 1.0 {
        return if s_in >= 1.0 {
            Ok(1.0)
        } else {
            Err(Error::DegenerateTargets)
        };
    }
    Ok(((1.0 - s_in) / (1.0 - target_fidelity)).min(1.0))
}

/// `min{(1 − s_in)/(1 − F(ρ₊, ρ₋)), 1}` for mixed targets.
pub fn max_probability_mixed(s_in: f64, targets: (&DensityMatrix, &DensityMatrix)) -> Result<f64> {
    check_unit("s_in", s_in)?;
    ratio_bound(s_in, uhlmann_fidelity(targets.0, targets.1))
}

/// Unit Bloch axis about which the two pure states are mirror images.
///
/// For antipodal states every orthogonal axis qualifies; the one with the
/// largest `|x|` (then `|y|`) component is chosen.
pub fn symmetry_axis(pair: &StatePair) -> [f64; 3] {
    let (rp, rm) = pair.bloch();
    let b = add3(rp, rm);
    let nb = norm3(b);
    if nb > 1e-9 {
        return scale3(b, 1.0 / nb);
    }
    let r = scale3(rp, 1.0 / norm3(rp));
    let mut n = sub3([1.0, 0.0, 0.0], scale3(r, r[0]));
    if norm3(n) < 1e-9 {
        n = sub3([0.0, 1.0, 0.0], scale3(r, r[1]));
    }
    let n = scale3(n, 1.0 / norm3(n));
    let lead = n.iter().copied().find(|c| c.abs() > 1e-12).unwrap_or(1.0);
    if lead < 0.0 {
        scale3(n, -1.0)
    } else {
        n
    }
}

/// π-rotation about the symmetry axis of `pair`, `n·σ`. It maps each member
/// of the pair onto the other up to a phase.
pub fn symmetry_operator(pair: &StatePair) -> Mat2 {
    let n = symmetry_axis(pair);
    SIGMA_X.scale(n[0]) + SIGMA_Y.scale(n[1]) + SIGMA_Z.scale(n[2])
}

fn balanced_kraus_set(psi: &StatePair, phi: &StatePair, p: f64) -> Result<Vec<Mat2>> {
    let g = psi.plus.inner(&psi.minus);
    let h = phi.plus.inner(&phi.minus);
    let (s, t) = (g.norm(), h.norm());
    let inputs = Mat2::from_columns(psi.plus.amplitudes(), psi.minus.amplitudes());
    let inv = match inputs.inverse() {
        Some(inv) if s < 1.0 => inv,
        _ => return Err(Error::DegenerateInputs(s)),
    };
    let targets = Mat2::from_columns(phi.plus.amplitudes(), phi.minus.amplitudes());
    // relative output phase aligning ⟨φ₊|φ₋⟩ with ⟨ψ₊|ψ₋⟩
    let phase = C64::from_polar(1.0, g.arg() - h.arg());
    let amp = p.sqrt();
    let branch = |a: f64, b: f64| {
        let d = Mat2::new(C64::new(a, 0.0), ZERO, ZERO, phase * b);
        (targets * d * inv).scale(amp)
    };
    if t <= s {
        Ok(vec![branch(1.0, 1.0)])
    } else {
        // Less distinguishable targets: two branches whose weights interfere
        // down to the input overlap, cos 2α = s/t.
        let alpha = 0.5 * (s / t).clamp(-1.0, 1.0).acos();
        let (c, sn) = (alpha.cos(), alpha.sin());
        Ok(vec![branch(c, c), branch(sn, -sn)])
    }
}

/// Operation taking `ψ± → φ±` exactly with probability `p` on both inputs.
///
/// When `|⟨φ₊|φ₋⟩| ≤ |⟨ψ₊|ψ₋⟩|` this is the single operator `A` with
/// `A|ψ±⟩ = √p e^{iχ±}|φ±⟩`, the relative phase chosen to minimize the
/// operator norm. Otherwise two Kraus operators are needed.
pub fn build_balanced_kraus(psi: &StatePair, phi: &StatePair, p: f64) -> Result<QuantumOperation> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::OutOfRange {
            name: "p",
            value: p,
            range: "(0, 1]",
        });
    }
    let kraus = balanced_kraus_set(psi, phi, p)?;
    let norm = kraus
        .iter()
        .fold(Mat2::ZERO, |acc, k| acc + k.adjoint() * *k)
        .hermitian_eigenvalues()[1];
    if !(norm <= 1.0 + TOL_OPERATION) {
        return Err(Error::Infeasible { p, norm });
    }
    QuantumOperation::new(kraus)
}

/// Largest `p` for which [`build_balanced_kraus`] succeeds, by bisection.
pub fn max_feasible_probability_constructive(psi: &StatePair, phi: &StatePair) -> Result<f64> {
    let feasible = |p: f64| match build_balanced_kraus(psi, phi, p) {
        Ok(_) => Ok(true),
        Err(Error::Infeasible { .. }) => Ok(false),
        Err(e) => Err(e),
    };
    if feasible(1.0)? {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        if feasible(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Averages `op` with its mirror image under the symmetry of `phi`:
/// `E′(ρ) = ½E(ρ) + ½ S E(S ρ S) S`.
///
/// Both pairs must share the symmetry, i.e. `S|ψ₋⟩ ∝ |ψ₊⟩`.
pub fn symmetrize_operation(
    op: &QuantumOperation,
    psi: &StatePair,
    phi: &StatePair,
) -> Result<QuantumOperation> {
    let s = symmetry_operator(phi);
    for pair in [phi, psi] {
        let mirrored = PureQubit::normalized(
            s.apply(pair.minus.amplitudes())[0],
            s.apply(pair.minus.amplitudes())[1],
        )?;
        let mismatch = 1.0 - pure_overlap(&pair.plus, &mirrored);
        if mismatch > 1e-9 {
            return Err(Error::NotSymmetric(mismatch));
        }
    }
    let w = std::f64::consts::FRAC_1_SQRT_2;
    let mut kraus: Vec<Mat2> = op.kraus().iter().map(|k| k.scale(w)).collect();
    kraus.extend(op.kraus().iter().map(|k| (s * *k * s).scale(w)));
    QuantumOperation::from_kraus(kraus)
}

/// Rotates `r` by `angle` towards `toward` along the great circle joining
/// them. Both are unit vectors.
pub(crate) fn rotate_toward(r: [f64; 3], toward: [f64; 3], angle: f64) -> [f64; 3] {
    let perp = sub3(toward, scale3(r, dot3(r, toward)));
    let np = norm3(perp);
    if np < 1e-15 {
        return r;
    }
    add3(scale3(r, angle.cos()), scale3(perp, angle.sin() / np))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::PureQubit;

    fn random_pair(seed: u64) -> StatePair {
        let mut x = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
        let mut next = move || {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut st =
            || PureQubit::normalized(C64::new(next(), next()), C64::new(next(), next())).unwrap();
        StatePair::new(st(), st())
    }

    #[test]
    fn pure_formula_examples() {
        assert!((max_probability_pure(0.6, 0.0).unwrap() - 0.4).abs() < 1e-15);
        assert_eq!(max_probability_pure(0.3, 0.3).unwrap(), 1.0);
        assert!((max_probability_pure(0.9, 0.5).unwrap() - 0.2).abs() < 1e-15);
        assert_eq!(max_probability_pure(1.0, 1.0).unwrap(), 1.0);
        assert_eq!(
            max_probability_pure(0.5, 1.0),
            Err(Error::DegenerateTargets)
        );
        assert!(max_probability_pure(1.2, 0.0).is_err());
    }

    #[test]
    fn mixed_formula_examples() {
        let mixed = DensityMatrix::maximally_mixed();
        assert_eq!(
            max_probability_mixed(0.5, (&mixed, &mixed)),
            Err(Error::DegenerateTargets)
        );
        let pair = StatePair::canonical(0.2).unwrap();
        let p = max_probability_mixed(0.6, (&pair.plus.density(), &pair.minus.density())).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
        let zero = DensityMatrix::diagonal(1.0).unwrap();
        let p = max_probability_mixed(0.8, (&zero, &mixed)).unwrap();
        let expect = 0.2 / (1.0 - std::f64::consts::FRAC_1_SQRT_2);
        assert!((p - expect).abs() < 1e-12);
        assert!((p - 0.68284).abs() < 1e-5);
    }

    #[test]
    fn canonical_pairs_have_requested_overlap() {
        for s in [0.0, 0.3, 0.6, 0.99, 1.0] {
            assert!((StatePair::canonical(s).unwrap().overlap() - s).abs() < 1e-15);
            assert!((StatePair::canonical_z(s).unwrap().overlap() - s).abs() < 1e-15);
        }
        let had = StatePair::canonical_z(0.0).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(had.plus.amplitudes()[1], C64::new(h, 0.0));
        assert_eq!(had.minus.amplitudes()[1], C64::new(-h, 0.0));
    }

    #[test]
    fn identity_pair_gives_identity_on_span() {
        let psi = random_pair(3);
        let op = build_balanced_kraus(&psi, &psi, 1.0).unwrap();
        assert_eq!(op.rank(), 1);
        let [s1, s2] = op.kraus()[0].singular_values();
        assert!((s1 - 1.0).abs() < 1e-10 && (s2 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn realization_hits_targets() {
        for seed in 0..50 {
            let (mut psi, mut phi) = (random_pair(2 * seed + 1), random_pair(2 * seed + 2));
            if phi.overlap() > psi.overlap() {
                std::mem::swap(&mut psi, &mut phi);
            }
            let p = max_probability_pure(psi.overlap(), phi.overlap()).unwrap();
            let op = build_balanced_kraus(&psi, &phi, p).unwrap();
            assert!((op.kraus()[0].singular_values()[0] - 1.0).abs() < 1e-8);
            for (a, b) in [(psi.plus, phi.plus), (psi.minus, phi.minus)] {
                let out = op.apply_pure(&a);
                assert!((out.probability - p).abs() < 1e-10);
                let f = uhlmann_fidelity(&b.density(), &out.state().unwrap());
                assert!((f - 1.0).abs() < 1e-10);
            }
            assert!(
                matches!(
                    build_balanced_kraus(&psi, &phi, (p + 0.01).min(1.0)),
                    Err(Error::Infeasible { .. })
                ) || p + 0.01 > 1.0
            );
        }
    }

    #[test]
    fn less_distinguishable_targets_are_deterministic() {
        let psi = StatePair::canonical(0.2).unwrap();
        let phi = StatePair::canonical(0.7).unwrap();
        let op = build_balanced_kraus(&psi, &phi, 1.0).unwrap();
        assert_eq!(op.rank(), 2);
        for (a, b) in [(psi.plus, phi.plus), (psi.minus, phi.minus)] {
            let out = op.apply_pure(&a);
            assert!((out.probability - 1.0).abs() < 1e-12);
            let f = uhlmann_fidelity(&b.density(), &out.state().unwrap());
            assert!((f - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn degenerate_inputs_rejected() {
        let psi = StatePair::new(PureQubit::zero(), PureQubit::zero().with_phase(0.4));
        let phi = StatePair::canonical(0.0).unwrap();
        assert!(matches!(
            build_balanced_kraus(&psi, &phi, 0.5),
            Err(Error::DegenerateInputs(_))
        ));
        assert!(build_balanced_kraus(&phi, &phi, 0.0).is_err());
    }

    #[test]
    fn constructive_matches_formula_examples() {
        let psi = StatePair::canonical(0.6).unwrap();
        let phi = StatePair::canonical(0.0).unwrap();
        let p = max_feasible_probability_constructive(&psi, &phi).unwrap();
        assert!((p - 0.4).abs() < 1e-9);
        let same = StatePair::canonical(0.45).unwrap();
        assert_eq!(
            max_feasible_probability_constructive(&psi, &psi).unwrap(),
            1.0
        );
        assert_eq!(
            max_feasible_probability_constructive(&same, &same).unwrap(),
            1.0
        );
    }

    #[test]
    fn symmetry_axis_of_canonical_pair_is_x() {
        let pair = StatePair::canonical(0.3).unwrap();
        let n = symmetry_axis(&pair);
        assert!((n[0] - 1.0).abs() < 1e-12);
        // antipodal tie-break
        let pair = StatePair::new(PureQubit::zero(), PureQubit::one());
        assert_eq!(symmetry_axis(&pair), [1.0, 0.0, 0.0]);
        let pair = StatePair::canonical_z(0.0).unwrap();
        let n = symmetry_axis(&pair);
        assert!((n[1] - 1.0).abs() < 1e-12, "{n:?}");
    }

    #[test]
    fn symmetrizing_a_one_sided_operation_halves_it() {
        let psi = StatePair::canonical(0.5).unwrap();
        let phi = StatePair::canonical(0.1).unwrap();
        // projector orthogonal to ψ₋ kills the minus input
        let perp = PureQubit::normalized(
            -psi.minus.amplitudes()[1].conj(),
            psi.minus.amplitudes()[0].conj(),
        )
        .unwrap();
        let k = Mat2::outer(perp.amplitudes(), perp.amplitudes());
        let op = QuantumOperation::single(k).unwrap();
        let p_plus = op.apply_pure(&psi.plus).probability;
        assert!(op.apply_pure(&psi.minus).probability < 1e-15);
        let sym = symmetrize_operation(&op, &psi, &phi).unwrap();
        for a in [psi.plus, psi.minus] {
            assert!((sym.apply_pure(&a).probability - p_plus / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn asymmetric_inputs_rejected() {
        let phi = StatePair::canonical(0.1).unwrap();
        let psi = StatePair::canonical_z(0.5).unwrap();
        let op = QuantumOperation::identity();
        assert!(matches!(
            symmetrize_operation(&op, &psi, &phi),
            Err(Error::NotSymmetric(_))
        ));
    }

    #[test]
    fn rotate_toward_moves_along_arc() {
        let r = rotate_toward([1.0, 0.0, 0.0], [0.0, 0.0, 1.0], 0.3);
        assert!((r[0] - 0.3f64.cos()).abs() < 1e-15);
        assert!((r[2] - 0.3f64.sin()).abs() < 1e-15);
        assert_eq!(
            rotate_toward([1.0, 0.0, 0.0], [1.0, 0.0, 0.0], 0.3),
            [1.0, 0.0, 0.0]
        );
    }
}
