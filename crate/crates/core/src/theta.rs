//! Jacobi theta series `θ₂, θ₃, θ₄` and the truncation rule shared with the
//! Gaussian lattice sums.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Terms are added in symmetric pairs `±α` until the next pair contributes
/// less than this fraction of the running sum.
pub const TRUNCATION_RATIO: f64 = 1e-18;
const MIN_TERMS: i64 = 3;
const MAX_TERMS: i64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaArgs {
    pub z: Complex64,
    pub tau: Complex64,
}

impl ThetaArgs {
    pub fn new(z: Complex64, tau: Complex64) -> Result<Self> {
        if !(tau.im > 0.0) {
            return Err(Error::NonConvergentTau(tau.im));
        }
        Ok(Self { z, tau })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaKind {
    Two,
    Three,
    Four,
}

impl TryFrom<u8> for ThetaKind {
    type Error = Error;
    fn try_from(k: u8) -> Result<Self> {
        match k {
            2 => Ok(Self::Two),
            3 => Ok(Self::Three),
            4 => Ok(Self::Four),
            _ => Err(Error::InvalidParameter(format!("theta kind must be 2, 3 or 4, got {k}"))),
        }
    }
}

/// Sums `term(0) + Σ_{α≥1} [term(α) + term(-α)]`.
pub(crate) fn symmetric_series(term: impl Fn(i64) -> Complex64) -> Result<Complex64> {
    paired_series(term(0), |a| (term(a), term(-a)))
}

/// Adds `pair(1), pair(2), ...` to `first`, stopping once at least
/// `MIN_TERMS` pairs are in and the latest pair is negligible against the
/// running sum and against the largest term seen (the sum itself may cancel).
fn paired_series(first: Complex64, pair: impl Fn(i64) -> (Complex64, Complex64)) -> Result<Complex64> {
    let mut sum = first;
    let mut scale = first.norm();
    for a in 1..=MAX_TERMS {
        let (p, q) = pair(a);
        sum += p + q;
        let size = p.norm() + q.norm();
        scale = scale.max(size);
        if a >= MIN_TERMS && size < TRUNCATION_RATIO * sum.norm().max(scale) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergentTau(0.0))
}

/// `θ₃(z, τ) = Σ e^{iπτα²} e^{2πiαz}`, `θ₄` with the extra `(-1)^α`, and
/// `θ₂` over the half-integers `α + ½`.
pub fn theta(kind: ThetaKind, args: ThetaArgs) -> Result<Complex64> {
    let ThetaArgs { z, tau } = args;
    let i = Complex64::i();
    let term = |h: f64| (i * PI * tau * h * h + i * 2.0 * PI * z * h).exp();
    match kind {
        ThetaKind::Three => symmetric_series(|a| term(a as f64)),
        ThetaKind::Four => symmetric_series(|a| if a % 2 == 0 { term(a as f64) } else { -term(a as f64) }),
        ThetaKind::Two => {
            let h = |a: i64| a as f64 - 0.5;
            paired_series(term(0.5) + term(-0.5), |a| (term(h(a) + 1.0), term(-h(a) - 1.0)))
        }
    }
}
