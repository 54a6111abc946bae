//! Discrete Wigner function
//! `W(n, m) = (1/d) Σ_k e^{4πimk/d} ψ(n-k) conj ψ(n+k)` on the odd grid.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussian::{gaussian_values, Family, GaussianFamily};
use crate::lattice::{root_of_unity, GridDim, GridFunction};

/// Real `d × d` array indexed by position `n` (row) and momentum `m` (column).
#[derive(Debug, Clone, PartialEq)]
pub struct WignerMap {
    dim: GridDim,
    values: Vec<f64>,
    max_imag: f64,
}

impl WignerMap {
    pub fn from_fn(dim: GridDim, mut f: impl FnMut(i64, i64) -> f64) -> Self {
        let mut values = Vec::with_capacity(dim.d() * dim.d());
        for n in dim.indices() {
            for m in dim.indices() {
                values.push(f(n, m));
            }
        }
        Self { dim, values, max_imag: 0.0 }
    }

    pub fn dim(&self) -> GridDim {
        self.dim
    }

    /// Row-major values, rows `n = -j..=j`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Largest imaginary part dropped while building the map.
    pub fn max_imag(&self) -> f64 {
        self.max_imag
    }

    /// `W(n, m)` with both arguments taken mod `d`.
    pub fn get(&self, n: i64, m: i64) -> f64 {
        self.values[self.dim.slot(n) * self.dim.d() + self.dim.slot(m)]
    }

    /// `Σ_m W(n, m)` for each `n`.
    pub fn position_marginal(&self) -> Vec<f64> {
        self.values.chunks(self.dim.d()).map(|row| row.iter().sum()).collect()
    }

    /// `Σ_n W(n, m)` for each `m`.
    pub fn momentum_marginal(&self) -> Vec<f64> {
        let d = self.dim.d();
        (0..d).map(|c| (0..d).map(|r| self.values[r * d + c]).sum()).collect()
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// The map `(n, m) ↦ W(m, -n)`.
    pub fn rotated(&self) -> Self {
        Self::from_fn(self.dim, |n, m| self.get(m, -n))
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { dim: self.dim, values: self.values.iter().map(|v| v * c).collect(), max_imag: self.max_imag * c.abs() }
    }

    pub fn max_abs_diff(&self, other: &WignerMap) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Location `(n, m)` of the largest value (first in row-major order).
    pub fn argmax(&self) -> (i64, i64) {
        let d = self.dim.d();
        let (idx, _) = self
            .values
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |best, (i, &v)| if v > best.1 { (i, v) } else { best });
        (self.dim.index_of(idx / d), self.dim.index_of(idx % d))
    }
}

pub fn wigner(psi: &GridFunction) -> WignerMap {
    let dim = psi.dim();
    let d = dim.d() as f64;
    let mut values = Vec::with_capacity(dim.d() * dim.d());
    let mut max_imag: f64 = 0.0;
    let corr: Vec<Vec<Complex64>> = dim
        .indices()
        .map(|n| dim.indices().map(|k| psi.at(n - k) * psi.at(n + k).conj()).collect())
        .collect();
    for row in &corr {
        for m in dim.indices() {
            let w: Complex64 = dim.indices().zip(row).map(|(k, c)| root_of_unity(dim, 2 * m * k) * c).sum::<Complex64>() / d;
            max_imag = max_imag.max(w.im.abs());
            values.push(w.re);
        }
    }
    WignerMap { dim, values, max_imag }
}

/// Checks `W_{Fψ}(n, m) = W_ψ(m, -n)` to `tol` for an even `ψ`.
pub fn wigner_fourier_covariance_check(psi: &GridFunction, tol: f64) -> Result<bool> {
    let defect = psi.evenness_defect();
    if defect > 1e-12 {
        return Err(Error::NotEven(defect));
    }
    let lhs = wigner(&crate::lattice::fourier_transform(psi));
    let rhs = wigner(psi).rotated();
    Ok(lhs.max_abs_diff(&rhs) <= tol)
}

/// Wigner function of `𝔤₁`, `𝔤₂` or `𝔤₃` at width `κ` assembled from
/// products of Gaussians: with `a = 𝔤₁(2κ)`, `b = 𝔤₂(2κ)` in `n` and
/// `A = 𝔤₁(2/κ)`, `B = 𝔤₂(2/κ)` in `m`,
///
/// ```text
/// W = (aA + aB + bA - bB) / √(2κd)   for 𝔤₁
/// W = (aA - aB + bA + bB) / √(2κd)   for 𝔤₂
/// W = (aA + aB - bA + bB) / √(2κd)   for 𝔤₃
/// ```
pub fn gaussian_wigner_product(family: Family, kappa: f64, dim: GridDim) -> Result<WignerMap> {
    let signs = match family {
        Family::G1 => [1.0, 1.0, 1.0, -1.0],
        Family::G2 => [1.0, -1.0, 1.0, 1.0],
        Family::G3 => [1.0, 1.0, -1.0, 1.0],
        other => return Err(Error::UnsupportedFamily(format!("no product form for {other}"))),
    };
    let a = gaussian_values(dim, GaussianFamily::g1(2.0 * kappa)?)?;
    let b = gaussian_values(dim, GaussianFamily::g2(2.0 * kappa)?)?;
    let big_a = gaussian_values(dim, GaussianFamily::g1(2.0 / kappa)?)?;
    let big_b = gaussian_values(dim, GaussianFamily::g2(2.0 / kappa)?)?;
    let pre = 1.0 / (2.0 * kappa * dim.d() as f64).sqrt();
    Ok(WignerMap::from_fn(dim, |n, m| {
        let (sn, sm) = (dim.slot(n), dim.slot(m));
        pre * (signs[0] * a[sn] * big_a[sm]
            + signs[1] * a[sn] * big_b[sm]
            + signs[2] * b[sn] * big_a[sm]
            + signs[3] * b[sn] * big_b[sm])
    }))
}
