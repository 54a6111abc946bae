//! The odd index grid `{-j, ..., j}`, complex functions on it, and dense
//! operators in the canonical basis.
//!
//! Out-of-range indices are always resolved modulo `d` (the periodic
//! `ℓ²(ℤ_d)` extension).

use std::f64::consts::PI;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Grid of odd size `d = 2j + 1`, `j ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridDim {
    j: usize,
}

impl GridDim {
    /// Builds the grid for an odd dimension `d ≥ 3`.
    pub fn new(d: usize) -> Result<Self> {
        if d % 2 == 0 {
            return Err(Error::EvenDimension(d));
        }
        if d < 3 {
            return Err(Error::DimensionTooSmall(d));
        }
        Ok(Self { j: (d - 1) / 2 })
    }

    pub fn from_j(j: usize) -> Result<Self> {
        Self::new(2 * j + 1)
    }

    #[inline]
    pub fn j(&self) -> i64 {
        self.j as i64
    }

    #[inline]
    pub fn d(&self) -> usize {
        2 * self.j + 1
    }

    /// Grid indices `-j, ..., j` in ascending order.
    pub fn indices(&self) -> impl DoubleEndedIterator<Item = i64> + ExactSizeIterator + Clone {
        let j = self.j();
        (-j..=j).collect::<Vec<_>>().into_iter()
    }

    /// Storage slot of a grid index; any integer is reduced mod `d`.
    #[inline]
    pub fn slot(&self, n: i64) -> usize {
        (n + self.j()).rem_euclid(self.d() as i64) as usize
    }

    /// Grid index stored at `slot`.
    #[inline]
    pub fn index_of(&self, slot: usize) -> i64 {
        slot as i64 - self.j()
    }

    /// Maps any integer to its representative in `{-j, ..., j}`.
    #[inline]
    pub fn reduce(&self, n: i64) -> i64 {
        self.index_of(self.slot(n))
    }

    pub fn check_index(&self, n: i64) -> Result<()> {
        if n.abs() > self.j() {
            Err(Error::IndexOutOfRange { index: n, j: self.j() })
        } else {
            Ok(())
        }
    }

    pub(crate) fn ensure_same(&self, other: &GridDim) -> Result<()> {
        if self != other {
            Err(Error::DimensionMismatch { left: self.d(), right: other.d() })
        } else {
            Ok(())
        }
    }
}

/// A state vector: one complex amplitude per grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    dim: GridDim,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn zeros(dim: GridDim) -> Self {
        Self { dim, values: vec![ZERO; dim.d()] }
    }

    /// Values listed in grid order `n = -j, ..., j`.
    pub fn from_values(dim: GridDim, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != dim.d() {
            return Err(Error::DimensionMismatch { left: dim.d(), right: values.len() });
        }
        Ok(Self { dim, values })
    }

    pub fn from_real(dim: GridDim, values: &[f64]) -> Result<Self> {
        Self::from_values(dim, values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_fn(dim: GridDim, f: impl FnMut(i64) -> Complex64) -> Self {
        Self { dim, values: dim.indices().map(f).collect() }
    }

    /// The canonical basis vector `δ_k` (`|j;k⟩`).
    pub fn delta(dim: GridDim, k: i64) -> Self {
        let mut out = Self::zeros(dim);
        out.values[dim.slot(k)] = ONE;
        out
    }

    #[inline]
    pub fn dim(&self) -> GridDim {
        self.dim
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().fold(0.0, |m, z| m.max(z.im.abs()))
    }

    /// `ψ(n)` with periodic extension.
    #[inline]
    pub fn at(&self, n: i64) -> Complex64 {
        self.values[self.dim.slot(n)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { dim: self.dim, values: self.values.iter().map(|z| z * c).collect() }
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector(0));
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    /// `n ↦ ψ(-n)`.
    pub fn reflected(&self) -> Self {
        Self::from_fn(self.dim, |n| self.at(-n))
    }

    /// Largest `|ψ(-n) - ψ(n)|`.
    pub fn evenness_defect(&self) -> f64 {
        self.dim.indices().map(|n| (self.at(-n) - self.at(n)).norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &GridFunction) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn outer(&self, other: &GridFunction) -> LinearOperator {
        let d = self.dim.d();
        let mut m = LinearOperator::zeros(self.dim);
        for r in 0..d {
            for c in 0..d {
                m.entries[r * d + c] = self.values[r] * other.values[c].conj();
            }
        }
        m
    }
}

impl Index<i64> for GridFunction {
    type Output = Complex64;
    fn index(&self, n: i64) -> &Complex64 {
        &self.values[self.dim.slot(n)]
    }
}

impl IndexMut<i64> for GridFunction {
    fn index_mut(&mut self, n: i64) -> &mut Complex64 {
        let s = self.dim.slot(n);
        &mut self.values[s]
    }
}

impl Add for &GridFunction {
    type Output = GridFunction;
    fn add(self, rhs: &GridFunction) -> GridFunction {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        GridFunction {
            dim: self.dim,
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &GridFunction {
    type Output = GridFunction;
    fn sub(self, rhs: &GridFunction) -> GridFunction {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        GridFunction {
            dim: self.dim,
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect(),
        }
    }
}

/// `⟨φ, ψ⟩ = Σ conj(φ(n)) ψ(n)`, conjugate-linear in the first argument.
pub fn inner_product(phi: &GridFunction, psi: &GridFunction) -> Result<Complex64> {
    phi.dim.ensure_same(&psi.dim)?;
    Ok(phi.values.iter().zip(&psi.values).map(|(a, b)| a.conj() * b).sum())
}

#[inline]
pub(crate) fn root_of_unity(dim: GridDim, k: i64) -> Complex64 {
    // reduce first so large products keep full precision
    let r = k.rem_euclid(dim.d() as i64) as f64;
    Complex64::from_polar(1.0, 2.0 * PI * r / dim.d() as f64)
}

/// `F[ψ](k) = d^{-1/2} Σ_n e^{-2πikn/d} ψ(n)`.
pub fn fourier_transform(psi: &GridFunction) -> GridFunction {
    dft(psi, -1)
}

/// The adjoint (inverse) transform, kernel `e^{+2πikn/d}`.
pub fn inverse_fourier_transform(psi: &GridFunction) -> GridFunction {
    dft(psi, 1)
}

fn dft(psi: &GridFunction, sign: i64) -> GridFunction {
    let dim = psi.dim;
    let scale = 1.0 / (dim.d() as f64).sqrt();
    GridFunction::from_fn(dim, |k| {
        dim.indices().map(|n| root_of_unity(dim, sign * k * n) * psi.at(n)).sum::<Complex64>() * scale
    })
}

/// `(φ ∗ ψ)(n) = Σ_m φ(m) ψ(n - m)` with indices taken mod `d`.
pub fn convolve(phi: &GridFunction, psi: &GridFunction) -> Result<GridFunction> {
    phi.dim.ensure_same(&psi.dim)?;
    let dim = phi.dim;
    Ok(GridFunction::from_fn(dim, |n| dim.indices().map(|m| phi.at(m) * psi.at(n - m)).sum()))
}

/// Dense `d × d` complex matrix in the canonical basis, rows and columns in
/// grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator {
    dim: GridDim,
    entries: Vec<Complex64>,
}

impl LinearOperator {
    pub fn zeros(dim: GridDim) -> Self {
        Self { dim, entries: vec![ZERO; dim.d() * dim.d()] }
    }

    pub fn identity(dim: GridDim) -> Self {
        Self::diagonal(dim, |_| ONE)
    }

    /// `Σ_n f(n) |j;n⟩⟨j;n|`.
    pub fn diagonal(dim: GridDim, mut f: impl FnMut(i64) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        let d = dim.d();
        for (s, n) in dim.indices().enumerate() {
            m.entries[s * d + s] = f(n);
        }
        m
    }

    /// Matrix with `⟨j;n|M|j;m⟩ = f(n, m)`.
    pub fn from_fn(dim: GridDim, mut f: impl FnMut(i64, i64) -> Complex64) -> Self {
        let d = dim.d();
        let mut entries = Vec::with_capacity(d * d);
        for n in dim.indices() {
            for m in dim.indices() {
                entries.push(f(n, m));
            }
        }
        Self { dim, entries }
    }

    /// Row-major entries in grid order.
    pub fn from_entries(dim: GridDim, entries: Vec<Complex64>) -> Result<Self> {
        let d = dim.d();
        if entries.len() != d * d {
            return Err(Error::DimensionMismatch { left: d * d, right: entries.len() });
        }
        Ok(Self { dim, entries })
    }

    pub fn from_real_rows(dim: GridDim, rows: &[&[f64]]) -> Result<Self> {
        let entries: Vec<_> = rows.iter().flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0))).collect();
        Self::from_entries(dim, entries)
    }

    /// `Σ_k c_k |v_k⟩⟨v_k|`.
    pub fn spectral_sum<'a>(dim: GridDim, terms: impl IntoIterator<Item = (Complex64, &'a GridFunction)>) -> Self {
        let d = dim.d();
        let mut m = Self::zeros(dim);
        for (c, v) in terms {
            for r in 0..d {
                let vr = c * v.values[r];
                for col in 0..d {
                    m.entries[r * d + col] += vr * v.values[col].conj();
                }
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> GridDim {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Entry in storage coordinates (row slot, column slot).
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.dim.d() + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, z: Complex64) {
        let d = self.dim.d();
        self.entries[r * d + c] = z;
    }

    /// `⟨j;n|M|j;m⟩` for grid indices.
    pub fn element(&self, n: i64, m: i64) -> Complex64 {
        self.get(self.dim.slot(n), self.dim.slot(m))
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim.d();
        let mut out = Self::zeros(self.dim);
        for r in 0..d {
            for c in 0..d {
                out.entries[c * d + r] = self.entries[r * d + c].conj();
            }
        }
        out
    }

    pub fn apply(&self, psi: &GridFunction) -> Result<GridFunction> {
        self.dim.ensure_same(&psi.dim)?;
        let d = self.dim.d();
        let values = (0..d)
            .map(|r| self.entries[r * d..(r + 1) * d].iter().zip(&psi.values).map(|(a, b)| a * b).sum())
            .collect();
        Ok(GridFunction { dim: self.dim, values })
    }

    pub fn matmul(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.dim.ensure_same(&other.dim)?;
        let d = self.dim.d();
        let mut out = Self::zeros(self.dim);
        for r in 0..d {
            for k in 0..d {
                let a = self.entries[r * d + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.entries[k * d..(k + 1) * d];
                for (o, b) in out.entries[r * d..(r + 1) * d].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &LinearOperator) -> Result<LinearOperator> {
        Ok(&self.matmul(other)? - &other.matmul(self)?)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|z| z * c).collect() }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn add_identity(&self, c: f64) -> Self {
        let d = self.dim.d();
        let mut out = self.clone();
        for s in 0..d {
            out.entries[s * d + s] += c;
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.dim);
        for _ in 0..k {
            out = out.matmul(self).expect("same dimension");
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        let d = self.dim.d();
        (0..d).map(|s| self.entries[s * d + s]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &LinearOperator) -> f64 {
        self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `max |M - M⁺|` entrywise.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.dim.d();
        let mut worst: f64 = 0.0;
        for r in 0..d {
            for c in r..d {
                worst = worst.max((self.entries[r * d + c] - self.entries[c * d + r].conj()).norm());
            }
        }
        worst
    }

    /// `max |M M⁺ - 𝕀|`.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self.matmul(&self.adjoint()).expect("same dimension");
        prod.max_abs_diff(&Self::identity(self.dim))
    }

    /// Column `n` as a grid function (`M|j;n⟩`).
    pub fn column(&self, n: i64) -> GridFunction {
        let d = self.dim.d();
        let c = self.dim.slot(n);
        GridFunction { dim: self.dim, values: (0..d).map(|r| self.entries[r * d + c]).collect() }
    }
}

impl Add for &LinearOperator {
    type Output = LinearOperator;
    fn add(self, rhs: &LinearOperator) -> LinearOperator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        LinearOperator {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &LinearOperator {
    type Output = LinearOperator;
    fn sub(self, rhs: &LinearOperator) -> LinearOperator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        LinearOperator {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &LinearOperator {
    type Output = LinearOperator;
    fn mul(self, rhs: &LinearOperator) -> LinearOperator {
        self.matmul(rhs).expect("dimension mismatch")
    }
}

/// The unitary Fourier operator `F`, `⟨k|F|n⟩ = d^{-1/2} e^{-2πikn/d}`.
pub fn fourier_operator(dim: GridDim) -> LinearOperator {
    let s = 1.0 / (dim.d() as f64).sqrt();
    LinearOperator::from_fn(dim, |k, n| root_of_unity(dim, -k * n) * s)
}

/// Position operator `Q = Σ n |j;n⟩⟨j;n|`.
pub fn position_operator(dim: GridDim) -> LinearOperator {
    LinearOperator::diagonal(dim, |n| Complex64::new(n as f64, 0.0))
}

/// Momentum operator `P = F⁺ Q F`.
pub fn momentum_operator(dim: GridDim) -> LinearOperator {
    let f = fourier_operator(dim);
    &(&f.adjoint() * &position_operator(dim)) * &f
}

/// Parity `Σ |j;-n⟩⟨j;n|`.
pub fn parity_operator(dim: GridDim) -> LinearOperator {
    LinearOperator::from_fn(dim, |r, c| if r == -c { ONE } else { ZERO })
}
