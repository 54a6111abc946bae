//! Schwinger operators, displacements, coherent-state frames and frame
//! quantization.
//!
//! `(A^α ψ)(n) = ψ(n - α)`, `(B^β ψ)(n) = e^{2πinβ/d} ψ(n)` and
//! `D(α, β) = e^{πiαβ/d} A^α B^β`.
//!
//! The composition law
//! `D(α₁, β₁) D(α₂, β₂) = e^{-πi(α₁β₂ - α₂β₁)/d} D(α₁ + α₂, β₁ + β₂)` needs the
//! unreduced integer labels: `D(α + d, β) = (-1)^β D(α, β)`, so
//! [`displacement_raw`] takes plain integers while [`DisplacementLabel`]
//! always lives on the grid.

use num_complex::Complex64;

use crate::eigen::eigendecompose_hermitian;
use crate::error::{Error, Result};
use crate::gaussian::{standard_gaussian, Family};
use crate::lattice::{inner_product, root_of_unity, GridDim, GridFunction, LinearOperator};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schwinger {
    A,
    B,
}

/// `A^power` or `B^power`; negative powers are inverses.
pub fn schwinger(dim: GridDim, which: Schwinger, power: i64) -> LinearOperator {
    match which {
        Schwinger::A => LinearOperator::from_fn(dim, |r, c| {
            if dim.reduce(c + power) == r {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }),
        Schwinger::B => LinearOperator::diagonal(dim, |n| root_of_unity(dim, n * power)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DisplacementLabel {
    alpha: i64,
    beta: i64,
}

impl DisplacementLabel {
    /// Reduces both components into `{-j, ..., j}`.
    pub fn new(dim: GridDim, alpha: i64, beta: i64) -> Self {
        Self { alpha: dim.reduce(alpha), beta: dim.reduce(beta) }
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    pub fn beta(&self) -> i64 {
        self.beta
    }

    /// All `d²` labels, `α` major.
    pub fn all(dim: GridDim) -> impl Iterator<Item = DisplacementLabel> {
        dim.indices().flat_map(move |a| dim.indices().map(move |b| DisplacementLabel { alpha: a, beta: b }))
    }
}

/// `e^{πiαβ/d}` for arbitrary integers, reduced mod `2d` to keep the angle small.
fn half_phase(dim: GridDim, k: i64) -> Complex64 {
    let d = dim.d() as i64;
    let k = k.rem_euclid(2 * d);
    Complex64::from_polar(1.0, std::f64::consts::PI * k as f64 / d as f64)
}

/// `D(α, β)` for unreduced integers.
pub fn displacement_raw(dim: GridDim, alpha: i64, beta: i64) -> LinearOperator {
    let ph = half_phase(dim, alpha * beta);
    LinearOperator::from_fn(dim, |r, c| {
        if dim.reduce(c + alpha) == r {
            ph * root_of_unity(dim, c * beta)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

pub fn displacement(dim: GridDim, label: DisplacementLabel) -> LinearOperator {
    displacement_raw(dim, label.alpha, label.beta)
}

/// `D(α, β) ψ` without building the matrix:
/// `(D ψ)(n) = e^{-πiαβ/d} e^{2πinβ/d} ψ(n - α)`.
pub fn displace(psi: &GridFunction, alpha: i64, beta: i64) -> GridFunction {
    let dim = psi.dim();
    let ph = half_phase(dim, -alpha * beta);
    GridFunction::from_fn(dim, |n| ph * root_of_unity(dim, n * beta) * psi.at(n - alpha))
}

/// The `d²` states `|α, β⟩ = D(α, β) φ` for a unit fiducial `φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentFamily {
    dim: GridDim,
    fiducial: GridFunction,
    family: Option<Family>,
    states: Vec<GridFunction>,
}

impl CoherentFamily {
    /// Coherent states of the normalized Gaussian `𝔊_i`.
    pub fn gaussian(dim: GridDim, family: Family) -> Result<Self> {
        let mut cf = Self::from_fiducial(standard_gaussian(dim, family)?)?;
        cf.family = Some(family);
        Ok(cf)
    }

    pub fn from_fiducial(fiducial: GridFunction) -> Result<Self> {
        let norm = fiducial.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("fiducial must be normalized, norm = {norm}")));
        }
        let dim = fiducial.dim();
        let states = DisplacementLabel::all(dim).map(|l| displace(&fiducial, l.alpha, l.beta)).collect();
        Ok(Self { dim, fiducial, family: None, states })
    }

    pub fn dim(&self) -> GridDim {
        self.dim
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn fiducial(&self) -> &GridFunction {
        &self.fiducial
    }

    fn slot(&self, alpha: i64, beta: i64) -> usize {
        self.dim.slot(alpha) * self.dim.d() + self.dim.slot(beta)
    }

    /// `|α, β⟩` with both labels taken mod `d`.
    pub fn state(&self, alpha: i64, beta: i64) -> &GridFunction {
        &self.states[self.slot(alpha, beta)]
    }

    pub fn states(&self) -> impl Iterator<Item = (DisplacementLabel, &GridFunction)> {
        DisplacementLabel::all(self.dim).zip(&self.states)
    }

    /// `max |(1/d) Σ |α,β⟩⟨α,β| - 𝕀|`.
    pub fn resolution_defect(&self) -> f64 {
        let all = LabelFunction::constant(self.dim, Complex64::new(1.0, 0.0));
        quantize(self, &all).max_abs_diff(&LinearOperator::identity(self.dim))
    }
}

/// Complex function on the `d × d` label grid, `α` major.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelFunction {
    dim: GridDim,
    values: Vec<Complex64>,
}

impl LabelFunction {
    pub fn from_fn(dim: GridDim, mut f: impl FnMut(i64, i64) -> Complex64) -> Self {
        Self { dim, values: DisplacementLabel::all(dim).map(|l| f(l.alpha, l.beta)).collect() }
    }

    pub fn from_real_fn(dim: GridDim, mut f: impl FnMut(i64, i64) -> f64) -> Self {
        Self::from_fn(dim, |a, b| Complex64::new(f(a, b), 0.0))
    }

    pub fn constant(dim: GridDim, c: Complex64) -> Self {
        Self { dim, values: vec![c; dim.d() * dim.d()] }
    }

    /// The classical oscillator energy `(α² + β²)/2`.
    pub fn oscillator_energy(dim: GridDim) -> Self {
        Self::from_real_fn(dim, |a, b| 0.5 * (a * a + b * b) as f64)
    }

    pub fn dim(&self) -> GridDim {
        self.dim
    }

    pub fn get(&self, alpha: i64, beta: i64) -> Complex64 {
        self.values[self.dim.slot(alpha) * self.dim.d() + self.dim.slot(beta)]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().fold(0.0, |m, z| m.max(z.im.abs()))
    }
}

/// `A_f = (1/d) Σ f(α, β) |α, β⟩⟨α, β|`.
pub fn quantize(frame: &CoherentFamily, f: &LabelFunction) -> LinearOperator {
    let inv_d = 1.0 / frame.dim.d() as f64;
    LinearOperator::spectral_sum(frame.dim, f.values.iter().zip(&frame.states).map(|(c, v)| (c * inv_d, v)))
}

/// `f_A(α, β) = ⟨α, β| A |α, β⟩`.
pub fn dequantize(frame: &CoherentFamily, a: &LinearOperator) -> Result<LabelFunction> {
    frame.dim.ensure_same(&a.dim())?;
    let mut values = Vec::with_capacity(frame.states.len());
    for v in &frame.states {
        values.push(inner_product(v, &a.apply(v)?)?);
    }
    Ok(LabelFunction { dim: frame.dim, values })
}

/// Unit vectors `u_i` with weights `κ_i` such that `Σ κ_i |u_i⟩⟨u_i| = 𝕀`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteFrame {
    dim: GridDim,
    vectors: Vec<GridFunction>,
    weights: Vec<f64>,
}

impl FiniteFrame {
    pub fn new(vectors: Vec<GridFunction>, weights: Vec<f64>) -> Result<Self> {
        let dim = vectors.first().ok_or(Error::InvalidParameter("empty frame".into()))?.dim();
        if vectors.len() != weights.len() {
            return Err(Error::DimensionMismatch { left: vectors.len(), right: weights.len() });
        }
        for (i, v) in vectors.iter().enumerate() {
            dim.ensure_same(&v.dim())?;
            if (v.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidParameter(format!("frame vector {i} is not a unit vector")));
            }
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0)) {
            return Err(Error::InvalidParameter(format!("frame weight must be positive, got {w}")));
        }
        Ok(Self { dim, vectors, weights })
    }

    pub fn dim(&self) -> GridDim {
        self.dim
    }

    pub fn vectors(&self) -> &[GridFunction] {
        &self.vectors
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `Σ κ_i |u_i⟩⟨u_i|`.
    pub fn resolution(&self) -> LinearOperator {
        LinearOperator::spectral_sum(
            self.dim,
            self.weights.iter().zip(&self.vectors).map(|(&k, v)| (Complex64::new(k, 0.0), v)),
        )
    }

    /// `Σ κ_i |⟨u_i|ψ⟩|²`, equal to `‖ψ‖²` for a tight frame.
    pub fn parseval(&self, psi: &GridFunction) -> Result<f64> {
        let mut s = 0.0;
        for (k, u) in self.weights.iter().zip(&self.vectors) {
            s += k * inner_product(u, psi)?.norm_sqr();
        }
        Ok(s)
    }

    /// `Σ κ_i f_i |u_i⟩⟨u_i|`.
    pub fn quantize(&self, f: &[Complex64]) -> Result<LinearOperator> {
        if f.len() != self.vectors.len() {
            return Err(Error::DimensionMismatch { left: self.vectors.len(), right: f.len() });
        }
        Ok(LinearOperator::spectral_sum(
            self.dim,
            f.iter().zip(&self.weights).zip(&self.vectors).map(|((c, &k), v)| (c * k, v)),
        ))
    }
}

/// Frame bounds and, for tight input, the normalized frame.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameAnalysis {
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub tight: bool,
    pub frame: Option<FiniteFrame>,
}

impl FrameAnalysis {
    /// A frame needs a strictly positive lower bound.
    pub fn is_frame(&self) -> bool {
        self.lower_bound > TIGHTNESS_TOL
    }
}

pub const TIGHTNESS_TOL: f64 = 1e-10;

/// Bounds of `S = Σ |w_i⟩⟨w_i|` from its extreme eigenvalues. When
/// `S = c𝕀` the vectors are normalized to `u_i = w_i/‖w_i‖` with
/// `κ_i = ⟨w_i|w_i⟩ / c`.
pub fn frame_analyze(vectors: &[GridFunction]) -> Result<FrameAnalysis> {
    let dim = vectors.first().ok_or(Error::InvalidParameter("no vectors".into()))?.dim();
    for (i, v) in vectors.iter().enumerate() {
        dim.ensure_same(&v.dim())?;
        if v.norm() == 0.0 {
            return Err(Error::ZeroVector(i));
        }
    }
    let one = Complex64::new(1.0, 0.0);
    let s = LinearOperator::spectral_sum(dim, vectors.iter().map(|v| (one, v)));
    let spec = eigendecompose_hermitian(&s)?;
    let ev = spec.eigenvalues();
    let (lower, upper) = (ev[0], ev[ev.len() - 1]);
    let tight = upper - lower <= TIGHTNESS_TOL && lower > TIGHTNESS_TOL;
    let frame = if tight {
        let c = 0.5 * (lower + upper);
        let units = vectors.iter().map(|v| v.normalized()).collect::<Result<Vec<_>>>()?;
        let weights = vectors.iter().map(|v| v.norm_sqr() / c).collect();
        Some(FiniteFrame::new(units, weights)?)
    } else {
        None
    };
    Ok(FrameAnalysis { lower_bound: lower, upper_bound: upper, tight, frame })
}
