//! Kravchuk polynomials `K_m(n)`, the orthonormal Kravchuk functions
//! `𝔎_m(n)` and the Kravchuk transform.
//!
//! `K_m(n)` is the coefficient of `X^{j+m}` in `(1-X)^{j+n}(1+X)^{j-n}`:
//!
//! ```text
//! K_m(n) = Σ_k (-1)^k C(j+n, k) C(j-n, j+m-k)
//! 𝔎_m(n) = 2^{-j} √(C(2j, j+n) / C(2j, j+m)) K_m(n)
//! ```
//!
//! The alternating sum is evaluated in exact integer arithmetic while the
//! binomials fit in `i128` (all `j ≤ 60`), so no cancellation error enters
//! there. Past that the functions come from their three-term recurrence.

use std::f64::consts::LN_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{GridDim, GridFunction, LinearOperator};
use crate::special::ln_binomial;

fn exact_binomial(n: i64, k: i64) -> Option<i128> {
    if k < 0 || k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut c: i128 = 1;
    for i in 0..k {
        c = c.checked_mul((n - i) as i128)? / (i + 1) as i128;
    }
    Some(c)
}

fn exact_polynomial(j: i64, m: i64, n: i64) -> Option<i128> {
    let mut sum: i128 = 0;
    for k in 0..=(j + m) {
        let term = exact_binomial(j + n, k)?.checked_mul(exact_binomial(j - n, j + m - k)?)?;
        sum = if k % 2 == 0 { sum.checked_add(term)? } else { sum.checked_sub(term)? };
    }
    Some(sum)
}

/// `𝔎_a(x)` from the three-term recurrence in `x`, started at the edge
/// `𝔎_a(-j) = 2^{-j} √C(2j, j+a)` and run inward to `x = 0`; the other half
/// follows from `𝔎_a(-x) = (-1)^{j+a} 𝔎_a(x)`.
fn function_by_recurrence(j: i64, a: i64, x: i64) -> f64 {
    let sign = if (j + a) % 2 == 0 { 1.0 } else { -1.0 };
    if x > 0 {
        return sign * function_by_recurrence(j, a, -x);
    }
    let jf = j as f64;
    let mut prev = 0.0;
    let mut cur = (0.5 * ln_binomial(2 * j, j + a) - jf * LN_2).exp();
    for y in -j..x {
        let yf = y as f64;
        let next = (-2.0 * a as f64 * cur - ((jf + yf) * (jf - yf + 1.0)).sqrt() * prev)
            / ((jf - yf) * (jf + yf + 1.0)).sqrt();
        prev = cur;
        cur = next;
    }
    cur
}

fn prefactor(j: i64, m: i64, n: i64) -> f64 {
    (0.5 * (ln_binomial(2 * j, j + n) - ln_binomial(2 * j, j + m)) - j as f64 * LN_2).exp()
}

fn polynomial_unchecked(j: i64, m: i64, n: i64) -> f64 {
    match exact_polynomial(j, m, n) {
        Some(v) => v as f64,
        None => function_by_recurrence(j, m, n) / prefactor(j, m, n),
    }
}

fn function_unchecked(j: i64, m: i64, n: i64) -> f64 {
    match exact_polynomial(j, m, n) {
        Some(v) => v as f64 * prefactor(j, m, n),
        None => function_by_recurrence(j, m, n),
    }
}

/// `K_m(n)` for `m, n ∈ {-j, ..., j}`.
pub fn kravchuk_polynomial(dim: GridDim, m: i64, n: i64) -> Result<f64> {
    dim.check_index(m)?;
    dim.check_index(n)?;
    Ok(polynomial_unchecked(dim.j(), m, n))
}

/// `𝔎_m(n)` for `m, n ∈ {-j, ..., j}`.
pub fn kravchuk_function(dim: GridDim, m: i64, n: i64) -> Result<f64> {
    dim.check_index(m)?;
    dim.check_index(n)?;
    Ok(function_unchecked(dim.j(), m, n))
}

/// `Φ_m(n) = K_m(n) / √C(2j, j+m)`, so that `𝔎_m = √𝔤₄ · Φ_m`.
pub fn normalized_polynomial(dim: GridDim, m: i64, n: i64) -> Result<f64> {
    let k = kravchuk_polynomial(dim, m, n)?;
    let j = dim.j();
    Ok(k * (-0.5 * ln_binomial(2 * j, j + m)).exp())
}

/// All `K_m(n)` and `𝔎_m(n)` for one dimension, row `m`, column `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct KravchukTable {
    dim: GridDim,
    poly: Vec<f64>,
    func: Vec<f64>,
}

impl KravchukTable {
    pub fn new(dim: GridDim) -> Self {
        let j = dim.j();
        let mut poly = Vec::with_capacity(dim.d() * dim.d());
        let mut func = Vec::with_capacity(dim.d() * dim.d());
        for m in dim.indices() {
            for n in dim.indices() {
                poly.push(polynomial_unchecked(j, m, n));
                func.push(function_unchecked(j, m, n));
            }
        }
        Self { dim, poly, func }
    }

    pub fn dim(&self) -> GridDim {
        self.dim
    }

    fn at(&self, m: i64, n: i64) -> usize {
        self.dim.slot(m) * self.dim.d() + self.dim.slot(n)
    }

    pub fn poly(&self, m: i64, n: i64) -> f64 {
        self.poly[self.at(m, n)]
    }

    pub fn func(&self, m: i64, n: i64) -> f64 {
        self.func[self.at(m, n)]
    }

    /// `𝔎_m` as a grid function of `n`.
    pub fn function(&self, m: i64) -> GridFunction {
        GridFunction::from_fn(self.dim, |n| Complex64::new(self.func(m, n), 0.0))
    }

    /// `𝔎_m` with `𝔎 ≡ 0` for `m` outside the grid.
    pub fn func_or_zero(&self, m: i64, n: i64) -> f64 {
        let j = self.dim.j();
        if m.abs() > j || n.abs() > j {
            0.0
        } else {
            self.func(m, n)
        }
    }
}

/// `K = Σ 𝔎_{-n}(m) |j;m⟩⟨j;n|`, so `K|j;n⟩ = |𝔎_{-n}⟩`.
pub fn kravchuk_transform(dim: GridDim) -> LinearOperator {
    let t = KravchukTable::new(dim);
    LinearOperator::from_fn(dim, |m, n| Complex64::new(t.func(-n, m), 0.0))
}

/// `U = Σ e^{iα_n} 𝔎_{-n}(m) |j;m⟩⟨j;n|`, phases in grid order.
pub fn generalized_kravchuk_transform(dim: GridDim, phases: &[f64]) -> Result<LinearOperator> {
    if phases.len() != dim.d() {
        return Err(Error::DimensionMismatch { left: dim.d(), right: phases.len() });
    }
    let t = KravchukTable::new(dim);
    Ok(LinearOperator::from_fn(dim, |m, n| {
        Complex64::from_polar(t.func(-n, m), phases[dim.slot(n)])
    }))
}
