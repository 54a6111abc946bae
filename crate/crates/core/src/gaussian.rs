//! The five finite Gaussians on `{-j, ..., j}`:
//!
//! * `g1(κ)(n) = Σ_α exp(-κπ/d (αd + n)²)`
//! * `g2(κ)(n) = Σ_α exp(-κπ/d ((α + ½)d + n)²)`
//! * `g3(κ)(n) = (-1)ⁿ Σ_α (-1)^α exp(-κπ/d (αd + n)²)`
//! * `g4(n) = 2^{-2j} C(2j, j + n)`
//! * `g5(n) = d^{-1/2} cos^{2j}(nπ/d)`
//!
//! Values are computed for `n ≥ 0` and mirrored, so every family is exactly
//! even. Raw values are cached per `(d, family, κ bits)`.

use std::collections::HashMap;
use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{GridDim, GridFunction};
use crate::special::ln_binomial;
use crate::theta::{symmetric_series, theta, ThetaArgs, ThetaKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    G1,
    G2,
    G3,
    G4,
    G5,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::G1, Family::G2, Family::G3, Family::G4, Family::G5];

    /// 1-based label `i` of `𝔊_i`.
    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_number(i: u8) -> Result<Self> {
        match i {
            1..=5 => Ok(Self::ALL[i as usize - 1]),
            _ => Err(Error::InvalidParameter(format!("family index must be in 1..=5, got {i}"))),
        }
    }

    pub fn has_kappa(self) -> bool {
        matches!(self, Family::G1 | Family::G2 | Family::G3)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.number())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "g1" => Ok(Family::G1),
            "g2" => Ok(Family::G2),
            "g3" => Ok(Family::G3),
            "g4" => Ok(Family::G4),
            "g5" => Ok(Family::G5),
            other => Err(Error::InvalidParameter(format!("unknown family '{other}'"))),
        }
    }
}

/// A family together with its width parameter (only for `G1`–`G3`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianFamily {
    family: Family,
    kappa: Option<f64>,
}

impl GaussianFamily {
    pub fn new(family: Family, kappa: Option<f64>) -> Result<Self> {
        match (family.has_kappa(), kappa) {
            (true, Some(k)) if k > 0.0 && k.is_finite() => Ok(Self { family, kappa: Some(k) }),
            (true, Some(k)) => Err(Error::InvalidKappa(k)),
            (true, None) => Err(Error::InvalidParameter(format!("{family} needs kappa"))),
            (false, None) => Ok(Self { family, kappa: None }),
            (false, Some(_)) => Err(Error::InvalidParameter(format!("{family} takes no kappa"))),
        }
    }

    pub fn g1(kappa: f64) -> Result<Self> {
        Self::new(Family::G1, Some(kappa))
    }

    pub fn g2(kappa: f64) -> Result<Self> {
        Self::new(Family::G2, Some(kappa))
    }

    pub fn g3(kappa: f64) -> Result<Self> {
        Self::new(Family::G3, Some(kappa))
    }

    pub fn g4() -> Self {
        Self { family: Family::G4, kappa: None }
    }

    pub fn g5() -> Self {
        Self { family: Family::G5, kappa: None }
    }

    /// The family used for the normalized `𝔊_i` (κ = 1 where applicable).
    pub fn standard(family: Family) -> Self {
        Self { family, kappa: family.has_kappa().then_some(1.0) }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn kappa(&self) -> Option<f64> {
        self.kappa
    }
}

type CacheKey = (usize, Family, u64);

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<Vec<f64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<Vec<f64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Drops every cached Gaussian.
pub fn clear_cache() {
    cache().write().unwrap_or_else(|e| e.into_inner()).clear();
}

/// Raw (unnormalized) values in grid order.
pub fn gaussian_values(dim: GridDim, fam: GaussianFamily) -> Result<Arc<Vec<f64>>> {
    let key = (dim.d(), fam.family, fam.kappa.map_or(0, f64::to_bits));
    if let Some(v) = cache().read().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(Arc::clone(v));
    }
    let j = dim.j();
    let mut half = Vec::with_capacity(j as usize + 1);
    for n in 0..=j {
        half.push(raw_value(dim, fam, n)?);
    }
    let values: Vec<f64> = dim.indices().map(|n| half[n.unsigned_abs() as usize]).collect();
    let values = Arc::new(values);
    cache().write().unwrap_or_else(|e| e.into_inner()).insert(key, Arc::clone(&values));
    Ok(values)
}

fn raw_value(dim: GridDim, fam: GaussianFamily, n: i64) -> Result<f64> {
    let d = dim.d() as f64;
    let j = dim.j();
    let nf = n as f64;
    let v = match fam.family {
        Family::G1 => {
            let k = fam.kappa.expect("validated");
            symmetric_series(|a| re(-(k * PI / d) * (a as f64 * d + nf).powi(2)))?.re
        }
        Family::G2 => {
            let k = fam.kappa.expect("validated");
            symmetric_series(|a| re(-(k * PI / d) * ((a as f64 + 0.5) * d + nf).powi(2)))?.re
        }
        Family::G3 => {
            let k = fam.kappa.expect("validated");
            let s = symmetric_series(|a| {
                let sign = if a % 2 == 0 { 1.0 } else { -1.0 };
                re(-(k * PI / d) * (a as f64 * d + nf).powi(2)) * sign
            })?
            .re;
            if n % 2 == 0 {
                s
            } else {
                -s
            }
        }
        Family::G4 => (ln_binomial(2 * j, j + n) - (2 * j) as f64 * LN_2).exp(),
        Family::G5 => (nf * PI / d).cos().powi(2 * j as i32) / d.sqrt(),
    };
    Ok(v)
}

#[inline]
fn re(x: f64) -> Complex64 {
    Complex64::new(x.exp(), 0.0)
}

/// The raw finite Gaussian as a (real-valued) grid function.
pub fn gaussian(dim: GridDim, fam: GaussianFamily) -> Result<GridFunction> {
    let v = gaussian_values(dim, fam)?;
    GridFunction::from_real(dim, &v)
}

/// `gaussian / ‖gaussian‖`.
pub fn normalized_gaussian(dim: GridDim, fam: GaussianFamily) -> Result<GridFunction> {
    let v = gaussian_values(dim, fam)?;
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let scaled: Vec<f64> = v.iter().map(|x| x / norm).collect();
    GridFunction::from_real(dim, &scaled)
}

/// The normalized `𝔊_i` (κ = 1 for `i ≤ 3`).
pub fn standard_gaussian(dim: GridDim, family: Family) -> Result<GridFunction> {
    normalized_gaussian(dim, GaussianFamily::standard(family))
}

/// `g1`, `g2`, `g3` rebuilt from `θ₃`, `θ₄`, `θ₂` at `(n/d, i/(κd))`.
pub fn gaussian_from_theta(dim: GridDim, fam: GaussianFamily) -> Result<GridFunction> {
    let kind = match fam.family {
        Family::G1 => ThetaKind::Three,
        Family::G2 => ThetaKind::Four,
        Family::G3 => ThetaKind::Two,
        other => return Err(Error::UnsupportedFamily(format!("{other} has no theta form"))),
    };
    let k = fam.kappa.expect("validated");
    let d = dim.d() as f64;
    let pre = 1.0 / (k * d).sqrt();
    let tau = Complex64::new(0.0, 1.0 / (k * d));
    let mut out = GridFunction::zeros(dim);
    for n in dim.indices() {
        let t = theta(kind, ThetaArgs::new(Complex64::new(n as f64 / d, 0.0), tau)?)?;
        let sign = if fam.family == Family::G3 && n % 2 != 0 { -1.0 } else { 1.0 };
        out[n] = t * (pre * sign);
    }
    Ok(out)
}

/// Closed forms for `‖g‖²`:
///
/// * `‖g1(1)‖² = √(d/2) (a² + 2ab - b²)`, `‖g2(1)‖² = ‖g3(1)‖² = √(d/2) (a² + b²)`
///   with `a = g1(2)(0)`, `b = g2(2)(0)`;
/// * `‖g4‖² = ‖g5‖² = 2^{-4j} C(4j, 2j)`.
pub fn norm_squared_closed_form(dim: GridDim, fam: GaussianFamily) -> Result<f64> {
    let d = dim.d() as f64;
    let j = dim.j();
    if fam.family.has_kappa() && fam.kappa != Some(1.0) {
        return Err(Error::UnsupportedFamily(format!(
            "closed-form norm of {} needs kappa = 1, got {:?}",
            fam.family, fam.kappa
        )));
    }
    let ab = || -> Result<(f64, f64)> {
        let a = gaussian_values(dim, GaussianFamily::g1(2.0)?)?[dim.slot(0)];
        let b = gaussian_values(dim, GaussianFamily::g2(2.0)?)?[dim.slot(0)];
        Ok((a, b))
    };
    let r = (d / 2.0).sqrt();
    Ok(match fam.family {
        Family::G1 => {
            let (a, b) = ab()?;
            r * (a * a + 2.0 * a * b - b * b)
        }
        Family::G2 | Family::G3 => {
            let (a, b) = ab()?;
            r * (a * a + b * b)
        }
        Family::G4 | Family::G5 => (ln_binomial(4 * j, 2 * j) - (4 * j) as f64 * LN_2).exp(),
    })
}
