//! Finite oscillator Hamiltonians, Harper functions, the fractional Fourier
//! transform, Gram–Schmidt oscillators and revival analysis.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::eigen::{eigendecompose_hermitian, fix_phase, SpectralDecomposition};
use crate::error::{Error, Result};
use crate::frame::{quantize, CoherentFamily, LabelFunction};
use crate::gaussian::{gaussian, standard_gaussian, Family, GaussianFamily};
use crate::lattice::{fourier_operator, inner_product, position_operator, GridDim, GridFunction, LinearOperator};
use crate::su2::su2_generators;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OscillatorKind {
    Fourier,
    Harper,
    Kravchuk,
    /// Frame quantization of `(α² + β²)/2` over the coherent states of `𝔊_i`.
    FrameQuantized(Family),
    GramSchmidt(Family),
    DeformedFourier(f64),
    DeformedHarper(f64),
}

impl fmt::Display for OscillatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Fourier => write!(f, "fourier"),
            Self::Harper => write!(f, "harper"),
            Self::Kravchuk => write!(f, "kravchuk"),
            Self::FrameQuantized(fam) => write!(f, "frame({fam})"),
            Self::GramSchmidt(fam) => write!(f, "gramschmidt({fam})"),
            Self::DeformedFourier(a) => write!(f, "deformed-fourier({a})"),
            Self::DeformedHarper(a) => write!(f, "deformed-harper({a})"),
        }
    }
}

fn check_deformation(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 2.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("deformation alpha must lie in (0, 2), got {alpha}")))
    }
}

/// Periodic second difference `(P²ψ)(n) = -[ψ(n+1) - 2ψ(n) + ψ(n-1)]`.
pub fn second_difference(dim: GridDim) -> LinearOperator {
    LinearOperator::from_fn(dim, |r, c| {
        let re = if r == c {
            2.0
        } else if dim.reduce(r - c).abs() == 1 {
            -1.0
        } else {
            0.0
        };
        Complex64::new(re, 0.0)
    })
}

fn q_squared(dim: GridDim) -> LinearOperator {
    let q = position_operator(dim);
    &q * &q
}

fn half_sum(a: &LinearOperator, b: &LinearOperator) -> LinearOperator {
    (a + b).scale_real(0.5)
}

pub fn hamiltonian(dim: GridDim, kind: OscillatorKind) -> Result<LinearOperator> {
    match kind {
        OscillatorKind::Fourier => {
            let f = fourier_operator(dim);
            let q2 = q_squared(dim);
            Ok(half_sum(&(&(&f.adjoint() * &q2) * &f), &q2))
        }
        OscillatorKind::Harper => {
            let f = fourier_operator(dim);
            let p2 = second_difference(dim);
            Ok(half_sum(&p2, &(&(&f * &p2) * &f.adjoint())))
        }
        OscillatorKind::Kravchuk => Ok(su2_generators(dim).jz.add_identity(dim.j() as f64 + 0.5)),
        OscillatorKind::FrameQuantized(fam) => {
            let cf = CoherentFamily::gaussian(dim, fam)?;
            Ok(quantize(&cf, &LabelFunction::oscillator_energy(dim)))
        }
        OscillatorKind::GramSchmidt(fam) => Ok(gram_schmidt_oscillator(dim, fam)?.hamiltonian),
        OscillatorKind::DeformedFourier(alpha) => {
            check_deformation(alpha)?;
            let fa = fractional_fourier(dim, alpha)?;
            let q2 = q_squared(dim);
            Ok(half_sum(&(&(&fa.adjoint() * &q2) * &fa), &q2))
        }
        OscillatorKind::DeformedHarper(alpha) => {
            check_deformation(alpha)?;
            let fa = fractional_fourier(dim, alpha)?;
            let p2 = second_difference(dim);
            Ok(half_sum(&p2, &(&(&fa * &p2) * &fa.adjoint())))
        }
    }
}

/// Relative magnitude below which an entry counts as zero when counting
/// sign alternations.
pub const ZERO_THRESHOLD: f64 = 1e-9;

/// Sign flips between consecutive entries above the zero threshold. `None`
/// when some entry sits so close to the threshold (within a factor of ten
/// either way) that its classification is unreliable.
pub fn sign_alternations(v: &[f64]) -> Option<usize> {
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let cut = ZERO_THRESHOLD * max;
    if v.iter().any(|x| x.abs() >= 0.1 * cut && x.abs() < 10.0 * cut) {
        return None;
    }
    let mut last = 0.0f64;
    let mut count = 0;
    for &x in v.iter().filter(|x| x.abs() >= cut) {
        if last != 0.0 && x.signum() != last.signum() {
            count += 1;
        }
        last = x;
    }
    Some(count)
}

/// Eigenvectors of `H_Harper` reordered by sign alternations, so `h_n` has
/// `n` alternations and `F h_n = (-i)ⁿ h_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarperBasis {
    dim: GridDim,
    functions: Vec<GridFunction>,
    energies: Vec<f64>,
    fourier_defect: f64,
    ordering_consistent: bool,
}

impl HarperBasis {
    pub fn dim(&self) -> GridDim {
        self.dim
    }

    pub fn functions(&self) -> &[GridFunction] {
        &self.functions
    }

    pub fn function(&self, n: usize) -> &GridFunction {
        &self.functions[n]
    }

    /// `H_Harper` eigenvalue of each `h_n`.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// `(-i)ⁿ` for each `h_n`.
    pub fn fourier_eigenvalues(&self) -> Vec<Complex64> {
        (0..self.functions.len()).map(|n| Complex64::new(0.0, -1.0).powu(n as u32)).collect()
    }

    /// `max_n ‖F h_n - (-i)ⁿ h_n‖_∞`.
    pub fn fourier_defect(&self) -> f64 {
        self.fourier_defect
    }

    /// Whether ascending energy and ascending alternation count agree. A
    /// diagnostic only: the two orders need not match.
    pub fn ordering_consistent(&self) -> bool {
        self.ordering_consistent
    }

    /// `Σ c_n |h_n⟩⟨h_n|`.
    pub fn spectral_operator(&self, c: impl Fn(usize) -> Complex64) -> LinearOperator {
        LinearOperator::spectral_sum(self.dim, self.functions.iter().enumerate().map(|(n, h)| (c(n), h)))
    }
}

pub fn harper_basis(dim: GridDim) -> Result<HarperBasis> {
    let spec = eigendecompose_hermitian(&hamiltonian(dim, OscillatorKind::Harper)?)?;
    if spec.is_degenerate() {
        return Err(Error::Degenerate(spec.degenerate_clusters().concat()));
    }
    let d = dim.d();
    let mut slots: Vec<Option<(GridFunction, f64)>> = vec![None; d];
    for (k, (e, v)) in spec.pairs().enumerate() {
        let v = fix_phase(v);
        let count = sign_alternations(&v.real_parts()).ok_or(Error::AmbiguousAlternation(k))?;
        match slots.get_mut(count) {
            Some(slot @ None) => *slot = Some((v, e)),
            _ => return Err(Error::AlternationCounts(d)),
        }
    }
    let (functions, energies): (Vec<_>, Vec<_>) = slots.into_iter().map(|s| s.expect("all slots filled")).unzip();
    let f = fourier_operator(dim);
    let mut fourier_defect: f64 = 0.0;
    for (n, h) in functions.iter().enumerate() {
        let lam = Complex64::new(0.0, -1.0).powu(n as u32);
        fourier_defect = fourier_defect.max(f.apply(h)?.max_abs_diff(&h.scale(lam)));
    }
    let ordering_consistent = energies.windows(2).all(|w| w[0] <= w[1]);
    Ok(HarperBasis { dim, functions, energies, fourier_defect, ordering_consistent })
}

/// `F^α = Σ e^{-iπnα/2} |h_n⟩⟨h_n|`.
pub fn fractional_fourier(dim: GridDim, alpha: f64) -> Result<LinearOperator> {
    let basis = harper_basis(dim)?;
    Ok(basis.spectral_operator(|n| Complex64::from_polar(1.0, -PI * n as f64 * alpha / 2.0)))
}

/// Condition number above which the Gram–Schmidt construction gives up.
pub const MAX_CONDITION: f64 = 1e12;

/// Orthonormalized `w(n)·(n/j)^k`, `k = 0, ..., 2j`, for a weight
/// amplitude `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramSchmidtOscillator {
    pub functions: Vec<GridFunction>,
    pub hamiltonian: LinearOperator,
    /// Condition number of the column-equilibrated Gram matrix.
    pub condition: f64,
}

fn equilibrated_condition(vectors: &[GridFunction]) -> Result<f64> {
    let dim = vectors[0].dim();
    let k = vectors.len();
    let norms: Vec<f64> = vectors.iter().map(GridFunction::norm).collect();
    let mut entries = Vec::with_capacity(k * k);
    for (a, na) in vectors.iter().zip(&norms) {
        for (b, nb) in vectors.iter().zip(&norms) {
            entries.push(inner_product(a, b)? / (na * nb));
        }
    }
    let g = LinearOperator::from_entries(dim, entries)?;
    let ev = eigendecompose_hermitian(&g)?.eigenvalues().to_vec();
    let (lo, hi) = (ev[0], ev[ev.len() - 1]);
    Ok(if lo > 0.0 { hi / lo } else { f64::INFINITY })
}

/// Gram–Schmidt oscillator for an arbitrary real weight amplitude `w`:
/// `φ_m = w · Φ_m` with `Φ_m` orthonormal polynomials for the weight `w²`
/// and `H̃ = Σ (j + m + ½) |φ_m⟩⟨φ_m|`.
pub fn gram_schmidt_with_amplitude(amplitude: &GridFunction) -> Result<GramSchmidtOscillator> {
    let dim = amplitude.dim();
    let zeros: Vec<i64> = dim.indices().filter(|&n| amplitude.at(n).norm() == 0.0).collect();
    if !zeros.is_empty() {
        return Err(Error::WeightDegenerate(zeros));
    }
    let j = dim.j() as f64;
    let raw: Vec<GridFunction> = (0..dim.d())
        .map(|k| GridFunction::from_fn(dim, |n| amplitude.at(n) * (n as f64 / j).powi(k as i32)))
        .collect();
    let condition = equilibrated_condition(&raw)?;
    if !(condition <= MAX_CONDITION) {
        return Err(Error::IllConditioned(condition));
    }
    let mut functions: Vec<GridFunction> = Vec::with_capacity(dim.d());
    for v in raw {
        let mut v = v;
        for _pass in 0..2 {
            for q in &functions {
                let c = inner_product(q, &v)?;
                v = &v - &q.scale(c);
            }
        }
        functions.push(v.normalized()?);
    }
    let hamiltonian = LinearOperator::spectral_sum(
        dim,
        functions.iter().enumerate().map(|(k, f)| (Complex64::new(k as f64 + 0.5, 0.0), f)),
    );
    Ok(GramSchmidtOscillator { functions, hamiltonian, condition })
}

/// The oscillator with ground state `𝔊_i`.
pub fn gram_schmidt_oscillator(dim: GridDim, family: Family) -> Result<GramSchmidtOscillator> {
    gram_schmidt_with_amplitude(&standard_gaussian(dim, family)?)
}

/// Gram–Schmidt with amplitude `√𝔤₄`, which recovers the Kravchuk functions
/// up to the sign `(-1)^{j+m}`.
pub fn gram_schmidt_binomial(dim: GridDim) -> Result<GramSchmidtOscillator> {
    let g4 = gaussian(dim, GaussianFamily::g4())?;
    gram_schmidt_with_amplitude(&GridFunction::from_fn(dim, |n| Complex64::new(g4.at(n).re.sqrt(), 0.0)))
}

/// `e^{-itH} ψ` from a precomputed decomposition of `H`.
pub fn evolve_spectral(spec: &SpectralDecomposition, psi: &GridFunction, t: f64) -> Result<GridFunction> {
    spec.dim().ensure_same(&psi.dim())?;
    let mut out = GridFunction::zeros(psi.dim());
    for (e, v) in spec.pairs() {
        let c = inner_product(v, psi)? * Complex64::from_polar(1.0, -t * e);
        out = &out + &v.scale(c);
    }
    Ok(out)
}

/// `e^{-itH} ψ`.
pub fn evolve(h: &LinearOperator, psi: &GridFunction, t: f64) -> Result<GridFunction> {
    evolve_spectral(&eigendecompose_hermitian(h)?, psi, t)
}

/// `|⟨a|b⟩| / (‖a‖ ‖b‖)`.
pub fn fidelity(a: &GridFunction, b: &GridFunction) -> Result<f64> {
    Ok(inner_product(a, b)?.norm() / (a.norm() * b.norm()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Progression {
    pub start: usize,
    pub len: usize,
    pub gap: f64,
    pub max_deviation: f64,
}

impl Progression {
    /// `2π / gap`.
    pub fn period(&self) -> f64 {
        2.0 * PI / self.gap
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RevivalReport {
    pub progressions: Vec<Progression>,
}

impl RevivalReport {
    /// The progression covering all `n` levels, if any.
    pub fn full_length(&self, n: usize) -> Option<&Progression> {
        self.progressions.iter().find(|p| p.start == 0 && p.len == n)
    }
}

/// Maximal runs of at least `min_len` sorted levels whose successive gaps
/// agree with the run's first gap within `tol`. Runs of coincident levels
/// (gap within `tol` of zero) carry no period and are skipped.
pub fn detect_progressions(levels: &[f64], min_len: usize, tol: f64) -> Result<RevivalReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    if min_len < 3 {
        return Err(Error::InvalidParameter(format!("min_len must be at least 3, got {min_len}")));
    }
    let mut report = RevivalReport::default();
    let mut start = 0;
    while start + 1 < levels.len() {
        let first = levels[start + 1] - levels[start];
        let mut end = start + 1;
        while end + 1 < levels.len() && (levels[end + 1] - levels[end] - first).abs() <= tol {
            end += 1;
        }
        let len = end - start + 1;
        if len >= min_len && first.abs() > tol {
            let gap = (levels[end] - levels[start]) / (len - 1) as f64;
            let max_deviation = levels[start..=end].windows(2).map(|w| (w[1] - w[0] - gap).abs()).fold(0.0, f64::max);
            report.progressions.push(Progression { start, len, gap, max_deviation });
        }
        start = if len > 2 { end } else { start + 1 };
    }
    Ok(report)
}

pub fn detect_revivals(spec: &SpectralDecomposition, min_len: usize, tol: f64) -> Result<RevivalReport> {
    detect_progressions(spec.eigenvalues(), min_len, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kravchuk::KravchukTable;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dim(d: usize) -> GridDim {
        GridDim::new(d).unwrap()
    }

    fn spectrum(d: usize, kind: OscillatorKind) -> Vec<f64> {
        eigendecompose_hermitian(&hamiltonian(dim(d), kind).unwrap()).unwrap().eigenvalues().to_vec()
    }

    fn close(got: &[f64], want: &[f64], tol: f64) -> bool {
        got.len() == want.len() && got.iter().zip(want).all(|(a, b)| (a - b).abs() < tol)
    }

    fn random_state(g: GridDim, seed: u64) -> GridFunction {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        GridFunction::from_fn(g, |_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    #[test]
    fn d3_spectra() {
        let s3 = 3f64.sqrt();
        assert!(close(&spectrum(3, OscillatorKind::Fourier), &[0.5 * (1.0 - 1.0 / s3), 0.5 * (1.0 + 1.0 / s3), 1.0], 1e-12));
        assert!(close(&spectrum(3, OscillatorKind::Kravchuk), &[0.5, 1.5, 2.5], 1e-15));
        let h1 = spectrum(3, OscillatorKind::FrameQuantized(Family::G1));
        assert!(close(&h1, &[0.5 * (1.0 - 0.5 / s3), 0.75, 0.25 * (3.0 + 1.0 / s3)], 1e-12));
        // Direct evaluation of ½P² + ½FP²F⁺ at d = 3.
        assert!(close(&spectrum(3, OscillatorKind::Harper), &[(3.0 - s3) / 2.0, (3.0 + s3) / 2.0, 3.0], 1e-12));
    }

    #[test]
    fn hermitian_and_fourier_invariant() {
        let g = dim(9);
        let f = fourier_operator(g);
        for kind in [
            OscillatorKind::Fourier,
            OscillatorKind::Harper,
            OscillatorKind::Kravchuk,
            OscillatorKind::FrameQuantized(Family::G1),
            OscillatorKind::GramSchmidt(Family::G1),
            OscillatorKind::DeformedFourier(0.9),
            OscillatorKind::DeformedHarper(1.1),
        ] {
            let h = hamiltonian(g, kind).unwrap();
            assert!(h.hermiticity_defect() < 1e-10, "{kind}");
            if matches!(kind, OscillatorKind::Fourier | OscillatorKind::Harper | OscillatorKind::FrameQuantized(Family::G1)) {
                assert!(f.commutator(&h).unwrap().max_abs() < 1e-10, "{kind}");
            }
        }
        let h2 = hamiltonian(g, OscillatorKind::FrameQuantized(Family::G2)).unwrap();
        let h3 = hamiltonian(g, OscillatorKind::FrameQuantized(Family::G3)).unwrap();
        let h4 = hamiltonian(g, OscillatorKind::FrameQuantized(Family::G4)).unwrap();
        let h5 = hamiltonian(g, OscillatorKind::FrameQuantized(Family::G5)).unwrap();
        assert!((&(&f * &h2) * &f.adjoint()).max_abs_diff(&h3) < 1e-10);
        assert!((&(&f * &h4) * &f.adjoint()).max_abs_diff(&h5) < 1e-10);
    }

    #[test]
    fn kravchuk_hamiltonian_ladder() {
        let g = dim(7);
        let h = hamiltonian(g, OscillatorKind::Kravchuk).unwrap();
        let su2 = su2_generators(g);
        assert!(h.commutator(&su2.jplus).unwrap().max_abs_diff(&su2.jplus) < 1e-12);
        assert!(h.commutator(&su2.jminus).unwrap().max_abs_diff(&su2.jminus.scale_real(-1.0)) < 1e-12);
        let alt = (&(&su2.jplus * &su2.jminus) - &(&su2.jminus * &su2.jplus)).scale_real(0.5).add_identity(3.5);
        assert!(alt.max_abs_diff(&h) < 1e-12);
        for n in g.indices() {
            assert_eq!(h.element(n, n).re, (n + 3) as f64 + 0.5);
        }
    }

    #[test]
    fn deformed_reduce_at_one() {
        let g = dim(9);
        let a = hamiltonian(g, OscillatorKind::DeformedFourier(1.0)).unwrap();
        assert!(a.max_abs_diff(&hamiltonian(g, OscillatorKind::Fourier).unwrap()) < 1e-8);
        let b = hamiltonian(g, OscillatorKind::DeformedHarper(1.0)).unwrap();
        assert!(b.max_abs_diff(&hamiltonian(g, OscillatorKind::Harper).unwrap()) < 1e-8);
        assert!(hamiltonian(g, OscillatorKind::DeformedHarper(2.0)).is_err());
        assert!(hamiltonian(g, OscillatorKind::DeformedFourier(0.0)).is_err());
    }

    #[test]
    fn alternation_counting() {
        assert_eq!(sign_alternations(&[1.0, 2.0, 1.0]), Some(0));
        assert_eq!(sign_alternations(&[-1.0, 0.0, 1.0]), Some(1));
        assert_eq!(sign_alternations(&[1.0, -1.0, 1e-20, 1.0]), Some(2));
        assert_eq!(sign_alternations(&[1.0, -1.0, 1e-9, 1.0]), None);
    }

    #[test]
    fn harper_functions() {
        let g = dim(15);
        let hb = harper_basis(g).unwrap();
        assert!(hb.fourier_defect() < 1e-8);
        let f = fourier_operator(g);
        assert!(f.apply(hb.function(0)).unwrap().max_abs_diff(hb.function(0)) < 1e-8);
        for (n, h) in hb.functions().iter().enumerate() {
            assert_eq!(sign_alternations(&h.real_parts()), Some(n));
            for (m, k) in hb.functions().iter().enumerate() {
                let ip = inner_product(h, k).unwrap();
                assert!((ip - if n == m { 1.0 } else { 0.0 }).norm() < 1e-10);
            }
        }
        for d in (3..=31).step_by(2) {
            assert!(harper_basis(dim(d)).is_ok(), "d={d}");
        }
    }

    #[test]
    fn fractional_powers() {
        let g = dim(15);
        let id = LinearOperator::identity(g);
        assert!(fractional_fourier(g, 0.0).unwrap().max_abs_diff(&id) < 1e-10);
        let f = fourier_operator(g);
        assert!(fractional_fourier(g, 1.0).unwrap().max_abs_diff(&f) < 1e-8);
        let half = fractional_fourier(g, 0.5).unwrap();
        assert!((&half * &half).max_abs_diff(&f) < 1e-8);
        assert!(half.unitarity_defect() < 1e-12);
    }

    #[test]
    fn gram_schmidt() {
        let g = dim(15);
        for fam in [Family::G1, Family::G4] {
            let gs = gram_schmidt_oscillator(g, fam).unwrap();
            let ground = standard_gaussian(g, fam).unwrap();
            let h_ground = gs.hamiltonian.apply(&ground).unwrap();
            assert!(h_ground.max_abs_diff(&ground.scale(Complex64::new(0.5, 0.0))) < 1e-10);
        }
        let ev = spectrum(3, OscillatorKind::GramSchmidt(Family::G4));
        assert!(close(&ev, &[0.5, 1.5, 2.5], 1e-12));

        let g = dim(7);
        let gs = gram_schmidt_binomial(g).unwrap();
        let t = KravchukTable::new(g);
        let j = g.j();
        for (k, phi) in gs.functions.iter().enumerate() {
            let m = k as i64 - j;
            let sign = if (j + m) % 2 == 0 { 1.0 } else { -1.0 };
            assert!(phi.max_abs_diff(&t.function(m).scale(Complex64::new(sign, 0.0))) < 1e-8);
        }

        let mut amp = GridFunction::from_real(g, &[1.0; 7]).unwrap();
        amp[2] = Complex64::new(0.0, 0.0);
        assert_eq!(gram_schmidt_with_amplitude(&amp), Err(Error::WeightDegenerate(vec![2])));
        assert!(matches!(gram_schmidt_oscillator(dim(31), Family::G5), Err(Error::IllConditioned(_))));
    }

    #[test]
    fn evolution() {
        let g = dim(9);
        let psi = random_state(g, 1);
        let hk = hamiltonian(g, OscillatorKind::Kravchuk).unwrap();
        assert!(evolve(&hk, &psi, 0.0).unwrap().max_abs_diff(&psi) < 1e-12);
        let back = evolve(&hk, &psi, 2.0 * PI).unwrap();
        assert!((fidelity(&psi, &back).unwrap() - 1.0).abs() < 1e-10);
        assert!((evolve(&hk, &psi, 1.3).unwrap().norm() - psi.norm()).abs() < 1e-10);

        let gs = gram_schmidt_oscillator(g, Family::G1).unwrap();
        let g1 = standard_gaussian(g, Family::G1).unwrap();
        for t in [0.3, 2.0, 7.5] {
            let got = evolve(&gs.hamiltonian, &g1, t).unwrap();
            assert!(got.max_abs_diff(&g1.scale(Complex64::from_polar(1.0, -t / 2.0))) < 1e-10);
        }
    }

    #[test]
    fn revivals() {
        let g = dim(9);
        let spec = eigendecompose_hermitian(&hamiltonian(g, OscillatorKind::Kravchuk).unwrap()).unwrap();
        let r = detect_revivals(&spec, 3, 1e-8).unwrap();
        assert_eq!(r.progressions.len(), 1);
        let p = r.full_length(9).unwrap();
        assert!((p.gap - 1.0).abs() < 1e-12);
        assert!((p.period() - 2.0 * PI).abs() < 1e-12);

        let fourier = spectrum(3, OscillatorKind::Fourier);
        assert!(detect_progressions(&fourier, 3, 1e-6).unwrap().progressions.is_empty());
        assert!(detect_progressions(&[0.0, 1.0], 3, 1e-6).unwrap().progressions.is_empty());
        assert!(detect_progressions(&[0.0, 1.0], 3, 0.0).is_err());

        let levels = [0.0, 1.0, 2.0, 3.0, 3.5, 4.0, 4.5, 10.0];
        let r = detect_progressions(&levels, 3, 1e-9).unwrap();
        let runs: Vec<_> = r.progressions.iter().map(|p| (p.start, p.len)).collect();
        assert_eq!(runs, vec![(0, 4), (3, 4)]);
    }
}
