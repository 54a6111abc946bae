//! Hermitian eigensolver by cyclic complex Jacobi rotations.
//!
//! Output is deterministic: eigenvalues ascend, eigenvectors inside a
//! degenerate cluster are re-orthonormalized in index order, and every
//! eigenvector is rotated so that its largest-magnitude entry (lowest index on
//! ties) is real and positive.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{inner_product, GridDim, GridFunction, LinearOperator};

/// Solver tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenConfig {
    /// Largest accepted `|M - M⁺|` entry.
    pub hermitian_tol: f64,
    /// Stop once the off-diagonal Frobenius mass falls below `off_tol · ‖M‖_F`.
    pub off_tol: f64,
    pub max_sweeps: usize,
    /// Eigenvalues closer than this form a degenerate cluster.
    pub degeneracy_gap: f64,
}

impl Default for EigenConfig {
    fn default() -> Self {
        Self { hermitian_tol: 1e-10, off_tol: 1e-14, max_sweeps: 100, degeneracy_gap: 1e-10 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<GridFunction>,
    clusters: Vec<Vec<usize>>,
    sweeps: usize,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[GridFunction] {
        &self.eigenvectors
    }

    pub fn dim(&self) -> GridDim {
        self.eigenvectors[0].dim()
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Position groups whose eigenvalues lie within the degeneracy gap.
    pub fn degenerate_clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn is_degenerate(&self) -> bool {
        !self.clusters.is_empty()
    }

    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    pub fn pairs(&self) -> impl Iterator<Item = (f64, &GridFunction)> {
        self.eigenvalues.iter().copied().zip(&self.eigenvectors)
    }

    /// `Σ g(λ_k) |v_k⟩⟨v_k|`.
    pub fn apply_function(&self, g: impl Fn(f64) -> Complex64) -> LinearOperator {
        LinearOperator::spectral_sum(self.dim(), self.pairs().map(|(l, v)| (g(l), v)))
    }

    pub fn reconstruct(&self) -> LinearOperator {
        self.apply_function(|l| Complex64::new(l, 0.0))
    }
}

pub fn eigendecompose_hermitian(m: &LinearOperator) -> Result<SpectralDecomposition> {
    eigendecompose_hermitian_with(m, &EigenConfig::default())
}

pub fn eigendecompose_hermitian_with(m: &LinearOperator, cfg: &EigenConfig) -> Result<SpectralDecomposition> {
    let defect = m.hermiticity_defect();
    if defect > cfg.hermitian_tol {
        return Err(Error::NotHermitian(defect));
    }
    let dim = m.dim();
    let d = dim.d();

    // symmetrize, then work on plain row-major buffers
    let mut a: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); d * d];
    for r in 0..d {
        for c in 0..d {
            a[r * d + c] = (m.get(r, c) + m.get(c, r).conj()) * 0.5;
        }
    }
    let mut v: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); d * d];
    for s in 0..d {
        v[s * d + s] = Complex64::new(1.0, 0.0);
    }

    let scale = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let threshold = cfg.off_tol * scale;
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_mass(&a, d);
        if off <= threshold {
            break;
        }
        if sweeps == cfg.max_sweeps {
            return Err(Error::NoConvergence(cfg.max_sweeps));
        }
        sweeps += 1;
        for p in 0..d - 1 {
            for q in p + 1..d {
                rotate(&mut a, &mut v, d, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&x, &y| a[x * d + x].re.total_cmp(&a[y * d + y].re).then(x.cmp(&y)));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[k * d + k].re).collect();
    let mut eigenvectors: Vec<GridFunction> = order
        .iter()
        .map(|&k| {
            let col = (0..d).map(|r| v[r * d + k]).collect();
            GridFunction::from_values(dim, col).expect("column length")
        })
        .collect();

    let clusters = find_clusters(&eigenvalues, cfg.degeneracy_gap);
    for cluster in &clusters {
        orthonormalize_cluster(&mut eigenvectors, cluster);
    }
    for vec in eigenvectors.iter_mut() {
        *vec = fix_phase(vec);
    }

    Ok(SpectralDecomposition { eigenvalues, eigenvectors, clusters, sweeps })
}

fn off_diagonal_mass(a: &[Complex64], d: usize) -> f64 {
    let mut s = 0.0;
    for r in 0..d {
        for c in 0..d {
            if r != c {
                s += a[r * d + c].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
///
/// The unitary is `W = diag(1, e^{-iφ}) · R(θ)` on the `(p, q)` plane, where
/// `φ = arg a_pq` turns the pivot real and `R` is the real symmetric Jacobi
/// rotation. `a ← W⁺ a W`, `v ← v W`.
fn rotate(a: &mut [Complex64], v: &mut [Complex64], d: usize, p: usize, q: usize) {
    let apq = a[p * d + q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[p * d + p].re;
    let aqq = a[q * d + q].re;
    let phase = apq / r;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let e = phase.conj();
    let w_pp = Complex64::new(c, 0.0);
    let w_pq = Complex64::new(s, 0.0);
    let w_qp = e * (-s);
    let w_qq = e * c;

    for k in 0..d {
        let akp = a[k * d + p];
        let akq = a[k * d + q];
        a[k * d + p] = akp * w_pp + akq * w_qp;
        a[k * d + q] = akp * w_pq + akq * w_qq;
    }
    for k in 0..d {
        let apk = a[p * d + k];
        let aqk = a[q * d + k];
        a[p * d + k] = w_pp.conj() * apk + w_qp.conj() * aqk;
        a[q * d + k] = w_pq.conj() * apk + w_qq.conj() * aqk;
    }
    a[p * d + q] = Complex64::new(0.0, 0.0);
    a[q * d + p] = Complex64::new(0.0, 0.0);
    a[p * d + p].im = 0.0;
    a[q * d + q].im = 0.0;

    for k in 0..d {
        let vkp = v[k * d + p];
        let vkq = v[k * d + q];
        v[k * d + p] = vkp * w_pp + vkq * w_qp;
        v[k * d + q] = vkp * w_pq + vkq * w_qq;
    }
}

fn find_clusters(eigenvalues: &[f64], gap: f64) -> Vec<Vec<usize>> {
    let mut clusters = Vec::new();
    let mut current = vec![0usize];
    for k in 1..eigenvalues.len() {
        if eigenvalues[k] - eigenvalues[k - 1] < gap {
            current.push(k);
        } else {
            if current.len() > 1 {
                clusters.push(std::mem::take(&mut current));
            }
            current = vec![k];
        }
    }
    if current.len() > 1 {
        clusters.push(current);
    }
    clusters
}

fn orthonormalize_cluster(vectors: &mut [GridFunction], cluster: &[usize]) {
    for (pos, &k) in cluster.iter().enumerate() {
        let mut w = vectors[k].clone();
        for &prev in &cluster[..pos] {
            let proj = inner_product(&vectors[prev], &w).expect("same dimension");
            w = &w - &vectors[prev].scale(proj);
        }
        vectors[k] = w.normalized().unwrap_or_else(|_| vectors[k].clone());
    }
}

/// Rotates `v` so that its largest-magnitude entry is real and positive.
/// Entries within a relative `1e-10` of the maximum count as ties and the
/// lowest index wins.
pub fn fix_phase(v: &GridFunction) -> GridFunction {
    let vals = v.values();
    let max = vals.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    if max == 0.0 {
        return v.clone();
    }
    let pivot = vals.iter().position(|z| z.norm() >= max * (1.0 - 1e-10)).expect("max exists");
    let ph = vals[pivot].conj() / vals[pivot].norm();
    let mut out = v.scale(ph);
    let s = out.dim().index_of(pivot);
    out[s].im = 0.0;
    out
}

/// `e^{scale · M} = Σ e^{scale·λ_k} |v_k⟩⟨v_k|` for Hermitian `M`.
pub fn operator_exponential(m: &LinearOperator, scale: Complex64) -> Result<LinearOperator> {
    let spec = eigendecompose_hermitian(m)?;
    Ok(spec.apply_function(|l| (scale * l).exp()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::fourier_operator;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(dim: GridDim, seed: u64) -> LinearOperator {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let raw = LinearOperator::from_fn(dim, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        (&raw + &raw.adjoint()).scale_real(0.5)
    }

    fn check_invariants(m: &LinearOperator, spec: &SpectralDecomposition) {
        let norm = m.frobenius_norm().max(1.0);
        for w in spec.eigenvalues().windows(2) {
            assert!(w[0] <= w[1]);
        }
        for (l, v) in spec.pairs() {
            let mv = m.apply(v).unwrap();
            assert!((&mv - &v.scale(c(l, 0.0))).norm() <= 1e-10 * norm);
        }
        for (a, va) in spec.eigenvectors().iter().enumerate() {
            for (b, vb) in spec.eigenvectors().iter().enumerate() {
                let ip = inner_product(va, vb).unwrap();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((ip - want).norm() < 1e-10);
            }
        }
        assert!(spec.reconstruct().max_abs_diff(m) < 1e-10 * norm);
    }

    #[test]
    fn diagonal_input() {
        let dim = GridDim::new(3).unwrap();
        let m = LinearOperator::diagonal(dim, |n| c(n as f64, 0.0));
        let spec = eigendecompose_hermitian(&m).unwrap();
        assert_eq!(spec.eigenvalues(), &[-1.0, 0.0, 1.0]);
        for (k, n) in dim.indices().enumerate() {
            assert_eq!(spec.eigenvectors()[k], GridFunction::delta(dim, n));
        }
        assert_eq!(spec.sweeps(), 0);
    }

    #[test]
    fn jx_spectrum() {
        let dim = GridDim::new(3).unwrap();
        let s = 2f64.sqrt() / 2.0;
        let jx = LinearOperator::from_real_rows(dim, &[&[0.0, s, 0.0], &[s, 0.0, s], &[0.0, s, 0.0]]).unwrap();
        let spec = eigendecompose_hermitian(&jx).unwrap();
        for (got, want) in spec.eigenvalues().iter().zip([-1.0, 0.0, 1.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        check_invariants(&jx, &spec);
    }

    #[test]
    fn random_hermitian_invariants() {
        for (d, seed) in [(3, 1), (7, 2), (15, 3), (31, 4)] {
            let dim = GridDim::new(d).unwrap();
            let m = random_hermitian(dim, seed);
            let spec = eigendecompose_hermitian(&m).unwrap();
            check_invariants(&m, &spec);
        }
    }

    #[test]
    fn deterministic() {
        let dim = GridDim::new(9).unwrap();
        let m = random_hermitian(dim, 11);
        assert_eq!(eigendecompose_hermitian(&m).unwrap(), eigendecompose_hermitian(&m).unwrap());
    }

    #[test]
    fn degenerate_cluster_is_orthonormal() {
        let dim = GridDim::new(5).unwrap();
        // F² is the parity operator: eigenvalues -1 (×2) and +1 (×3)
        let parity = fourier_operator(dim).pow(2);
        let spec = eigendecompose_hermitian(&parity).unwrap();
        assert_eq!(spec.degenerate_clusters().len(), 2);
        check_invariants(&parity, &spec);
    }

    #[test]
    fn rejects_non_hermitian() {
        let dim = GridDim::new(3).unwrap();
        let m = LinearOperator::from_fn(dim, |n, m| c((n - m) as f64, 0.0));
        assert!(matches!(eigendecompose_hermitian(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn phase_convention() {
        let dim = GridDim::new(3).unwrap();
        let v = GridFunction::from_values(dim, vec![c(0.0, 0.1), c(0.0, -0.9), c(0.2, 0.0)]).unwrap();
        let fixed = fix_phase(&v);
        assert!(fixed.at(0).im == 0.0 && fixed.at(0).re > 0.0);
        // ties go to the lowest index
        let t = GridFunction::from_real(dim, &[-0.5, 0.0, 0.5]).unwrap();
        assert_eq!(fix_phase(&t).real_parts(), vec![0.5, 0.0, -0.5]);
    }

    #[test]
    fn exponential_examples() {
        let dim = GridDim::new(3).unwrap();
        let zero = LinearOperator::zeros(dim);
        let e = operator_exponential(&zero, c(1.0, 0.0)).unwrap();
        assert!(e.max_abs_diff(&LinearOperator::identity(dim)) < 1e-15);

        let jz = LinearOperator::diagonal(dim, |n| c(n as f64, 0.0));
        let e = operator_exponential(&jz, c(0.0, std::f64::consts::PI)).unwrap();
        let want = LinearOperator::diagonal(dim, |n| if n == 0 { c(1.0, 0.0) } else { c(-1.0, 0.0) });
        assert!(e.max_abs_diff(&want) < 1e-15);

        let m = random_hermitian(GridDim::new(11).unwrap(), 5);
        let u = operator_exponential(&m, c(0.0, 0.7)).unwrap();
        assert!(u.unitarity_defect() < 1e-12);
    }
}
