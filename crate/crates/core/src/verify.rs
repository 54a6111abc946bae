//! Self-check suite run by `finosc verify`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eigen::eigendecompose_hermitian;
use crate::error::{Error, Result};
use crate::frame::CoherentFamily;
use crate::gaussian::{gaussian, gaussian_from_theta, norm_squared_closed_form, standard_gaussian, Family, GaussianFamily};
use crate::kravchuk::{kravchuk_transform, KravchukTable};
use crate::lattice::{convolve, fourier_operator, fourier_transform, parity_operator, GridDim, GridFunction, LinearOperator};
use crate::oscillator::{
    detect_revivals, evolve_spectral, fidelity, gram_schmidt_oscillator, hamiltonian, harper_basis, OscillatorKind,
};
use crate::special::binomial;
use crate::su2::su2_generators;
use crate::wigner::{gaussian_wigner_product, wigner, wigner_fourier_covariance_check};

#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable at this dimension.
    Skipped,
    /// Informational comparison that does not affect the exit code.
    Note,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn within(name: impl Into<String>, err: f64, tol: f64) -> Self {
        let status = if err <= tol { Status::Pass } else { Status::Fail };
        Self { name: name.into(), status, detail: format!("err {err:.3e} (tol {tol:.0e})") }
    }

    fn flag(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
    }

    fn from_result(name: &str, r: Result<Check>) -> Self {
        r.unwrap_or_else(|e| Self { name: name.into(), status: Status::Fail, detail: e.to_string() })
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
            Status::Note => "NOTE",
        };
        write!(f, "{tag}  {:<44} {}", self.name, self.detail)
    }
}

fn random_state(dim: GridDim, rng: &mut ChaCha8Rng) -> GridFunction {
    GridFunction::from_fn(dim, |_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// Every check applicable at `dim`; `tol` is the tolerance for the exact
/// identities (looser, fixed tolerances apply to eigenvector-based ones).
pub fn run_suite(dim: GridDim, tol: f64) -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    lattice_checks(dim, &mut rng, &mut out);
    gaussian_checks(dim, tol, &mut out);
    wigner_checks(dim, tol, &mut rng, &mut out);
    kravchuk_checks(dim, tol, &mut out);
    frame_checks(dim, tol, &mut out);
    oscillator_checks(dim, tol, &mut rng, &mut out);
    if dim.d() == 3 {
        out.extend(d3_tables());
    }
    out
}

fn lattice_checks(dim: GridDim, rng: &mut ChaCha8Rng, out: &mut Vec<Check>) {
    let f = fourier_operator(dim);
    out.push(Check::within("fourier is unitary", f.unitarity_defect(), 1e-12));
    out.push(Check::within("F^4 = I", f.pow(4).max_abs_diff(&LinearOperator::identity(dim)), 1e-12));
    out.push(Check::within("F^2 = parity", f.pow(2).max_abs_diff(&parity_operator(dim)), 1e-12));
    let (a, b) = (random_state(dim, rng), random_state(dim, rng));
    let lhs = fourier_transform(&convolve(&a, &b).expect("same dim"));
    let (fa, fb) = (fourier_transform(&a), fourier_transform(&b));
    let sd = (dim.d() as f64).sqrt();
    let rhs = GridFunction::from_fn(dim, |k| fa.at(k) * fb.at(k) * sd);
    out.push(Check::within("convolution theorem", lhs.max_abs_diff(&rhs), 1e-12));
}

fn gaussian_checks(dim: GridDim, tol: f64, out: &mut Vec<Check>) {
    for kappa in [0.5, 1.0, 2.0] {
        let pairs = [(Family::G1, Family::G1), (Family::G2, Family::G3), (Family::G3, Family::G2)];
        for (from, to) in pairs {
            let name = format!("F {from}({kappa}) = {to}({})/sqrt(kappa)", 1.0 / kappa);
            out.push(Check::from_result(
                &name,
                (|| {
                    let lhs = fourier_transform(&gaussian(dim, GaussianFamily::new(from, Some(kappa))?)?);
                    let rhs = gaussian(dim, GaussianFamily::new(to, Some(1.0 / kappa))?)?
                        .scale(Complex64::new(1.0 / kappa.sqrt(), 0.0));
                    Ok(Check::within(name.clone(), lhs.max_abs_diff(&rhs), tol))
                })(),
            ));
        }
    }
    let g4 = gaussian(dim, GaussianFamily::g4()).expect("g4");
    let g5 = gaussian(dim, GaussianFamily::g5()).expect("g5");
    out.push(Check::within("F g4 = g5", fourier_transform(&g4).max_abs_diff(&g5), tol));
    out.push(Check::within("F g5 = g4", fourier_transform(&g5).max_abs_diff(&g4), tol));

    for fam in [Family::G1, Family::G2, Family::G3] {
        let name = format!("{fam} theta form");
        out.push(Check::from_result(
            &name,
            (|| {
                let f = GaussianFamily::standard(fam);
                Ok(Check::within(name.clone(), gaussian(dim, f)?.max_abs_diff(&gaussian_from_theta(dim, f)?), 1e-12))
            })(),
        ));
    }
    for fam in Family::ALL {
        let name = format!("{fam} closed-form norm");
        out.push(Check::from_result(
            &name,
            (|| {
                let f = GaussianFamily::standard(fam);
                let direct = gaussian(dim, f)?.norm_sqr();
                let closed = norm_squared_closed_form(dim, f)?;
                Ok(Check::within(name.clone(), (direct - closed).abs() / direct, tol))
            })(),
        ));
    }
}

fn wigner_checks(dim: GridDim, tol: f64, rng: &mut ChaCha8Rng, out: &mut Vec<Check>) {
    for fam in [Family::G1, Family::G2, Family::G3] {
        for kappa in [1.0, 2.0] {
            let name = format!("wigner product form {fam}({kappa})");
            out.push(Check::from_result(
                &name,
                (|| {
                    let direct = wigner(&gaussian(dim, GaussianFamily::new(fam, Some(kappa))?)?);
                    let product = gaussian_wigner_product(fam, kappa, dim)?;
                    Ok(Check::within(name.clone(), direct.max_abs_diff(&product), tol))
                })(),
            ));
        }
    }
    let psi = random_state(dim, rng);
    let w = wigner(&psi);
    let fpsi = fourier_transform(&psi);
    let mut err: f64 = 0.0;
    for (s, (p, q)) in w.position_marginal().iter().zip(w.momentum_marginal()).enumerate() {
        err = err.max((p - psi.values()[s].norm_sqr()).abs()).max((q - fpsi.values()[s].norm_sqr()).abs());
    }
    out.push(Check::within("wigner marginals", err, tol));
    out.push(Check::within("wigner is real", w.max_imag(), 1e-12));
    let g4 = standard_gaussian(dim, Family::G4).expect("g4");
    let ok = wigner_fourier_covariance_check(&g4, tol).unwrap_or(false);
    out.push(Check::flag("wigner fourier covariance (g4)", ok, ""));
}

fn kravchuk_checks(dim: GridDim, tol: f64, out: &mut Vec<Check>) {
    let t = KravchukTable::new(dim);
    let j = dim.j();
    let jf = j as f64;
    let mut orth: f64 = 0.0;
    let mut sym: f64 = 0.0;
    let mut rec: f64 = 0.0;
    for m in dim.indices() {
        for l in dim.indices() {
            let s: f64 = dim.indices().map(|n| binomial(2 * j, j + n) * t.poly(m, n) * t.poly(l, n)).sum::<f64>()
                / 4f64.powi(j as i32);
            let want = if m == l { binomial(2 * j, j + m) } else { 0.0 };
            orth = orth.max((s - want).abs() / binomial(2 * j, j + m).max(binomial(2 * j, j + l)));
            sym = sym.max((t.func(m, l) - t.func(l, m)).abs());
            let mf = l as f64;
            let lhs = ((jf - mf) * (jf + mf + 1.0)).sqrt() * t.func_or_zero(m, l + 1)
                + ((jf + mf) * (jf - mf + 1.0)).sqrt() * t.func_or_zero(m, l - 1);
            rec = rec.max((lhs + 2.0 * m as f64 * t.func(m, l)).abs());
        }
    }
    out.push(Check::within("kravchuk orthogonality (relative)", orth, 1e-9));
    out.push(Check::within("kravchuk symmetry", sym, 1e-12));
    out.push(Check::within("kravchuk recurrence", rec, tol));
    let k = kravchuk_transform(dim);
    out.push(Check::within("kravchuk transform unitary", k.unitarity_defect(), 1e-12));
    out.push(Check::within("K^4 = I", k.pow(4).max_abs_diff(&LinearOperator::identity(dim)), 1e-12));
    let su2 = su2_generators(dim);
    out.push(Check::within("Jx = K Jz K+", (&(&k * &su2.jz) * &k.adjoint()).max_abs_diff(&su2.jx), tol));
    let c = |a: &LinearOperator, b: &LinearOperator| a.commutator(b).expect("same dim");
    let i = Complex64::i();
    let err = c(&su2.jz, &su2.jplus)
        .max_abs_diff(&su2.jplus)
        .max(c(&su2.jminus, &su2.jplus).max_abs_diff(&su2.jz.scale_real(-2.0)))
        .max(c(&su2.jx, &su2.jy).max_abs_diff(&su2.jz.scale(i)));
    out.push(Check::within("su(2) commutators", err, 1e-12));
}

fn frame_checks(dim: GridDim, tol: f64, out: &mut Vec<Check>) {
    let f = fourier_operator(dim);
    let mut families = Vec::new();
    for fam in Family::ALL {
        match CoherentFamily::gaussian(dim, fam) {
            Ok(cf) => {
                let norm_err = cf.states().map(|(_, s)| (s.norm() - 1.0).abs()).fold(0.0, f64::max);
                out.push(Check::within(format!("{fam} coherent states unit norm"), norm_err, 1e-12));
                out.push(Check::within(format!("{fam} resolution of identity"), cf.resolution_defect(), tol));
                families.push(cf);
            }
            Err(e) => out.push(Check::flag(format!("{fam} coherent family"), false, e.to_string())),
        }
    }
    if families.len() == 5 {
        let mut err: f64 = 0.0;
        for (l, s) in families[1].states() {
            let fs = f.apply(s).expect("same dim");
            err = err.max(fs.max_abs_diff(families[2].state(l.beta(), -l.alpha())));
        }
        out.push(Check::within("F|a,b>_2 = |b,-a>_3", err, tol));
    }
    for (a, b) in [(Family::G2, Family::G3), (Family::G4, Family::G5)] {
        let name = format!("F H_{} F+ = H_{}", a.number(), b.number());
        out.push(Check::from_result(
            &name,
            (|| {
                let ha = hamiltonian(dim, OscillatorKind::FrameQuantized(a))?;
                let hb = hamiltonian(dim, OscillatorKind::FrameQuantized(b))?;
                Ok(Check::within(name.clone(), (&(&f * &ha) * &f.adjoint()).max_abs_diff(&hb), tol))
            })(),
        ));
    }
}

fn oscillator_checks(dim: GridDim, tol: f64, rng: &mut ChaCha8Rng, out: &mut Vec<Check>) {
    let f = fourier_operator(dim);
    for kind in [OscillatorKind::Fourier, OscillatorKind::Harper, OscillatorKind::FrameQuantized(Family::G1)] {
        let name = format!("[F, H] = 0 for {kind}");
        out.push(Check::from_result(
            &name,
            (|| {
                let h = hamiltonian(dim, kind)?;
                Ok(Check::within(name.clone(), f.commutator(&h)?.max_abs(), tol))
            })(),
        ));
    }
    match harper_basis(dim) {
        Ok(hb) => {
            out.push(Check::flag("harper alternation counts", true, format!("0..={}", dim.d() - 1)));
            out.push(Check::within("F h_n = (-i)^n h_n", hb.fourier_defect(), 1e-8));
        }
        Err(e) => out.push(Check::flag("harper basis", false, e.to_string())),
    }
    for fam in Family::ALL {
        let name = format!("gram-schmidt ground state {fam}");
        let check = match gram_schmidt_oscillator(dim, fam) {
            Ok(gs) => (|| {
                let g = standard_gaussian(dim, fam)?;
                let hg = gs.hamiltonian.apply(&g)?;
                Ok(Check::within(name.clone(), hg.max_abs_diff(&g.scale(Complex64::new(0.5, 0.0))), tol))
            })(),
            Err(Error::IllConditioned(c)) => Ok(Check {
                name: name.clone(),
                status: Status::Skipped,
                detail: format!("moment condition {c:.1e} too large at d={}", dim.d()),
            }),
            Err(e) => Err(e),
        };
        out.push(Check::from_result(&name, check));
    }
    let name = "kravchuk revival";
    out.push(Check::from_result(
        name,
        (|| {
            let spec = eigendecompose_hermitian(&hamiltonian(dim, OscillatorKind::Kravchuk)?)?;
            let report = detect_revivals(&spec, 3, 1e-8)?;
            let Some(p) = report.full_length(dim.d()) else {
                return Ok(Check::flag(name, false, "no full-length progression"));
            };
            let psi = random_state(dim, rng);
            let back = evolve_spectral(&spec, &psi, p.period())?;
            let fid = fidelity(&psi, &back)?;
            let err = (fid - 1.0).abs().max((p.period() - 2.0 * PI).abs());
            Ok(Check::within(name, err, 1e-8))
        })(),
    ));
}

/// Exact `d = 3` reference values.
pub mod d3 {
    fn s3() -> f64 {
        3f64.sqrt()
    }

    /// Fourier eigenvectors for eigenvalues `1, -i, -1`.
    pub fn fourier_eigenvectors() -> [[f64; 3]; 3] {
        let a = 0.5 * (1.0 - 1.0 / s3()).sqrt();
        let b = (1.0 + 1.0 / s3()).sqrt() / 2f64.sqrt();
        let c = 0.5 * (1.0 + 1.0 / s3()).sqrt();
        let e = (1.0 - 1.0 / s3()).sqrt() / 2f64.sqrt();
        let r = 1.0 / 2f64.sqrt();
        [[a, b, a], [-r, 0.0, r], [c, -e, c]]
    }

    /// `𝔎_{-1}, 𝔎_0, 𝔎_1`.
    pub fn kravchuk_functions() -> [[f64; 3]; 3] {
        let r = 1.0 / 2f64.sqrt();
        [[0.5, r, 0.5], [r, 0.0, -r], [0.5, -r, 0.5]]
    }

    /// Published `𝔊_1 ... 𝔊_5`.
    pub fn gaussians() -> [[f64; 3]; 5] {
        let g1 = fourier_eigenvectors()[0];
        let r23 = (2.0f64 / 3.0).sqrt();
        let p = 0.5 * (1.0 + r23).sqrt();
        let q = (1.0 - r23).sqrt() / 2f64.sqrt();
        let u = 0.5 * (1.0 - r23).sqrt();
        let v = (1.0 + r23).sqrt() / 2f64.sqrt();
        let s6 = 6f64.sqrt();
        let t = 3.0 * 2f64.sqrt();
        [g1, [p, q, p], [-u, v, -u], [1.0 / s6, 2.0 / s6, 1.0 / s6], [1.0 / t, 4.0 / t, 1.0 / t]]
    }

    pub fn fourier_spectrum() -> [f64; 3] {
        [0.5 * (1.0 - 1.0 / s3()), 0.5 * (1.0 + 1.0 / s3()), 1.0]
    }

    pub fn harper_spectrum_published() -> [f64; 3] {
        [0.5 * (1.0 - 1.0 / s3()), 0.5 * (1.0 + 1.0 / s3()), 3.0]
    }

    pub fn frame_h1_spectrum() -> [f64; 3] {
        [0.5 * (1.0 - 0.5 / s3()), 0.75, 0.25 * (3.0 + 1.0 / s3())]
    }
}

/// `min over ± of max |a - ±b|` for real vectors.
pub fn sign_aligned_diff(a: &[f64], b: &[f64]) -> f64 {
    let plus = a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let minus = a.iter().zip(b).map(|(x, y)| (x + y).abs()).fold(0.0, f64::max);
    plus.min(minus)
}

fn spectrum_err(kind: OscillatorKind, want: &[f64]) -> Result<f64> {
    let dim = GridDim::new(3)?;
    let ev = eigendecompose_hermitian(&hamiltonian(dim, kind)?)?;
    Ok(ev.eigenvalues().iter().zip(want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

fn d3_tables() -> Vec<Check> {
    let dim = GridDim::new(3).expect("d = 3");
    let mut out = Vec::new();
    out.push(Check::from_result(
        "d=3 fourier eigenvectors",
        (|| {
            let hb = harper_basis(dim)?;
            let err = d3::fourier_eigenvectors()
                .iter()
                .zip(hb.functions())
                .map(|(want, h)| sign_aligned_diff(want, &h.real_parts()))
                .fold(0.0, f64::max);
            Ok(Check::within("d=3 fourier eigenvectors", err, 1e-12))
        })(),
    ));
    let t = KravchukTable::new(dim);
    let err = d3::kravchuk_functions()
        .iter()
        .zip(-1..=1)
        .map(|(want, m)| want.iter().zip(-1..=1).map(|(w, n)| (w - t.func(m, n)).abs()).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    out.push(Check::within("d=3 kravchuk functions", err, 1e-12));
    let published = d3::gaussians();
    for fam in Family::ALL {
        let name = format!("d=3 {fam} table column");
        let got = standard_gaussian(dim, fam).expect("gaussian").real_parts();
        let err = got.iter().zip(&published[fam.number() as usize - 1]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let mut c = Check::within(name, err, 1e-12);
        if matches!(fam, Family::G2 | Family::G3) && c.failed() {
            c.status = Status::Note;
            c.detail = format!("{}; reference column is not the normalized lattice sum", c.detail);
        }
        out.push(c);
    }
    out.push(Check::from_result(
        "d=3 H_Fourier spectrum",
        spectrum_err(OscillatorKind::Fourier, &d3::fourier_spectrum()).map(|e| Check::within("d=3 H_Fourier spectrum", e, 1e-10)),
    ));
    out.push(Check::from_result(
        "d=3 H_1 spectrum",
        spectrum_err(OscillatorKind::FrameQuantized(Family::G1), &d3::frame_h1_spectrum())
            .map(|e| Check::within("d=3 H_1 spectrum", e, 1e-10)),
    ));
    let name = "d=3 H_Harper spectrum";
    let mut c = Check::from_result(
        name,
        spectrum_err(OscillatorKind::Harper, &d3::harper_spectrum_published()).map(|e| Check::within(name, e, 1e-10)),
    );
    if c.failed() {
        c.status = Status::Note;
        c.detail = format!("{}; reference levels have trace 4, tr H_Harper = 6", c.detail);
    }
    out.push(c);
    out
}
