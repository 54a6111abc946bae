//! Command-line front end. Exit codes: 0 success, 1 computation or
//! verification failure, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eigen::eigendecompose_hermitian;
use crate::error::Error;
use crate::frame::{frame_analyze, CoherentFamily};
use crate::gaussian::{normalized_gaussian, Family, GaussianFamily};
use crate::kravchuk::KravchukTable;
use crate::lattice::{fourier_operator, GridDim, GridFunction};
use crate::oscillator::{detect_revivals, evolve_spectral, fidelity, hamiltonian, OscillatorKind};
use crate::verify::run_suite;
use crate::wigner::wigner;
use crate::svg;

const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "finosc", version, about = "Finite Gaussians, Wigner functions and finite oscillators on odd grids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Odd dimension d = 2j+1 >= 3.
    #[arg(long, global = true)]
    pub dim: Option<usize>,

    #[arg(long, global = true, value_enum)]
    pub family: Option<FamilyArg>,

    /// Width parameter for g1, g2, g3 (default 1).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub kappa: Option<f64>,

    #[arg(long, global = true, value_enum)]
    pub kind: Option<KindArg>,

    /// Deformation exponent for the deformed Hamiltonians, in (0, 2).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,

    /// Tolerance for identity checks and progression detection.
    #[arg(long, global = true, env = "FINOSC_TOL", allow_negative_numbers = true)]
    pub tol: Option<f64>,

    /// Shortest run of equidistant levels reported as a progression.
    #[arg(long, global = true, default_value_t = 3)]
    pub min_len: usize,

    /// Output file; defaults to $FINOSC_OUT_DIR/<name> or stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,

    /// Initial state for wigner and revival.
    #[arg(long, global = true, value_enum)]
    pub state: Option<StateArg>,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Number of time samples in the fidelity trace.
    #[arg(long, global = true, default_value_t = 201)]
    pub samples: usize,

    /// spectrum: emit eigenvectors (k, n, re, im) instead of eigenvalues.
    #[arg(long, global = true)]
    pub eigenvectors: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Normalized finite Gaussian: n, value, value².
    Gaussian,
    /// Discrete Wigner function: n, m, w.
    Wigner,
    /// Ascending eigenvalues of an oscillator Hamiltonian.
    Spectrum,
    /// Run the self-check suite at the given dimension.
    Verify,
    /// Equidistant level runs and a fidelity trace.
    Revival,
    /// Kravchuk polynomials and functions: m, n, K, Kfun.
    KravchukTable,
    /// Coherent-state frame diagnostics for each Gaussian.
    FrameCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    G1,
    G2,
    G3,
    G4,
    G5,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::G1 => Family::G1,
            FamilyArg::G2 => Family::G2,
            FamilyArg::G3 => Family::G3,
            FamilyArg::G4 => Family::G4,
            FamilyArg::G5 => Family::G5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Fourier,
    Harper,
    Kravchuk,
    Frame,
    Gramschmidt,
    DeformedFourier,
    DeformedHarper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateArg {
    Delta0,
    Gaussian,
    Random,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::EvenDimension(_)
            | Error::DimensionTooSmall(_)
            | Error::InvalidKappa(_)
            | Error::InvalidParameter(_)
            | Error::UnsupportedFamily(_) => Failure::Usage(e.to_string()),
            other => Failure::Compute(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Validated settings shared by all subcommands.
struct RunConfig {
    dim: GridDim,
    family: Family,
    kappa: Option<f64>,
    tol: f64,
    cli: Cli,
}

impl RunConfig {
    fn new(cli: Cli) -> CliResult<Self> {
        let d = cli.dim.ok_or_else(|| Failure::Usage("--dim is required".into()))?;
        let dim = GridDim::new(d)?;
        let family = cli.family.map(Family::from).unwrap_or(Family::G1);
        if let Some(k) = cli.kappa {
            if !(k > 0.0 && k.is_finite()) {
                return Err(Error::InvalidKappa(k).into());
            }
        }
        let tol = cli.tol.unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0) {
            return Err(Failure::Usage(format!("tolerance must be positive, got {tol}")));
        }
        if cli.samples < 2 {
            return Err(Failure::Usage("--samples must be at least 2".into()));
        }
        Ok(Self { dim, family, kappa: cli.kappa, tol, cli })
    }

    fn gaussian_family(&self) -> CliResult<GaussianFamily> {
        let kappa = match (self.family.has_kappa(), self.kappa) {
            (true, k) => Some(k.unwrap_or(1.0)),
            (false, None) => None,
            (false, Some(_)) => return Err(Failure::Usage(format!("{} takes no --kappa", self.family))),
        };
        Ok(GaussianFamily::new(self.family, kappa)?)
    }

    fn kind(&self) -> CliResult<OscillatorKind> {
        let kind = self.cli.kind.ok_or_else(|| Failure::Usage("--kind is required".into()))?;
        let alpha = || self.cli.alpha.ok_or_else(|| Failure::Usage("--alpha is required for deformed kinds".into()));
        Ok(match kind {
            KindArg::Fourier => OscillatorKind::Fourier,
            KindArg::Harper => OscillatorKind::Harper,
            KindArg::Kravchuk => OscillatorKind::Kravchuk,
            KindArg::Frame => OscillatorKind::FrameQuantized(self.family),
            KindArg::Gramschmidt => OscillatorKind::GramSchmidt(self.family),
            KindArg::DeformedFourier => OscillatorKind::DeformedFourier(alpha()?),
            KindArg::DeformedHarper => OscillatorKind::DeformedHarper(alpha()?),
        })
    }

    fn state(&self, default: StateArg) -> CliResult<GridFunction> {
        Ok(match self.cli.state.unwrap_or(default) {
            StateArg::Delta0 => GridFunction::delta(self.dim, 0),
            StateArg::Gaussian => normalized_gaussian(self.dim, self.gaussian_family()?)?,
            StateArg::Random => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.cli.seed);
                let raw = GridFunction::from_fn(self.dim, |_| {
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                });
                raw.normalized()?
            }
        })
    }

    fn svg(&self) -> bool {
        self.cli.format == FormatArg::Svg
    }

    /// Writes to `--out`, else `$FINOSC_OUT_DIR/<name>.<ext>`, else stdout.
    fn emit(&self, name: &str, content: &str) -> CliResult<()> {
        let ext = if self.svg() { "svg" } else { "csv" };
        let path = match (&self.cli.out, std::env::var_os("FINOSC_OUT_DIR")) {
            (Some(p), _) => Some(p.clone()),
            (None, Some(dir)) if !dir.is_empty() => Some(PathBuf::from(dir).join(format!("{name}.{ext}"))),
            _ => None,
        };
        match path {
            Some(p) => {
                if let Some(parent) = p.parent().filter(|p| !p.as_os_str().is_empty()) {
                    std::fs::create_dir_all(parent)?;
                }
                std::fs::write(&p, content)?;
            }
            None => std::io::stdout().write_all(content.as_bytes())?,
        }
        Ok(())
    }
}

/// Float with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn cmd_gaussian(cfg: &RunConfig) -> CliResult<()> {
    let fam = cfg.gaussian_family()?;
    let g = normalized_gaussian(cfg.dim, fam)?;
    let name = format!("gaussian-{}-d{}", cfg.family, cfg.dim.d());
    if cfg.svg() {
        let pts: Vec<_> = cfg.dim.indices().map(|n| (n, g.at(n).re)).collect();
        return cfg.emit(&name, &svg::stem_plot(&format!("{} (d = {})", cfg.family, cfg.dim.d()), &pts));
    }
    let mut s = String::from("n,value,prob\n");
    for n in cfg.dim.indices() {
        let v = g.at(n).re;
        s.push_str(&format!("{n},{},{}\n", fmt17(v), fmt17(v * v)));
    }
    cfg.emit(&name, &s)
}

fn cmd_wigner(cfg: &RunConfig) -> CliResult<()> {
    let psi = cfg.state(StateArg::Gaussian)?;
    let w = wigner(&psi);
    let name = format!("wigner-d{}", cfg.dim.d());
    if cfg.svg() {
        return cfg.emit(&name, &svg::heatmap("W(n, m)", cfg.dim.d(), w.values()));
    }
    let mut s = String::from("n,m,w\n");
    for n in cfg.dim.indices() {
        for m in cfg.dim.indices() {
            s.push_str(&format!("{n},{m},{}\n", fmt17(w.get(n, m))));
        }
    }
    cfg.emit(&name, &s)
}

fn levels(dim: GridDim, kind: OscillatorKind) -> CliResult<Vec<f64>> {
    Ok(eigendecompose_hermitian(&hamiltonian(dim, kind)?)?.eigenvalues().to_vec())
}

fn cmd_eigenvectors(cfg: &RunConfig, kind: OscillatorKind) -> CliResult<()> {
    let spec = eigendecompose_hermitian(&hamiltonian(cfg.dim, kind)?)?;
    let name = format!("eigenvectors-{}-d{}", cfg.cli.kind.map_or("h".into(), |k| format!("{k:?}").to_lowercase()), cfg.dim.d());
    if cfg.svg() {
        let ground = &spec.eigenvectors()[0];
        let pts: Vec<_> = cfg.dim.indices().map(|n| (n, ground.at(n).re)).collect();
        return cfg.emit(&name, &svg::stem_plot(&format!("{kind} ground state (d = {})", cfg.dim.d()), &pts));
    }
    let mut s = String::from("k,n,re,im\n");
    for (k, v) in spec.eigenvectors().iter().enumerate() {
        for n in cfg.dim.indices() {
            let z = v.at(n);
            s.push_str(&format!("{k},{n},{},{}\n", fmt17(z.re), fmt17(z.im)));
        }
    }
    cfg.emit(&name, &s)
}

fn cmd_spectrum(cfg: &RunConfig) -> CliResult<()> {
    let kind = cfg.kind()?;
    if cfg.cli.eigenvectors {
        return cmd_eigenvectors(cfg, kind);
    }
    let ev = levels(cfg.dim, kind)?;
    let name = format!("spectrum-{}-d{}", cfg.cli.kind.map_or("h".into(), |k| format!("{k:?}").to_lowercase()), cfg.dim.d());
    if cfg.svg() {
        let mut cols = Vec::new();
        for d in (3..cfg.dim.d()).step_by(2) {
            if let Ok(l) = levels(GridDim::new(d)?, kind) {
                cols.push((d.to_string(), l));
            }
        }
        cols.push((cfg.dim.d().to_string(), ev));
        return cfg.emit(&name, &svg::level_diagram(&format!("{kind} levels"), &cols));
    }
    let mut s = String::from("k,eigenvalue\n");
    for (k, e) in ev.iter().enumerate() {
        s.push_str(&format!("{k},{}\n", fmt17(*e)));
    }
    cfg.emit(&name, &s)
}

fn cmd_verify(cfg: &RunConfig) -> CliResult<()> {
    let checks = run_suite(cfg.dim, cfg.tol);
    let mut s = String::new();
    for c in &checks {
        s.push_str(&format!("{c}\n"));
    }
    let failed: Vec<_> = checks.iter().filter(|c| c.failed()).map(|c| c.name.clone()).collect();
    s.push_str(&format!("{} checks, {} failed\n", checks.len(), failed.len()));
    std::io::stdout().write_all(s.as_bytes())?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Compute(format!("failed: {}", failed.join(", "))))
    }
}

fn cmd_revival(cfg: &RunConfig) -> CliResult<()> {
    let kind = cfg.kind()?;
    let spec = eigendecompose_hermitian(&hamiltonian(cfg.dim, kind)?)?;
    let report = detect_revivals(&spec, cfg.cli.min_len, cfg.tol)?;
    let period = report
        .progressions
        .iter()
        .max_by_key(|p| p.len)
        .map(|p| p.period())
        .unwrap_or(2.0 * std::f64::consts::PI);
    let psi = cfg.state(StateArg::Random)?;
    let n = cfg.cli.samples;
    let mut trace = Vec::with_capacity(n);
    for k in 0..n {
        let t = 2.0 * period * k as f64 / (n - 1) as f64;
        trace.push((t, fidelity(&psi, &evolve_spectral(&spec, &psi, t)?)?));
    }
    let name = format!("revival-d{}", cfg.dim.d());
    if cfg.svg() {
        let pts: Vec<_> = trace.iter().enumerate().map(|(k, &(_, f))| (k as i64, f)).collect();
        return cfg.emit(&name, &svg::stem_plot("fidelity |<psi(0)|psi(t)>| over [0, 2T]", &pts));
    }
    let mut s = String::from("start,length,gap,period,max_deviation\n");
    for p in &report.progressions {
        s.push_str(&format!("{},{},{},{},{}\n", p.start, p.len, fmt17(p.gap), fmt17(p.period()), fmt17(p.max_deviation)));
    }
    s.push_str("\nt,fidelity\n");
    for (t, f) in trace {
        s.push_str(&format!("{},{}\n", fmt17(t), fmt17(f)));
    }
    cfg.emit(&name, &s)
}

fn cmd_kravchuk_table(cfg: &RunConfig) -> CliResult<()> {
    let t = KravchukTable::new(cfg.dim);
    let name = format!("kravchuk-d{}", cfg.dim.d());
    if cfg.svg() {
        let vals: Vec<f64> = cfg.dim.indices().flat_map(|m| cfg.dim.indices().map(move |n| (m, n))).map(|(m, n)| t.func(m, n)).collect();
        return cfg.emit(&name, &svg::heatmap("Kravchuk functions (row m, column n)", cfg.dim.d(), &vals));
    }
    let mut s = String::from("m,n,poly,func\n");
    for m in cfg.dim.indices() {
        for n in cfg.dim.indices() {
            s.push_str(&format!("{m},{n},{},{}\n", fmt17(t.poly(m, n)), fmt17(t.func(m, n))));
        }
    }
    cfg.emit(&name, &s)
}

fn cmd_frame_check(cfg: &RunConfig) -> CliResult<()> {
    let families: Vec<Family> = match cfg.cli.family {
        Some(f) => vec![f.into()],
        None => Family::ALL.to_vec(),
    };
    let f = fourier_operator(cfg.dim);
    let scale = Complex64::new(1.0 / (cfg.dim.d() as f64).sqrt(), 0.0);
    let mut s = String::from("family,norm_defect,resolution_defect,lower_bound,upper_bound,weight_sum,fourier_partner_defect\n");
    let mut bad = Vec::new();
    for fam in families {
        let cf = CoherentFamily::gaussian(cfg.dim, fam)?;
        let norm_defect = cf.states().map(|(_, v)| (v.norm() - 1.0).abs()).fold(0.0, f64::max);
        let res = cf.resolution_defect();
        let scaled: Vec<_> = cf.states().map(|(_, v)| v.scale(scale)).collect();
        let fa = frame_analyze(&scaled)?;
        let wsum = fa.frame.as_ref().map_or(f64::NAN, |fr| fr.weight_sum());
        // F maps the family of g2 onto that of g3 and vice versa; g1, g4, g5 as noted.
        let partner = match fam {
            Family::G1 => Family::G1,
            Family::G2 => Family::G3,
            Family::G3 => Family::G2,
            Family::G4 => Family::G5,
            Family::G5 => Family::G4,
        };
        let pf = CoherentFamily::gaussian(cfg.dim, partner)?;
        let mut cov: f64 = 0.0;
        for (l, v) in cf.states() {
            cov = cov.max(f.apply(v)?.max_abs_diff(pf.state(l.beta(), -l.alpha())));
        }
        if norm_defect > 1e-12 || res > cfg.tol || !fa.tight || cov > cfg.tol {
            bad.push(fam.to_string());
        }
        s.push_str(&format!(
            "{fam},{},{},{},{},{},{}\n",
            fmt17(norm_defect),
            fmt17(res),
            fmt17(fa.lower_bound),
            fmt17(fa.upper_bound),
            fmt17(wsum),
            fmt17(cov)
        ));
    }
    cfg.emit(&format!("frame-d{}", cfg.dim.d()), &s)?;
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Compute(format!("frame checks failed for {}", bad.join(", "))))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let command = cli.command;
    let result = RunConfig::new(cli).and_then(|cfg| match command {
        Command::Gaussian => cmd_gaussian(&cfg),
        Command::Wigner => cmd_wigner(&cfg),
        Command::Spectrum => cmd_spectrum(&cfg),
        Command::Verify => cmd_verify(&cfg),
        Command::Revival => cmd_revival(&cfg),
        Command::KravchukTable => cmd_kravchuk_table(&cfg),
        Command::FrameCheck => cmd_frame_check(&cfg),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
