//! Finite-dimensional quantum toolkit on the odd grid `{-j, ..., j}`.
//!
//! The crate covers finite Gaussians and Jacobi theta series, the discrete
//! Fourier and Kravchuk transforms, the discrete Wigner function, tight frames
//! of displaced Gaussians with frame quantization, and several families of
//! finite oscillator Hamiltonians together with revival analysis.
//!
//! All values are immutable once built and every operation is a pure function,
//! so anything here can be shared across threads.

pub mod cli;
pub mod eigen;
pub mod error;
pub mod frame;
pub mod gaussian;
pub mod kravchuk;
pub mod lattice;
pub mod oscillator;
pub mod special;
pub mod su2;
pub mod svg;
pub mod theta;
pub mod verify;
pub mod wigner;

pub use eigen::{eigendecompose_hermitian, operator_exponential, EigenConfig, SpectralDecomposition};
pub use error::{Error, Result};
pub use frame::{CoherentFamily, DisplacementLabel, FiniteFrame, FrameAnalysis, LabelFunction};
pub use gaussian::{Family, GaussianFamily};
pub use lattice::{GridDim, GridFunction, LinearOperator};
pub use oscillator::{HarperBasis, OscillatorKind, Progression, RevivalReport};
pub use wigner::WignerMap;

pub use num_complex::Complex64;
