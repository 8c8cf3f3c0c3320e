//! Shared numerical substrate: grids, scaled complex arithmetic, Fourier
//! transforms, quadrature, finite differences and the multiprecision layer.

pub mod envelope;
pub mod finite_diff;
pub mod fourier;
pub mod grid;
pub mod mp;
pub mod quadrature;
pub mod scaled;

pub use envelope::{ChopWindow, EnvelopeForm, GaussianHump, SampledEnvelope, Side};
pub use finite_diff::finite_diff;
pub use fourier::{check_edge_decay, convolve_kernel, fourier_pair, fourier_pair_to, Direction};
pub use grid::Grid1D;
pub use quadrature::{gauss_legendre, quadrature, quadrature_checked, quadrature_scaled};
pub use scaled::{wrap_phase, ScaledAmplitude};
