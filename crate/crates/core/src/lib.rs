//! Generalized Zernike functions on the unit disk and the unit ball.
//!
//! The crate covers evaluation of the radial functions
//! `R_n^{l,α}(ρ) = ρ^l (1-ρ²)^α P_p^{(α, l+1/2)}(2ρ²-1)` and their 2D analogues,
//! closed-form Fourier, Funk and Radon transforms, scaling matrices, the
//! `l -> l+2` connection recursion for expansion coefficients, and the radial
//! profile constructions used for all-scale and multi-scale band-limited
//! wavelet design.
//!
//! Module map:
//!
//! * [`specfun`]: Jacobi/Gegenbauer/Legendre polynomials, spherical Bessel
//!   functions, gamma-ratio helpers and Gauss quadrature.
//! * [`radial`]: radial functions, norms and the diagonal recursion grids.
//! * [`angular`]: spherical harmonics, Funk multipliers, angular coefficients.
//! * [`transforms`]: Fourier/Radon closed forms, integral representations,
//!   scaling matrices.
//! * [`connect`]: connection rows, coefficient lifting and the
//!   scaled-and-truncated expansion pipeline.
//! * [`profiles`]: analytic radial profiles and wavelet synthesis.
//! * [`io`]: CSV/JSON emission shared by the CLI.
//! * [`verify`]: runtime conformance suites.

pub mod angular;
pub mod connect;
mod error;
pub mod io;
pub mod profiles;
pub mod radial;
pub mod specfun;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};

/// Library version embedded in every emitted file.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
