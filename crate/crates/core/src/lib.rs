//! Box-spline L² projections and the Bernoulli-spline structure of their error.
//!
//! The crate is organised bottom-up:
//!
//! - [`lattice`]: exact combinatorics of direction sets (`ϱ_V`, `Λ`, `α_U`, `C(β,U)`).
//! - [`box_spline`]: `B_V`, its Fourier transform and lattice-point derivatives.
//! - [`bernoulli`]: periodic Bernoulli polynomials, Bernoulli splines `B(V,U)` and
//!   the error functions `L_β`.
//! - [`projection`]: the orthogonal projection onto `S(hV)` on truncated windows.
//! - [`asymptotics`]: both sides of the asymptotic error formula.
//! - [`harness`]: presets, configuration and the commands behind the `boxproj` binary.

pub mod error;
pub mod functions;
pub mod lattice;
pub mod linalg;
pub mod quadrature;
pub mod box_spline;
pub mod bernoulli;
pub mod projection;
pub mod asymptotics;
pub mod harness;

pub use error::{Error, Result};
