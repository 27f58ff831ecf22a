//! Discrete nonlinear Fourier transforms of AKNS-ZS type and their exact
//! recursive inverses.
//!
//! Two discretizations of the nonlinear Fourier transform are provided:
//!
//! * [`euler`] — the uniform-grid transform of a discrete signal
//!   `(u_0, ..., u_{N-1})`, sampled at integer spectral points, inverted by
//!   DFT-based layer peeling;
//! * [`delta`] — the transform of Dirac combs `sum_n u_n · delta_{x_n}` with
//!   non-equidistant poles, represented exactly as sparse exponential
//!   polynomials ([`exppoly`]) and inverted by reading off the rightmost
//!   delta term layer by layer.
//!
//! [`dual`] exchanges the roles of pole gaps and masses; for constant-mass
//! combs this reduces inversion to the cheaper uniform-grid machine. The
//! [`oracle`] module holds independent brute-force routes (subset expansions,
//! step-function matrix exponentials, stratum enumeration, quadratic DFT)
//! used to cross-check everything else, and [`gen`] produces seeded random
//! instances.
//!
//! The `nlft` binary exposes the transforms, inverses, membership checks,
//! instance generation, and the oracles over JSON files.

pub mod complexity;
pub mod delta;
pub mod dual;
pub mod error;
pub mod euler;
pub mod exppoly;
pub mod gen;
pub mod json;
pub mod oracle;
pub mod su2;
pub mod tol;

pub use error::{Error, Result};
pub use tol::Tolerances;
