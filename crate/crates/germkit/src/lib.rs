//! Multiplicity of complex algebraic germs at the origin, computed by four
//! independent routes and cross-checked, together with tangent-cone
//! extraction, plane-curve branch monodromy, Milnor-number machinery and
//! numeric Lipschitz-geometry probes.
//!
//! The crate is organized around exact symbolic kernels ([`poly`]) feeding
//! numeric kernels ([`uniroots`]) that power the geometric modules:
//!
//! - [`cone`] — tangent cones, tangent lines, secant sampling, tangent maps
//! - [`branches`] — local branches of plane curves via root monodromy
//! - [`mult`] — the four multiplicity routes and Hilbert-Samuel machinery
//! - [`milnor`] — Milnor numbers and the Euler-characteristic degree formula
//! - [`lip`] — inner distance, normal-embedding ratio, Lipschitz extension
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod cli;
pub mod cone;
pub mod error;
pub mod poly;
pub mod rngutil;
pub mod uniroots;

pub use error::{Error, Result};
