//! Numerics for the radial extension `w(z) = |z| F(z/|z|)` of a
//! parametrization `F` of a starlike Jordan curve.
//!
//! The crate is `no_std` (it needs `alloc`). It provides:
//!
//! * [`dsl`]: a small expression language with symbolic differentiation,
//!   used to write curve coordinates as text;
//! * [`periodic`] and [`curves`]: periodic functions with a.e. derivatives,
//!   polar curves `r(t)e^{it}`, circle homeomorphisms and general boundary
//!   maps `ρ(t)e^{iψ(t)}`;
//! * [`extension`]: pointwise Wirtinger data of the radial extension;
//! * [`lipschitz`]: Lipschitz constants by ess-sup formulas and by
//!   brute-force pairwise suprema;
//! * [`bounds`]: explicit bi-Lipschitz and quasiconformality bounds;
//! * [`verify`]: structured checks of the identities relating all of these.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod builtin;
pub mod curves;
pub mod dsl;
mod error;
pub mod extension;
pub mod family;
mod interp;
pub mod lipschitz;
pub mod mollify;
pub mod periodic;
pub mod sup;
pub mod verify;

pub use curves::{BoundaryMap, CartesianCurve, CircleHomeomorphism, Curve, Diagnostics, PolarCurve};
pub use error::{Error, EvalError, ParseError, Result};
pub use num_complex::Complex64;
pub use periodic::{Jet, PeriodicFunction, Side};

/// Default analysis grid size.
pub const DEFAULT_GRID_N: usize = 4096;
