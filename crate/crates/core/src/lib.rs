//! Numerical toolkit for Lorentz surfaces in Minkowski 3-space `R^3_1`.
//!
//! The crate works in isotropic (null) coordinates, where `E = G = 0` and a
//! surface is described by `F`, `L`, `M`, `N`. Its layers:
//!
//! - [`minkowski`]: inner product, Lorentzian cross product, causal character.
//! - [`surface`]: 2-jets, fundamental forms, `K`, `H`, classification by the
//!   sign of `H^2 - K`, pseudo-arc-length test of the null curves.
//! - [`canonical`]: canonical coordinates with a chosen initial point, built by
//!   quadrature, plus chart resampling and the residual gauge freedom.
//! - [`natural`]: `L`, `M`, `N` recovered from `(F, H)` and residuals of the
//!   natural integro-differential equation and its constant-`H` and minimal
//!   specializations.
//! - [`bonnet`]: reconstruction of a surface from `(F, H, eps1, eps2)` by
//!   marching the Frenet-type frame system, with integrability diagnostics and
//!   an intrinsic congruence test.
//! - [`corpus`]: six closed-form reference surfaces with analytic jets.
//! - [`io`] and [`cli`]: chart / report / mesh files and the `lsl` front end.

pub mod bonnet;
pub mod canonical;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod grid;
pub mod io;
pub mod minkowski;
pub mod natural;
pub mod numerics;
pub mod surface;

pub use error::{Error, Result};
pub use grid::{Chart, Field, Grid, Sign};
pub use minkowski::{cross, inner, MinkowskiVec};
pub use surface::{FundamentalData, SurfaceJet2, SurfaceKind, SurfaceProvider};
