//! Exact-arithmetic toolkit for orthogonal separation coordinates and
//! Stäckel systems on the sphere `S^n`.
//!
//! The library has five layers:
//!
//! * [`poly`] — sparse multivariate polynomials with exact rational
//!   coefficients in ambient phase-space variables, the canonical Poisson
//!   bracket and the matrix commutator.
//! * [`linalg`] — fraction-free exact rank computation.
//! * [`assoc`] — planar rooted trees, based-polygon dissections, the mosaic
//!   operad, dyslexic canonical forms and the Devadoss-Read face counts of
//!   the associahedron.
//! * [`killing`] — the generator Killing tensors `K_ij` on `S^n` in both
//!   representations, the Kohno-Drinfeld relation checks and the residual
//!   symmetric-group action.
//! * [`spans`] — Gaudin, Jucys-Murphy and elliptic Stäckel spans, the
//!   operad composition of spans, and exact span verification.
//! * [`coords`] — floating-point separation coordinates: elliptic root
//!   solving with interlacing, polyspherical recursion, tree-driven
//!   forward/inverse coordinate maps and orthogonality checks.

pub mod assoc;
pub mod coords;
pub mod error;
pub mod killing;
pub mod linalg;
pub mod poly;
pub mod rat;
pub mod spans;

pub use error::Error;

/// Largest supported ambient dimension for exact phase-space polynomials.
pub const MAX_AMBIENT_DIM: usize = 8;
