//! Ehrhart theory for lattice zonotopes in low dimension.
//!
//! - [`linalg`]: exact integer linear algebra (minors, rank, Hermite form, lattice bases).
//! - [`zonotope`]: geometry of `t + Z(v_1, ..., v_m)`: H-description, lattice points,
//!   widths, width-1 splitting, 2D solid angles.
//! - [`ehrhart`]: Ehrhart polynomials from the gcd-of-minors formula and from
//!   brute-force counting, plus the `c`- and `h*`-bases and Eulerian polynomials.
//! - [`classify`]: coefficient checkers, realizers and the 3D degree-2 classifier.
//! - [`census`]: exhaustive and seeded-random sweeps that cross-check all of the above.
//! - [`document`] and [`cli`]: JSON input/output and the command-line front end.

pub mod error;
pub mod census;
pub mod classify;
pub mod cli;
pub mod document;
pub mod ehrhart;
pub mod linalg;
pub mod poly;
pub mod zonotope;

pub use error::{Error, Result};
pub use linalg::{IntMatrix, IntVector};
pub use zonotope::{make_zonotope, FacetDirection, LatticeWidth, Width1Decomposition, Zonotope};
