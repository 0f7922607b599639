//! Shared numeric kernels: exact and floating linear algebra, polynomial
//! coefficient matching, finite differences, RK4 and the matrix exponential.

pub mod expm;
pub mod fd;
pub mod matrix;
pub mod ode;
pub mod poly;
pub mod scalar;

pub use expm::mat_exp;
pub use fd::{fd_first, fd_jacobian, fd_second};
pub use matrix::{Matrix, RationalMatrix};
pub use ode::{rk4, rk4_step, Path};
pub use poly::{match_coefficients, LinPoly, Poly, PolySystem};
pub use scalar::{int, parse_rational, rat, Rational, Scalar};
