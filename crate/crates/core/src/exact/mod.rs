//! Exact arithmetic substrate: fields, dense linear algebra, polynomials and factorization.

pub mod factor;
pub mod field;
pub mod matrix;
mod modular;
pub mod poly;
pub mod zfactor;

pub use factor::{factor_polynomial, FactorConfig, Factorization};
pub use field::{Field, FieldSpec, Scalar};
pub use matrix::{solve_linear, Echelon, Matrix, Solution};
pub use poly::{minimal_polynomial, Poly};
