//! Exact arithmetic shared by the solvers: integer helpers, primality and
//! factoring, univariate and multivariate integer polynomials, polynomials
//! over large prime fields, and small rational matrices.

pub mod factor;
pub mod int;
pub mod matrix;
pub mod modp;
pub mod mpoly;
pub mod primes;
pub mod upoly;
