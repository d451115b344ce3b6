//! Exact linear algebra over the integers, the rationals and `Z/p^e Z`.

pub mod matrix;
pub mod modular;
pub mod primes;
pub mod rational;
pub mod snf;
pub mod span;

pub use matrix::IntMatrix;
pub use modular::{modq_row_basis, solve_mod_prime_power, ModuleBasis};
pub use primes::PrimePowerModulus;
pub use rational::{rational_row_basis, solve_rational, RationalBasis, SparseRow};
pub use snf::{smith_normal_form, SnfResult};
pub use span::{find_separating_prime_power, integer_affine_member, integer_span_solution};
