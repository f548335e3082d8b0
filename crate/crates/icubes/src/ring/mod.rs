//! Exact arithmetic in the rational and Gaussian integers and in the real
//! quadratic orders used by the divisor constructions.

pub mod factor;
pub mod gauss;
pub mod quadring;

pub use factor::{
    eps_delta_split, eps_delta_split_int, factor_int, gauss_factor, gauss_norm_divisor,
    gaussian_prime_above, is_prime, is_sum_k_squares, quotient_norm_witness, two_squares,
    GaussFactorization,
};
pub use gauss::{gauss_ext_gcd, gauss_gcd, GaussInt, ParseGaussError};
pub use quadring::{quadring_left_divisors, QuadRingElem};

/// Errors from ring-level computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("k = {0} is not supported, use 1, 2 or 4")]
    InvalidK(u32),
    #[error("{den} does not divide {num}")]
    DivisibilityViolation {
        num: num_bigint::BigInt,
        den: num_bigint::BigInt,
    },
}
