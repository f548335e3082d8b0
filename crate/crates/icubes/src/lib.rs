//! Exact-arithmetic construction, extension and certification of integral
//! orthogonal bases of equal norm over `Z` and `Z[i]`.
//!
//! An "icube" of rank `k` and norm `lambda` in `R^n` is an `n x k` matrix `A`
//! over `R` (`R = Z` or `Z[i]`) with `A^* A = lambda I_k`. The crate builds
//! such matrices, extends partial ones to full rank, certifies the Smith
//! normal form pairing of full icubes, and reports arithmetic obstructions
//! when no extension exists.

pub mod cli;
pub mod explore;
pub mod format;
pub mod hermitian;
pub mod icube;
pub mod lattice;
pub mod quat;
pub mod ring;

use serde::{Deserialize, Serialize};

/// The coefficient ring of an icube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    /// Rational integers `Z`.
    #[serde(rename = "Z")]
    Int,
    /// Gaussian integers `Z[i]`.
    #[serde(rename = "Zi")]
    Gauss,
}

impl std::fmt::Display for Ring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ring::Int => write!(f, "Z"),
            Ring::Gauss => write!(f, "Zi"),
        }
    }
}

impl std::str::FromStr for Ring {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Z" | "z" => Ok(Ring::Int),
            "Zi" | "zi" | "Z[i]" => Ok(Ring::Gauss),
            other => Err(format!("unknown ring {:?}, expected Z or Zi", other)),
        }
    }
}
