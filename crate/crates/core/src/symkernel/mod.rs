//! Exact polynomial arithmetic over Gaussian rationals in named chart
//! coordinates.

pub mod expr;
pub mod gaussian;
pub mod parse;
pub mod solve;

use thiserror::Error;

pub use expr::{Atom, CoordId, CoordKind, Expr, Monomial, UnknownId};
pub use gaussian::GaussianRational;
pub use parse::{parse, parse_checked, parse_coord};
pub use solve::solve_linear;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("coordinate '{name}' at byte {pos} is not in the chart")]
    OutOfChart { name: String, pos: usize },
    #[error("negative power {0} is not a polynomial")]
    NegativePower(i64),
    #[error("cannot conjugate an expression containing unknowns")]
    ConjugateUnknown,
    #[error("coordinate index must be at least 1")]
    ZeroIndex,
    #[error("binomial({r}, {j}) is undefined for j > r")]
    Binomial { r: u32, j: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("no solution: equation {equation} fails at monomial {monomial}")]
    Inconsistent { equation: usize, monomial: String },
    #[error("free unknowns: {}", list_unknowns(.0))]
    Underdetermined(Vec<UnknownId>),
    #[error("equation is not linear in the unknowns: {0}")]
    Nonlinear(String),
    #[error("unknown {0} is not in the unknown list")]
    UnlistedUnknown(UnknownId),
}

fn list_unknowns(us: &[UnknownId]) -> String {
    us.iter().map(|u| u.to_string()).collect::<Vec<_>>().join(", ")
}

/// Binomial coefficient `C_j^r`.
pub fn binomial(r: u32, j: u32) -> Result<u64, KernelError> {
    if j > r {
        return Err(KernelError::Binomial { r, j });
    }
    let j = j.min(r - j) as u64;
    let mut acc: u64 = 1;
    for n in 0..j {
        acc = acc * (r as u64 - n) / (n + 1);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(2, 1).unwrap(), 2);
        assert_eq!(binomial(5, 0).unwrap(), 1);
        assert_eq!(binomial(4, 2).unwrap(), 6);
        assert_eq!(binomial(10, 7).unwrap(), 120);
        assert!(binomial(2, 3).is_err());
    }
}
