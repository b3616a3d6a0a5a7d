//! Closed-form degrees of the h-classes for `𝒪(a, b)` families on
//! `Pᵐ × Pⁿ`, and the totals they predict.
//!
//! Expanding `(a·H_X + b·H_S)^k` and pushing forward to `Pᵐ` keeps only the
//! terms with `H_Sⁿ`; for `k = n` that is `bⁿ·[X]`, for `k = n + 1` it is
//! `(n+1)·a·bⁿ·H_X`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RhsError {
    #[error("{name} must be at least {min}, got {value}")]
    OutOfRange { name: &'static str, min: i64, value: i64 },
    #[error("integer overflow evaluating the closed form")]
    Overflow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhsSummary {
    /// Degree of `𝔥ₙ`: members through `n` general points.
    pub n_count: i64,
    /// `ℋ = 𝔥ₙ₊₁ = 𝒪(h_coeff)` on the ambient projective space.
    pub h_coeff: i64,
    pub rhs_total: i64,
}

fn check(name: &'static str, value: i64, min: i64) -> Result<(), RhsError> {
    if value < min {
        Err(RhsError::OutOfRange { name, min, value })
    } else {
        Ok(())
    }
}

/// `(N, H_coeff) = (bⁿ, (n+1)·a·bⁿ)`.
pub fn h_class_degrees(a: i64, b: i64, n: i64) -> Result<(i64, i64), RhsError> {
    check("a", a, 1)?;
    check("b", b, 1)?;
    check("n", n, 1)?;
    let bn = b.checked_pow(n as u32).ok_or(RhsError::Overflow)?;
    let h = (n + 1).checked_mul(a).and_then(|v| v.checked_mul(bn)).ok_or(RhsError::Overflow)?;
    Ok((bn, h))
}

/// `(n+1)·a·bⁿ·d + C(n+1, 2)·bⁿ·(2g − 2)`.
pub fn rhs_total(a: i64, b: i64, n: i64, d: i64, g: i64) -> Result<i64, RhsError> {
    Ok(rhs_summary(a, b, n, d, g)?.rhs_total)
}

pub fn rhs_summary(a: i64, b: i64, n: i64, d: i64, g: i64) -> Result<RhsSummary, RhsError> {
    check("d", d, 1)?;
    check("g", g, 0)?;
    let (n_count, h_coeff) = h_class_degrees(a, b, n)?;
    let binom = n * (n + 1) / 2;
    let rhs_total = h_coeff
        .checked_mul(d)
        .and_then(|x| binom.checked_mul(n_count)?.checked_mul(2 * g - 2).and_then(|y| x.checked_add(y)))
        .ok_or(RhsError::Overflow)?;
    Ok(RhsSummary { n_count, h_coeff, rhs_total })
}

/// Inflection count for a genus-`g` curve in a principally polarized
/// abelian variety of dimension `n` against theta translates:
/// `(g − 1)·n·(n + 1)!`.
pub fn abelian_rhs(n: i64, g: i64) -> Result<i64, RhsError> {
    check("n", n, 1)?;
    check("g", g, 0)?;
    let fact = (1..=n + 1).try_fold(1i64, |acc, k| acc.checked_mul(k)).ok_or(RhsError::Overflow)?;
    (g - 1).checked_mul(n).and_then(|v| v.checked_mul(fact)).ok_or(RhsError::Overflow)
}
