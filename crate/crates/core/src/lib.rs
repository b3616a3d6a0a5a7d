//! Inflection divisors of rational curves relative to families of divisors.
//!
//! The crate computes, with exact rational arithmetic, where a morphism
//! `f: P¹ → Pᵐ` meets some member of a family `𝒟 ⊆ Pᵐ × Pⁿ` with contact order
//! at least `n + 1`, together with the multiplicity of each such point, and
//! checks the resulting total against the closed-form count
//! `(n+1)·a·bⁿ·d + C(n+1, 2)·bⁿ·(2g − 2)`.

pub mod poly;
pub mod curve;
pub mod family;
pub mod jet;
pub mod report;
pub mod rhs;
pub mod solver;
pub mod sample;
