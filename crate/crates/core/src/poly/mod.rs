//! Exact polynomial algebra over ℚ.

pub mod cluster;
pub mod local;
pub mod multi;
pub mod parse;
pub mod rat;
pub mod resultant;
pub mod sqfree;
pub mod uni;

use thiserror::Error;

pub use cluster::{Locus, PointCluster};
pub use local::{local_multiplicity, LocalMultiplicity};
pub use multi::{BiForm, MultiPoly};
pub use parse::{parse_biform, parse_polynomial, parse_uni, Parsed, VariableSpec};
pub use rat::Rat;
pub use resultant::{binary_resultant, determinant, BinaryForm};
pub use sqfree::{distinct_power_decomposition, gcd, order_at, DistinctPowers};
pub use uni::UniPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("undeclared variable '{name}' at byte {pos}")]
    UndeclaredVariable { name: String, pos: usize },
    #[error(
        "form is not bihomogeneous: '{first}' has bidegree {first_bidegree:?} but '{second}' has bidegree {second_bidegree:?}"
    )]
    Inhomogeneous {
        first: String,
        first_bidegree: (u32, u32),
        second: String,
        second_bidegree: (u32, u32),
    },
    #[error("term of bidegree {got:?} in a form of bidegree {expected:?}")]
    WrongBidegree { expected: (u32, u32), got: (u32, u32) },
    #[error("variable groups of sizes {got:?} where {expected:?} was expected")]
    Arity { expected: (usize, usize), got: (usize, usize) },
    #[error("{0}: the zero polynomial is not allowed here")]
    ZeroPolynomial(&'static str),
    #[error("cluster polynomial must be nonconstant")]
    ConstantCluster,
    #[error("degree bound must be at least 1, got {0}")]
    DegreeBound(usize),
}
