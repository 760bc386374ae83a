//! Exact evaluation of `gl_n` weight systems on horizontal chord diagrams.
//!
//! A labelled weight system is computed through the factorisation
//!
//! ```text
//! diagrams on N strands --split--> diagrams on |rho| strands --sigma--> Q[S_|rho|]
//!     --(c_rho *)--> Q[S_|rho|] --w_st--> Q[n]
//! ```
//!
//! and checked against an independent trace computed on the tensor power of
//! the defining representation. The [`state`] module turns the evaluator into
//! exact Gram matrices and decides positive semidefiniteness without floating
//! point.
//!
//! All scalars are [`Rational`] (arbitrary precision).

pub mod cli;
pub mod diagram;
pub mod error;
pub mod oracle;
pub mod perm;
pub mod state;
pub mod weight;
pub mod young;

pub use diagram::{Chord, ChordWord, DiagramExpr};
pub use error::{Error, Result};
pub use perm::{CyclePoly, GroupAlgebraElement, Permutation};
pub use state::{GramMatrix, GramReport, GramSpec, PsdOutcome};
pub use weight::{Evaluator, Labelling, WeightValue};
pub use young::{Partition, RepLabel, Tableau};

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn rational_string(q: &Rational) -> String {
    q.to_string()
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Argument(format!("not a rational number `{s}`: {e}")))
}

/// Size limits shared by the Gram assembly and the tensor oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Largest Gram basis (number of words).
    pub max_basis: usize,
    /// Largest tensor-power dimension `n^|rho|` the oracle may touch.
    pub max_oracle_dim: usize,
}

impl Guards {
    pub const DEFAULT: Guards = Guards { max_basis: 512, max_oracle_dim: 100_000 };
}

impl Default for Guards {
    fn default() -> Self {
        Self::DEFAULT
    }
}

pub(crate) fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}
