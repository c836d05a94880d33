//! Exact computation with 2-torsion Brauer classes of multiquadratic étale
//! algebras over the rationals, and constructive vanishing witnesses for
//! fourfold mod-2 Massey products.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`] — exact integer/rational arithmetic, factorization, square classes;
//! * [`etale`] — multiquadratic étale algebras, norms, traces, square tests;
//! * [`localfields`] — places, local square classes, Hilbert symbols by
//!   norm-solubility at finite p-adic precision;
//! * [`brauer`] — Brauer classes as local invariant vectors, restriction,
//!   corestriction, symbol expression and chain decomposition;
//! * [`conics`] — rational points on conics and norm equations;
//! * [`qforms`] — diagonal quadratic forms, Scharlau transfer, isotropy;
//! * [`funcfield`] — rational functions in two variables, residues and
//!   specialization maps;
//! * [`massey`] — the top-level certificate checks and witness construction.
//!
//! Everything is exact: no floating point is used anywhere.

pub mod arith;
pub(crate) mod linalg;
pub mod etale;

pub use arith::{FactoredInt, Int, Rat, SquareClass};
pub use etale::{EtaleAlgebra, EtaleElement};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Crate-wide error type. Variants mirror the failure modes of the individual
/// solvers; "budget" style errors are always distinguishable from genuine
/// mathematical negatives.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("factorization bound exceeded for {0}")]
    FactorizationBoundExceeded(BigInt),
    #[error("at most {max} adjoined square roots are supported")]
    GeneratorLimitExceeded { max: usize },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("operands live over different algebras")]
    AlgebraMismatch,
    #[error("p-adic precision cap reached at p = {p}")]
    PrecisionExhausted { p: u64 },
    #[error("no S-unit solution after {extra} support enlargements")]
    NoSolutionInSupport { extra: u32 },
    #[error("class does not restrict to zero, cannot be expressed as a symbol")]
    NotSplitByFa,
    #[error("search budget exceeded: {0}")]
    SearchBoundExceeded(String),
    #[error("no solution: local obstruction at {place}")]
    NoSolution { place: String },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("no defined-certificate supplied or found within budget")]
    NoCertificate,
    #[error("restriction to divisor is undefined: {0}")]
    ZeroDivisorOnRestriction(String),
    #[error("local degree above {p} exceeds the supported bound")]
    UnsupportedLocalDegree { p: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Global solver configuration. All searches are deterministic for a fixed
/// configuration (the seed only reorders randomized search schedules).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Config {
    /// Integers with absolute value beyond this bound are not factored.
    pub factor_bound: BigInt,
    /// Generic step budget for bounded searches.
    pub search_budget: u64,
    /// Cap on the p-adic working precision (digits in base p).
    pub precision_cap: u32,
    /// How many extra primes may be appended to a support when an S-unit
    /// system is insolvable over the initial support.
    pub support_extra: u32,
    /// Seed for randomized search schedules.
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            factor_bound: BigInt::from(10u8).pow(30),
            search_budget: 200_000,
            precision_cap: 64,
            support_extra: 10,
            seed: 0,
        }
    }
}
