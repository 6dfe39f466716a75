//! Finite-field toolkit for the Horrocks-Mumford nodal quintic pencil.
//!
//! The pencil of abelian surfaces cut out by the Horrocks-Mumford bundle
//! yields a pair of invariant quintic threefolds F and G with a common
//! partial resolution X ⊂ P⁴ × P⁴, a nodal Calabi-Yau threefold whose big
//! resolution X̃ is modular: the two-dimensional piece of its middle
//! cohomology matches the level-5 weight-4 cusp form (η(q)η(q⁵))⁴.
//!
//! This crate verifies that statement computationally, prime by prime:
//!
//! * [`fp`]: exact F_p arithmetic, quadratic characters, square roots,
//!   matrix rank;
//! * [`varieties`]: evaluators for F, G, the bilinear matrices M and L,
//!   the curves E₁/E₂ and their one-parameter family;
//! * [`count`]: parallel exact point counts over the affine strata;
//! * [`nodes`]: the 60 nodes of X, definedness and ruling rationality,
//!   blowup corrections;
//! * [`resolution`]: #X̃(F_p) assembly and the Weil-bound squeeze for the
//!   Betti numbers and H³ traces;
//! * [`eta`]: the cusp-form q-expansion and its eigenform checks;
//! * [`galois`]: Frobenius images mod 40, test-set coverage, the V/W trace
//!   split and the final comparison;
//! * [`chern`]: the Euler-characteristic computation in a truncated
//!   cohomology ring;
//! * [`report`], [`golden`], [`cache`]: the per-prime pipeline, embedded
//!   reference tables, and the on-disk count cache behind the CLI.

pub mod cache;
pub mod chern;
pub mod count;
pub mod eta;
pub mod fp;
pub mod galois;
pub mod golden;
pub mod nodes;
pub mod report;
pub mod resolution;
pub mod varieties;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime ≠ 5")]
    BadPrime(u64),
    #[error("prime {0} outside the supported range [7, 2^20)")]
    PrimeOutOfRange(u64),
    #[error("prime {0} too large for exact counting (need p < 2^16)")]
    CountBound(u64),
    #[error("i = sqrt(-1) does not exist in F_{0} (p ≡ 3 mod 4)")]
    NoSqrtMinusOne(u64),
    #[error("node is not defined over F_{0}")]
    UndefinedNode(u64),
    #[error("projective point must have a nonzero coordinate")]
    ZeroPoint,
    #[error("series length {0} outside [1, 100000]")]
    SeriesLength(usize),
    #[error("series coefficient overflowed 64 bits")]
    SeriesOverflow,
    #[error("missing {0} count for p = {1}")]
    MissingCount(&'static str, u64),
    #[error("determinant/quintic proportionality failed at p = {0}")]
    Calibration(u64),
    #[error("ruling determinant square-class law violated at p = {0}")]
    RulingAssertion(u64),
    #[error("{0} is not coprime to 40")]
    NotCoprimeTo40(u64),
}
