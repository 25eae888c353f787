//! Exact-arithmetic kernel for the diagonal `S_n` action on the coinvariants
//! of `S_n x S_n`.
//!
//! The crate has three layers:
//!
//! * **Combinatorics** — [`partition`], [`permutation`], [`character`]:
//!   partitions with hook statistics, permutations with descent statistics,
//!   irreducible characters by the Murnaghan-Nakayama rule, Kostka numbers.
//! * **Symmetric functions** — [`qt`], [`symfunc`]: bivariate polynomials and
//!   truncated series in `q, t` over exact rationals, power-sum expansions,
//!   plethystic specialization at `z / ((1-q)(1-t))`, the internal product,
//!   Schur and monomial conversion, and the bigraded Frobenius tables.
//! * **Diagram calculus and polynomials** — [`diagram`], [`strict`],
//!   [`multipoly`], [`straighten`], [`harmonic`]: sorted bipartite diagrams,
//!   the classifying permutation and compactification, compacting moves, the
//!   bijection between diagrams and triples `(D_sigma, lambda, mu)`, orbit
//!   sums, flips, diagram determinants, and leading-term straightening over
//!   the compact-diagram basis.
//!
//! [`checks`] packages the cross-module verification suites used by the CLI.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here can be used concurrently without coordination. The one
//! internal cache (character values) is mutex-guarded.

pub mod character;
pub mod checks;
pub mod diagram;
pub mod error;
pub mod harmonic;
pub mod multipoly;
pub mod partition;
pub mod permutation;
pub mod qt;
pub mod straighten;
pub mod strict;
pub mod symfunc;

pub use error::Error;
pub use partition::Partition;
pub use permutation::Permutation;

/// Exact rational coefficient type used throughout.
pub type Coeff = num_rational::BigRational;

/// `n choose 2`, the top bidegree of the coinvariant space of `S_n`.
pub fn staircase(n: usize) -> usize {
    n * (n.saturating_sub(1)) / 2
}
