//! # symdiag
//!
//! Exact computer algebra, at desk scale, for the commutative-algebra side of
//! diagonal geometry: take the affine plane `X` (coordinate ring ℚ[x, y]),
//! form the product `X^n`, and study the ideals of its pairwise and big
//! diagonals together with the natural action of the symmetric group `S_n`
//! that permutes the factors.
//!
//! The crate is organised in seven layers, from plumbing to statements:
//!
//! * [`polycore`] — exact rational multivariate polynomials, monomial orders,
//!   Buchberger's algorithm, ideal arithmetic (products, powers,
//!   intersections through one auxiliary elimination variable), diagonal
//!   ideal constructors and graded Hilbert functions.
//! * [`symgroup`] — permutations, explicitly enumerated permutation groups,
//!   the diagonal action on polynomial rings, Reynolds averaging and graded
//!   invariant dimensions.
//! * [`graphlab`] — subgraphs of the complete graph without isolated
//!   vertices, cycle ranks and oriented cycle bases, the signed edge
//!   representation `W_Γ`, its cycle subrepresentation `q_Γ`, and the
//!   edge-sign characters and insertion signs used by the equivariant
//!   bookkeeping.
//! * [`charlab`] — exact character theory: built-in tables for `S_2`, `S_3`,
//!   `S_4` and `D_4`, Schur-functor characters through power traces, Newton's
//!   identities and the Jacobi–Trudi determinant, decomposition into
//!   irreducibles, and the isotypic tables of the graph-indexed multitors.
//! * [`koszul`] — a brute-force multitor oracle (homology of tensor products
//!   of Koszul complexes, degreewise by exact linear algebra) next to the
//!   closed-form answer it must match.
//! * [`resolver`] — the explicit invariant resolution complexes for `n = 3`
//!   and `n = 4`, every map realised as degreewise matrices between
//!   canonical invariant bases, with an exactness checker.
//! * [`surfcalc`] — a numerical Riemann–Roch calculator for surfaces: Euler
//!   characteristics of twisted line bundles and Schur functors of the
//!   cotangent bundle, the universal degree-`n` Euler-characteristic
//!   formulas for `n = 3, 4`, and regularity-bound calculators.
//!
//! Scalars are exact rationals throughout; there is not a single floating
//! point number in the math path.  Every check is degree-bounded and states
//! its bound.

pub mod book;
pub mod charlab;
pub mod graphlab;
pub mod koszul;
pub mod linalg;
pub mod polycore;
pub mod reports;
pub mod resolver;
pub mod surfcalc;
pub mod symgroup;

/// Exact scalar type used everywhere: arbitrary-precision rationals.
pub type Rat = num::BigRational;

/// Convenience: the rational `p`.
pub fn rat(p: i64) -> Rat {
    Rat::from_integer(p.into())
}

/// Convenience: the rational `p/q`.
pub fn ratq(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}
