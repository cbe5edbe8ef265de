//! Exact computation with rank 1 and rank 2 Cohen-Macaulay modules over the
//! boundary algebra B(5,10).
//!
//! The boundary algebra of the circular quiver on n vertices (arrows `x_i`
//! clockwise, `y_i` counterclockwise, relations `xy = yx` and `x^k = y^{n-k}`)
//! has center Z = Q[[t]] with `t = xy`. This crate constructs two kinds of
//! Cohen-Macaulay modules over it, truncated at a chosen t-adic precision and
//! with exact rational arithmetic throughout:
//!
//! * rank-1 modules `L_I` attached to k-element subsets ("rims") of Z/n, and
//! * rank-2 modules `M(b)` over B(5,10) attached to a 10-tuple of series
//!   coefficients summing to zero, extensions of `L_{1,3,5,7,9}` by
//!   `L_{2,4,6,8,10}`.
//!
//! For the rank-2 modules it decides decomposability and isomorphism by exact
//! divisibility criteria on the five edge sums `B_i = b_i + b_{i+1}`,
//! constructs explicit isomorphism witnesses, computes moduli invariants, and
//! cross-checks every decision against a brute-force linear-algebra oracle
//! that solves for the full homomorphism space.
//!
//! Module map:
//! * [`series`] — truncated power series over Q (the ground ring),
//! * [`matrix`] — small matrices of series,
//! * [`quiver`] — rims, rank-1 modules, interlacing, relation checks,
//! * [`render`] — ASCII pictures of rims and profiles,
//! * [`rank2`] — the rank-2 construction, divisibility profile, case labels,
//! * [`iso`] — isomorphism decisions and explicit witnesses,
//! * [`families`] — moduli families, representatives, invariants,
//! * [`linalg`] — exact Gaussian elimination over Q,
//! * [`oracle`] — the independent homomorphism-space oracle,
//! * [`sample`] — random generators for stress tests,
//! * [`io`] — file formats,
//! * [`cli`] — the command-line interface.

pub mod cli;
pub mod error;
pub mod families;
pub mod io;
pub mod iso;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod quiver;
pub mod rank2;
pub mod render;
pub mod sample;
pub mod series;

pub use error::{Error, Result};
