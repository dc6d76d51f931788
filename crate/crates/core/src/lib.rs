//! Subrings of the finite local rings `F_q[x]/x^n` and
//! `R_{n,N,k} = Z[x]/(p^N, x^n, p^k x^{n-1})`.
//!
//! Subrings are enumerated by walking the chain of one-step quotients
//! (`x^n -> x^{n-1}`, `k -> k-1`): every subring either contains the kernel
//! of the step, and is then the preimage of its image, or maps
//! isomorphically onto its image, and is then one of the affine family of
//! lifts attached to that image. Grouping by exponent set ("shape") gives a
//! census whose class sizes are bounded by the `e_n` / `ε_{n,N,k}`
//! recursions.

pub mod cli;
pub mod coefficients;
pub mod error;
pub mod partial_monoids;
pub mod subrings;
pub mod truncated_rings;
pub mod verify;

pub use error::{Error, Result};
