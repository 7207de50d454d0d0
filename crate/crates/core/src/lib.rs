//! Exact computer algebra for coinvariants of the universal cosovereign Hopf
//! algebras `H(F)` acting on free algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactlin`]: rationals and sparse exact linear algebra.
//! * [`freealg`]: free algebras `A(u,v)`, tensor products and homomorphisms.
//! * [`fpquot`]: filtration-truncated quotients of finitely presented algebras.
//! * [`hopf`]: the presentation of `H(F)` with its structure maps.
//! * [`comod`]: coactions on `A(m,t)` and `A(t,n)`, coinvariants and the
//!   squeeze certificate for `θ`.
//! * [`catalg`]: the comodule-category side: `ψ`, duality data, intertwiners.
//! * [`classical`]: the commutative `GL_t` counterparts.

// Matrix code reads more clearly with explicit index loops.
#![allow(clippy::needless_range_loop)]

pub mod catalg;
pub mod classical;
pub mod comod;
pub mod error;
pub mod exactlin;
pub mod fpquot;
pub mod freealg;
pub mod hopf;
pub mod par;

pub use error::{Error, Result};
pub use exactlin::{Rational, RationalMatrix, SparseVec, Subspace};
