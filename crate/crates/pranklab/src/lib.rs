//! Exact computation with equivariant p-rank representations of curves in
//! positive characteristic.
//!
//! The crate has four layers:
//!
//! * exact algebra: finite fields GF(p^k) ([`field`]), dense linear algebra
//!   ([`mat`]), and the structure theory of p-linear / 1/p-linear maps
//!   ([`semilinear`]);
//! * modular representation theory of finite groups: simple modules,
//!   projective covers, loop spaces, cores and projective multiplicities
//!   ([`group`], [`rep`], [`meataxe`], [`pims`]);
//! * first group cohomology with restriction maps ([`cohomology`]);
//! * explicit curve families (projective line, hyperelliptic, Artin-Schreier,
//!   and their fiber product) with ramification data, differential bases,
//!   Cartier operators and induced group actions ([`curve`]).
//!
//! On top sits a verification pipeline ([`job`]) that cross-checks, on
//! concrete curves, the structure theorems relating the semisimple part of
//! H^0(X, Omega_X(D)) under a finite automorphism group to ramification data:
//! the core formula, a p-rank congruence, the quotient-curve multiplicity
//! formula, and the Deuring-Shafarevich formula. The `pranklab` binary and
//! the runnable examples under `examples/` drive the same pipeline.

pub mod cohomology;
pub mod curve;
pub mod field;
pub mod group;
pub mod job;
pub mod mat;
pub mod meataxe;
pub mod pims;
pub mod poly;
pub mod rep;
pub mod semilinear;

pub use field::{splitting_field_degree, FieldCtx};
pub use mat::Mat;
pub use semilinear::{SemilinearMap, Twist};
