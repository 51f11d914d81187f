//! Exact mod-2 homology of `Ω_0^∞ MTO(1)` and `Ω_0^∞ MTO(2)`.
//!
//! The crate is layered bottom-up:
//!
//! * [`f2`]: binomials mod 2, packed linear algebra and Poincaré series of
//!   free commutative algebras.
//! * [`dyer_lashof`]: admissible sequences and Adém-relation normal forms.
//! * [`loop_homology`]: generator bases and the Hopf structure of
//!   `H_*(Q(Y_+))` for `Y` a point, `BO_1`, `BO_2`.
//! * [`boundary_maps`]: the maps `∂̄_*` and `∂_*` on indecomposables, the
//!   kernel basis `v^{I,i}` and the rank table.
//! * [`verify`], [`report`], [`cli`]: suites and the command-line front end.

pub mod boundary_maps;
pub mod cli;
pub mod dyer_lashof;
pub mod f2;
pub mod loop_homology;
pub mod report;
pub mod verify;
