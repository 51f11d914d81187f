//! The maps `Q(∂̄_*)` and `Q(∂_*)` on indecomposables.
//!
//! Indecomposables of `H_*(Ω_0^∞ MTO(1))` are handled ambiently, as
//! elements of `QH_*(Q_0(BO_{1+}))` lying in the kernel of `Q(∂̄_*)`; the
//! basis `v^{I,i}` of that kernel gives coordinates.

mod kernel;
mod partial;
mod table;

pub use kernel::{
    act_q, ak_theorem_sides, dbar_apply, dbar_matrix, to_v_coords, v_ambient, v_basis, v_symbol,
    verify_ak_theorem, AkSides, VGen, VKey, VSymbol,
};
pub use partial::{
    check_surjectivity, dpartial_column, dpartial_matrix, partial0, partial0_ambient, partial_full,
};
pub use table::{rank_table, RankRow, RankTable};

use thiserror::Error;

use crate::loop_homology::HopfError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundaryError {
    #[error("degree {degree}: {element} is not in the kernel of Q(∂̄_*) (residue {residue})")]
    NotInKernel {
        degree: u32,
        element: String,
        residue: String,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

pub type Ambient = crate::f2::F2Combination<crate::loop_homology::QGenerator>;
