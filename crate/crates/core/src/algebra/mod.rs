//! Table-driven arithmetic for finite-dimensional commutative hypercomplex
//! number systems.

mod element;
mod iso;
mod table;

pub use element::{HnsElement, RepMatrix, SINGULAR_TOL};
pub use iso::{
    find_idempotents, find_isomorphism, find_isomorphism_with, homomorphism_defect, BlockKind,
    IdempotentSearch, Isomorphism,
};
pub use table::{AlgebraTable, GAMMA3, RC, RC_FROM_PRINTED, RC_TO_PRINTED};
