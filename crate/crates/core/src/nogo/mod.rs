//! Non-existence of non-contextual value maps, made mechanical.
//!
//! Two independent routes: exhaustive backtracking over 0/1 colorings of
//! orthogonal ray triples in R³ (squared spin-1 components), and exhaustive
//! ±1 assignment enumeration over the two-qubit magic square (product
//! rule). The ray route lives at dimension 3, the product-rule route at
//! dimension 4; neither claims anything below its native dimension.

mod mermin;
mod rays;
mod search;
mod spin;
mod valuemap;

pub use mermin::{
    count_sign_assignments, mermin_square, refute_product_valuemap, MagicSquare, RefutationReport,
};
pub use rays::{coordinate_triad, peres_rays, Ray, RaySet};
pub use search::{
    enumerate_colorings, search_coloring, verify_coloring, Coloring, ColoringOutcome,
    UnsatCertificate,
};
pub use spin::{spin1_matrices, spin1_squares, spin_component};
pub use valuemap::{valuemap_from_trials, ContextualityWitness, PartialValueMap};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum NogoError {
    #[error("frame is not orthonormal (deviation {deviation:.3e})")]
    NotOrthonormal { deviation: f64 },
    #[error("invalid ray set: {0}")]
    InvalidRaySet(String),
    #[error("invalid magic square: {0}")]
    InvalidSquare(String),
    #[error("records mix different entangled states")]
    InconsistentState,
}
