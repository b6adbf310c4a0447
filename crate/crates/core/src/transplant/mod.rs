//! Involution systems, the tree hypothesis, the fixed-point identity, and
//! exact transplantation matrices.

mod intertwine;
pub mod linalg;
mod scan;
mod system;

pub use intertwine::{
    character_mismatch, detect_isometry, find_transplantation, intertwiner_basis, intertwines,
    isometry_matrix, Invertibility, TransplantationSolution,
};
pub use scan::{okada_shudo_scan, ScanPair};
pub use system::{schreier_system, InvolutionSystem};
