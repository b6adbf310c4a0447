//! Gassmann–Sunada and elementwise-conjugate group triples, their wreath
//! product constructions, transplantation of tiled billiards, and numerical
//! spectra of the resulting planar drums.

pub mod catalog;
pub mod config;
pub mod constructions;
pub mod drums;
pub mod error;
pub mod permgroup;
pub mod spectral;
pub mod transplant;
pub mod triples;

pub use config::Bounds;
pub use error::{Error, Result};
