//! Exact computation of branch and critical loci of morphisms of affine schemes.

pub mod cli;
pub mod differentials;
pub mod error;
pub mod groebner;
pub mod loci;
pub mod polyring;
pub mod resolve;
pub mod verify;

pub use error::{Error, Result};
