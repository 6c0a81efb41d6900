//! Asymmetric anchored trees, Frucht-style graph constructions realizing a
//! finite group as a full automorphism group, automorphism search, and genus
//! bounds.

pub mod aut;
pub mod cli;
pub mod construct;
pub mod error;
pub mod genus;
pub mod graph;
pub mod groups;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
