//! Command line, file formats and the verification suite for
//! [`tridend_core`].

pub mod cli;
pub mod json;
pub mod rng;
pub mod verify;
