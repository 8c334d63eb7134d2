//! Photon-added coherent and thermal states on a truncated Fock space.
//!
//! The crate builds the states, evaluates their Wigner functions two ways
//! (closed forms and a displaced-parity sum over the density matrix) and
//! measures their entanglement potential: the logarithmic negativity left
//! after mixing the state with vacuum on a 50:50 beam splitter.

pub mod entpot;
pub mod error;
pub mod fock;
pub mod states;
pub mod wigner;

pub use error::{Error, Result};
