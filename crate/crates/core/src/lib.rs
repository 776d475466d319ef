//! Combinatorial and numerical invariants attached to formal Arthur parameters
//! of unitary and linear groups.
//!
//! The crate is organised bottom-up: [`params`] holds the parameter algebra,
//! [`centralizers`] turns parameters into explicit products of classical
//! groups, [`multiplicity`] evaluates the constants `i(S)`, `e(S)` and
//! `sigma(S)`, [`forms`] handles inner forms and sign characters, and [`lir`]
//! reproduces the U(3,1) intertwining computation numerically.

pub mod centralizers;
pub mod error;
pub mod forms;
pub mod lir;
pub mod multiplicity;
pub mod par;
pub mod params;
pub mod settings;

pub use error::{Error, Result};
pub use settings::Settings;
