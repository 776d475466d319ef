//! Numerical verification of the local intertwining relation for the
//! parabolic of `U(3,1)` with Levi `GL(1) x U(1,1)`.

pub mod bruhat;
pub mod cases;
pub mod gamma;
pub mod integrals;
pub mod quad;

pub use bruhat::{bruhat_decompose, matrix_oracle, top_form_pullback, BruhatPoint};
pub use cases::{
    lir_case, lir_scalar, normalizing_ratio, pi_a3_pairing, verify_u31, LirCase, LirReport, SUPPORTED_TWO_X,
};
pub use gamma::gamma;
pub use integrals::{integral_bruteforce, integral_closed};
pub use quad::{integrate, QuadratureSpec};
