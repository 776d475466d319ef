//! Inner forms of linear and unitary groups, Levi transfer, endoscopic data
//! and the sign characters of linear parameters.

pub mod endoscopy;
pub mod inner;
pub mod levi;
pub mod signs;

pub use endoscopy::{endoscopy_enumerate, kottwitz_sign_gl, EndoTriple};
pub use inner::{
    gl_local_invariants, global_feasible, globalize, u_local_invariants, u_reduced, AuxiliaryPlace, Feasibility,
    GlobalInnerFormSpec, GroupType, LocalInvariant, Place, PlaceKind,
};
pub use levi::{levi_transfers, minimal_levi, relevance, weyl_group_levi, LeviShape, LeviWeyl, RealInertTable};
pub use signs::{a_psi, padic_sweep, real_sweep, rho_s_psi, rho_spsi_check, GlField, RhoCheck, SignSweep};

use crate::error::{Error, Result};
use crate::params::FormalParameter;

/// The character `epsilon_psi`; only the generic case, where it is trivial, is supported.
pub fn epsilon_psi(p: &FormalParameter) -> Result<i8> {
    if p.is_generic() {
        Ok(1)
    } else {
        Err(Error::Unsupported("epsilon_psi for non-generic parameters".into()))
    }
}
