use serde::{Deserialize, Serialize};

/// Which finite group supplies the normalising order in the stable
/// multiplicity coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum GroupOrderConvention {
    /// `|pi_0(S_psi)|`
    #[default]
    Pi0S,
    /// `|pi_0(S_psi / Z)|`
    Pi0Sbar,
}

/// Tunable bounds and tolerances. Every field has a default so a partial
/// config file is enough.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    /// Largest Weyl group that will be enumerated element by element.
    pub weyl_bound: u64,
    /// Largest torus rank of a single factor accepted by the class enumerator.
    pub max_factor_rank: u32,
    pub group_order: GroupOrderConvention,
    pub quad_abs_tol: f64,
    pub quad_rel_tol: f64,
    /// Tolerance used when comparing a computed sign with its expected value.
    pub sign_tol: f64,
    /// Relative agreement required between the two evaluations of the U(3,1) integral.
    pub bruteforce_rel_tol: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            weyl_bound: 1_000_000,
            max_factor_rank: 3,
            group_order: GroupOrderConvention::Pi0S,
            quad_abs_tol: 1e-13,
            quad_rel_tol: 1e-11,
            sign_tol: 1e-6,
            bruteforce_rel_tol: 1e-6,
        }
    }
}
