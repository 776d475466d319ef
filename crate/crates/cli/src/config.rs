use std::path::Path;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use endoscopy_core::settings::GroupOrderConvention;
use endoscopy_core::Settings;

pub const CONFIG_ENV: &str = "ENDOSCOPY_KIT_CONFIG";

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GroupOrderFlag {
    Pi0S,
    Pi0Sbar,
}

/// Overrides applied on top of the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct SettingsFlags {
    /// Largest Weyl group enumerated exhaustively.
    #[arg(long, global = true)]
    pub weyl_bound: Option<u64>,
    /// Largest torus rank of a single factor the class enumerator accepts.
    #[arg(long, global = true)]
    pub max_factor_rank: Option<u32>,
    /// Which component group divides the stable coefficient.
    #[arg(long, global = true, value_enum)]
    pub group_order: Option<GroupOrderFlag>,
    /// Absolute tolerance of the adaptive quadrature.
    #[arg(long, global = true)]
    pub quad_abs_tol: Option<f64>,
    /// Relative tolerance of the adaptive quadrature.
    #[arg(long, global = true)]
    pub quad_rel_tol: Option<f64>,
    /// Tolerance when reading a sign or scalar off a float.
    #[arg(long, global = true)]
    pub sign_tol: Option<f64>,
}

pub fn load_file(path: &Path) -> Result<Settings> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}

pub fn resolve(flags: &SettingsFlags) -> Result<Settings> {
    let mut s = match std::env::var_os(CONFIG_ENV) {
        Some(p) if !p.is_empty() => load_file(Path::new(&p))?,
        _ => Settings::default(),
    };
    if let Some(v) = flags.weyl_bound {
        s.weyl_bound = v;
    }
    if let Some(v) = flags.max_factor_rank {
        s.max_factor_rank = v;
    }
    if let Some(v) = flags.group_order {
        s.group_order = match v {
            GroupOrderFlag::Pi0S => GroupOrderConvention::Pi0S,
            GroupOrderFlag::Pi0Sbar => GroupOrderConvention::Pi0Sbar,
        };
    }
    if let Some(v) = flags.quad_abs_tol {
        s.quad_abs_tol = v;
    }
    if let Some(v) = flags.quad_rel_tol {
        s.quad_rel_tol = v;
    }
    if let Some(v) = flags.sign_tol {
        s.sign_tol = v;
    }
    Ok(s)
}
