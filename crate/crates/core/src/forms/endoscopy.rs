use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::neg_one_pow;

/// Elliptic endoscopic datum `U(N1) x U(N2)` at the combinatorial level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoTriple {
    pub n1: u32,
    pub n2: u32,
    /// Sign pairs `(kappa_1, kappa_2)`; empty for ordinary data.
    pub kappa_choices: Vec<(i8, i8)>,
    pub out_order: u8,
}

pub fn endoscopy_enumerate(n: u32, twisted: bool) -> Result<Vec<EndoTriple>> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be positive".into()));
    }
    let mut out = Vec::new();
    for n2 in 0..=n / 2 {
        let n1 = n - n2;
        let (kappa_choices, out_order) = if twisted {
            let mut k = if n1 % 2 == n2 % 2 { vec![(1, -1), (-1, 1)] } else { vec![(1, 1), (-1, -1)] };
            if n1 == n2 {
                k.truncate(1);
            }
            (k, 1)
        } else {
            (vec![], if n1 == n2 { 2 } else { 1 })
        };
        out.push(EndoTriple { n1, n2, kappa_choices, out_order });
    }
    Ok(out)
}

/// `e(G) = (-1)^{N - M}` for `GL_M(D)` with `D` of degree `d = N / M`.
pub fn kottwitz_sign_gl(n: u32, d: u32) -> Result<i8> {
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::InvalidParameter(format!("{d} does not divide {n}")));
    }
    Ok(neg_one_pow(i64::from(n - n / d)))
}
