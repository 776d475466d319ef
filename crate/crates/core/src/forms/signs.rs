//! The sign `a_psi` attached to a parameter of `GL(N)` and its comparison
//! with `rho(s_psi)`.
//!
//! A constituent of a linear parameter is read as
//! `nu (x) Sym^{r-1} (x) Sym^{m-1}` with `f = dim nu` stored in
//! `SimpleParameter::m`, the Arthur `SL(2)` dimension in `n`, and the other
//! `SU(2)` dimension in `r`. Its multiplicity is `k`.

use serde::{Deserialize, Serialize};

use super::inner::gcd;
use crate::error::{Error, Result};
use crate::params::{neg_one_pow, Context, FormalParameter, SimpleParameter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "field", rename_all = "snake_case")]
pub enum GlField {
    Real,
    Padic { d: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Frm {
    f: u32,
    r: u32,
    m: u32,
}

fn frm(p: &SimpleParameter) -> Frm {
    Frm { f: p.m, r: p.r, m: p.n }
}

fn linear(p: &FormalParameter) -> Result<()> {
    if p.context != Context::Linear {
        return Err(Error::InvalidParameter("expected a linear parameter".into()));
    }
    p.validate()
}

fn a_simple(c: Frm, field: GlField) -> Result<i8> {
    match field {
        GlField::Real => {
            if c.r != 1 || !(c.f == 1 || c.f == 2) {
                return Err(Error::InvalidParameter(format!("real constituent needs f in {{1,2}}, r = 1; got {c:?}")));
            }
            if c.f == 2 || c.m % 2 == 1 {
                Ok(1)
            } else {
                Ok(neg_one_pow(i64::from(c.m / 2)))
            }
        }
        GlField::Padic { d } => {
            if d == 0 {
                return Err(Error::InvalidParameter("degree must be positive".into()));
            }
            if !(c.f * c.m).is_multiple_of(d) {
                return Ok(1);
            }
            let s = (1..=d).find(|s| (c.f * s).is_multiple_of(d)).expect("s = d always works");
            if s % 2 == 1 {
                Ok(1)
            } else {
                Ok(neg_one_pow(i64::from(c.r * c.m / s)))
            }
        }
    }
}

/// `a_psi = prod_i a_{psi_i}^{k_i}`.
pub fn a_psi(p: &FormalParameter, field: GlField) -> Result<i8> {
    linear(p)?;
    let mut a = 1i8;
    for c in &p.constituents {
        let ai = a_simple(frm(&c.param), field)?;
        if c.mult % 2 == 1 {
            a *= ai;
        }
    }
    Ok(a)
}

/// `rho(s_psi)` where `rho` is the character of the one-dimensional torus
/// `S_psi^natural` restricting to `z -> z^k` on the center.
pub fn rho_s_psi(p: &FormalParameter, k: i64) -> Result<i8> {
    linear(p)?;
    let n = i64::from(p.ambient_n);
    let dims: Vec<i64> = p.constituents.iter().map(|c| i64::from(c.param.dim())).collect();
    let g = dims.iter().fold(0, |a, &b| gcd(a, b));
    let center_power = n / g;
    if k.rem_euclid(center_power) != 0 {
        return Err(Error::InvalidParameter(format!(
            "class {k} is not trivial on the kernel of Z -> S^natural (needs a multiple of {center_power})"
        )));
    }
    let j = k / center_power;
    // s_psi is (-1)^{m_i - 1} on block i; its image under prod det_i^{n_i'}.
    let mut e = 0i64;
    for (c, d) in p.constituents.iter().zip(&dims) {
        e += i64::from(frm(&c.param).m - 1) * i64::from(c.mult) * (d / g);
    }
    Ok(neg_one_pow(e * j))
}

/// Whether each constituent can live on the inner form of degree `d`.
pub fn padic_relevant(p: &FormalParameter, d: u32) -> bool {
    p.constituents.iter().all(|c| {
        let x = frm(&c.param);
        (x.f * x.m).is_multiple_of(d) || (x.f * x.r).is_multiple_of(d)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoCheck {
    pub k: i64,
    /// Degree of the inner form read off from `k`.
    pub degree: u32,
    pub relevant: bool,
    pub rho: i8,
    pub a: i8,
    pub equal: bool,
}

/// Compares `rho(s_psi)` with `a_psi` on the inner form whose class is `k`.
pub fn rho_spsi_check(p: &FormalParameter, field: GlField, k: i64) -> Result<RhoCheck> {
    linear(p)?;
    let n = i64::from(p.ambient_n);
    let k = k.rem_euclid(n);
    let degree = (n / gcd(k, n)) as u32;
    let (relevant, a) = match field {
        GlField::Real => {
            if !(k == 0 || (n % 2 == 0 && k == n / 2)) {
                return Err(Error::InvalidParameter(format!("real class must be 0 or N/2 mod N, got {k}")));
            }
            (true, if k == 0 { 1 } else { a_psi(p, GlField::Real)? })
        }
        GlField::Padic { d } => {
            if d != degree {
                return Err(Error::InvalidParameter(format!("class {k} has degree {degree}, not {d}")));
            }
            (padic_relevant(p, d), a_psi(p, field)?)
        }
    };
    let rho = rho_s_psi(p, k)?;
    Ok(RhoCheck { k, degree, relevant, rho, a, equal: rho == a })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignSweep {
    pub checked: usize,
    pub excluded: usize,
    pub mismatches: Vec<String>,
}

fn single(f: u32, r: u32, m: u32) -> FormalParameter {
    let mut sp = SimpleParameter::new("psi", f, m, false, None);
    sp.r = r;
    FormalParameter::linear(f * r * m, vec![crate::params::Constituent { param: sp, mult: 1 }])
        .expect("single constituent is valid")
}

/// All single-constituent `p`-adic cases with `d <= max_d`, `f r m <= max_dim`
/// and every class of exact degree `d`.
pub fn padic_sweep(max_d: u32, max_dim: u32) -> SignSweep {
    let mut out = SignSweep::default();
    for d in 1..=max_d {
        for f in 1..=max_dim {
            for r in 1..=max_dim / f {
                for m in 1..=max_dim / (f * r) {
                    let n = f * r * m;
                    if n % d != 0 {
                        continue;
                    }
                    let p = single(f, r, m);
                    for h in (1..=d).filter(|&h| gcd(i64::from(h), i64::from(d)) == 1) {
                        let k = i64::from(h * n / d);
                        match rho_spsi_check(&p, GlField::Padic { d }, k) {
                            Ok(c) if !c.relevant => out.excluded += 1,
                            Ok(c) => {
                                out.checked += 1;
                                if !c.equal {
                                    out.mismatches.push(format!("d={d} f={f} r={r} m={m} k={k}"));
                                }
                            }
                            Err(e) => out.mismatches.push(format!("d={d} f={f} r={r} m={m} k={k}: {e}")),
                        }
                    }
                }
            }
        }
    }
    out
}

/// All single-constituent real cases with `f in {1, 2}` and `m <= max_m`, on
/// both real forms of `GL(N)`.
pub fn real_sweep(max_m: u32) -> SignSweep {
    let mut out = SignSweep::default();
    for f in 1..=2 {
        for m in 1..=max_m {
            let p = single(f, 1, m);
            let n = i64::from(f * m);
            let classes: Vec<i64> = if n % 2 == 0 { vec![0, n / 2] } else { vec![0] };
            for k in classes {
                match rho_spsi_check(&p, GlField::Real, k) {
                    Ok(c) => {
                        out.checked += 1;
                        if !c.equal {
                            out.mismatches.push(format!("f={f} m={m} k={k}"));
                        }
                    }
                    Err(e) => out.mismatches.push(format!("f={f} m={m} k={k}: {e}")),
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(a_psi(&single(1, 1, 2), GlField::Real).unwrap(), -1);
        assert_eq!(a_psi(&single(1, 1, 2), GlField::Padic { d: 2 }).unwrap(), -1);
        assert_eq!(a_psi(&single(1, 1, 2), GlField::Padic { d: 3 }).unwrap(), 1);
    }

    #[test]
    fn quaternionic_real() {
        // m = 2, m/2 odd
        let c = rho_spsi_check(&single(1, 1, 2), GlField::Real, 1).unwrap();
        assert_eq!((c.rho, c.a), (-1, -1));
        let c0 = rho_spsi_check(&single(1, 1, 2), GlField::Real, 0).unwrap();
        assert_eq!((c0.rho, c0.a), (1, 1));
    }
}
