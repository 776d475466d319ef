//! Formal Arthur parameters: simple constituents, parity and kappa signs, the
//! `I+ / I- / J` partition and the shape classification.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(-1)^e` for any integer exponent.
pub fn neg_one_pow(e: i64) -> i8 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn check_sign(s: i8, what: &str) -> Result<()> {
    if s == 1 || s == -1 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what} must be +1 or -1, got {s}")))
    }
}

fn one() -> u32 {
    1
}

/// A simple constituent `mu (x) Sym^{n-1}`.
///
/// In the linear context the fields are read as `nu (x) Sym^{r-1} (x) Sym^{n-1}`
/// with `f = m` the dimension of `nu`; see [`crate::forms::signs`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleParameter {
    pub id: String,
    pub m: u32,
    pub n: u32,
    #[serde(default = "one")]
    pub r: u32,
    pub self_dual: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<i8>,
}

impl SimpleParameter {
    pub fn new(id: &str, m: u32, n: u32, self_dual: bool, parity: Option<i8>) -> Self {
        SimpleParameter { id: id.to_string(), m, n, r: 1, self_dual, parity }
    }

    /// Dimension `m * n * r`.
    pub fn dim(&self) -> u32 {
        self.m * self.n * self.r
    }

    pub fn is_generic(&self) -> bool {
        self.n == 1 && self.r == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constituent {
    #[serde(flatten)]
    pub param: SimpleParameter,
    pub mult: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Context {
    Unitary { kappa: i8 },
    Linear,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalParameter {
    pub context: Context,
    #[serde(rename = "N")]
    pub ambient_n: u32,
    pub constituents: Vec<Constituent>,
}

/// The character `z -> z^a zbar^b` of `C^x`, stored with doubled exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArchCharacter {
    pub two_a: i32,
    pub two_b: i32,
}

impl ArchCharacter {
    pub fn new(two_a: i32, two_b: i32) -> Result<Self> {
        if (two_a - two_b).rem_euclid(2) != 0 {
            return Err(Error::InvalidParameter(format!(
                "a - b must be an integer for ({two_a}/2, {two_b}/2)"
            )));
        }
        Ok(ArchCharacter { two_a, two_b })
    }

    pub fn is_conjugate_self_dual(&self) -> bool {
        self.two_b == -self.two_a
    }

    pub fn label(&self) -> String {
        format!("({}/2,{}/2)", self.two_a, self.two_b)
    }
}

/// `b(nu (x) Sym^{n-1}) = (-1)^{n-1} b(nu)`.
pub fn parity_of_twist(base_parity: i8, n: u32) -> i8 {
    neg_one_pow(n as i64 - 1) * base_parity
}

/// `kappa(mu (x) Sym^{n-1}) = (-1)^{mn-m-n-1} kappa(mu)` with `dim mu = m`.
pub fn kappa_of_simple(m: u32, n: u32, kappa_base: i8) -> i8 {
    let (m, n) = (m as i64, n as i64);
    neg_one_pow(m * n - m - n - 1) * kappa_base
}

/// Same quantity through parities: `kappa = (-1)^{dim-1} b`.
pub fn kappa_of_simple_via_parity(m: u32, n: u32, kappa_base: i8) -> i8 {
    let base_parity = kappa_base * neg_one_pow(m as i64 - 1);
    let parity = parity_of_twist(base_parity, n);
    neg_one_pow((m * n) as i64 - 1) * parity
}

/// Orthogonal (+1) or symplectic (-1) type of a conjugate self-dual character.
pub fn arch_parity(c: ArchCharacter) -> Result<i8> {
    if !c.is_conjugate_self_dual() {
        return Err(Error::InvalidParameter(format!("{} is not conjugate self-dual", c.label())));
    }
    let diff = (c.two_a - c.two_b) / 2;
    Ok(neg_one_pow(diff as i64))
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SignedPartition {
    pub i_plus: Vec<usize>,
    pub i_minus: Vec<usize>,
    pub j: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamClass {
    Discrete,
    EllipticNonDiscrete { q: u32 },
    Exc1,
    Exc2,
    OtherNonElliptic,
}

impl FormalParameter {
    pub fn unitary(kappa: i8, n: u32, constituents: Vec<Constituent>) -> Result<Self> {
        let p = FormalParameter { context: Context::Unitary { kappa }, ambient_n: n, constituents };
        p.validate()?;
        Ok(p)
    }

    pub fn linear(n: u32, constituents: Vec<Constituent>) -> Result<Self> {
        let p = FormalParameter { context: Context::Linear, ambient_n: n, constituents };
        p.validate()?;
        Ok(p)
    }

    /// Builds a unitary parameter from characters of `C^x`, merging repeats.
    /// Characters that are not conjugate self-dual are paired with their
    /// conjugate dual `(-b,-a)`.
    pub fn from_arch_characters(kappa: i8, chars: &[ArchCharacter]) -> Result<Self> {
        let mut order: Vec<ArchCharacter> = Vec::new();
        let mut counts: Vec<u32> = Vec::new();
        let mut dual_pending: Vec<ArchCharacter> = Vec::new();
        for &c in chars {
            if !c.is_conjugate_self_dual() {
                let dual = ArchCharacter { two_a: -c.two_b, two_b: -c.two_a };
                if let Some(pos) = dual_pending.iter().position(|d| *d == dual) {
                    dual_pending.remove(pos);
                    let rep = c.min(dual);
                    match order.iter().position(|o| *o == rep) {
                        Some(i) => counts[i] += 1,
                        None => {
                            order.push(rep);
                            counts.push(1);
                        }
                    }
                } else {
                    dual_pending.push(c);
                }
                continue;
            }
            match order.iter().position(|o| *o == c) {
                Some(i) => counts[i] += 1,
                None => {
                    order.push(c);
                    counts.push(1);
                }
            }
        }
        if let Some(c) = dual_pending.first() {
            return Err(Error::InvalidParameter(format!(
                "character {} appears without its conjugate dual",
                c.label()
            )));
        }
        let n = chars.len() as u32;
        let constituents = order
            .iter()
            .zip(&counts)
            .map(|(c, &mult)| {
                let sd = c.is_conjugate_self_dual();
                let parity = if sd { Some(arch_parity(*c)?) } else { None };
                Ok(Constituent { param: SimpleParameter::new(&c.label(), 1, 1, sd, parity), mult })
            })
            .collect::<Result<Vec<_>>>()?;
        FormalParameter::unitary(kappa, n, constituents)
    }

    pub fn kappa(&self) -> Option<i8> {
        match self.context {
            Context::Unitary { kappa } => Some(kappa),
            Context::Linear => None,
        }
    }

    /// Dimension a constituent occupies in the ambient space (one copy).
    pub fn footprint(&self, i: usize) -> u32 {
        let c = &self.constituents[i].param;
        match self.context {
            Context::Unitary { .. } if !c.self_dual => 2 * c.dim(),
            _ => c.dim(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.ambient_n == 0 {
            return Err(Error::InvalidParameter("N must be positive".into()));
        }
        if self.constituents.is_empty() {
            return Err(Error::InvalidParameter("no constituents".into()));
        }
        if let Context::Unitary { kappa } = self.context {
            check_sign(kappa, "kappa")?;
        }
        let mut ids = BTreeSet::new();
        for c in &self.constituents {
            let p = &c.param;
            if !ids.insert(p.id.as_str()) {
                return Err(Error::InvalidParameter(format!("duplicate id {}", p.id)));
            }
            if p.m == 0 || p.n == 0 || p.r == 0 || c.mult == 0 {
                return Err(Error::InvalidParameter(format!("zero dimension or multiplicity in {}", p.id)));
            }
            match (p.self_dual, p.parity) {
                (true, Some(s)) => check_sign(s, "parity")?,
                (false, None) => {}
                (true, None) if matches!(self.context, Context::Linear) => {}
                (true, None) => {
                    return Err(Error::InvalidParameter(format!("self-dual {} needs a parity", p.id)))
                }
                (false, Some(_)) => {
                    return Err(Error::InvalidParameter(format!("{} is not self-dual but has a parity", p.id)))
                }
            }
            if matches!(self.context, Context::Unitary { .. }) && p.r != 1 {
                return Err(Error::InvalidParameter(format!("{}: r > 1 only makes sense for GL", p.id)));
            }
        }
        let total: u64 = (0..self.constituents.len())
            .map(|i| self.footprint(i) as u64 * self.constituents[i].mult as u64)
            .sum();
        if total != self.ambient_n as u64 {
            return Err(Error::InvalidParameter(format!(
                "constituent dimensions sum to {total}, expected N = {}",
                self.ambient_n
            )));
        }
        Ok(())
    }

    pub fn is_generic(&self) -> bool {
        self.constituents.iter().all(|c| c.param.is_generic())
    }

    /// `kappa_i = (-1)^{N_i - 1} b(psi_i)`.
    pub fn kappa_i(&self, i: usize) -> Option<i8> {
        let p = &self.constituents[i].param;
        p.parity.map(|b| neg_one_pow(p.dim() as i64 - 1) * b)
    }

    pub fn signed_partition(&self) -> Result<SignedPartition> {
        let kappa = self
            .kappa()
            .ok_or_else(|| Error::InvalidParameter("signed partition needs a unitary context".into()))?;
        let n = self.ambient_n as i64;
        let mut sp = SignedPartition::default();
        for (i, c) in self.constituents.iter().enumerate() {
            if !c.param.self_dual {
                sp.j.push(i);
                continue;
            }
            let ki = self.kappa_i(i).expect("validated");
            if ki == kappa * neg_one_pow(n - c.param.dim() as i64) {
                sp.i_plus.push(i);
            } else {
                if c.mult % 2 == 1 {
                    return Err(Error::OddSymplecticMultiplicity { id: c.param.id.clone(), mult: c.mult });
                }
                sp.i_minus.push(i);
            }
        }
        Ok(sp)
    }

    pub fn classify(&self) -> Result<ParamClass> {
        let sp = self.signed_partition()?;
        let mult = |i: &usize| self.constituents[*i].mult;
        if sp.i_minus.is_empty() && sp.j.is_empty() && sp.i_plus.iter().all(|i| mult(i) == 1) {
            return Ok(ParamClass::Discrete);
        }
        if sp.j.is_empty() {
            if sp.i_minus.len() == 1
                && mult(&sp.i_minus[0]) == 2
                && sp.i_plus.iter().all(|i| mult(i) == 1)
            {
                return Ok(ParamClass::Exc1);
            }
            if sp.i_minus.is_empty() {
                let threes = sp.i_plus.iter().filter(|i| mult(i) == 3).count();
                if threes == 1 && sp.i_plus.iter().all(|i| mult(i) == 1 || mult(i) == 3) {
                    return Ok(ParamClass::Exc2);
                }
                if sp.i_plus.iter().all(|i| mult(i) <= 2) {
                    let q = sp.i_plus.iter().filter(|i| mult(i) == 2).count() as u32;
                    return Ok(ParamClass::EllipticNonDiscrete { q });
                }
            }
        }
        Ok(ParamClass::OtherNonElliptic)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sd(id: &str, parity: i8, mult: u32) -> Constituent {
        Constituent { param: SimpleParameter::new(id, 1, 1, true, Some(parity)), mult }
    }

    #[test]
    fn twist_parity_examples() {
        assert_eq!(parity_of_twist(1, 1), 1);
        assert_eq!(parity_of_twist(1, 2), -1);
        assert_eq!(parity_of_twist(-1, 3), -1);
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa_of_simple(1, 1, 1), 1);
        assert_eq!(kappa_of_simple(1, 2, 1), 1);
        // exponent 4-2-2-1 = -1 is odd, so the base sign flips
        assert_eq!(kappa_of_simple(2, 2, -1), 1);
        assert_eq!(kappa_of_simple_via_parity(2, 2, -1), 1);
    }

    #[test]
    fn arch_parity_examples() {
        assert_eq!(arch_parity(ArchCharacter::new(1, -1).unwrap()).unwrap(), -1);
        assert_eq!(arch_parity(ArchCharacter::new(0, 0).unwrap()).unwrap(), 1);
        assert_eq!(arch_parity(ArchCharacter::new(2, -2).unwrap()).unwrap(), 1);
        assert!(arch_parity(ArchCharacter::new(1, 1).unwrap()).is_err());
        assert!(ArchCharacter::new(1, 0).is_err());
    }

    #[test]
    fn classification_examples() {
        let disc = FormalParameter::unitary(1, 3, vec![sd("a", 1, 1), sd("b", 1, 1), sd("c", 1, 1)]).unwrap();
        assert_eq!(disc.classify().unwrap(), ParamClass::Discrete);
        let ell = FormalParameter::unitary(1, 4, vec![sd("a", -1, 2), sd("b", -1, 1), sd("c", -1, 1)]).unwrap();
        assert_eq!(ell.classify().unwrap(), ParamClass::EllipticNonDiscrete { q: 1 });
        let exc2 = FormalParameter::unitary(1, 4, vec![sd("a", -1, 3), sd("b", -1, 1)]).unwrap();
        assert_eq!(exc2.classify().unwrap(), ParamClass::Exc2);
    }

    #[test]
    fn odd_minus_multiplicity_is_rejected() {
        // N = 2, kappa = 1: a parity +1 character lands in I-.
        let p = FormalParameter::unitary(1, 2, vec![sd("a", 1, 1), sd("b", -1, 1)]).unwrap();
        assert!(matches!(p.signed_partition(), Err(Error::OddSymplecticMultiplicity { .. })));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        assert!(FormalParameter::unitary(1, 5, vec![sd("a", 1, 2)]).is_err());
    }

    #[test]
    fn json_shape() {
        let text = r#"{"context":{"unitary":{"kappa":1}},"N":4,"constituents":[
            {"id":"phi1","m":1,"n":1,"r":1,"self_dual":true,"parity":-1,"mult":2},
            {"id":"phi2","m":1,"n":1,"self_dual":false,"mult":1}]}"#;
        let p: FormalParameter = serde_json::from_str(text).unwrap();
        p.validate().unwrap();
        assert_eq!(p.constituents[1].param.r, 1);
        let back: FormalParameter = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(p, back);
        let lin: FormalParameter =
            serde_json::from_str(r#"{"context":"linear","N":2,"constituents":[{"id":"a","m":1,"n":2,"self_dual":false,"mult":1}]}"#)
                .unwrap();
        assert_eq!(lin.context, Context::Linear);
    }
}
