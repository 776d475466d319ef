use std::collections::HashMap;
use std::sync::RwLock;

use num::{BigInt, One, Zero};

use super::classes::{factor_classes, Eigen};
use super::Rational;
use crate::centralizers::{ClassicalFactor, FactorKind, GroupProduct};
use crate::error::{Error, Result};
use crate::settings::Settings;

/// Isomorphism type of a connected group: sorted factors with trivial ones
/// removed, and whether the diagonal `-1` has been divided out.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupKey {
    pub factors: Vec<(FactorKind, u32)>,
    pub quotient: bool,
}

impl GroupKey {
    pub fn new(factors: &[ClassicalFactor], quotient: bool) -> Result<GroupKey> {
        let mut v: Vec<(FactorKind, u32)> = Vec::new();
        for f in factors {
            let f = f.connected();
            let trivial = match f.kind {
                FactorKind::SO => f.rank_param <= 1,
                _ => f.rank_param == 0,
            };
            if !trivial {
                v.push((f.kind, f.rank_param));
            }
        }
        v.sort();
        let quotient = quotient && !v.is_empty();
        if quotient && !contains_minus_one(&v) {
            return Err(Error::InvalidParameter(format!("-1 does not lie in {v:?}")));
        }
        Ok(GroupKey { factors: v, quotient })
    }

    fn group(&self) -> GroupProduct {
        GroupProduct::new(self.factors.iter().map(|&(kind, rank_param)| ClassicalFactor { kind, rank_param }).collect())
    }

    fn finite_center(&self) -> bool {
        self.group().finite_center()
    }
}

fn contains_minus_one(v: &[(FactorKind, u32)]) -> bool {
    v.iter().all(|&(k, n)| k != FactorKind::SO || n % 2 == 0)
}

/// Memoised solver for `sigma`. The cache is shared between threads; two
/// threads may compute the same entry, with identical results.
pub struct SigmaSolver {
    settings: Settings,
    memo: RwLock<HashMap<GroupKey, Rational>>,
}

impl SigmaSolver {
    pub fn new(settings: Settings) -> Self {
        SigmaSolver { settings, memo: RwLock::new(HashMap::new()) }
    }

    pub fn settings(&self) -> &Settings {
        &self.settings
    }

    /// `sigma` of a connected group with finite center.
    pub fn sigma(&self, g: &GroupProduct) -> Result<Rational> {
        if !g.is_connected() {
            return Err(Error::InvalidParameter(format!("{} is not connected", g.describe())));
        }
        if !g.finite_center() {
            return Err(Error::InfiniteCenter(g.describe()));
        }
        self.sigma_key(&GroupKey::new(&g.factors, false)?)
    }

    /// `sigma(G / <-1>)` for connected `G` containing `-1`.
    pub fn sigma_quotient(&self, g: &GroupProduct) -> Result<Rational> {
        if !g.finite_center() {
            return Err(Error::InfiniteCenter(g.describe()));
        }
        self.sigma_key(&GroupKey::new(&g.identity_component().factors, true)?)
    }

    /// Same as [`Self::sigma_key`] but with the zero convention for infinite centers.
    pub fn sigma_or_zero(&self, key: &GroupKey) -> Result<Rational> {
        if key.finite_center() {
            self.sigma_key(key)
        } else {
            Ok(Rational::zero())
        }
    }

    pub fn sigma_key(&self, key: &GroupKey) -> Result<Rational> {
        if let Some(v) = self.memo.read().expect("sigma cache poisoned").get(key) {
            return Ok(v.clone());
        }
        let value = self.solve(key)?;
        self.memo.write().expect("sigma cache poisoned").insert(key.clone(), value.clone());
        Ok(value)
    }

    pub fn cached(&self) -> usize {
        self.memo.read().expect("sigma cache poisoned").len()
    }

    fn solve(&self, key: &GroupKey) -> Result<Rational> {
        if key.factors.is_empty() {
            return Ok(Rational::one());
        }
        if !key.finite_center() {
            return Err(Error::InfiniteCenter(key.group().describe()));
        }
        let g = key.group();
        for f in &g.factors {
            if f.torus_rank() > self.settings.max_factor_rank as usize {
                return Err(Error::Unsupported(format!("sigma for {f}")));
            }
        }
        let i = super::i_connected(&g, u128::from(self.settings.weyl_bound))?;

        let pieces: Vec<_> = g.factors.iter().map(|f| factor_classes(*f, 0)).collect();
        let mut self_weight = Rational::zero();
        let mut rest = Rational::zero();
        for choice in product_indices(&pieces.iter().map(|p| p.len()).collect::<Vec<_>>()) {
            let reps: Vec<Eigen> = choice.iter().zip(&pieces).map(|(&k, p)| p[k].0).collect();
            let mut sub: Vec<ClassicalFactor> = Vec::new();
            let mut pi0 = 1u32;
            for (&k, p) in choice.iter().zip(&pieces) {
                sub.extend(p[k].1.iter().copied());
                pi0 *= p[k].2;
            }
            let central = reps.iter().all(|e| e.is_central());
            let (weight, sub_key) = if key.quotient {
                let neg: Vec<Eigen> = reps.iter().map(|e| e.negated()).collect();
                if neg < reps {
                    // The pair {s, -s} is counted from its smaller member.
                    continue;
                }
                let eps = if neg == reps { 2 } else { 1 };
                let minus_in = g.factors.iter().zip(&reps).all(|(f, e)| {
                    f.kind == FactorKind::Sp || (e.plus % 2 == 0 && e.minus % 2 == 0)
                });
                let pi0_bar = eps * pi0 / if minus_in { 1 } else { 2 };
                (Rational::new(BigInt::one(), BigInt::from(pi0_bar)), GroupKey::new(&sub, minus_in)?)
            } else {
                (Rational::new(BigInt::one(), BigInt::from(pi0)), GroupKey::new(&sub, false)?)
            };
            if central {
                debug_assert_eq!(&sub_key, key);
                self_weight += weight;
            } else {
                rest += weight * self.sigma_or_zero(&sub_key)?;
            }
        }
        if self_weight.is_zero() {
            return Err(Error::Unsupported(format!("no central class in {}", g.describe())));
        }
        Ok((i - rest) / self_weight)
    }
}

pub(crate) fn product_indices(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &n in sizes {
        let mut next = Vec::with_capacity(out.len() * n);
        for v in &out {
            for k in 0..n {
                let mut w = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn solver() -> SigmaSolver {
        SigmaSolver::new(Settings::default())
    }

    #[test]
    fn sl2() {
        let s = solver();
        assert_eq!(s.sigma(&GroupProduct::new(vec![ClassicalFactor::sp(2)])).unwrap(), r(-1, 8));
    }

    #[test]
    fn isogenies_agree() {
        let s = solver();
        let so3 = s.sigma(&GroupProduct::new(vec![ClassicalFactor::so(3)])).unwrap();
        assert_eq!(so3, r(-1, 4));
        assert_eq!(s.sigma_quotient(&GroupProduct::new(vec![ClassicalFactor::sp(2)])).unwrap(), so3);
        let so4 = s.sigma(&GroupProduct::new(vec![ClassicalFactor::so(4)])).unwrap();
        let sl2sl2 = GroupProduct::new(vec![ClassicalFactor::sp(2), ClassicalFactor::sp(2)]);
        assert_eq!(s.sigma_quotient(&sl2sl2).unwrap(), so4);
        let so3so3 = s.sigma(&GroupProduct::new(vec![ClassicalFactor::so(3), ClassicalFactor::so(3)])).unwrap();
        assert_eq!(s.sigma_quotient(&GroupProduct::new(vec![ClassicalFactor::so(4)])).unwrap(), so3so3);
        let so5 = s.sigma(&GroupProduct::new(vec![ClassicalFactor::so(5)])).unwrap();
        assert_eq!(s.sigma_quotient(&GroupProduct::new(vec![ClassicalFactor::sp(4)])).unwrap(), so5);
    }

    #[test]
    fn infinite_center_rejected() {
        let s = solver();
        assert!(matches!(
            s.sigma(&GroupProduct::new(vec![ClassicalFactor::gl(1)])),
            Err(Error::InfiniteCenter(_))
        ));
    }
}
