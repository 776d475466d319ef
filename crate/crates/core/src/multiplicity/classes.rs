use serde::{Deserialize, Serialize};

use crate::centralizers::{ClassicalFactor, Component, FactorKind, GroupProduct};
use crate::error::{Error, Result};

/// Eigenvalue multiplicities `(+1, -1)` of a semisimple element of order at
/// most two in the defining representation of one factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Eigen {
    pub plus: u32,
    pub minus: u32,
}

impl Eigen {
    pub fn negated(self) -> Eigen {
        Eigen { plus: self.minus, minus: self.plus }
    }

    pub fn is_central(self) -> bool {
        self.plus == 0 || self.minus == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticClass {
    pub component: Component,
    pub representative: Vec<Eigen>,
    /// Identity component of the centralizer, trivial factors dropped.
    pub centralizer: GroupProduct,
    pub pi0_centralizer: u32,
}

impl EllipticClass {
    pub fn is_central(&self) -> bool {
        self.representative.iter().all(|e| e.is_central())
    }
}

/// Per-factor pieces: representative, centralizer factors, `|pi_0|`.
pub(crate) fn factor_classes(f: ClassicalFactor, component: u8) -> Vec<(Eigen, Vec<ClassicalFactor>, u32)> {
    let n = f.rank_param;
    let mut out = Vec::new();
    match f.kind {
        FactorKind::Sp => {
            if component == 0 {
                for b in 0..=n / 2 {
                    let a = n / 2 - b;
                    let e = Eigen { plus: 2 * a, minus: 2 * b };
                    out.push((e, nontrivial(&[FactorKind::Sp], &[2 * a, 2 * b]), 1));
                }
            }
        }
        FactorKind::O | FactorKind::SO => {
            if f.kind == FactorKind::SO && component == 1 {
                return out;
            }
            for q in (0..=n).filter(|q| q % 2 == component as u32) {
                let p = n - q;
                if p == 2 || q == 2 {
                    continue;
                }
                let pi0 = if p > 0 && q > 0 { 2 } else { 1 };
                out.push((Eigen { plus: p, minus: q }, nontrivial(&[FactorKind::SO], &[p, q]), pi0));
            }
        }
        FactorKind::GL | FactorKind::Torus => {}
    }
    out
}

fn nontrivial(kind: &[FactorKind], sizes: &[u32]) -> Vec<ClassicalFactor> {
    sizes
        .iter()
        .filter(|&&s| s > 1 || (kind[0] == FactorKind::Sp && s > 0))
        .map(|&s| ClassicalFactor { kind: kind[0], rank_param: s })
        .collect()
}

/// Elliptic semisimple classes of `S^0` lying in the component `c` of `S`.
///
/// Only elements with eigenvalues `+-1` are listed: any other eigenvalue
/// produces a `GL` block in the centralizer and hence an infinite center.
pub fn classes_in_component(g: &GroupProduct, c: &Component, max_rank: u32) -> Result<Vec<EllipticClass>> {
    for f in &g.factors {
        if f.torus_rank() > max_rank as usize {
            return Err(Error::Unsupported(format!("class enumeration for {f} exceeds rank {max_rank}")));
        }
    }
    let mut acc: Vec<(Vec<Eigen>, Vec<ClassicalFactor>, u32)> = vec![(vec![], vec![], 1)];
    for (f, &ci) in g.factors.iter().zip(c) {
        let pieces = factor_classes(*f, ci);
        let mut next = Vec::with_capacity(acc.len() * pieces.len());
        for (rep, cent, pi0) in &acc {
            for (e, sub, p) in &pieces {
                let mut r = rep.clone();
                r.push(*e);
                let mut s = cent.clone();
                s.extend(sub.iter().copied());
                next.push((r, s, pi0 * p));
            }
        }
        acc = next;
    }
    Ok(acc
        .into_iter()
        .map(|(representative, factors, pi0)| EllipticClass {
            component: c.clone(),
            representative,
            centralizer: GroupProduct::new(factors),
            pi0_centralizer: pi0,
        })
        .collect())
}

/// Elliptic classes over a union of components.
pub fn elliptic_classes(g: &GroupProduct, components: &[Component], max_rank: u32) -> Result<Vec<EllipticClass>> {
    let mut out = Vec::new();
    for c in components {
        out.extend(classes_in_component(g, c, max_rank)?);
    }
    Ok(out)
}
