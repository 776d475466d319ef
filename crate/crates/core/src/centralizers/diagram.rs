//! The square of finite groups attached to a parameter that factors through a
//! Levi subgroup, built in the product-group model.
//!
//! Each constituent contributes a split `g` (number of copies moved into
//! `GL(1)` blocks of the Levi) and the remainder `h`. The group `N` is the
//! component group of the normalizer of the split torus `A = GL(1)^{sum g}`;
//! its elements are block-preserving signed permutations of the coordinates of
//! `A` together with one sign per orthogonal factor recording the component of
//! the leftover `O(h)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{centralizer, FactorKind};
use crate::error::{Error, Result};
use crate::params::FormalParameter;

use super::weyl::determinant;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviSplit {
    pub g: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub n: usize,
    /// `S^natural(M)`: the kernel of `N -> W`.
    pub s_levi: usize,
    pub w: usize,
    pub w0: usize,
    pub w_rad: usize,
    /// `S^natural(M, G)`: `N` modulo the part lying in `S^0`.
    pub s_natural: usize,
    pub r: usize,
    pub regular_in_w: usize,
    pub torus_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Elt {
    perm: Vec<usize>,
    signs: Vec<i8>,
    eps: Vec<i8>,
}

impl Elt {
    fn mul(&self, other: &Elt) -> Elt {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for j in 0..n {
            let k = other.perm[j];
            perm[j] = self.perm[k];
            signs[j] = other.signs[j] * self.signs[k];
        }
        let eps = self.eps.iter().zip(&other.eps).map(|(a, b)| a * b).collect();
        Elt { perm, signs, eps }
    }

    fn inverse(&self) -> Elt {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            signs[self.perm[j]] = self.signs[j];
        }
        Elt { perm, signs, eps: self.eps.clone() }
    }

    fn matrix(&self) -> Vec<Vec<i64>> {
        let n = self.perm.len();
        let mut m = vec![vec![0; n]; n];
        for j in 0..n {
            m[self.perm[j]][j] = self.signs[j] as i64;
        }
        m
    }
}

struct Block {
    kind: FactorKind,
    offset: usize,
    g: usize,
    h: usize,
}

fn block_choices(b: &Block) -> Vec<(Vec<usize>, Vec<i8>, i8)> {
    let perms = permutations(b.g);
    let flips = matches!(b.kind, FactorKind::O | FactorKind::Sp);
    let sign_sets: Vec<Vec<i8>> = if flips {
        (0..1u32 << b.g).map(|m| (0..b.g).map(|j| if (m >> j) & 1 == 1 { -1 } else { 1 }).collect()).collect()
    } else {
        vec![vec![1; b.g]]
    };
    let eps_set: &[i8] = if b.kind == FactorKind::O && b.h > 0 { &[1, -1] } else { &[1] };
    let mut out = Vec::new();
    for p in &perms {
        for s in &sign_sets {
            for &e in eps_set {
                out.push((p.clone(), s.clone(), e));
            }
        }
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn o_dets(blocks: &[Block], e: &Elt) -> Vec<i8> {
    blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| b.kind == FactorKind::O)
        .map(|(i, b)| {
            let s: i8 = e.signs[b.offset..b.offset + b.g].iter().product();
            s * e.eps[i]
        })
        .collect()
}

fn cosets(group: &[Elt], sub: &BTreeSet<Elt>) -> BTreeSet<BTreeSet<Elt>> {
    group.iter().map(|x| sub.iter().map(|h| x.mul(h)).collect()).collect()
}

fn is_normal(group: &[Elt], sub: &BTreeSet<Elt>) -> bool {
    group.iter().all(|x| {
        let xi = x.inverse();
        sub.iter().all(|h| sub.contains(&x.mul(h).mul(&xi)))
    })
}

fn check(cond: bool, arrow: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Diagram(arrow.to_string()))
    }
}

/// Builds the diagram for `p` relative to the Levi described by `split` and
/// checks exactness of both rows and both columns.
pub fn diagram_check(p: &FormalParameter, split: &LeviSplit) -> Result<DiagramReport> {
    let s = centralizer(p)?;
    if split.g.len() != s.factors.len() {
        return Err(Error::InvalidParameter(format!(
            "Levi split has {} entries for {} constituents",
            split.g.len(),
            s.factors.len()
        )));
    }
    let mut blocks = Vec::new();
    let mut offset = 0;
    for (f, &g) in s.factors.iter().zip(&split.g) {
        let l = f.rank_param as usize;
        let g = g as usize;
        let used = if f.kind == FactorKind::GL { g } else { 2 * g };
        if used > l {
            return Err(Error::InvalidParameter(format!("split {g} does not fit in {f}")));
        }
        blocks.push(Block { kind: f.kind, offset, g, h: l - used });
        offset += g;
    }
    let t = offset;

    let mut group = vec![Elt { perm: vec![], signs: vec![], eps: vec![] }];
    for b in &blocks {
        let choices = block_choices(b);
        let mut next = Vec::with_capacity(group.len() * choices.len());
        for e in &group {
            for (p, sg, ep) in &choices {
                let mut x = e.clone();
                x.perm.extend(p.iter().map(|&j| j + b.offset));
                x.signs.extend(sg);
                x.eps.push(*ep);
                next.push(x);
            }
        }
        group = next;
    }

    let identity_action = |e: &Elt| e.perm.iter().enumerate().all(|(j, &k)| j == k) && e.signs.iter().all(|&x| x == 1);
    let kz: BTreeSet<Elt> = group.iter().filter(|e| identity_action(e)).cloned().collect();
    let k0: BTreeSet<Elt> = group.iter().filter(|e| o_dets(&blocks, e).iter().all(|&d| d == 1)).cloned().collect();
    let both: BTreeSet<Elt> = kz.iter().flat_map(|a| k0.iter().map(move |b| a.mul(b))).collect();

    check(is_normal(&group, &kz), "S(M) -> N")?;
    check(is_normal(&group, &k0), "W^0 -> N")?;
    check(kz.intersection(&k0).count() == 1, "S(M) x W^0 -> N")?;

    let w = cosets(&group, &kz);
    let s_nat = cosets(&group, &k0);
    let r = cosets(&group, &both);
    let n = group.len();
    check(kz.len() * w.len() == n, "N -> W")?;
    check(k0.len() * s_nat.len() == n, "N -> S(M,G)")?;
    check(k0.len() * r.len() == w.len(), "W^0 -> W -> R")?;
    check(kz.len() * r.len() == s_nat.len(), "S(M) -> S(M,G) -> R")?;

    // W is also the faithful image of N acting on the cocharacters of A.
    let actions: BTreeSet<Vec<Vec<i64>>> = group.iter().map(|e| e.matrix()).collect();
    check(actions.len() == w.len(), "N -> Aut(A)")?;
    let w0_actions: BTreeSet<Vec<Vec<i64>>> = k0.iter().map(|e| e.matrix()).collect();
    check(w0_actions.len() == k0.len(), "W^0 -> Aut(A)")?;

    let mut regular = 0;
    for m in &actions {
        let shifted: Vec<Vec<i64>> =
            (0..t).map(|i| (0..t).map(|j| m[i][j] - i64::from(i == j)).collect()).collect();
        if determinant(&shifted)? != 0 {
            regular += 1;
        }
    }

    Ok(DiagramReport {
        n,
        s_levi: kz.len(),
        w: w.len(),
        w0: w0_actions.len(),
        w_rad: k0.len(),
        s_natural: s_nat.len(),
        r: r.len(),
        regular_in_w: regular,
        torus_rank: t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{Constituent, SimpleParameter};

    fn sd(id: &str, parity: i8, mult: u32) -> Constituent {
        Constituent { param: SimpleParameter::new(id, 1, 1, true, Some(parity)), mult }
    }

    #[test]
    fn u31_torus_levi() {
        let p = FormalParameter::unitary(1, 4, vec![sd("a", -1, 1), sd("b", -1, 1), sd("c", -1, 2)]).unwrap();
        let d = diagram_check(&p, &LeviSplit { g: vec![0, 0, 1] }).unwrap();
        assert_eq!((d.n, d.w, d.r), (8, 2, 2));
    }

    #[test]
    fn split_too_large() {
        let p = FormalParameter::unitary(1, 3, vec![sd("a", 1, 3)]).unwrap();
        assert!(diagram_check(&p, &LeviSplit { g: vec![2] }).is_err());
        assert!(diagram_check(&p, &LeviSplit { g: vec![] }).is_err());
    }
}
