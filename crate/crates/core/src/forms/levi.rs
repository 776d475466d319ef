use serde::{Deserialize, Serialize};

use super::inner::{gl_degree, GroupType, LocalInvariant};
use crate::error::{Error, Result};
use crate::params::{Context, FormalParameter};

/// Levi shape. For unitary groups `hermitian` is `N_-` and the blocks are the
/// `GL(N_i)` factors, each occupying `2 N_i`; for linear groups `hermitian`
/// is absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviShape {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hermitian: Option<u32>,
    pub blocks: Vec<u32>,
}

impl LeviShape {
    pub fn unitary(n_minus: u32, blocks: Vec<u32>) -> Self {
        LeviShape { hermitian: Some(n_minus), blocks }
    }

    pub fn linear(blocks: Vec<u32>) -> Self {
        LeviShape { hermitian: None, blocks }
    }

    pub fn dimension(&self) -> u32 {
        match self.hermitian {
            Some(h) => h + 2 * self.blocks.iter().sum::<u32>(),
            None => self.blocks.iter().sum(),
        }
    }

    /// No hermitian part left: the Levi is a product of linear factors.
    pub fn is_linear(&self) -> bool {
        self.hermitian.is_none_or(|h| h == 0)
    }

    pub fn validate(&self, n: u32) -> Result<()> {
        if self.blocks.contains(&0) {
            return Err(Error::InvalidParameter("empty Levi block".into()));
        }
        if self.dimension() != n {
            return Err(Error::InvalidParameter(format!("Levi shape has size {} not {n}", self.dimension())));
        }
        Ok(())
    }
}

/// Transfer data for real inert places, which have no closed-form rule.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealInertTable {
    pub entries: Vec<RealInertEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealInertEntry {
    pub p: u32,
    pub q: u32,
    pub n_minus: u32,
    pub blocks: Vec<u32>,
    pub transfers: bool,
}

impl RealInertTable {
    fn lookup(&self, p: u32, q: u32, shape: &LeviShape) -> Option<bool> {
        let mut blocks = shape.blocks.clone();
        blocks.sort_unstable();
        self.entries.iter().find_map(|e| {
            let mut b = e.blocks.clone();
            b.sort_unstable();
            (e.p == p && e.q == q && Some(e.n_minus) == shape.hermitian && b == blocks).then_some(e.transfers)
        })
    }
}

fn divides_all(d: u32, blocks: &[u32]) -> bool {
    blocks.iter().all(|b| b % d == 0)
}

pub fn levi_transfers(
    shape: &LeviShape,
    invariant: &LocalInvariant,
    group: GroupType,
    n: u32,
    table: Option<&RealInertTable>,
) -> Result<bool> {
    shape.validate(n)?;
    match group {
        GroupType::GL => {
            if shape.hermitian.is_some() {
                return Err(Error::InvalidParameter("unitary Levi shape for a linear group".into()));
            }
            Ok(divides_all(gl_degree(invariant, n)?, &shape.blocks))
        }
        GroupType::U => {
            let n_minus = shape
                .hermitian
                .ok_or_else(|| Error::InvalidParameter("linear Levi shape for a unitary group".into()))?;
            match *invariant {
                LocalInvariant::PadicInert { a } => {
                    let quasi_split = n % 2 == 1 || a == 0;
                    Ok(quasi_split || n_minus > 0)
                }
                LocalInvariant::RealInert { p, q } => table
                    .and_then(|t| t.lookup(p, q, shape))
                    .ok_or_else(|| Error::Unsupported(format!("Levi transfer to U({p},{q}) needs a table entry"))),
                _ => {
                    let mut blocks: Vec<u32> = shape.blocks.iter().flat_map(|&b| [b, b]).collect();
                    if n_minus > 0 {
                        blocks.push(n_minus);
                    }
                    Ok(divides_all(gl_degree(invariant, n)?, &blocks))
                }
            }
        }
    }
}

/// Smallest Levi through which a unitary parameter factors.
pub fn minimal_levi(p: &FormalParameter) -> Result<LeviShape> {
    if !matches!(p.context, Context::Unitary { .. }) {
        return Err(Error::InvalidParameter("minimal Levi is defined for unitary parameters".into()));
    }
    p.validate()?;
    let mut n_minus = 0;
    let mut blocks = Vec::new();
    for c in &p.constituents {
        let d = c.param.dim();
        if c.param.self_dual {
            if c.mult % 2 == 1 {
                n_minus += d;
            }
            blocks.extend(std::iter::repeat_n(d, (c.mult / 2) as usize));
        } else {
            blocks.extend(std::iter::repeat_n(d, c.mult as usize));
        }
    }
    Ok(LeviShape::unitary(n_minus, blocks))
}

pub fn relevance(p: &FormalParameter, invariant: &LocalInvariant, table: Option<&RealInertTable>) -> Result<bool> {
    let shape = minimal_levi(p)?;
    levi_transfers(&shape, invariant, GroupType::U, p.ambient_n, table)
}

/// An element `(flips, perm)` of `(Z/2)^k x| S`, acting on blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeviWeylElement {
    pub flips: Vec<bool>,
    pub perm: Vec<usize>,
}

impl LeviWeylElement {
    pub fn identity(k: usize) -> Self {
        LeviWeylElement { flips: vec![false; k], perm: (0..k).collect() }
    }

    /// `self * other`: apply `other` first.
    pub fn compose(&self, other: &LeviWeylElement) -> LeviWeylElement {
        let k = self.perm.len();
        let mut flips = self.flips.clone();
        for j in 0..k {
            flips[self.perm[j]] ^= other.flips[j];
        }
        let perm = (0..k).map(|j| self.perm[other.perm[j]]).collect();
        LeviWeylElement { flips, perm }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviWeyl {
    pub block_sizes: Vec<u32>,
    pub k: usize,
    /// Block permutations preserving sizes.
    pub permutations: Vec<Vec<usize>>,
    pub order: usize,
}

impl LeviWeyl {
    pub fn elements(&self) -> Vec<LeviWeylElement> {
        let mut out = Vec::with_capacity(self.order);
        for perm in &self.permutations {
            for m in 0..(1u64 << self.k) {
                out.push(LeviWeylElement { flips: (0..self.k).map(|j| (m >> j) & 1 == 1).collect(), perm: perm.clone() });
            }
        }
        out
    }

    /// `t_{w,-}`: `(-1)^{N_i}` on each flipped block, trivial on permutations.
    pub fn t_minus(&self, w: &LeviWeylElement) -> i8 {
        let odd = w.flips.iter().zip(&self.block_sizes).filter(|(f, n)| **f && **n % 2 == 1).count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

pub fn weyl_group_levi(shape: &LeviShape) -> Result<LeviWeyl> {
    if shape.hermitian.is_none() {
        return Err(Error::InvalidParameter("expected a unitary Levi shape".into()));
    }
    let k = shape.blocks.len();
    let mut permutations = Vec::new();
    permute(&mut Vec::new(), &mut vec![false; k], &shape.blocks, &mut permutations);
    let order = permutations.len() << k;
    Ok(LeviWeyl { block_sizes: shape.blocks.clone(), k, permutations, order })
}

fn permute(prefix: &mut Vec<usize>, used: &mut [bool], sizes: &[u32], out: &mut Vec<Vec<usize>>) {
    let j = prefix.len();
    if j == sizes.len() {
        out.push(prefix.clone());
        return;
    }
    for i in 0..sizes.len() {
        if !used[i] && sizes[i] == sizes[j] {
            used[i] = true;
            prefix.push(i);
            permute(prefix, used, sizes, out);
            prefix.pop();
            used[i] = false;
        }
    }
}
