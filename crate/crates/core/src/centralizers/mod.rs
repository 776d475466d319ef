//! Centralizers of parameters as explicit products of classical groups, their
//! component groups, Weyl data and the basic diagram attached to a Levi.

mod diagram;
mod weyl;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{Context, FormalParameter};

pub use diagram::{diagram_check, DiagramReport, LeviSplit};
pub use weyl::{
    determinant, factor_weyl, positive_roots, weyl_data, weyl_data_with, weyl_order, FactorWeylElement, WeylDatum,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FactorKind {
    O,
    Sp,
    GL,
    SO,
    Torus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassicalFactor {
    pub kind: FactorKind,
    pub rank_param: u32,
}

impl ClassicalFactor {
    pub fn new(kind: FactorKind, rank_param: u32) -> Result<Self> {
        if rank_param == 0 {
            return Err(Error::InvalidParameter(format!("{kind:?}(0) is not allowed")));
        }
        if kind == FactorKind::Sp && rank_param % 2 == 1 {
            return Err(Error::InvalidParameter(format!("Sp({rank_param}) needs an even size")));
        }
        Ok(ClassicalFactor { kind, rank_param })
    }

    pub fn o(n: u32) -> Self {
        ClassicalFactor::new(FactorKind::O, n).expect("valid O")
    }
    pub fn so(n: u32) -> Self {
        ClassicalFactor::new(FactorKind::SO, n).expect("valid SO")
    }
    pub fn sp(n: u32) -> Self {
        ClassicalFactor::new(FactorKind::Sp, n).expect("valid Sp")
    }
    pub fn gl(n: u32) -> Self {
        ClassicalFactor::new(FactorKind::GL, n).expect("valid GL")
    }
    pub fn torus(n: u32) -> Self {
        ClassicalFactor::new(FactorKind::Torus, n).expect("valid torus")
    }

    pub fn torus_rank(&self) -> usize {
        let n = self.rank_param as usize;
        match self.kind {
            FactorKind::O | FactorKind::SO => n / 2,
            FactorKind::Sp => n / 2,
            FactorKind::GL | FactorKind::Torus => n,
        }
    }

    pub fn component_count(&self) -> usize {
        if self.kind == FactorKind::O {
            2
        } else {
            1
        }
    }

    /// The identity component.
    pub fn connected(&self) -> ClassicalFactor {
        match self.kind {
            FactorKind::O => ClassicalFactor { kind: FactorKind::SO, rank_param: self.rank_param },
            _ => *self,
        }
    }

    /// Whether the identity component has finite center.
    pub fn finite_center(&self) -> bool {
        match self.kind {
            FactorKind::O | FactorKind::SO => self.rank_param != 2,
            FactorKind::Sp => true,
            FactorKind::GL | FactorKind::Torus => false,
        }
    }

    /// Image of the scalar `-1` of the ambient space.
    pub fn minus_one(&self) -> CenterImage {
        let n = self.rank_param as i64;
        match self.kind {
            FactorKind::O => CenterImage { component: (n % 2) as u8, det: if n % 2 == 0 { 1 } else { -1 } },
            FactorKind::SO => CenterImage { component: 0, det: if n % 2 == 0 { 1 } else { -1 } },
            FactorKind::Sp | FactorKind::GL | FactorKind::Torus => CenterImage { component: 0, det: 1 },
        }
    }
}

impl fmt::Display for ClassicalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            FactorKind::O => "O",
            FactorKind::Sp => "Sp",
            FactorKind::GL => "GL",
            FactorKind::SO => "SO",
            FactorKind::Torus => "T",
        };
        write!(f, "{name}({})", self.rank_param)
    }
}

/// Where the scalar `-1` lands in one factor. For `SO(n)` with `n` odd the
/// scalar is not in the group; `det = -1` records that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterImage {
    pub component: u8,
    pub det: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupProduct {
    pub factors: Vec<ClassicalFactor>,
    pub center_embedding: Vec<CenterImage>,
    pub labels: Vec<String>,
}

/// A connected component: one bit per factor, non-zero only on `O` factors.
pub type Component = Vec<u8>;

impl GroupProduct {
    pub fn new(factors: Vec<ClassicalFactor>) -> Self {
        let labels = (0..factors.len()).map(|i| format!("f{i}")).collect();
        GroupProduct::labelled(factors, labels)
    }

    pub fn labelled(factors: Vec<ClassicalFactor>, labels: Vec<String>) -> Self {
        let center_embedding = factors.iter().map(|f| f.minus_one()).collect();
        GroupProduct { factors, center_embedding, labels }
    }

    pub fn torus_rank(&self) -> usize {
        self.factors.iter().map(|f| f.torus_rank()).sum()
    }

    pub fn identity_component(&self) -> GroupProduct {
        GroupProduct::labelled(self.factors.iter().map(|f| f.connected()).collect(), self.labels.clone())
    }

    pub fn is_connected(&self) -> bool {
        self.factors.iter().all(|f| f.kind != FactorKind::O)
    }

    pub fn finite_center(&self) -> bool {
        self.factors.iter().all(|f| f.finite_center())
    }

    pub fn identity(&self) -> Component {
        vec![0; self.factors.len()]
    }

    /// All components in the order of their bitmask over the `O` factors.
    pub fn components(&self) -> Vec<Component> {
        let o_slots: Vec<usize> =
            (0..self.factors.len()).filter(|&i| self.factors[i].kind == FactorKind::O).collect();
        (0..(1u64 << o_slots.len())).map(|mask| self.component_from_mask_slots(mask, &o_slots)).collect()
    }

    fn component_from_mask_slots(&self, mask: u64, o_slots: &[usize]) -> Component {
        let mut c = self.identity();
        for (bit, &slot) in o_slots.iter().enumerate() {
            c[slot] = ((mask >> bit) & 1) as u8;
        }
        c
    }

    /// Bit `k` of `mask` selects the non-identity component of the `k`-th `O` factor.
    pub fn component_from_mask(&self, mask: u64) -> Result<Component> {
        let o_slots: Vec<usize> =
            (0..self.factors.len()).filter(|&i| self.factors[i].kind == FactorKind::O).collect();
        if o_slots.len() < 64 && mask >> o_slots.len() != 0 {
            return Err(Error::InvalidParameter(format!(
                "component mask {mask} has bits beyond the {} orthogonal factors",
                o_slots.len()
            )));
        }
        Ok(self.component_from_mask_slots(mask, &o_slots))
    }

    pub fn component_mask(&self, c: &Component) -> u64 {
        let mut mask = 0u64;
        let mut bit = 0;
        for (i, f) in self.factors.iter().enumerate() {
            if f.kind == FactorKind::O {
                mask |= (c[i] as u64) << bit;
                bit += 1;
            }
        }
        mask
    }

    /// Component containing the scalar `-1`.
    pub fn minus_one_component(&self) -> Component {
        self.center_embedding.iter().map(|c| c.component).collect()
    }

    /// Product of a component with the component of `-1`.
    pub fn shift_by_minus_one(&self, c: &Component) -> Component {
        c.iter().zip(self.minus_one_component()).map(|(a, b)| a ^ b).collect()
    }

    /// Whether `-1` lies in the identity component (it is then central there).
    pub fn minus_one_in_identity_component(&self) -> bool {
        self.factors.iter().all(|f| match f.kind {
            FactorKind::O | FactorKind::SO => f.rank_param % 2 == 0,
            _ => true,
        })
    }

    pub fn describe(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" x ")
    }

    /// Factors as a sorted multiset, used for order-free comparisons.
    pub fn sorted_factors(&self) -> Vec<ClassicalFactor> {
        let mut v = self.factors.clone();
        v.sort();
        v
    }
}

/// `S_psi` as a product of classical groups, one factor per constituent.
pub fn centralizer(p: &FormalParameter) -> Result<GroupProduct> {
    p.validate()?;
    let mut factors = Vec::with_capacity(p.constituents.len());
    match p.context {
        Context::Linear => {
            for c in &p.constituents {
                factors.push(ClassicalFactor::new(FactorKind::GL, c.mult)?);
            }
        }
        Context::Unitary { .. } => {
            let sp = p.signed_partition()?;
            for (i, c) in p.constituents.iter().enumerate() {
                let kind = if sp.i_plus.contains(&i) {
                    FactorKind::O
                } else if sp.i_minus.contains(&i) {
                    FactorKind::Sp
                } else {
                    FactorKind::GL
                };
                factors.push(ClassicalFactor::new(kind, c.mult)?);
            }
        }
    }
    let labels = p.constituents.iter().map(|c| c.param.id.clone()).collect();
    Ok(GroupProduct::labelled(factors, labels))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SNatural {
    Elementary2Group { rank: u32 },
    /// `C^x` through `prod det_i^{exponents_i}`; the center maps by `z -> z^center_power`.
    OneDimTorus { exponents: Vec<u32>, center_power: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentData {
    pub pi0_s: u32,
    pub s_natural: SNatural,
    pub pi0_sbar: u32,
    /// `(-1)^{l_i}` over the orthogonal factors: the image of the central `-1`.
    pub rbar_generator_kill: Vec<i8>,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn component_data(g: &GroupProduct, p: &FormalParameter) -> Result<ComponentData> {
    match p.context {
        Context::Linear => {
            let dims: Vec<u32> = p.constituents.iter().map(|c| c.param.dim()).collect();
            let common = dims.iter().copied().fold(0, gcd);
            Ok(ComponentData {
                pi0_s: 0,
                s_natural: SNatural::OneDimTorus {
                    exponents: dims.iter().map(|d| d / common).collect(),
                    center_power: p.ambient_n / common,
                },
                pi0_sbar: 0,
                rbar_generator_kill: vec![],
            })
        }
        Context::Unitary { .. } => {
            let kill: Vec<i8> = g
                .factors
                .iter()
                .filter(|f| f.kind == FactorKind::O)
                .map(|f| if f.rank_param % 2 == 0 { 1 } else { -1 })
                .collect();
            let rank = kill.len() as u32;
            // -1 already lies in S^0 exactly when every orthogonal block has even size;
            // otherwise it kills one Z/2.
            let all_even = kill.iter().all(|&s| s == 1);
            let pi0_sbar = if all_even { rank } else { rank - 1 };
            Ok(ComponentData {
                pi0_s: rank,
                s_natural: SNatural::Elementary2Group { rank },
                pi0_sbar,
                rbar_generator_kill: kill,
            })
        }
    }
}

/// Components of `S` whose image in `pi_0(S / {+-1})` is `x`, given one lift.
pub fn fiber_components(g: &GroupProduct, lift: &Component) -> Vec<Component> {
    let other = g.shift_by_minus_one(lift);
    let mut set = BTreeSet::new();
    set.insert(lift.clone());
    set.insert(other);
    set.into_iter().collect()
}
