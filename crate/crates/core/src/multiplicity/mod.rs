//! Exact evaluation of `i(S)`, `e(S)`, `sigma(S)` and the stable multiplicity
//! coefficient for products of classical groups.

mod classes;
mod sigma;

use std::collections::BTreeSet;

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::centralizers::{
    centralizer, component_data, weyl_data, weyl_data_with, ClassicalFactor, Component, FactorKind, GroupProduct,
};
use crate::error::{Error, Result};
use crate::par::{self, Mode};
use crate::params::FormalParameter;
use crate::settings::{GroupOrderConvention, Settings};

pub use classes::{classes_in_component, elliptic_classes, Eigen, EllipticClass};
pub use sigma::{GroupKey, SigmaSolver};

pub type Rational = num::BigRational;

/// A union of connected components of `base`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentUnion {
    pub base: GroupProduct,
    pub components: Vec<Component>,
}

impl ComponentUnion {
    pub fn new(base: GroupProduct, components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidParameter("empty component union".into()));
        }
        let all: BTreeSet<Component> = base.components().into_iter().collect();
        let mut seen = BTreeSet::new();
        for c in &components {
            if !all.contains(c) {
                return Err(Error::InvalidParameter(format!("{c:?} is not a component of {}", base.describe())));
            }
            if !seen.insert(c.clone()) {
                return Err(Error::InvalidParameter(format!("component {c:?} listed twice")));
            }
        }
        Ok(ComponentUnion { base, components })
    }

    pub fn single(base: GroupProduct, c: Component) -> Result<Self> {
        ComponentUnion::new(base, vec![c])
    }

    pub fn identity(base: GroupProduct) -> Self {
        let c = base.identity();
        ComponentUnion { base, components: vec![c] }
    }
}

fn weyl_order_identity(g: &GroupProduct, bound: u128) -> Result<u128> {
    let order = crate::centralizers::weyl_order(&g.identity_component());
    if order > bound {
        return Err(Error::EnumerationBound { order, bound });
    }
    Ok(order)
}

fn regular_sum(data: &[crate::centralizers::WeylDatum]) -> Rational {
    let mut acc = Rational::zero();
    for d in data.iter().filter(|d| d.regular) {
        acc += Rational::new(BigInt::from(d.sgn0), BigInt::from(d.det_w_minus_1).abs());
    }
    acc
}

pub(crate) fn i_connected(g: &GroupProduct, bound: u128) -> Result<Rational> {
    let order = weyl_order_identity(g, bound)?;
    let data = weyl_data(&g.identity_component(), bound)?;
    Ok(regular_sum(&data) / BigInt::from(order))
}

/// `i(S) = |W(S^0)|^{-1} sum_{w in W_reg(S)} sgn0(w) |det(w - 1)|^{-1}`.
pub fn i_of_s(u: &ComponentUnion, settings: &Settings) -> Result<Rational> {
    i_of_s_with(u, settings, Mode::default())
}

pub fn i_of_s_with(u: &ComponentUnion, settings: &Settings, mode: Mode) -> Result<Rational> {
    let order = weyl_order_identity(&u.base, u128::from(settings.weyl_bound))?;
    let wanted: BTreeSet<Component> = u.components.iter().cloned().collect();
    let data = weyl_data_with(&u.base, u128::from(settings.weyl_bound), mode, |c| wanted.contains(c))?;
    Ok(regular_sum(&data) / BigInt::from(order))
}

/// `e(S) = sum over elliptic classes of |pi_0(S_s)|^{-1} sigma(S_s^0)`.
pub fn e_of_s(u: &ComponentUnion, solver: &SigmaSolver) -> Result<Rational> {
    let classes = elliptic_classes(&u.base, &u.components, solver.settings().max_factor_rank)?;
    let mut acc = Rational::zero();
    for c in &classes {
        let key = GroupKey::new(&c.centralizer.factors, false)?;
        acc += solver.sigma_or_zero(&key)? / BigInt::from(c.pi0_centralizer);
    }
    Ok(acc)
}

/// Whether some Weyl element in component `c` is regular.
pub fn component_is_elliptic(g: &GroupProduct, c: &Component, bound: u128) -> Result<bool> {
    let data = weyl_data_with(g, bound, Mode::Sequential, |x| x == c)?;
    Ok(data.iter().any(|d| d.regular))
}

/// One element of the quotient component group, with its chosen lift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberValue {
    /// Bitmask of the smaller lift.
    pub mask: u64,
    pub lift: Component,
    pub elliptic: bool,
    pub i: Rational,
}

/// `i_psi(x)` for every `x` in the quotient component group, computed on the
/// lift with the smaller mask.
pub fn i_psi_table(p: &FormalParameter, settings: &Settings) -> Result<Vec<FiberValue>> {
    let g = centralizer(p)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in g.components() {
        let other = g.shift_by_minus_one(&c);
        let lift = if g.component_mask(&other) < g.component_mask(&c) { other } else { c };
        if !seen.insert(lift.clone()) {
            continue;
        }
        let u = ComponentUnion::single(g.clone(), lift.clone())?;
        out.push(FiberValue {
            mask: g.component_mask(&lift),
            elliptic: component_is_elliptic(&g, &lift, u128::from(settings.weyl_bound))?,
            i: i_of_s(&u, settings)?,
            lift,
        });
    }
    Ok(out)
}

/// `i_psi(x)` on the component selected by `mask`.
pub fn i_psi(p: &FormalParameter, mask: u64, settings: &Settings) -> Result<Rational> {
    let g = centralizer(p)?;
    let c = g.component_from_mask(mask)?;
    i_of_s(&ComponentUnion::single(g, c)?, settings)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableCoefficient {
    pub sigma_sbar0: Rational,
    pub group_order: u64,
    pub coefficient: Rational,
}

/// `|S_psi|^{-1} sigma(Sbar_psi^0)` for generic `psi`, with `|S_psi|` read
/// according to the configured convention.
pub fn stable_mult_coefficient(
    p: &FormalParameter,
    solver: &SigmaSolver,
    convention: GroupOrderConvention,
) -> Result<StableCoefficient> {
    if !p.is_generic() {
        return Err(Error::Unsupported("stable multiplicity coefficient for non-generic parameters".into()));
    }
    let g = centralizer(p)?;
    let cd = component_data(&g, p)?;
    let s0 = g.identity_component();
    let sigma_sbar0 = if !s0.finite_center() {
        Rational::zero()
    } else {
        let quotient = s0.minus_one_in_identity_component();
        solver.sigma_key(&GroupKey::new(&s0.factors, quotient)?)?
    };
    let rank = match convention {
        GroupOrderConvention::Pi0S => cd.pi0_s,
        GroupOrderConvention::Pi0Sbar => cd.pi0_sbar,
    };
    let group_order = 1u64 << rank;
    let coefficient = sigma_sbar0.clone() / BigInt::from(group_order);
    Ok(StableCoefficient { sigma_sbar0, group_order, coefficient })
}

/// One case of the `i = e` sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IeCase {
    pub group: String,
    pub masks: Vec<u64>,
    pub i: Rational,
    pub e: Rational,
}

/// Factor alphabet of the sweep. `SL(2)` is the same group as `Sp(2)` and is
/// listed under its own label.
pub fn sweep_alphabet() -> Vec<(&'static str, ClassicalFactor)> {
    vec![
        ("O(1)", ClassicalFactor::o(1)),
        ("O(2)", ClassicalFactor::o(2)),
        ("O(3)", ClassicalFactor::o(3)),
        ("Sp(2)", ClassicalFactor::sp(2)),
        ("SL(2)", ClassicalFactor::sp(2)),
        ("GL(1)", ClassicalFactor::gl(1)),
        ("GL(2)", ClassicalFactor::gl(2)),
    ]
}

/// Products of alphabet factors with total torus rank at most `max_rank`, at
/// most two `O(1)` factors and at most three orthogonal factors.
pub fn sweep_groups(max_rank: usize) -> Vec<GroupProduct> {
    let alphabet = sweep_alphabet();
    let mut out = Vec::new();
    fn rec(
        alphabet: &[(&'static str, ClassicalFactor)],
        start: usize,
        current: &mut Vec<usize>,
        max_rank: usize,
        out: &mut Vec<GroupProduct>,
    ) {
        let factors: Vec<ClassicalFactor> = current.iter().map(|&k| alphabet[k].1).collect();
        let labels: Vec<String> = current.iter().map(|&k| alphabet[k].0.to_string()).collect();
        out.push(GroupProduct::labelled(factors, labels));
        for k in start..alphabet.len() {
            current.push(k);
            let fs: Vec<ClassicalFactor> = current.iter().map(|&j| alphabet[j].1).collect();
            let rank: usize = fs.iter().map(|f| f.torus_rank()).sum();
            let o1 = fs.iter().filter(|f| **f == ClassicalFactor::o(1)).count();
            let os = fs.iter().filter(|f| f.kind == FactorKind::O).count();
            if rank <= max_rank && o1 <= 2 && os <= 3 {
                rec(alphabet, k, current, max_rank, out);
            }
            current.pop();
        }
    }
    rec(&alphabet, 0, &mut Vec::new(), max_rank, &mut out);
    out
}

/// Checks `i(S) = e(S)` on every nonempty union of components of every group
/// from [`sweep_groups`].
pub fn ie_sweep(solver: &SigmaSolver, max_rank: usize, mode: Mode) -> Result<Vec<IeCase>> {
    let mut jobs = Vec::new();
    for g in sweep_groups(max_rank) {
        let comps = g.components();
        for subset in 1u64..(1u64 << comps.len()) {
            jobs.push((g.clone(), subset));
        }
    }
    let results = par::map(mode, &jobs, |(g, subset)| -> Result<IeCase> {
        let comps = g.components();
        let chosen: Vec<Component> =
            (0..comps.len()).filter(|b| (subset >> b) & 1 == 1).map(|b| comps[b].clone()).collect();
        let masks = chosen.iter().map(|c| g.component_mask(c)).collect();
        let u = ComponentUnion::new(g.clone(), chosen)?;
        Ok(IeCase {
            group: g.labels.join(" x "),
            masks,
            i: i_of_s_with(&u, solver.settings(), Mode::Sequential)?,
            e: e_of_s(&u, solver)?,
        })
    });
    results.into_iter().collect()
}

/// `2^{-k}` as a rational.
pub fn two_pow_neg(k: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k as usize)
}
