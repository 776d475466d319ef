use serde::{Deserialize, Serialize};

use super::{ClassicalFactor, Component, FactorKind, GroupProduct};
use crate::error::{Error, Result};
use crate::par::{self, Mode};

/// A signed permutation `e_j -> signs[j] * e_{perm[j]}` on the factor's
/// cocharacter lattice, together with the component it comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorWeylElement {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
    pub component: u8,
}

impl FactorWeylElement {
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (j, &x) in v.iter().enumerate() {
            out[self.perm[j]] += self.signs[j] as i64 * x;
        }
        out
    }

    pub fn flips(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylDatum {
    pub matrix: Vec<Vec<i64>>,
    pub component: Component,
    pub det_w_minus_1: i64,
    pub regular: bool,
    pub sgn0: i8,
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(k), &mut vec![false; k], &mut out);
    out
}

fn sign_vectors(k: usize) -> Vec<Vec<i8>> {
    (0..(1u32 << k))
        .map(|m| (0..k).map(|j| if (m >> j) & 1 == 1 { -1 } else { 1 }).collect())
        .collect()
}

fn signed_perms(k: usize, parity: Option<usize>, component: u8) -> Vec<FactorWeylElement> {
    let mut out = Vec::new();
    for p in permutations(k) {
        for s in sign_vectors(k) {
            let flips = s.iter().filter(|&&x| x < 0).count();
            if parity.is_none_or(|want| flips % 2 == want) {
                out.push(FactorWeylElement { perm: p.clone(), signs: s, component });
            }
        }
    }
    out
}

/// `N(T)/T` of one factor, listed component by component.
pub fn factor_weyl(f: &ClassicalFactor) -> Vec<FactorWeylElement> {
    let n = f.rank_param as usize;
    let k = f.torus_rank();
    match f.kind {
        FactorKind::Sp => signed_perms(k, None, 0),
        FactorKind::SO if n % 2 == 1 => signed_perms(k, None, 0),
        FactorKind::SO => signed_perms(k, Some(0), 0),
        FactorKind::O if n % 2 == 1 => {
            // -1 is central and sits in the second component, acting trivially on T.
            let mut v = signed_perms(k, None, 0);
            v.extend(signed_perms(k, None, 1));
            v
        }
        FactorKind::O => {
            let mut v = signed_perms(k, Some(0), 0);
            v.extend(signed_perms(k, Some(1), 1));
            v
        }
        FactorKind::GL => permutations(k)
            .into_iter()
            .map(|p| FactorWeylElement { perm: p, signs: vec![1; k], component: 0 })
            .collect(),
        FactorKind::Torus => {
            vec![FactorWeylElement { perm: (0..k).collect(), signs: vec![1; k], component: 0 }]
        }
    }
}

fn unit(k: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; k];
    v[i] = c;
    v
}

/// Positive roots of the identity component in the standard lexicographic order.
pub fn positive_roots(f: &ClassicalFactor) -> Vec<Vec<i64>> {
    let k = f.torus_rank();
    let n = f.rank_param as usize;
    let mut roots = Vec::new();
    let pairs = |roots: &mut Vec<Vec<i64>>, plus: bool| {
        for i in 0..k {
            for j in i + 1..k {
                let mut a = unit(k, i, 1);
                a[j] = -1;
                roots.push(a);
                if plus {
                    let mut b = unit(k, i, 1);
                    b[j] = 1;
                    roots.push(b);
                }
            }
        }
    };
    match f.kind {
        FactorKind::GL => pairs(&mut roots, false),
        FactorKind::Torus => {}
        FactorKind::Sp => {
            pairs(&mut roots, true);
            roots.extend((0..k).map(|i| unit(k, i, 2)));
        }
        FactorKind::O | FactorKind::SO => {
            pairs(&mut roots, true);
            if n % 2 == 1 {
                roots.extend((0..k).map(|i| unit(k, i, 1)));
            }
        }
    }
    roots
}

fn is_positive(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// Fraction-free Gaussian elimination; aborts on overflow instead of wrapping.
pub fn determinant(m: &[Vec<i64>]) -> Result<i64> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| a[i][k].checked_mul(a[k][j]).and_then(|y| x.checked_sub(y)))
                    .ok_or(Error::Overflow("det(w-1)"))?;
                a[i][j] = t / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| Error::Overflow("det(w-1)"))
}

struct FactorTable {
    elements: Vec<FactorWeylElement>,
    roots: Vec<Vec<i64>>,
    offset: usize,
    rank: usize,
}

fn tables(g: &GroupProduct) -> Vec<FactorTable> {
    let mut offset = 0;
    g.factors
        .iter()
        .map(|f| {
            let t = FactorTable { elements: factor_weyl(f), roots: positive_roots(f), offset, rank: f.torus_rank() };
            offset += t.rank;
            t
        })
        .collect()
}

pub fn weyl_order(g: &GroupProduct) -> u128 {
    g.factors.iter().map(|f| factor_weyl(f).len() as u128).product()
}

/// Enumerates `W(S)` for every component; see [`weyl_data_with`].
pub fn weyl_data(g: &GroupProduct, bound: u128) -> Result<Vec<WeylDatum>> {
    weyl_data_with(g, bound, Mode::default(), |_| true)
}

/// Enumerates the Weyl elements of the components accepted by `keep`, in
/// mixed-radix order over the factors.
pub fn weyl_data_with<F>(g: &GroupProduct, bound: u128, mode: Mode, keep: F) -> Result<Vec<WeylDatum>>
where
    F: Fn(&Component) -> bool + Sync + Send,
{
    let order = weyl_order(g);
    if order > bound {
        return Err(Error::EnumerationBound { order, bound });
    }
    let tabs = tables(g);
    let t = g.torus_rank();
    let results = par::map_range(mode, order as usize, |mut idx| {
        let mut picks = Vec::with_capacity(tabs.len());
        for tab in &tabs {
            let len = tab.elements.len();
            picks.push(&tab.elements[idx % len]);
            idx /= len;
        }
        let component: Component = picks.iter().map(|e| e.component).collect();
        if !keep(&component) {
            return Ok(None);
        }
        let mut matrix = vec![vec![0i64; t]; t];
        let mut negatives = 0usize;
        for (tab, e) in tabs.iter().zip(&picks) {
            for j in 0..tab.rank {
                matrix[tab.offset + e.perm[j]][tab.offset + j] = e.signs[j] as i64;
            }
            negatives += tab.roots.iter().filter(|r| !is_positive(&e.apply(r))).count();
        }
        let shifted: Vec<Vec<i64>> = (0..t)
            .map(|i| (0..t).map(|j| matrix[i][j] - if i == j { 1 } else { 0 }).collect())
            .collect();
        let det = determinant(&shifted)?;
        Ok(Some(WeylDatum {
            matrix,
            component,
            det_w_minus_1: det,
            regular: det != 0,
            sgn0: if negatives.is_multiple_of(2) { 1 } else { -1 },
        }))
    });
    let mut out = Vec::new();
    for r in results {
        if let Some(d) = r? {
            out.push(d);
        }
    }
    Ok(out)
}
