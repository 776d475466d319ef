use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupType {
    GL,
    U,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaceKind {
    PadicSplit,
    PadicInert,
    RealSplit,
    RealInert,
    Complex,
}

impl PlaceKind {
    pub fn is_inert(self) -> bool {
        matches!(self, PlaceKind::PadicInert | PlaceKind::RealInert)
    }
}

/// Local invariant in normal form. Split places carry a `GL`-type integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocalInvariant {
    PadicSplit { x: i64 },
    PadicInert { a: u32 },
    RealSplit { x: i64 },
    RealInert { p: u32, q: u32 },
    Complex { x: i64 },
}

impl LocalInvariant {
    pub fn kind(&self) -> PlaceKind {
        match self {
            LocalInvariant::PadicSplit { .. } => PlaceKind::PadicSplit,
            LocalInvariant::PadicInert { .. } => PlaceKind::PadicInert,
            LocalInvariant::RealSplit { .. } => PlaceKind::RealSplit,
            LocalInvariant::RealInert { .. } => PlaceKind::RealInert,
            LocalInvariant::Complex { .. } => PlaceKind::Complex,
        }
    }

    /// The trivial invariant at a place of the given kind.
    pub fn trivial(kind: PlaceKind, n: u32) -> LocalInvariant {
        match kind {
            PlaceKind::PadicSplit => LocalInvariant::PadicSplit { x: 0 },
            PlaceKind::PadicInert => LocalInvariant::PadicInert { a: 0 },
            PlaceKind::RealSplit => LocalInvariant::RealSplit { x: 0 },
            PlaceKind::RealInert => LocalInvariant::RealInert { p: n - n / 2, q: n / 2 },
            PlaceKind::Complex => LocalInvariant::Complex { x: 0 },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Place {
    pub id: String,
    #[serde(flatten)]
    pub invariant: LocalInvariant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalInnerFormSpec {
    pub group: GroupType,
    #[serde(rename = "N")]
    pub n: u32,
    pub places: Vec<Place>,
}

/// Allowed `GL` invariants at one place: the multiples of `step`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlLocalSet {
    pub kind: PlaceKind,
    pub step: i64,
    pub description: String,
}

pub fn gl_local_invariants(kind: PlaceKind, n: u32) -> Result<GlLocalSet> {
    let n = i64::from(n);
    let (step, description) = match kind {
        PlaceKind::PadicSplit | PlaceKind::PadicInert => (1, "all integers; x mod N is the invariant of D".to_string()),
        PlaceKind::RealSplit | PlaceKind::RealInert if n % 2 == 0 => {
            (n / 2, "(N/2)Z; x = N/2 mod N is the quaternionic form".to_string())
        }
        PlaceKind::RealSplit | PlaceKind::RealInert => (n, "NZ; only the split form".to_string()),
        PlaceKind::Complex => (n, "NZ; only the split form".to_string()),
    };
    Ok(GlLocalSet { kind, step, description })
}

/// `x = r N / s` for a central division algebra of invariant `r/s` and size `N/s`.
pub fn gl_padic_division_class(n: u32, r: i64, s: u32) -> Result<i64> {
    if s == 0 || !n.is_multiple_of(s) {
        return Err(Error::InvalidParameter(format!("degree {s} does not divide {n}")));
    }
    Ok((r * i64::from(n / s)).rem_euclid(i64::from(n)))
}

/// Degree of the division algebra attached to a `GL` invariant.
pub fn gl_degree(inv: &LocalInvariant, n: u32) -> Result<u32> {
    let nn = i64::from(n);
    match *inv {
        LocalInvariant::PadicSplit { x } => Ok((nn / gcd(x.rem_euclid(nn), nn)) as u32),
        LocalInvariant::RealSplit { x } => Ok(if x.rem_euclid(nn) == 0 { 1 } else { 2 }),
        LocalInvariant::Complex { .. } => Ok(1),
        _ => Err(Error::InvalidParameter("inert invariant for a linear group".into())),
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealPair {
    pub p: u32,
    pub q: u32,
    pub a: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ULocalSet {
    /// `Z/2` mapping onto `Z/delta`.
    PadicInert { delta: u32 },
    RealInert { pairs: Vec<RealPair> },
}

pub fn u_local_invariants(kind: PlaceKind, n: u32) -> Result<ULocalSet> {
    match kind {
        PlaceKind::PadicInert => Ok(ULocalSet::PadicInert { delta: if n.is_multiple_of(2) { 2 } else { 1 } }),
        PlaceKind::RealInert => Ok(ULocalSet::RealInert {
            pairs: (0..=n).map(|q| RealPair { p: n - q, q, a: (n / 2 + q) % 2 }).collect(),
        }),
        other => Err(Error::Unsupported(format!("{other:?} is split; use the GL rules"))),
    }
}

fn invalid(id: &str, reason: String) -> Error {
    Error::InvalidLocal { place: id.to_string(), reason }
}

fn check_gl(id: &str, inv: &LocalInvariant, n: u32) -> Result<i64> {
    let (kind, x) = match *inv {
        LocalInvariant::PadicSplit { x } | LocalInvariant::RealSplit { x } | LocalInvariant::Complex { x } => {
            (inv.kind(), x)
        }
        _ => return Err(invalid(id, "inert invariant for a linear group".into())),
    };
    let set = gl_local_invariants(kind, n)?;
    if x % set.step != 0 {
        return Err(invalid(id, format!("x = {x} is not a multiple of {}", set.step)));
    }
    Ok(x)
}

/// Image of a unitary local invariant in `Z/2`.
pub fn u_reduced(id: &str, inv: &LocalInvariant, n: u32) -> Result<u32> {
    match *inv {
        LocalInvariant::PadicInert { a } => {
            if a > 1 {
                return Err(invalid(id, format!("a = {a} is not in {{0, 1}}")));
            }
            Ok(a)
        }
        LocalInvariant::RealInert { p, q } => {
            if p + q != n {
                return Err(invalid(id, format!("p + q = {} differs from N = {n}", p + q)));
            }
            Ok((n / 2 + q) % 2)
        }
        _ => Ok(check_gl(id, inv, n)?.rem_euclid(2) as u32),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Feasibility {
    pub feasible: bool,
    /// The sum that has to vanish (in `Z` for `GL`, in `Z/2` for `U` with `N` even).
    pub sum: i64,
    pub constrained: bool,
}

pub fn global_feasible(spec: &GlobalInnerFormSpec) -> Result<Feasibility> {
    if spec.n == 0 {
        return Err(Error::InvalidParameter("N must be positive".into()));
    }
    let mut ids = std::collections::BTreeSet::new();
    for pl in &spec.places {
        if !ids.insert(pl.id.as_str()) {
            return Err(invalid(&pl.id, "place listed twice".into()));
        }
    }
    match spec.group {
        GroupType::GL => {
            let mut sum = 0i64;
            for pl in &spec.places {
                sum = sum.checked_add(check_gl(&pl.id, &pl.invariant, spec.n)?).ok_or(Error::Overflow("sum of x_v"))?;
            }
            Ok(Feasibility { feasible: sum == 0, sum, constrained: true })
        }
        GroupType::U => {
            let mut sum = 0u32;
            for pl in &spec.places {
                sum ^= u_reduced(&pl.id, &pl.invariant, spec.n)?;
            }
            if spec.n % 2 == 1 {
                Ok(Feasibility { feasible: true, sum: i64::from(sum), constrained: false })
            } else {
                Ok(Feasibility { feasible: sum == 0, sum: i64::from(sum), constrained: true })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuxiliaryPlace {
    /// A real place inert in `E`, carrying `U(N/2, N/2)` or `U(N/2 - 1, N/2 + 1)`.
    #[default]
    RealInert,
    PadicInert,
}

fn fresh_id(taken: &str) -> String {
    let mut k = 2;
    loop {
        let id = format!("v{k}");
        if id != taken {
            return id;
        }
        k += 1;
    }
}

/// A global spec agreeing with `target` at its place and quasi-split outside
/// at most one auxiliary place.
pub fn globalize(target: &Place, n: u32, group: GroupType, aux: AuxiliaryPlace) -> Result<GlobalInnerFormSpec> {
    let mut places = vec![target.clone()];
    let id = fresh_id(&target.id);
    match group {
        GroupType::GL => {
            let x = check_gl(&target.id, &target.invariant, n)?;
            if x != 0 {
                places.push(Place { id, invariant: LocalInvariant::PadicSplit { x: -x } });
            }
        }
        GroupType::U => {
            let a = u_reduced(&target.id, &target.invariant, n)?;
            if n.is_multiple_of(2) {
                let invariant = match aux {
                    AuxiliaryPlace::RealInert if a == 0 => LocalInvariant::RealInert { p: n / 2, q: n / 2 },
                    AuxiliaryPlace::RealInert => LocalInvariant::RealInert { p: n / 2 - 1, q: n / 2 + 1 },
                    AuxiliaryPlace::PadicInert => LocalInvariant::PadicInert { a },
                };
                places.push(Place { id, invariant });
            }
        }
    }
    Ok(GlobalInnerFormSpec { group, n, places })
}
