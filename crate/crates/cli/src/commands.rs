use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Subcommand, ValueEnum};
use endoscopy_core::centralizers::{
    centralizer as centralizer_of, component_data, diagram_check, weyl_data, Component, GroupProduct, LeviSplit,
};
use endoscopy_core::forms::{
    endoscopy_enumerate, gl_local_invariants, global_feasible, globalize, padic_sweep, real_sweep, relevance,
    rho_spsi_check, u_local_invariants, AuxiliaryPlace, GlField, GlobalInnerFormSpec, GroupType, LocalInvariant,
    Place, PlaceKind, RealInertTable,
};
use endoscopy_core::lir::{verify_u31, LirReport, SUPPORTED_TWO_X};
use endoscopy_core::multiplicity::{
    component_is_elliptic, e_of_s, i_of_s, i_psi_table, stable_mult_coefficient, ComponentUnion, SigmaSolver,
};
use endoscopy_core::params::FormalParameter;
use endoscopy_core::Settings;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::report::{Fraction, Report, Status};
use crate::Outcome;

/// Reads JSON from a file, or inline when the argument starts with `{`.
pub fn load_json<T: DeserializeOwned>(arg: &str) -> Result<T> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg)).with_context(|| format!("reading {arg}"))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {arg}"))
}

fn load_param(arg: &str) -> Result<FormalParameter> {
    let p: FormalParameter = load_json(arg)?;
    p.validate()?;
    Ok(p)
}

fn canonical<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("inputs serialize")
}

#[derive(Debug, Args)]
pub struct CentralizerArgs {
    /// Parameter JSON (file path or inline object).
    #[arg(long)]
    pub param: String,
    /// Also list the Weyl data of every component.
    #[arg(long)]
    pub weyl: bool,
    /// Levi split, one count per constituent, e.g. `0,1`.
    #[arg(long, value_delimiter = ',')]
    pub diagram: Option<Vec<u32>>,
}

pub fn centralizer(a: &CentralizerArgs, settings: &Settings) -> Result<(Report, Outcome)> {
    let p = load_param(&a.param)?;
    let mut report =
        Report::new("centralizer", json!({"param": canonical(&p), "weyl": a.weyl, "diagram": a.diagram}));
    let g = centralizer_of(&p)?;
    let cd = component_data(&g, &p)?;
    let mut results = json!({
        "group": g.describe(),
        "factors": canonical(&g.factors),
        "class": canonical(&p.classify()?),
        "signed_partition": canonical(&p.signed_partition()?),
        "component_data": canonical(&cd),
        "components": g.components().len(),
    });
    if a.weyl {
        results["weyl"] = canonical(&weyl_data(&g, u128::from(settings.weyl_bound))?);
    }
    let mut outcome = Outcome::Success;
    if let Some(split) = &a.diagram {
        match diagram_check(&p, &LeviSplit { g: split.clone() }) {
            Ok(d) => results["diagram"] = canonical(&d),
            Err(endoscopy_core::Error::Diagram(arrow)) => {
                report.status = Status::Error(format!("diagram is not exact at {arrow}"));
                outcome = Outcome::VerificationFailed;
            }
            Err(e) => return Err(e.into()),
        }
    }
    report.results = results;
    Ok((report, outcome))
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    #[arg(long)]
    pub param: String,
    /// A component bitmask over the orthogonal factors, `all`, or `elliptic`.
    #[arg(long, default_value = "elliptic")]
    pub component: String,
}

fn elliptic_lift(g: &GroupProduct, settings: &Settings) -> Result<Component> {
    for c in g.components() {
        if component_is_elliptic(g, &c, u128::from(settings.weyl_bound))? {
            return Ok(c);
        }
    }
    bail!(endoscopy_core::Error::InvalidParameter(format!("{} has no elliptic component", g.describe())))
}

pub fn constants(a: &ConstantsArgs, settings: &Settings) -> Result<(Report, Outcome)> {
    let p = load_param(&a.param)?;
    let mut report = Report::new("constants", json!({"param": canonical(&p), "component": a.component}));
    let g = centralizer_of(&p)?;
    let union = match a.component.as_str() {
        "all" => ComponentUnion::new(g.clone(), g.components())?,
        "elliptic" => ComponentUnion::single(g.clone(), elliptic_lift(&g, settings)?)?,
        mask => {
            let m: u64 = mask.parse().map_err(|_| {
                anyhow!(endoscopy_core::Error::InvalidParameter(format!(
                    "component must be a mask, `all` or `elliptic`, got {mask}"
                )))
            })?;
            ComponentUnion::single(g.clone(), g.component_from_mask(m)?)?
        }
    };
    let solver = SigmaSolver::new(settings.clone());
    let i = i_of_s(&union, settings)?;
    report.exact("i", &i)?;
    let mut results = json!({
        "group": g.describe(),
        "components": union.components.iter().map(|c| g.component_mask(c)).collect::<Vec<_>>(),
        "i": Fraction::from_rational(&i)?,
    });
    match e_of_s(&union, &solver) {
        Ok(e) => {
            report.exact("e", &e)?;
            results["e"] = canonical(&Fraction::from_rational(&e)?);
        }
        Err(err) => results["e_unavailable"] = json!(err.to_string()),
    }
    let mut fibers = Vec::new();
    for f in i_psi_table(&p, settings)? {
        fibers.push(json!({"mask": f.mask, "elliptic": f.elliptic, "i": Fraction::from_rational(&f.i)?}));
    }
    results["fibers"] = Value::Array(fibers);
    if p.is_generic() {
        let sc = stable_mult_coefficient(&p, &solver, settings.group_order)?;
        report.exact("stable_coefficient", &sc.coefficient)?;
        results["stable_coefficient"] = json!({
            "sigma_sbar0": Fraction::from_rational(&sc.sigma_sbar0)?,
            "group_order": sc.group_order,
            "coefficient": Fraction::from_rational(&sc.coefficient)?,
        });
    }
    report.results = results;
    Ok((report, Outcome::Success))
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GroupArg {
    #[value(name = "U")]
    U,
    #[value(name = "GL")]
    GL,
}

impl From<GroupArg> for GroupType {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::U => GroupType::U,
            GroupArg::GL => GroupType::GL,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    PadicSplit,
    PadicInert,
    RealSplit,
    RealInert,
    Complex,
}

impl From<KindArg> for PlaceKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::PadicSplit => PlaceKind::PadicSplit,
            KindArg::PadicInert => PlaceKind::PadicInert,
            KindArg::RealSplit => PlaceKind::RealSplit,
            KindArg::RealInert => PlaceKind::RealInert,
            KindArg::Complex => PlaceKind::Complex,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AuxArg {
    RealInert,
    PadicInert,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FieldArg {
    Real,
    Padic,
}

#[derive(Debug, Subcommand)]
pub enum FormsCommand {
    /// Allowed local invariants at one place.
    Local {
        #[arg(long, value_enum, ignore_case = true)]
        group: GroupArg,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Whether a collection of local invariants comes from a global form.
    Feasible {
        #[arg(long)]
        spec: String,
    },
    /// A global form with the given local invariant at one place.
    Globalize {
        #[arg(long, value_enum, ignore_case = true)]
        group: GroupArg,
        #[arg(long)]
        n: u32,
        /// Place JSON, e.g. `{"id":"v","kind":"padic_inert","a":1}`.
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value = "real-inert")]
        aux: AuxArg,
    },
    /// Elliptic endoscopic data of U(N).
    Endoscopy {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        twisted: bool,
    },
    /// rho(s_psi) against a_psi for a linear parameter, or the exhaustive sweep.
    Signs {
        #[arg(long, required_unless_present = "sweep")]
        param: Option<String>,
        #[arg(long, value_enum, default_value = "padic")]
        field: FieldArg,
        /// Class of the inner form in Z/N.
        #[arg(long, default_value_t = 0)]
        k: i64,
        /// Degree of the division algebra (p-adic only); derived from `k` if omitted.
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        sweep: bool,
    },
    /// Whether a unitary parameter is relevant for the inner form with the given invariant.
    Relevance {
        #[arg(long)]
        param: String,
        /// Local invariant JSON, e.g. `{"kind":"padic_inert","a":1}`.
        #[arg(long)]
        invariant: String,
        /// Table of Levi transfers to real unitary groups.
        #[arg(long)]
        table: Option<String>,
    },
}

impl FormsCommand {
    pub fn name(&self) -> &'static str {
        match self {
            FormsCommand::Local { .. } => "forms local",
            FormsCommand::Feasible { .. } => "forms feasible",
            FormsCommand::Globalize { .. } => "forms globalize",
            FormsCommand::Endoscopy { .. } => "forms endoscopy",
            FormsCommand::Signs { .. } => "forms signs",
            FormsCommand::Relevance { .. } => "forms relevance",
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn forms(cmd: &FormsCommand, _settings: &Settings) -> Result<(Report, Outcome)> {
    let name = cmd.name();
    let mut outcome = Outcome::Success;
    let report = match cmd {
        FormsCommand::Local { group, n, kind } => {
            let mut r = Report::new(name, json!({"group": canonical(&GroupType::from(*group)), "N": n, "kind": canonical(&PlaceKind::from(*kind))}));
            r.results = match group {
                GroupArg::U => canonical(&u_local_invariants((*kind).into(), *n)?),
                GroupArg::GL => canonical(&gl_local_invariants((*kind).into(), *n)?),
            };
            r
        }
        FormsCommand::Feasible { spec } => {
            let spec: GlobalInnerFormSpec = load_json(spec)?;
            let mut r = Report::new(name, canonical(&spec));
            let f = global_feasible(&spec)?;
            if !f.feasible {
                r.status = Status::Infeasible;
            }
            r.results = canonical(&f);
            r
        }
        FormsCommand::Globalize { group, n, target, aux } => {
            let target: Place = load_json(target)?;
            let aux = match aux {
                AuxArg::RealInert => AuxiliaryPlace::RealInert,
                AuxArg::PadicInert => AuxiliaryPlace::PadicInert,
            };
            let mut r = Report::new(
                name,
                json!({"group": canonical(&GroupType::from(*group)), "N": n, "target": canonical(&target), "aux": canonical(&aux)}),
            );
            let spec = globalize(&target, *n, (*group).into(), aux)?;
            let check = global_feasible(&spec)?;
            if !check.feasible {
                r.status = Status::Error("globalized form is not feasible".into());
                outcome = Outcome::VerificationFailed;
            }
            r.results = json!({"spec": canonical(&spec), "feasible": check.feasible});
            r
        }
        FormsCommand::Endoscopy { n, twisted } => {
            let mut r = Report::new(name, json!({"N": n, "twisted": twisted}));
            r.results = canonical(&endoscopy_enumerate(*n, *twisted)?);
            r
        }
        FormsCommand::Signs { param, field, k, d, sweep } => {
            if *sweep {
                let mut r = Report::new(name, json!({"sweep": true}));
                let p = padic_sweep(4, 8);
                let q = real_sweep(8);
                if !(p.mismatches.is_empty() && q.mismatches.is_empty()) {
                    r.status = Status::Error("rho(s_psi) differs from a_psi".into());
                    outcome = Outcome::VerificationFailed;
                }
                r.results = json!({"padic": canonical(&p), "real": canonical(&q)});
                r
            } else {
                let p = load_param(param.as_deref().expect("clap enforces --param"))?;
                let n = i64::from(p.ambient_n);
                let field = match field {
                    FieldArg::Real => GlField::Real,
                    FieldArg::Padic => {
                        let kk = k.rem_euclid(n);
                        GlField::Padic { d: d.unwrap_or((n / gcd(kk, n)) as u32) }
                    }
                };
                let mut r = Report::new(name, json!({"param": canonical(&p), "field": canonical(&field), "k": k}));
                let c = rho_spsi_check(&p, field, *k)?;
                if c.relevant && !c.equal {
                    r.status = Status::Error("rho(s_psi) differs from a_psi".into());
                    outcome = Outcome::VerificationFailed;
                }
                r.results = canonical(&c);
                r
            }
        }
        FormsCommand::Relevance { param, invariant, table } => {
            let p = load_param(param)?;
            let inv: LocalInvariant = load_json(invariant)?;
            let table: Option<RealInertTable> = table.as_deref().map(load_json).transpose()?;
            let mut r = Report::new(
                name,
                json!({"param": canonical(&p), "invariant": canonical(&inv), "table": canonical(&table)}),
            );
            r.results = json!({"relevant": relevance(&p, &inv, table.as_ref())?});
            r
        }
    };
    Ok((report, outcome))
}

#[derive(Debug, Args)]
pub struct LirArgs {
    /// One of -2, -1, -1/2, 0, 1/2, 1, 2 (decimal or fraction); all seven if omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, default_value_t = 0.5)]
    pub v: f64,
    /// Also evaluate the integral as a two-variable quadrature.
    #[arg(long)]
    pub bruteforce: bool,
    /// Accepted for compatibility; output is always JSON.
    #[arg(long)]
    pub json: bool,
}

/// Parses a half-integer into `2x`.
pub fn parse_two_x(s: &str) -> Result<i32> {
    let s = s.trim();
    let two_x = if let Some((num, den)) = s.split_once('/') {
        let num: i32 = num.trim().parse()?;
        match den.trim() {
            "1" => 2 * num,
            "2" => num,
            _ => bail!(endoscopy_core::Error::InvalidParameter(format!("{s} is not a half-integer"))),
        }
    } else {
        let x: f64 = s.parse().with_context(|| format!("parsing x = {s}"))?;
        let t = 2.0 * x;
        if t.fract() != 0.0 || t.abs() > 1e6 {
            bail!(endoscopy_core::Error::InvalidParameter(format!("{s} is not a half-integer")));
        }
        t as i32
    };
    if !SUPPORTED_TWO_X.contains(&two_x) {
        bail!(endoscopy_core::Error::Unsupported(format!("x = {s} is not one of the supported cases")));
    }
    Ok(two_x)
}

fn complex(z: num_complex::Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn lir_result(r: &LirReport) -> Value {
    let mut v = json!({
        "two_x": r.two_x,
        "prefactor": complex(r.prefactor),
        "l_ratio_at_v": r.l_ratio_at_v,
        "integral_constant_measured": complex(r.integral_constant_measured),
        "integral_constant_expected": complex(r.integral_constant_expected),
        "scalar_limit": r.scalar_limit.re,
        "scalar_limit_im": r.scalar_limit.im,
        "backstop": complex(r.backstop),
        "pairing": r.pairing,
        "centralizer": r.centralizer,
        "centralizer_matches": r.centralizer_matches,
        "pass": r.pass,
    });
    if let (Some(b), Some(e)) = (&r.bruteforce, r.bruteforce_rel_error) {
        v["bruteforce_total"] = complex(b.total);
        v["bruteforce_rel_error"] = json!(e);
    }
    v
}

pub fn lir(a: &LirArgs, settings: &Settings) -> Result<(Report, Outcome)> {
    let cases: Vec<i32> = match &a.x {
        Some(x) => vec![parse_two_x(x)?],
        None => SUPPORTED_TWO_X.to_vec(),
    };
    let mut report = Report::new("lir-u31", json!({"two_x": cases, "v": a.v, "bruteforce": a.bruteforce}));
    let mut results = Vec::new();
    let mut all_pass = true;
    for &two_x in &cases {
        let r = verify_u31(two_x, a.v, a.bruteforce, settings)?;
        report.float(&format!("scalar_limit[two_x={two_x}]"), r.scalar_limit.re, settings.sign_tol);
        report.float(&format!("constant_rel_error[two_x={two_x}]"), r.constant_rel_error, 1e-8);
        all_pass &= r.pass;
        results.push(lir_result(&r));
    }
    report.results = if results.len() == 1 { results.pop().expect("one case") } else { json!({"cases": results}) };
    if all_pass {
        Ok((report, Outcome::Success))
    } else {
        report.status = Status::Error("scalar differs from the pairing".into());
        Ok((report, Outcome::VerificationFailed))
    }
}
