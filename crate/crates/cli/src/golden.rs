//! The golden suite behind `verify-all`.

use anyhow::Result;
use endoscopy_core::centralizers::{
    centralizer, component_data, diagram_check, weyl_data, ClassicalFactor, GroupProduct, LeviSplit, SNatural,
};
use endoscopy_core::forms::{
    a_psi, endoscopy_enumerate, gl_local_invariants, global_feasible, globalize,
    kottwitz_sign_gl, levi_transfers, relevance, rho_spsi_check, u_local_invariants, u_reduced, weyl_group_levi,
    AuxiliaryPlace, GlField, GlobalInnerFormSpec, GroupType, LeviShape, LocalInvariant, Place, PlaceKind,
};
use endoscopy_core::forms::inner::{gl_padic_division_class, ULocalSet};
use endoscopy_core::forms::levi::LeviWeylElement;
use endoscopy_core::lir::bruhat::{bruhat_decompose, top_form_pullback};
use endoscopy_core::lir::cases::{lir_case, lir_scalar, pi_a3_pairing, u31_parameter, LAMBDA};
use endoscopy_core::lir::integrals::integral_closed;
use endoscopy_core::lir::{verify_u31, QuadratureSpec};
use endoscopy_core::multiplicity::{e_of_s, i_of_s, i_psi_table, two_pow_neg, ComponentUnion, Rational, SigmaSolver};
use endoscopy_core::params::{
    arch_parity, kappa_of_simple, parity_of_twist, ArchCharacter, Constituent, FormalParameter, ParamClass,
    SimpleParameter,
};
use endoscopy_core::Settings;
use num::{BigInt, One};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::report::{Report, Status};
use crate::Outcome;

#[derive(Debug, Serialize)]
struct Check {
    module: &'static str,
    name: String,
    pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    detail: String,
}

#[derive(Default)]
struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn check(&mut self, module: &'static str, name: &str, pass: bool) {
        self.checks.push(Check { module, name: name.to_string(), pass, detail: String::new() });
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, module: &'static str, name: &str, got: T, want: T) {
        let pass = got == want;
        let detail = if pass { String::new() } else { format!("got {got:?}, expected {want:?}") };
        self.checks.push(Check { module, name: name.to_string(), pass, detail });
    }

    fn ok<T: PartialEq + std::fmt::Debug>(
        &mut self,
        module: &'static str,
        name: &str,
        got: endoscopy_core::Result<T>,
        want: T,
    ) {
        match got {
            Ok(v) => self.eq(module, name, v, want),
            Err(e) => self.checks.push(Check { module, name: name.to_string(), pass: false, detail: e.to_string() }),
        }
    }

    fn close(&mut self, module: &'static str, name: &str, got: Complex64, want: Complex64, tol: f64) {
        let err = (got - want).norm();
        let pass = err <= tol;
        let detail = if pass { String::new() } else { format!("got {got}, expected {want}, error {err:.2e}") };
        self.checks.push(Check { module, name: name.to_string(), pass, detail });
    }
}

fn sd(id: &str, parity: i8, mult: u32) -> Constituent {
    Constituent { param: SimpleParameter::new(id, 1, 1, true, Some(parity)), mult }
}

/// `kappa = 1` parameter of dimension-one constituents; `plus` lands in
/// `I+`, `minus` in `I-`.
fn unitary(plus: &[u32], minus: &[u32]) -> FormalParameter {
    let n: u32 = plus.iter().chain(minus).sum();
    let pp = if n % 2 == 1 { 1 } else { -1 };
    let mut cs: Vec<Constituent> = plus.iter().enumerate().map(|(k, &m)| sd(&format!("p{k}"), pp, m)).collect();
    cs.extend(minus.iter().enumerate().map(|(k, &m)| sd(&format!("m{k}"), -pp, m)));
    FormalParameter::unitary(1, n, cs).expect("golden parameter is valid")
}

fn linear(cs: &[(u32, u32, u32, u32)]) -> FormalParameter {
    let n = cs.iter().map(|&(f, r, m, k)| f * r * m * k).sum();
    let cs = cs
        .iter()
        .enumerate()
        .map(|(j, &(f, r, m, mult))| {
            let mut sp = SimpleParameter::new(&format!("c{j}"), f, m, false, None);
            sp.r = r;
            Constituent { param: sp, mult }
        })
        .collect();
    FormalParameter::linear(n, cs).expect("golden parameter is valid")
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn params(s: &mut Suite) {
    const M: &str = "params";
    s.eq(M, "parity_of_twist(+1, 2)", parity_of_twist(1, 2), -1);
    s.eq(M, "parity_of_twist(-1, 3)", parity_of_twist(-1, 3), -1);
    s.eq(M, "kappa_of_simple(1, 2, +1)", kappa_of_simple(1, 2, 1), 1);
    let half = ArchCharacter::new(1, -1).expect("valid");
    s.ok(M, "arch_parity(1/2, -1/2)", arch_parity(half), -1);
    s.ok(M, "arch_parity(1, -1)", arch_parity(ArchCharacter::new(2, -2).expect("valid")), 1);

    let p = u31_parameter(2).expect("valid");
    let sp = p.signed_partition().expect("valid");
    s.eq(M, "U(4) x in Z: |I+|, |I-|, |J|", (sp.i_plus.len(), sp.i_minus.len(), sp.j.len()), (2, 1, 0));
    let p = u31_parameter(1).expect("valid");
    let sp = p.signed_partition().expect("valid");
    s.eq(M, "U(4) x = 1/2: |I+|, |I-|", (sp.i_plus.len(), sp.i_minus.len()), (2, 0));

    s.ok(M, "classify discrete", unitary(&[1, 1, 1], &[]).classify(), ParamClass::Discrete);
    s.ok(M, "classify 2+1+1", unitary(&[2, 1, 1], &[]).classify(), ParamClass::EllipticNonDiscrete { q: 1 });
    s.ok(M, "classify 3+1", unitary(&[3, 1], &[]).classify(), ParamClass::Exc2);
}

fn centralizers(s: &mut Suite) -> Result<()> {
    const M: &str = "centralizers";
    let sorted = |p: &FormalParameter| centralizer(p).map(|g| g.sorted_factors());
    let mut want = vec![ClassicalFactor::o(2), ClassicalFactor::o(1), ClassicalFactor::o(1)];
    want.sort();
    s.ok(M, "S of 2+1+1", sorted(&unitary(&[2, 1, 1], &[])), want);
    for (two_x, label, factors) in [
        (2, "x in Z", vec![ClassicalFactor::sp(2), ClassicalFactor::o(1), ClassicalFactor::o(1)]),
        (1, "x = 1/2", vec![ClassicalFactor::o(3), ClassicalFactor::o(1)]),
        (-1, "x = -1/2", vec![ClassicalFactor::o(3), ClassicalFactor::o(1)]),
        (3, "x = 3/2", vec![ClassicalFactor::o(2), ClassicalFactor::o(1), ClassicalFactor::o(1)]),
    ] {
        let mut f = factors;
        f.sort();
        s.ok(M, &format!("U(3,1) table, {label}"), sorted(&u31_parameter(two_x)?), f);
    }
    let lin = linear(&[(1, 1, 1, 2), (1, 1, 1, 3)]);
    s.ok(M, "linear 2a+3b", centralizer(&lin).map(|g| g.factors), vec![ClassicalFactor::gl(2), ClassicalFactor::gl(3)]);

    let p = unitary(&[2, 1, 1], &[]);
    let cd = component_data(&centralizer(&p)?, &p)?;
    s.eq(M, "component ranks of 2+1+1", (cd.pi0_s, cd.pi0_sbar), (3, 2));
    let p = unitary(&[2, 2], &[]);
    let cd = component_data(&centralizer(&p)?, &p)?;
    s.eq(M, "component ranks of 2+2", (cd.pi0_s, cd.pi0_sbar), (2, 2));
    let lin = linear(&[(1, 1, 2, 2)]);
    let cd = component_data(&centralizer(&lin)?, &lin)?;
    s.eq(
        M,
        "linear N=4, 2 psi with n=2",
        cd.s_natural,
        SNatural::OneDimTorus { exponents: vec![1], center_power: 2 },
    );

    let data = weyl_data(&GroupProduct::new(vec![ClassicalFactor::sp(2)]), 16)?;
    let w: Vec<_> = data.iter().filter(|d| d.regular).map(|d| (d.sgn0, d.det_w_minus_1.abs())).collect();
    s.eq(M, "Sp(2) regular element: sgn0, |det(w-1)|", w, vec![(-1, 2)]);

    for (name, p, split) in [("exc1", unitary(&[1], &[2]), vec![0, 1]), ("exc2", unitary(&[3, 1], &[]), vec![1, 0])] {
        match diagram_check(&p, &LeviSplit { g: split }) {
            Ok(d) => s.eq(M, &format!("{name} diagram: |W0|, |W|"), (d.w0, d.w), (2, 2)),
            Err(e) => s.ok::<()>(M, &format!("{name} diagram"), Err(e), ()),
        }
    }
    Ok(())
}

fn multiplicity(s: &mut Suite, settings: &Settings) -> Result<()> {
    const M: &str = "multiplicity";
    for q in 1..=3usize {
        let mut plus = vec![2; q];
        plus.push(1);
        let table = i_psi_table(&unitary(&plus, &[]), settings)?;
        let got = table.iter().filter(|f| f.elliptic).map(|f| f.i.clone()).next();
        s.eq(M, &format!("i on the elliptic fiber, q = {q}"), got, Some(two_pow_neg(q as u32)));
    }
    for (name, p) in [("exc1", unitary(&[1], &[2])), ("exc2", unitary(&[3, 1], &[]))] {
        let values: Vec<Rational> = i_psi_table(&p, settings)?.into_iter().map(|f| f.i).collect();
        s.check(M, &format!("i = -1/4 on every {name} fiber"), !values.is_empty() && values.iter().all(|v| *v == rat(-1, 4)));
    }
    let solver = SigmaSolver::new(settings.clone());
    let p = unitary(&[1, 1, 1], &[]);
    let g = centralizer(&p)?;
    let mut all_one = true;
    for c in g.components() {
        let u = ComponentUnion::single(g.clone(), c)?;
        all_one &= i_of_s(&u, settings)?.is_one() && e_of_s(&u, &solver)?.is_one();
    }
    s.check(M, "discrete: i = e = 1 on every component", all_one);
    Ok(())
}

fn forms(s: &mut Suite) -> Result<()> {
    const M: &str = "forms";
    s.ok(M, "U(4) real inert (3,1) reduces to 1", u_reduced("v", &LocalInvariant::RealInert { p: 3, q: 1 }, 4), 1);
    s.ok(M, "U(4) real inert (2,2) reduces to 0", u_reduced("v", &LocalInvariant::RealInert { p: 2, q: 2 }, 4), 0);
    s.ok(M, "U(3) p-adic inert set", u_local_invariants(PlaceKind::PadicInert, 3), ULocalSet::PadicInert { delta: 1 });
    s.ok(M, "GL(4) real step", gl_local_invariants(PlaceKind::RealSplit, 4).map(|x| x.step), 2);
    s.ok(M, "GL(3) real step", gl_local_invariants(PlaceKind::RealSplit, 3).map(|x| x.step), 3);
    s.ok(M, "GL(4) invariant 1/2 class", gl_padic_division_class(4, 1, 2), 2);

    let spec = |places: Vec<(&str, LocalInvariant)>| GlobalInnerFormSpec {
        group: GroupType::U,
        n: 4,
        places: places.into_iter().map(|(id, invariant)| Place { id: id.into(), invariant }).collect(),
    };
    let one = spec(vec![("u", LocalInvariant::PadicInert { a: 1 }), ("w", LocalInvariant::PadicInert { a: 0 })]);
    s.ok(M, "U(4) one place with a = 1", global_feasible(&one).map(|f| (f.feasible, f.sum)), (false, 1));
    let two = spec(vec![("u", LocalInvariant::PadicInert { a: 1 }), ("w", LocalInvariant::PadicInert { a: 1 })]);
    s.ok(M, "U(4) two places with a = 1", global_feasible(&two).map(|f| f.feasible), true);

    let target = Place { id: "u".into(), invariant: LocalInvariant::PadicInert { a: 1 } };
    let g = globalize(&target, 4, GroupType::U, AuxiliaryPlace::RealInert)?;
    s.eq(M, "globalize U(4) a = 1", g.places.get(1).map(|p| p.invariant), Some(LocalInvariant::RealInert { p: 1, q: 3 }));
    let g = globalize(&target, 3, GroupType::U, AuxiliaryPlace::RealInert)?;
    s.eq(M, "globalize U(3)", g.places.len(), 1);

    let gl_inv = LocalInvariant::PadicSplit { x: 2 };
    s.ok(M, "GL(4) degree 2, shape (2,2)", levi_transfers(&LeviShape::linear(vec![2, 2]), &gl_inv, GroupType::GL, 4, None), true);
    s.ok(M, "GL(4) degree 2, shape (3,1)", levi_transfers(&LeviShape::linear(vec![3, 1]), &gl_inv, GroupType::GL, 4, None), false);
    let u_inv = LocalInvariant::PadicInert { a: 1 };
    s.ok(M, "U(4) non-quasi-split, N- = 2", levi_transfers(&LeviShape::unitary(2, vec![1]), &u_inv, GroupType::U, 4, None), true);
    s.ok(M, "U(4) non-quasi-split, linear", levi_transfers(&LeviShape::unitary(0, vec![2]), &u_inv, GroupType::U, 4, None), false);
    s.ok(M, "2a + 2b on non-quasi-split U(4)", relevance(&unitary(&[2, 2], &[]), &u_inv, None), false);

    let e = endoscopy_enumerate(4, false)?;
    s.eq(
        M,
        "U(4) endoscopic data",
        e.iter().map(|t| (t.n1, t.n2, t.out_order)).collect::<Vec<_>>(),
        vec![(4, 0, 1), (3, 1, 1), (2, 2, 2)],
    );
    s.ok(M, "e(G) for N = 4, d = 2", kottwitz_sign_gl(4, 2), 1);
    s.ok(M, "e(G) for N = 4, d = 4", kottwitz_sign_gl(4, 4), -1);

    s.ok(M, "a_psi real f=1 m=2", a_psi(&linear(&[(1, 1, 2, 1)]), GlField::Real), -1);
    s.ok(M, "a_psi p-adic d=2 f=1 r=1 m=2", a_psi(&linear(&[(1, 1, 2, 1)]), GlField::Padic { d: 2 }), -1);
    s.ok(M, "a_psi p-adic d=3 f=1 m=2", a_psi(&linear(&[(1, 1, 2, 1)]), GlField::Padic { d: 3 }), 1);
    let c = rho_spsi_check(&linear(&[(1, 1, 2, 1)]), GlField::Real, 1)?;
    s.eq(M, "quaternionic GL(1,H), m = 2", (c.rho, c.a), (-1, -1));

    let w = weyl_group_levi(&LeviShape::unitary(1, vec![2, 2, 1]))?;
    s.eq(M, "W(M) for blocks (2,2,1)", w.order, 16);
    let w3 = weyl_group_levi(&LeviShape::unitary(0, vec![3]))?;
    let e1 = LeviWeylElement { flips: vec![true], perm: vec![0] };
    s.eq(M, "t_{e_1,-} for N_1 = 3", w3.t_minus(&e1), -1);
    Ok(())
}

fn lir(s: &mut Suite, settings: &Settings) -> Result<()> {
    const M: &str = "lir";
    let spec = QuadratureSpec::new(settings.quad_abs_tol, settings.quad_rel_tol);
    let c = |re: f64, im: f64| Complex64::new(re, im);
    s.close(M, "prefactor x = 0", lir_case(0)?.prefactor, c(-1.0, 0.0), 0.0);
    s.close(M, "prefactor x = -1/2", lir_case(-1)?.prefactor, c(0.0, -1.0), 0.0);
    s.eq(M, "lambda", LAMBDA, -1.0);
    for (two_x, want) in [(0, c(4.0, 0.0)), (-4, c(-4.0 / 15.0, 0.0)), (1, c(0.0, 1.0))] {
        let got = integral_closed(two_x, 0.5, &spec)?.constant;
        s.close(M, &format!("integral constant 2x = {two_x}"), got, want, 1e-8);
    }
    for (two_x, want) in [(1, 1.0), (0, -1.0), (-4, -1.0)] {
        s.close(M, &format!("scalar limit 2x = {two_x}"), lir_scalar(two_x, &spec)?.value, c(want, 0.0), settings.sign_tol);
    }
    for (two_x, want) in [(2, -1), (1, 1), (-1, -1)] {
        s.ok(M, &format!("pairing 2x = {two_x}"), pi_a3_pairing(two_x).map(|p| p.pairing), want);
    }
    for two_x in [2, 1] {
        let r = verify_u31(two_x, 0.5, false, settings)?;
        s.check(M, &format!("relation holds at 2x = {two_x}"), r.pass);
    }
    let r = verify_u31(1, 0.5, false, settings)?;
    s.check(M, "centralizer at x = 1/2", r.centralizer_matches);
    s.close(M, "top form", top_form_pullback(), c(-4.0, 0.0), 1e-12);
    let p = bruhat_decompose(c(0.0, 0.0), c(0.0, 0.0), 1.0)?;
    s.close(M, "base point a", p.a, c(-1.0, 0.0), 1e-15);
    s.eq(M, "base point Y", (p.y1, p.y2, p.y3), (c(0.0, 0.0), c(0.0, 0.0), 1.0));
    Ok(())
}

pub fn verify_all(settings: &Settings) -> Result<(Report, Outcome)> {
    let mut suite = Suite::default();
    params(&mut suite);
    centralizers(&mut suite)?;
    multiplicity(&mut suite, settings)?;
    forms(&mut suite)?;
    lir(&mut suite, settings)?;
    let failed = suite.checks.iter().filter(|c| !c.pass).count();
    let mut report = Report::new("verify-all", json!({}));
    report.results = json!({
        "total": suite.checks.len(),
        "passed": suite.checks.len() - failed,
        "failed": failed,
        "checks": suite.checks,
    });
    if failed == 0 {
        Ok((report, Outcome::Success))
    } else {
        report.status = Status::Error(format!("{failed} golden checks failed"));
        Ok((report, Outcome::VerificationFailed))
    }
}
