//! Acceptance gate. Each criterion prints one PASS/FAIL line; the test fails
//! if any criterion fails.

use std::time::{Duration, Instant};

use endoscopy_core::centralizers::{centralizer, component_data, diagram_check, LeviSplit};
use endoscopy_core::forms::{
    gl_local_invariants, global_feasible, globalize, padic_sweep, real_sweep, AuxiliaryPlace, GlobalInnerFormSpec,
    GroupType, LocalInvariant, Place, PlaceKind,
};
use endoscopy_core::lir::bruhat::{bruhat_decompose, matrix_oracle};
use endoscopy_core::lir::cases::{expected_centralizer, lir_scalar, pi_a3_pairing, u31_parameter};
use endoscopy_core::lir::integrals::{integral_bruteforce, integral_closed};
use endoscopy_core::lir::{QuadratureSpec, SUPPORTED_TWO_X};
use endoscopy_core::multiplicity::{
    e_of_s, i_of_s, i_psi_table, ie_sweep, two_pow_neg, ComponentUnion, Rational, SigmaSolver,
};
use endoscopy_core::par::Mode;
use endoscopy_core::params::{Constituent, FormalParameter, SimpleParameter};
use endoscopy_core::settings::Settings;
use num::{BigInt, One};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const C1_BUDGET: Duration = Duration::from_secs(1);
const C2_BUDGET: Duration = Duration::from_secs(30);
const C4_BUDGET: Duration = Duration::from_secs(5);
const C6_BUDGET: Duration = Duration::from_secs(300);

const C6_CONSTANT_REL: f64 = 1e-8;
const C6_BRUTEFORCE_REL: f64 = 1e-6;
const C6_SCALAR_ABS: f64 = 1e-6;
const C6_BACKSTOP_ABS: f64 = 1e-4;
const C7_BRUHAT: f64 = 1e-12;
const C7_ORACLE: f64 = 1e-10;
const C7_POINTS: usize = 10_000;
const C5_TARGETS: usize = 1_000;

fn sd(id: &str, parity: i8, mult: u32) -> Constituent {
    Constituent { param: SimpleParameter::new(id, 1, 1, true, Some(parity)), mult }
}

/// Dimension-one constituents with multiplicities `plus` landing in `I+` and
/// `minus` landing in `I-`, for `kappa = 1`.
fn unitary(plus: &[u32], minus: &[u32]) -> FormalParameter {
    let n: u32 = plus.iter().chain(minus).sum();
    let p_plus = if n % 2 == 1 { 1 } else { -1 };
    let mut cs = Vec::new();
    for (k, &m) in plus.iter().enumerate() {
        cs.push(sd(&format!("p{k}"), p_plus, m));
    }
    for (k, &m) in minus.iter().enumerate() {
        cs.push(sd(&format!("m{k}"), -p_plus, m));
    }
    FormalParameter::unitary(1, n, cs).unwrap()
}

fn exc1() -> FormalParameter {
    unitary(&[1], &[2])
}

fn exc2() -> FormalParameter {
    unitary(&[3, 1], &[])
}

fn elliptic(q: usize) -> FormalParameter {
    let mut plus = vec![2; q];
    plus.push(1);
    unitary(&plus, &[])
}

fn discrete() -> FormalParameter {
    unitary(&[1, 1, 1], &[])
}

fn report(n: u32, name: &str, ok: bool, detail: String) -> bool {
    let line = format!("criterion {n} {}: {name}: {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::Write::write_all(&mut std::io::stdout(), line.as_bytes());
    ok
}

fn elliptic_fiber_i(p: &FormalParameter, settings: &Settings) -> Option<Rational> {
    let table = i_psi_table(p, settings).ok()?;
    table.into_iter().filter(|f| f.elliptic).min_by_key(|f| f.mask).map(|f| f.i)
}

fn criterion_1() -> bool {
    let settings = Settings::default();
    let solver = SigmaSolver::new(settings.clone());
    let start = Instant::now();
    let mut fails = Vec::new();
    for q in 1..=3 {
        let got = elliptic_fiber_i(&elliptic(q), &settings);
        if got != Some(two_pow_neg(q as u32)) {
            fails.push(format!("q={q}: {got:?}"));
        }
    }
    let quarter = -Rational::new(BigInt::one(), BigInt::from(4));
    for (name, p) in [("exc1", exc1()), ("exc2", exc2())] {
        let table = i_psi_table(&p, &settings).unwrap();
        if table.is_empty() || table.iter().any(|f| f.i != quarter) {
            fails.push(format!("{name}: {:?}", table.iter().map(|f| f.i.to_string()).collect::<Vec<_>>()));
        }
    }
    let d = discrete();
    let g = centralizer(&d).unwrap();
    for c in g.components() {
        let u = ComponentUnion::single(g.clone(), c.clone()).unwrap();
        let (i, e) = (i_of_s(&u, &settings).unwrap(), e_of_s(&u, &solver).unwrap());
        if !(i.is_one() && e.is_one()) {
            fails.push(format!("discrete {c:?}: i={i} e={e}"));
        }
    }
    let t = start.elapsed();
    report(1, "golden constants", fails.is_empty() && t < C1_BUDGET, format!("{fails:?} in {t:?}"))
}

fn criterion_2() -> bool {
    let solver = SigmaSolver::new(Settings::default());
    let start = Instant::now();
    let cases = ie_sweep(&solver, 3, Mode::default()).unwrap();
    let t = start.elapsed();
    let bad: Vec<_> = cases.iter().filter(|c| c.i != c.e).map(|c| format!("{} {:?}", c.group, c.masks)).collect();
    let ok = bad.is_empty() && cases.len() >= 200 && t < C2_BUDGET;
    report(2, "i = e sweep", ok, format!("{} unions, {} mismatches {:?}, {t:?}", cases.len(), bad.len(), bad.first()))
}

/// Rank of `(Z/2)^n / <v>` by listing the span of `v`.
fn quotient_rank_f2(v: &[u8]) -> u32 {
    let n = v.len() as u32;
    let span: std::collections::BTreeSet<Vec<u8>> = [vec![0; v.len()], v.to_vec()].into_iter().collect();
    let size = (1u64 << n) / span.len() as u64;
    size.trailing_zeros()
}

fn criterion_3() -> bool {
    let mut fails = Vec::new();
    for &two_x in &[-6, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5] {
        let g = centralizer(&u31_parameter(two_x).unwrap()).unwrap();
        if g.sorted_factors() != expected_centralizer(two_x) {
            fails.push(format!("2x={two_x}: {}", g.describe()));
        }
    }
    let mut checked = 0;
    let mut literal_disagrees = 0;
    for r in 1..=4usize {
        let mut ells = vec![1u32; r];
        loop {
            for minus in [vec![], vec![2u32]] {
                let p = unitary(&ells, &minus);
                let g = centralizer(&p).unwrap();
                let cd = component_data(&g, &p).unwrap();
                let image: Vec<u8> = ells.iter().map(|l| (l % 2) as u8).collect();
                checked += 1;
                // the printed case formula assigns |I+| - 1 to the all-even case
                let literal = if ells.iter().all(|l| l % 2 == 0) { r as u32 - 1 } else { r as u32 };
                if literal != cd.pi0_sbar {
                    literal_disagrees += 1;
                }
                if cd.pi0_s != r as u32 || cd.pi0_sbar != quotient_rank_f2(&image) {
                    fails.push(format!("l={ells:?} minus={minus:?}: {cd:?}"));
                }
            }
            let mut k = 0;
            while k < r && ells[k] == 4 {
                ells[k] = 1;
                k += 1;
            }
            if k == r {
                break;
            }
            ells[k] += 1;
        }
    }
    report(3, "centralizer tables", fails.is_empty(), format!(
            "{checked} rank cases against the F2 oracle, failures {fails:?}; \
             the literal case formula disagrees on {literal_disagrees} of them"
        ))
}

fn criterion_4() -> bool {
    let start = Instant::now();
    let p = padic_sweep(4, 8);
    let r = real_sweep(8);
    let t = start.elapsed();
    let ok = p.mismatches.is_empty() && r.mismatches.is_empty() && p.checked > 0 && r.checked > 0 && t < C4_BUDGET;
    report(
        4,
        "GL signs",
        ok,
        format!(
            "p-adic {} checked ({} irrelevant), real {} checked, mismatches {:?} {:?}, {t:?}",
            p.checked, p.excluded, r.checked, p.mismatches, r.mismatches
        ),
    )
}

fn random_invariant(rng: &mut ChaCha8Rng, n: u32, group: GroupType) -> LocalInvariant {
    let kinds: &[PlaceKind] = match group {
        GroupType::U => &[PlaceKind::PadicSplit, PlaceKind::PadicInert, PlaceKind::RealSplit, PlaceKind::RealInert, PlaceKind::Complex],
        GroupType::GL => &[PlaceKind::PadicSplit, PlaceKind::RealSplit, PlaceKind::Complex],
    };
    let kind = kinds[rng.gen_range(0..kinds.len())];
    let split_x = |rng: &mut ChaCha8Rng, kind| gl_local_invariants(kind, n).unwrap().step * rng.gen_range(-3..=3);
    match kind {
        PlaceKind::PadicInert => LocalInvariant::PadicInert { a: rng.gen_range(0..=1) },
        PlaceKind::RealInert => {
            let q = rng.gen_range(0..=n);
            LocalInvariant::RealInert { p: n - q, q }
        }
        PlaceKind::PadicSplit => LocalInvariant::PadicSplit { x: split_x(rng, kind) },
        PlaceKind::RealSplit => LocalInvariant::RealSplit { x: split_x(rng, kind) },
        PlaceKind::Complex => LocalInvariant::Complex { x: split_x(rng, kind) },
    }
}

/// `a_v` for `U(N)`, `N` even, written through signatures and `x mod 2`.
fn a_oracle(inv: &LocalInvariant) -> u32 {
    match *inv {
        LocalInvariant::PadicInert { a } => a,
        LocalInvariant::RealInert { p, q } => (((p as i64 - q as i64) / 2).rem_euclid(2)) as u32,
        LocalInvariant::PadicSplit { x } | LocalInvariant::RealSplit { x } | LocalInvariant::Complex { x } => {
            x.rem_euclid(2) as u32
        }
    }
}

fn criterion_5() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut fails = Vec::new();
    let mut infeasible_seen = 0;
    for trial in 0..C5_TARGETS {
        let n = rng.gen_range(1..=8u32);
        let k = rng.gen_range(1..=6);
        let places: Vec<Place> = (0..k)
            .map(|j| Place { id: format!("w{j}"), invariant: random_invariant(&mut rng, n, GroupType::U) })
            .collect();
        let sum: u32 = places.iter().map(|p| a_oracle(&p.invariant)).sum::<u32>() % 2;
        let spec = GlobalInnerFormSpec { group: GroupType::U, n, places };
        let f = global_feasible(&spec).unwrap();
        let expected = n % 2 == 1 || sum == 0;
        if !f.feasible {
            infeasible_seen += 1;
        }
        if f.feasible != expected {
            fails.push(format!("trial {trial}: N={n} {spec:?}"));
        }
    }
    for trial in 0..C5_TARGETS {
        let group = if trial % 2 == 0 { GroupType::U } else { GroupType::GL };
        let n = rng.gen_range(1..=8u32);
        let target = Place { id: "t".into(), invariant: random_invariant(&mut rng, n, group) };
        let aux = if rng.gen_bool(0.5) { AuxiliaryPlace::RealInert } else { AuxiliaryPlace::PadicInert };
        let spec = globalize(&target, n, group, aux).unwrap();
        let ok = spec.places[0] == target && global_feasible(&spec).unwrap().feasible && spec.places.len() <= 2;
        if !ok {
            fails.push(format!("globalize {group:?} N={n} {target:?} -> {spec:?}"));
        }
    }
    let ok = fails.is_empty() && infeasible_seen > 0;
    report(5, "inner-form feasibility", ok, format!("{infeasible_seen} infeasible samples, failures {:?}", fails.first()))
}

fn criterion_6() -> bool {
    let settings = Settings::default();
    let spec = QuadratureSpec::new(settings.quad_abs_tol, settings.quad_rel_tol);
    let expected = [
        Complex64::new(-4.0 / 15.0, 0.0),
        Complex64::new(-4.0 / 3.0, 0.0),
        Complex64::new(0.0, -1.0),
        Complex64::new(4.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-4.0 / 3.0, 0.0),
        Complex64::new(-4.0 / 15.0, 0.0),
    ];
    let scalars = [-1.0, -1.0, -1.0, -1.0, 1.0, -1.0, -1.0];
    let start = Instant::now();
    let mut fails = Vec::new();
    let mut worst = [0.0f64; 3];
    for (k, &two_x) in SUPPORTED_TWO_X.iter().enumerate() {
        let c = integral_closed(two_x, 0.5, &spec).unwrap();
        let rel = (c.constant - expected[k]).norm() / expected[k].norm();
        worst[0] = worst[0].max(rel);
        if rel > C6_CONSTANT_REL {
            fails.push(format!("constant 2x={two_x}: {}", c.constant));
        }
        for v in [0.25, 0.5, 1.0] {
            let closed = integral_closed(two_x, v, &spec).unwrap();
            let bf = integral_bruteforce(two_x, v, 1e-10, 1e-9).unwrap();
            let rel = (bf.total - closed.total).norm() / closed.total.norm();
            worst[1] = worst[1].max(rel);
            if rel > C6_BRUTEFORCE_REL {
                fails.push(format!("bruteforce 2x={two_x} v={v}: {} vs {}", bf.total, closed.total));
            }
        }
        let s = lir_scalar(two_x, &spec).unwrap();
        let pairing = f64::from(pi_a3_pairing(two_x).unwrap().pairing);
        let err = (s.value - scalars[k]).norm().max((s.value - pairing).norm());
        worst[2] = worst[2].max(err);
        if err > C6_SCALAR_ABS || s.backstop_gap > C6_BACKSTOP_ABS {
            fails.push(format!("scalar 2x={two_x}: {} backstop {} pairing {pairing}", s.value, s.backstop));
        }
    }
    let t = start.elapsed();
    let ok = fails.is_empty() && t < C6_BUDGET;
    report(
        6,
        "U(3,1) numerics",
        ok,
        format!("constant {:.1e}, bruteforce {:.1e}, scalar {:.1e}, {t:?}, failures {fails:?}", worst[0], worst[1], worst[2]),
    )
}

fn criterion_7() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let coord = |rng: &mut ChaCha8Rng| rng.gen_range(-10.0..10.0) / 2f64.sqrt();
    let (mut inv, mut recip, mut oracle) = (0.0f64, 0.0f64, 0.0f64);
    let mut n = 0;
    while n < C7_POINTS {
        let x1 = Complex64::new(coord(&mut rng), coord(&mut rng));
        let x2 = Complex64::new(coord(&mut rng), coord(&mut rng));
        let x3 = rng.gen_range(-10.0..10.0);
        let Ok(p) = bruhat_decompose(x1, x2, x3) else { continue };
        if p.c.norm() < 1e-3 {
            continue;
        }
        n += 1;
        let back = bruhat_decompose(p.y1, p.y2, p.y3).unwrap();
        let scale = 1.0 + x1.norm() + x2.norm() + x3.abs();
        let d = (back.y1 - x1).norm().max((back.y2 - x2).norm()).max((back.y3 - x3).abs()) / scale;
        inv = inv.max(d);
        recip = recip.max((back.c * p.c.conj() - 1.0).norm());
        oracle = oracle.max(matrix_oracle(&p).max());
    }
    let ok = inv <= C7_BRUHAT && recip <= C7_BRUHAT && oracle <= C7_ORACLE;
    report(7, "Bruhat algebra", ok, format!("{n} points: involution {inv:.1e}, reciprocity {recip:.1e}, oracle {oracle:.1e}"))
}

fn criterion_8() -> bool {
    let mut fails = Vec::new();
    let mut lines = Vec::new();
    let cases = [
        ("exc1", exc1(), LeviSplit { g: vec![0, 1] }),
        ("exc2", exc2(), LeviSplit { g: vec![1, 0] }),
        ("elliptic q=1", elliptic(1), LeviSplit { g: vec![1, 0] }),
        ("discrete", discrete(), LeviSplit { g: vec![0, 0, 0] }),
    ];
    for (name, p, split) in cases {
        let g = centralizer(&p).unwrap();
        if split.g.len() != g.factors.len() {
            fails.push(format!("{name}: split does not match {}", g.describe()));
            continue;
        }
        match diagram_check(&p, &split) {
            Ok(d) => {
                lines.push(format!("{name} |N|={} |W|={} |W0|={} |R|={}", d.n, d.w, d.w0, d.r));
                let ok = match name {
                    "exc1" | "exc2" => d.w == 2 && d.w0 == 2 && d.regular_in_w == 1,
                    "elliptic q=1" => d.r == 2,
                    _ => d.w == 1 && d.n == d.s_levi,
                };
                if !ok {
                    fails.push(format!("{name}: {d:?}"));
                }
            }
            Err(e) => fails.push(format!("{name}: {e}")),
        }
    }
    report(8, "diagram exactness", fails.is_empty(), format!("{lines:?} failures {fails:?}"))
}

#[test]
fn acceptance() {
    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(k, _)| k + 1).collect();
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
