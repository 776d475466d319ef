use endoscopy_core::centralizers::{
    centralizer, component_data, weyl_data, ClassicalFactor, FactorKind, GroupProduct,
};
use endoscopy_core::forms::{
    a_psi, endoscopy_enumerate, gl_local_invariants, global_feasible, globalize, levi_transfers, weyl_group_levi,
    AuxiliaryPlace, GlField, GlobalInnerFormSpec, GroupType, LeviShape, LocalInvariant, Place, PlaceKind,
};
use endoscopy_core::lir::bruhat::{bruhat_decompose, matrix_oracle};
use endoscopy_core::multiplicity::{component_is_elliptic, i_of_s, ComponentUnion, Rational, SigmaSolver};
use endoscopy_core::params::{
    arch_parity, kappa_of_simple, kappa_of_simple_via_parity, parity_of_twist, ArchCharacter, Constituent,
    FormalParameter, ParamClass, SimpleParameter,
};
use endoscopy_core::{Error, Settings};
use num::Zero;
use num_complex::Complex64;
use proptest::prelude::*;

fn sd(id: String, parity: i8, mult: u32) -> Constituent {
    Constituent { param: SimpleParameter::new(&id, 1, 1, true, Some(parity)), mult }
}

fn unitary_strategy() -> impl Strategy<Value = FormalParameter> {
    (prop::collection::vec((prop::bool::ANY, 1u32..=4), 1..=4), prop::bool::ANY).prop_filter_map(
        "valid",
        |(cs, kappa)| {
            let n: u32 = cs.iter().map(|c| c.1).sum();
            let cs = cs
                .into_iter()
                .enumerate()
                .map(|(k, (plus, mult))| sd(format!("c{k}"), if plus { 1 } else { -1 }, mult))
                .collect();
            FormalParameter::unitary(if kappa { 1 } else { -1 }, n, cs).ok()
        },
    )
}

#[test]
fn kappa_routes_agree() {
    for m in 1..=6 {
        for n in 1..=6 {
            for k in [1, -1] {
                assert_eq!(kappa_of_simple(m, n, k), kappa_of_simple_via_parity(m, n, k), "m={m} n={n} k={k}");
            }
        }
    }
}

#[test]
fn arch_parity_twists() {
    for a in -3..=3 {
        let c = ArchCharacter::new(2 * a, -2 * a).unwrap();
        let base = arch_parity(c).unwrap();
        for n in 1..=4u32 {
            // kappa of a dimension-one character equals its parity
            let via_kappa = kappa_of_simple(1, n, base) * if n % 2 == 0 { -1 } else { 1 };
            assert_eq!(parity_of_twist(base, n), via_kappa, "a={a} n={n}");
        }
    }
}

#[test]
fn discrete_shapes_up_to_six() {
    for r in 1..=6u32 {
        let parity = if r % 2 == 1 { 1 } else { -1 };
        let cs = (0..r).map(|k| sd(format!("c{k}"), parity, 1)).collect();
        let p = FormalParameter::unitary(1, r, cs).unwrap();
        assert_eq!(p.classify().unwrap(), ParamClass::Discrete);
        let g = centralizer(&p).unwrap();
        assert!(g.factors.iter().all(|f| *f == ClassicalFactor::o(1)));
        assert_eq!(weyl_data(&g, 1 << 20).unwrap().len(), 1 << r);
        let cd = component_data(&g, &p).unwrap();
        assert_eq!((cd.pi0_s, cd.pi0_sbar), (r, r - 1));
    }
}

#[test]
fn endoscopy_count() {
    for n in 1..=50 {
        for twisted in [false, true] {
            assert_eq!(endoscopy_enumerate(n, twisted).unwrap().len() as u32, n / 2 + 1);
        }
    }
}

fn connected_factor() -> impl Strategy<Value = ClassicalFactor> {
    prop::sample::select(vec![
        ClassicalFactor::sp(2),
        ClassicalFactor::so(3),
        ClassicalFactor::so(4),
        ClassicalFactor::sp(4),
        ClassicalFactor::so(5),
    ])
}

fn any_factor() -> impl Strategy<Value = ClassicalFactor> {
    prop::sample::select(vec![
        ClassicalFactor::o(1),
        ClassicalFactor::o(2),
        ClassicalFactor::o(3),
        ClassicalFactor::sp(2),
        ClassicalFactor::gl(1),
    ])
}

fn rank(fs: &[ClassicalFactor]) -> usize {
    fs.iter().map(|f| f.torus_rank()).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symplectic_multiplicities_are_even(p in unitary_strategy()) {
        match p.signed_partition() {
            Ok(sp) => prop_assert!(sp.i_minus.iter().all(|&i| p.constituents[i].mult % 2 == 0)),
            Err(e) => {
                let odd = matches!(e, Error::OddSymplecticMultiplicity { .. });
                prop_assert!(odd, "unexpected error {}", e);
            }
        }
    }

    #[test]
    fn classification_matches_centralizer(p in unitary_strategy()) {
        let (Ok(class), Ok(g)) = (p.classify(), centralizer(&p)) else { return Ok(()) };
        match class {
            ParamClass::Discrete => prop_assert_eq!(g.torus_rank(), 0),
            ParamClass::EllipticNonDiscrete { q } => {
                let twos = g.factors.iter().filter(|f| **f == ClassicalFactor::o(2)).count();
                let ones = g.factors.iter().filter(|f| **f == ClassicalFactor::o(1)).count();
                prop_assert_eq!(twos, q as usize);
                prop_assert_eq!(twos + ones, g.factors.len());
            }
            _ => {}
        }
    }

    #[test]
    fn elliptic_components_flip_every_plane(q in 1usize..=3, extra in 1usize..=2) {
        let n = (2 * q + extra) as u32;
        let parity = if n % 2 == 1 { 1 } else { -1 };
        let mut cs: Vec<Constituent> = (0..q).map(|k| sd(format!("a{k}"), parity, 2)).collect();
        cs.extend((0..extra).map(|k| sd(format!("b{k}"), parity, 1)));
        let p = FormalParameter::unitary(1, n, cs).unwrap();
        prop_assert_eq!(p.classify().unwrap(), ParamClass::EllipticNonDiscrete { q: q as u32 });
        let g = centralizer(&p).unwrap();
        for c in g.components() {
            let flips_all = g.factors.iter().zip(&c).all(|(f, &b)| *f != ClassicalFactor::o(2) || b == 1);
            prop_assert_eq!(component_is_elliptic(&g, &c, 1 << 20).unwrap(), flips_all);
        }
    }

    #[test]
    fn regular_means_no_fixed_vector(fs in prop::collection::vec(any_factor(), 0..=3)) {
        prop_assume!(rank(&fs) <= 3);
        let g = GroupProduct::new(fs);
        for d in weyl_data(&g, 1 << 20).unwrap() {
            prop_assert_eq!(d.regular, d.det_w_minus_1 != 0);
        }
    }

    #[test]
    fn i_is_additive_over_components(fs in prop::collection::vec(any_factor(), 1..=3)) {
        prop_assume!(rank(&fs) <= 3);
        let g = GroupProduct::new(fs);
        let settings = Settings::default();
        let comps = g.components();
        let whole = i_of_s(&ComponentUnion::new(g.clone(), comps.clone()).unwrap(), &settings).unwrap();
        let mut sum = Rational::zero();
        for c in comps {
            sum += i_of_s(&ComponentUnion::single(g.clone(), c).unwrap(), &settings).unwrap();
        }
        prop_assert_eq!(whole, sum);
    }

    #[test]
    fn sigma_ignores_factor_order(mut fs in prop::collection::vec(connected_factor(), 1..=2), seed in any::<u64>()) {
        prop_assume!(rank(&fs) <= 3);
        let solver = SigmaSolver::new(Settings::default());
        let a = solver.sigma(&GroupProduct::new(fs.clone())).unwrap();
        if seed % 2 == 1 {
            fs.reverse();
        }
        let b = SigmaSolver::new(Settings::default()).sigma(&GroupProduct::new(fs)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn sigma_is_multiplicative(f1 in connected_factor(), f2 in connected_factor()) {
        prop_assume!(f1.torus_rank() + f2.torus_rank() <= 3);
        let solver = SigmaSolver::new(Settings::default());
        let s1 = solver.sigma(&GroupProduct::new(vec![f1])).unwrap();
        let s2 = solver.sigma(&GroupProduct::new(vec![f2])).unwrap();
        let s12 = solver.sigma(&GroupProduct::new(vec![f1, f2])).unwrap();
        prop_assert_eq!(s12, s1 * s2);
    }

    #[test]
    fn odd_unitary_always_feasible(
        n in prop::sample::select(vec![1u32, 3, 5, 7]),
        raw in prop::collection::vec((0u8..5, -3i64..=3, 0u32..=7), 1..=6),
    ) {
        let places = raw.iter().enumerate().map(|(j, &(k, x, q))| {
            let kind = [PlaceKind::PadicSplit, PlaceKind::PadicInert, PlaceKind::RealSplit, PlaceKind::RealInert, PlaceKind::Complex][k as usize];
            let step = gl_local_invariants(if kind.is_inert() { PlaceKind::PadicSplit } else { kind }, n).unwrap().step;
            let invariant = match kind {
                PlaceKind::PadicInert => LocalInvariant::PadicInert { a: (x.rem_euclid(2)) as u32 },
                PlaceKind::RealInert => LocalInvariant::RealInert { p: n - q.min(n), q: q.min(n) },
                PlaceKind::PadicSplit => LocalInvariant::PadicSplit { x: x * step },
                PlaceKind::RealSplit => LocalInvariant::RealSplit { x: x * step },
                PlaceKind::Complex => LocalInvariant::Complex { x: x * step },
            };
            Place { id: format!("w{j}"), invariant }
        }).collect();
        let spec = GlobalInnerFormSpec { group: GroupType::U, n, places };
        prop_assert!(global_feasible(&spec).unwrap().feasible);
    }

    #[test]
    fn globalize_round_trip(n in 1u32..=8, a in 0u32..=1, q in 0u32..=8, x in -4i64..=4, which in 0u8..4, padic_aux in any::<bool>()) {
        let (group, invariant) = match which {
            0 => (GroupType::U, LocalInvariant::PadicInert { a }),
            1 => (GroupType::U, LocalInvariant::RealInert { p: n - q.min(n), q: q.min(n) }),
            2 => (GroupType::GL, LocalInvariant::PadicSplit { x }),
            _ => {
                let step = gl_local_invariants(PlaceKind::RealSplit, n).unwrap().step;
                (GroupType::GL, LocalInvariant::RealSplit { x: x * step })
            }
        };
        let target = Place { id: "t".into(), invariant };
        let aux = if padic_aux { AuxiliaryPlace::PadicInert } else { AuxiliaryPlace::RealInert };
        let spec = globalize(&target, n, group, aux).unwrap();
        prop_assert_eq!(&spec.places[0], &target);
        prop_assert!(global_feasible(&spec).unwrap().feasible);
        let back: GlobalInnerFormSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        prop_assert_eq!(back, spec);
    }

    #[test]
    fn a_psi_is_multiplicative(
        c1 in (1u32..=2, 1u32..=3, 1u32..=3, 1u32..=3),
        c2 in (1u32..=2, 1u32..=3, 1u32..=3, 1u32..=3),
        real in any::<bool>(),
        d in 1u32..=4,
    ) {
        let mk = |id: &str, (f, r, m, mult): (u32, u32, u32, u32)| {
            let mut sp = SimpleParameter::new(id, f, m, false, None);
            sp.r = r;
            Constituent { param: sp, mult }
        };
        let dim = |(f, r, m, mult): (u32, u32, u32, u32)| f * r * m * mult;
        let field = if real { GlField::Real } else { GlField::Padic { d } };
        let p1 = FormalParameter::linear(dim(c1), vec![mk("a", c1)]).unwrap();
        let p2 = FormalParameter::linear(dim(c2), vec![mk("b", c2)]).unwrap();
        let p12 = FormalParameter::linear(dim(c1) + dim(c2), vec![mk("a", c1), mk("b", c2)]).unwrap();
        let (Ok(a1), Ok(a2), Ok(a12)) = (a_psi(&p1, field), a_psi(&p2, field), a_psi(&p12, field)) else {
            return Ok(());
        };
        prop_assert_eq!(a12, a1 * a2);
    }

    #[test]
    fn gl_levi_coarsening(blocks in prop::collection::vec(1u32..=4, 2..=4), k in 1i64..=7, cut in 0usize..3) {
        let n: u32 = blocks.iter().sum();
        let inv = LocalInvariant::PadicSplit { x: k };
        let fine = LeviShape::linear(blocks.clone());
        let j = cut % (blocks.len() - 1);
        let mut coarse = blocks.clone();
        let merged = coarse.remove(j + 1);
        coarse[j] += merged;
        let coarse = LeviShape::linear(coarse);
        if levi_transfers(&fine, &inv, GroupType::GL, n, None).unwrap() {
            prop_assert!(levi_transfers(&coarse, &inv, GroupType::GL, n, None).unwrap());
        }
    }

    #[test]
    fn t_minus_is_a_character(n_minus in 0u32..=2, blocks in prop::collection::vec(1u32..=3, 0..=3)) {
        let w = weyl_group_levi(&LeviShape::unitary(n_minus, blocks)).unwrap();
        let els = w.elements();
        prop_assert_eq!(els.len(), w.order);
        for x in &els {
            for y in &els {
                prop_assert_eq!(w.t_minus(&x.compose(y)), w.t_minus(x) * w.t_minus(y));
            }
        }
    }

    #[test]
    fn bruhat_involution(re1 in -7.0..7.0f64, im1 in -7.0..7.0f64, re2 in -7.0..7.0f64, im2 in -7.0..7.0f64, x3 in -10.0..10.0f64) {
        let (x1, x2) = (Complex64::new(re1, im1), Complex64::new(re2, im2));
        let p = bruhat_decompose(x1, x2, x3).unwrap();
        prop_assume!(p.c.norm() >= 1e-3);
        let back = bruhat_decompose(p.y1, p.y2, p.y3).unwrap();
        let scale = 1.0 + x1.norm() + x2.norm() + x3.abs();
        prop_assert!((back.y1 - x1).norm() / scale < 1e-12);
        prop_assert!((back.y2 - x2).norm() / scale < 1e-12);
        prop_assert!((back.y3 - x3).abs() / scale < 1e-12);
        prop_assert!((back.c * p.c.conj() - 1.0).norm() < 1e-12);
        prop_assert!(matrix_oracle(&p).max() < 1e-10);
    }

    #[test]
    fn parameter_json_round_trip(p in unitary_strategy()) {
        let back: FormalParameter = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn orthogonal_kinds_only_in_plus() {
    let p = FormalParameter::unitary(1, 4, vec![sd("a".into(), -1, 2), sd("b".into(), 1, 2)]).unwrap();
    let g = centralizer(&p).unwrap();
    let kinds: Vec<FactorKind> = g.factors.iter().map(|f| f.kind).collect();
    assert_eq!(kinds, vec![FactorKind::O, FactorKind::Sp]);
}
