use std::sync::Arc;

use super::*;
use crate::andre::{e2_page, E2Options};
use crate::exactalg::Ring;
use crate::fincat::{
    arrow, chain_poset, cyclic_group, discrete, is_equivalence, poset, product, terminal, walking_iso, FinCat, FinFunctor,
};
use crate::natsys::{zc_bimodule, NaturalSystem};

const F2: Ring = Ring::ModP(2);

fn trivial(c: &Arc<FinCat>) -> NaturalSystem {
    NaturalSystem::trivial(c.clone(), F2, 1).unwrap()
}

fn zc(c: &Arc<FinCat>) -> NaturalSystem {
    NaturalSystem::from_bimodule(&zc_bimodule(c.clone(), F2).unwrap()).unwrap()
}

fn span() -> Arc<FinCat> {
    Arc::new(poset(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap())
}

fn bases() -> Vec<Arc<FinCat>> {
    vec![
        Arc::new(terminal()),
        Arc::new(arrow()),
        Arc::new(chain_poset(2).unwrap()),
        Arc::new(cyclic_group(2).unwrap()),
        Arc::new(walking_iso()),
        span(),
    ]
}

fn actions() -> Vec<(&'static str, StrictAction)> {
    vec![
        ("trivial-bz2", trivial_group_action(2, Arc::new(terminal())).unwrap()),
        ("swap", swap_action().unwrap()),
        ("product", StrictAction::constant(Arc::new(arrow()), Arc::new(arrow()))),
        ("bz2-on-arrow", trivial_group_action(2, Arc::new(arrow())).unwrap()),
        ("identity-span", identity_action(span())),
    ]
}

fn dims(page: &crate::andre::E2Page) -> Vec<Vec<usize>> {
    page.grid.iter().map(|c| c.iter().map(|g| g.dim()).collect()).collect()
}

#[test]
fn trivial_action_on_a_point_is_the_group() {
    let fib = grothendieck(&trivial_group_action(2, Arc::new(terminal())).unwrap()).unwrap();
    assert_eq!(fib.total.num_objects(), 1);
    assert_eq!(fib.total.num_morphisms(), 2);
    let g = (0..2).find(|&k| !fib.total.is_identity(k)).unwrap();
    assert!(fib.total.is_identity(fib.total.compose(g, g)));
}

#[test]
fn swap_construction_is_a_contractible_groupoid() {
    let fib = grothendieck(&swap_action().unwrap()).unwrap();
    let e = &fib.total;
    assert_eq!((e.num_objects(), e.num_morphisms()), (2, 4));
    assert!((0..4).all(|k| e.is_iso(k)));
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(e.hom(a, b).len(), 1);
        }
    }
    let to_point = FinFunctor::to_terminal(e.clone(), Arc::new(terminal())).unwrap();
    assert!(is_equivalence(&to_point));
}

#[test]
fn constant_action_gives_the_product() {
    for b in bases() {
        let c = Arc::new(arrow());
        let fib = grothendieck(&StrictAction::constant(b.clone(), c.clone())).unwrap();
        let p = product(&b, &c).unwrap();
        assert_eq!(fib.total.num_objects(), p.num_objects());
        assert_eq!(fib.total.num_morphisms(), p.num_morphisms());
        assert_eq!(fib.total.num_pairs(), p.num_pairs());
    }
}

#[test]
fn identity_action_recovers_the_base() {
    for b in bases() {
        let fib = grothendieck(&identity_action(b.clone())).unwrap();
        assert!(fib.u.object_map().iter().enumerate().all(|(i, &o)| i as u32 == o));
        assert_eq!(fib.total.num_morphisms(), b.num_morphisms());
        assert!((0..b.num_morphisms() as u32).all(|k| fib.is_cartesian(k)));
    }
}

#[test]
fn projection_sends_lifts_to_their_morphism() {
    for (name, action) in actions() {
        let fib = grothendieck(&action).unwrap();
        let b = fib.base();
        for beta in 0..b.num_morphisms() as u32 {
            for x in 0..action.fiber(b.tgt(beta)).num_objects() as u32 {
                let k = fib.lift(beta, fib.object(b.tgt(beta), x)).unwrap();
                assert_eq!(fib.u.morphism(k), beta, "{name}");
                assert!(fib.is_cartesian(k), "{name}");
                assert_eq!(fib.total.tgt(k), fib.object(b.tgt(beta), x), "{name}");
            }
        }
    }
}

#[test]
fn cleavage_composes_strictly() {
    for (name, action) in actions() {
        let fib = grothendieck(&action).unwrap();
        let b = fib.base();
        for (second, first) in b.pairs() {
            for x in 0..action.fiber(b.tgt(second)).num_objects() as u32 {
                let e = fib.object(b.tgt(second), x);
                let outer = fib.lift(second, e).unwrap();
                let inner = fib.lift(first, fib.total.src(outer)).unwrap();
                let whole = fib.lift(b.compose(second, first), e).unwrap();
                assert_eq!(fib.total.compose(outer, inner), whole, "{name}");
            }
        }
    }
}

#[test]
fn lift_rejects_a_wrong_target() {
    let fib = grothendieck(&StrictAction::constant(Arc::new(arrow()), Arc::new(terminal()))).unwrap();
    let up = fib.base().morphism_id("0<1").unwrap();
    assert_eq!(fib.lift(up, fib.object(0, 0)).unwrap_err().kind(), "InvalidArgument");
}

#[test]
fn fibers_match_the_action() {
    for (name, action) in actions() {
        let fib = grothendieck(&action).unwrap();
        for b in 0..fib.base().num_objects() as u32 {
            let data = fib.fiber_data(b).unwrap();
            assert_eq!(*data.fiber, **action.fiber(b), "{name}");
            assert!(data.j.then(&data.r).unwrap().is_identity(), "{name}");
            let over: Vec<u32> =
                (0..fib.total.num_objects() as u32).filter(|&e| fib.u.object(e) == b).collect();
            assert_eq!(over.len(), data.fiber.num_objects(), "{name}");
        }
    }
}

#[test]
fn swap_fiber_is_discrete() {
    let fib = grothendieck(&swap_action().unwrap()).unwrap();
    let data = fib.fiber_data(0).unwrap();
    assert_eq!(*data.fiber, discrete(2));
    // b/u has one object per morphism of E.
    assert_eq!(data.comma.cat.num_objects(), 4);
}

#[test]
fn db_system_of_trivial_coefficients_is_trivial() {
    for (name, action) in actions() {
        let fib = grothendieck(&action).unwrap();
        let d = trivial(&fib.total);
        for b in 0..fib.base().num_objects() as u32 {
            let data = fib.fiber_data(b).unwrap();
            let db = fib.db_system(&d, &data).unwrap();
            assert_eq!(db, trivial(&data.comma.cat), "{name}");
        }
    }
}

#[test]
fn db_system_rejects_a_foreign_system() {
    let fib = grothendieck(&swap_action().unwrap()).unwrap();
    let data = fib.fiber_data(0).unwrap();
    let other = trivial(&Arc::new(arrow()));
    assert_eq!(fib.db_system(&other, &data).unwrap_err().kind(), "NotAFunctor");
}

#[test]
fn identity_fibrations_are_local() {
    for b in bases() {
        let fib = grothendieck(&identity_action(b.clone())).unwrap();
        for d in [trivial(&fib.total), zc(&fib.total)] {
            let report = is_local(&fib, &d, 2).unwrap();
            assert!(report.is_local());
            assert_eq!(report.entries.len(), 3 * b.num_objects());
        }
    }
}

#[test]
fn fixture_fibrations_are_local_for_trivial_and_zc() {
    for (name, action) in actions() {
        let fib = grothendieck(&action).unwrap();
        for d in [trivial(&fib.total), zc(&fib.total)] {
            let report = is_local(&fib, &d, 1).unwrap();
            assert!(report.is_local(), "{name}: {:?}", report.entries);
            for e in &report.entries {
                assert_eq!(e.comma, e.fiber, "{name}");
                assert_eq!(e.status, LocalStatus::Isomorphic);
            }
        }
    }
}

#[test]
fn integer_locality_compares_presentations() {
    let fib = grothendieck(&trivial_group_action(2, Arc::new(arrow())).unwrap()).unwrap();
    let d = NaturalSystem::trivial(fib.total.clone(), Ring::Int, 1).unwrap();
    let report = is_local(&fib, &d, 1).unwrap();
    assert!(report.entries.iter().all(|e| e.status == LocalStatus::PresentationEqual));
    let json = serde_json::to_value(report.to_json(&fib)).unwrap();
    assert_eq!(json["local"], true);
    assert_eq!(json["entries"][0]["verdict"], "presentation-equal");
}

#[test]
fn frozen_nonlocal_candidate_is_well_formed() {
    let (action, d) = nonlocal_fixture().unwrap();
    let fib = grothendieck(&action).unwrap();
    assert_eq!(**d.base(), *fib.total);
    let report = is_local(&fib, &d, 2).unwrap();
    assert_eq!(report.entries.len(), 6);
}

#[test]
fn non_strict_actions_are_rejected() {
    let g = Arc::new(cyclic_group(3).unwrap());
    let c = Arc::new(discrete(2));
    let swap = FinFunctor::new(c.clone(), c.clone(), vec![1, 0], vec![1, 0]).unwrap();
    let id = FinFunctor::identity(c.clone());
    // g ↦ swap, g² ↦ id fails at g∘g² = e.
    let err = StrictAction::new(g.clone(), vec![c.clone()], vec![id.clone(), swap.clone(), id.clone()]).unwrap_err();
    assert_eq!(err.kind(), "NotStrict");
    let err = StrictAction::new(g.clone(), vec![c.clone()], vec![swap.clone(), id.clone(), id.clone()]).unwrap_err();
    assert_eq!(err.kind(), "NotStrict");
    let err = StrictAction::new(g, vec![c.clone(), c], vec![id.clone(), id.clone(), id]).unwrap_err();
    assert_eq!(err.kind(), "NotStrict");
}

#[test]
fn actions_roundtrip_through_json() {
    for (name, action) in actions() {
        let raw = action.to_raw();
        let text = serde_json::to_string(&raw).unwrap();
        let back: RawStrictAction = serde_json::from_str(&text).unwrap();
        let rebuilt = StrictAction::from_raw(&back, std::path::Path::new("."), 10_000).unwrap();
        assert_eq!(rebuilt, action, "{name}");
    }
}

#[test]
fn missing_structure_map_is_reported() {
    let mut raw = swap_action().unwrap().to_raw();
    raw.maps.clear();
    let err = StrictAction::from_raw(&raw, std::path::Path::new("."), 10_000).unwrap_err();
    assert_eq!(err.kind(), "MissingStructureMap");
}

#[test]
fn cartan_leray_of_trivial_action_on_a_point() {
    let action = trivial_group_action(2, Arc::new(terminal())).unwrap();
    let fib = grothendieck(&action).unwrap();
    let cl = cartan_leray(&action, &trivial(&fib.total), 3).unwrap();
    let g = dims(&cl.page);
    for p in 0..=3 {
        assert_eq!(g[p][0], 1);
        assert!(g[p][1..].iter().all(|&x| x == 0));
    }
    assert_eq!(cl.page.abutment_dims(), vec![1, 1, 1, 1]);
}

#[test]
fn cartan_leray_of_swap_collapses() {
    let action = swap_action().unwrap();
    let fib = grothendieck(&action).unwrap();
    let cl = cartan_leray(&action, &trivial(&fib.total), 3).unwrap();
    for (p, col) in dims(&cl.page).iter().enumerate() {
        for (q, &x) in col.iter().enumerate() {
            assert_eq!(x, usize::from(p == 0 && q == 0), "({p}, {q})");
        }
    }
    assert_eq!(cl.page.abutment_dims(), vec![1, 0, 0, 0]);
    // H^0 of the fiber is the permutation module.
    let m = &cl.modules[0].module;
    assert_eq!(m.dim(0), 2);
    let g = (0..2).find(|&k| !action.base().is_identity(k)).unwrap();
    assert!(!m.matrix(g).is_identity());
    assert!(m.matrix(g).mul(m.matrix(g)).unwrap().is_identity());
}

#[test]
fn cartan_leray_for_the_trivial_group_is_fiber_cohomology() {
    let action = trivial_group_action(1, span()).unwrap();
    let fib = grothendieck(&action).unwrap();
    let d = zc(&fib.total);
    let cl = cartan_leray(&action, &d, 3).unwrap();
    let g = dims(&cl.page);
    for q in 0..=3 {
        assert_eq!(g[0][q], cl.page.abutment[q].dim());
    }
    assert!(g[1..].iter().flatten().all(|&x| x == 0));
}

#[test]
fn cartan_leray_agrees_with_the_general_page() {
    let group_actions = vec![
        trivial_group_action(2, Arc::new(terminal())).unwrap(),
        swap_action().unwrap(),
        trivial_group_action(2, Arc::new(arrow())).unwrap(),
        trivial_group_action(3, span()).unwrap(),
    ];
    for action in group_actions {
        let fib = grothendieck(&action).unwrap();
        for d in [trivial(&fib.total), zc(&fib.total)] {
            let cl = cartan_leray(&action, &d, 2).unwrap();
            let general = e2_page(&fib.u, &d, 2, &E2Options::default()).unwrap();
            assert_eq!(dims(&cl.page), dims(&general));
            assert_eq!(cl.page.abutment_dims(), general.abutment_dims());
        }
    }
}

#[test]
fn cartan_leray_report_lists_modules() {
    let action = swap_action().unwrap();
    let fib = grothendieck(&action).unwrap();
    let cl = cartan_leray(&action, &trivial(&fib.total), 2).unwrap();
    let json = serde_json::to_value(CartanLerayReport::new(&cl)).unwrap();
    assert_eq!(json["coefficient_modules"].as_array().unwrap().len(), 3);
    assert_eq!(json["coefficient_modules"][0]["dim"], 2);
    assert_eq!(json["coefficient_modules"][0]["action"].as_array().unwrap().len(), 1);
    assert_eq!(json["N"], 2);
}

#[test]
fn non_inverting_coefficients_are_rejected() {
    let (action, d) = non_inverting_fixture().unwrap();
    let err = cartan_leray(&action, &d, 2).unwrap_err();
    assert_eq!(err.kind(), "NotCartesianInverting");
    // Trivial coefficients pass the check and then fail on the base.
    let fib = grothendieck(&action).unwrap();
    assert_eq!(cartan_leray(&action, &trivial(&fib.total), 2).unwrap_err().kind(), "NotAGroup");
}

#[test]
fn group_coefficients_are_always_cartesian_inverting() {
    for action in [swap_action().unwrap(), trivial_group_action(2, Arc::new(arrow())).unwrap()] {
        let fib = grothendieck(&action).unwrap();
        for d in [trivial(&fib.total), zc(&fib.total)] {
            assert!(check_cartesian_inverting(&fib, &d).is_ok());
        }
    }
}

#[test]
fn integer_coefficients_are_rejected_by_cartan_leray() {
    let action = swap_action().unwrap();
    let fib = grothendieck(&action).unwrap();
    let d = NaturalSystem::trivial(fib.total.clone(), Ring::Int, 1).unwrap();
    assert_eq!(cartan_leray(&action, &d, 1).unwrap_err().kind(), "RingNotField");
}

#[test]
fn free_actions_have_equivalent_orbit_categories() {
    let swap = swap_action().unwrap();
    assert!(is_free(&swap).unwrap());
    let (quotient, pi) = orbit_category(&swap).unwrap();
    assert_eq!(quotient.num_objects(), 1);
    assert!(is_equivalence(&pi));
    let fixed = trivial_group_action(2, Arc::new(arrow())).unwrap();
    assert!(!is_free(&fixed).unwrap());
    assert_eq!(orbit_category(&fixed).unwrap_err().kind(), "InvalidArgument");
}

mod props {
    use proptest::prelude::*;

    use super::*;

    fn small_category() -> impl Strategy<Value = Arc<FinCat>> {
        prop_oneof![
            Just(Arc::new(terminal())),
            Just(Arc::new(arrow())),
            Just(Arc::new(walking_iso())),
            (1usize..4).prop_map(|n| Arc::new(chain_poset(n).unwrap())),
            (1usize..4).prop_map(|n| Arc::new(cyclic_group(n).unwrap())),
            (1usize..3).prop_map(|n| Arc::new(discrete(n))),
        ]
    }

    fn small_action() -> impl Strategy<Value = StrictAction> {
        prop_oneof![
            (small_category(), small_category()).prop_map(|(b, c)| StrictAction::constant(b, c)),
            (1usize..4, small_category()).prop_map(|(n, c)| trivial_group_action(n, c).unwrap()),
            small_category().prop_map(identity_action),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn lifts_are_cartesian_and_compose(action in small_action()) {
            let fib = grothendieck(&action).unwrap();
            let b = fib.base();
            for (second, first) in b.pairs() {
                for x in 0..action.fiber(b.tgt(second)).num_objects() as u32 {
                    let e = fib.object(b.tgt(second), x);
                    let outer = fib.lift(second, e).unwrap();
                    prop_assert_eq!(fib.u.morphism(outer), second);
                    prop_assert!(fib.is_cartesian(outer));
                    let inner = fib.lift(first, fib.total.src(outer)).unwrap();
                    let whole = fib.lift(b.compose(second, first), e).unwrap();
                    prop_assert_eq!(fib.total.compose(outer, inner), whole);
                }
            }
        }

        #[test]
        fn total_object_count_is_the_sum_of_fibers(action in small_action()) {
            let fib = grothendieck(&action).unwrap();
            let expected: usize =
                (0..action.base().num_objects() as u32).map(|b| action.fiber(b).num_objects()).sum();
            prop_assert_eq!(fib.total.num_objects(), expected);
        }

        #[test]
        fn trivial_coefficients_restrict_to_trivial_fiber_systems(action in small_action()) {
            let fib = grothendieck(&action).unwrap();
            let d = trivial(&fib.total);
            for b in 0..action.base().num_objects() as u32 {
                let data = fib.fiber_data(b).unwrap();
                let db = fib.db_system(&d, &data).unwrap();
                for k in 0..db.base().num_morphisms() as u32 {
                    prop_assert_eq!(db.dim(k), 1);
                }
            }
        }
    }
}
