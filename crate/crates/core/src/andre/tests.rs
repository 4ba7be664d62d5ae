use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::fincat::{arrow, chain_poset, cyclic_group, poset, terminal, walking_iso, FinCat};
use crate::homcalc::{bw_cohomology, module_cohomology};
use crate::natsys::zc_bimodule;

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

fn swap_functor() -> FinFunctor {
    let e = Arc::new(walking_iso());
    let b = Arc::new(cyclic_group(2).unwrap());
    let g = |n: &str| e.morphism_id(n).unwrap();
    let mut mor = vec![0; 4];
    for (name, image) in [("id_a", 0), ("id_b", 0), ("i", 1), ("j", 1)] {
        mor[g(name) as usize] = image;
    }
    FinFunctor::new(e, b, vec![0, 0], mor).unwrap()
}

fn dims(page: &E2Page) -> Vec<Vec<usize>> {
    page.grid.iter().map(|c| c.iter().map(|g| g.dim()).collect()).collect()
}

fn fixtures() -> Vec<(&'static str, NaturalSystem)> {
    let arrow = Arc::new(arrow());
    let bz2 = Arc::new(cyclic_group(2).unwrap());
    let chain2 = Arc::new(chain_poset(2).unwrap());
    vec![
        ("arrow", trivial(&arrow)),
        ("arrow-zc", zc(&arrow)),
        ("bz2", trivial(&bz2)),
        ("chain2", trivial(&chain2)),
        ("span-zc", zc(&span())),
        ("walking-iso", trivial(&Arc::new(walking_iso()))),
    ]
}

#[test]
fn identity_comma_has_initial_object() {
    let c = span();
    let u = FinFunctor::identity(c.clone());
    let data = FunctorData::new(&u).unwrap();
    for beta in 0..c.num_morphisms() as u32 {
        let comma = data.comma(beta, Direction::Under, DEFAULT_COMMA_GUARD).unwrap();
        let id = data.fb.morphism(beta, c.identity(c.src(beta)), c.identity(c.tgt(beta))).unwrap();
        let init = comma.object_id(beta, id).unwrap();
        for o in 0..comma.cat.num_objects() as u32 {
            assert_eq!(comma.cat.hom(init, o).len(), 1);
        }
    }
}

#[test]
fn terminal_base_comma_is_factorization_category() {
    let e = Arc::new(walking_iso());
    let u = FinFunctor::to_terminal(e.clone(), Arc::new(terminal())).unwrap();
    let comma = comma_of_morphism(&u, 0, Direction::Under, DEFAULT_COMMA_GUARD).unwrap();
    assert_eq!(comma.cat.num_objects(), e.num_morphisms());
    let fe = factorization(e).unwrap();
    assert_eq!(comma.cat.num_morphisms(), fe.cat.num_morphisms());
}

#[test]
fn swap_comma_counts_match_enumeration() {
    let u = swap_functor();
    let data = FunctorData::new(&u).unwrap();
    let fb = &data.fb.cat;
    for beta in 0..fb.num_objects() as u32 {
        let comma = data.comma(beta, Direction::Under, DEFAULT_COMMA_GUARD).unwrap();
        let mut count = 0;
        for f in 0..data.fe.cat.num_objects() as u32 {
            for m in 0..fb.num_morphisms() as u32 {
                if fb.src(m) == beta && fb.tgt(m) == data.fu.object(f) {
                    count += 1;
                }
            }
        }
        assert_eq!(comma.cat.num_objects(), count);
    }
}

#[test]
fn comma_guard_is_enforced() {
    let u = swap_functor();
    let err = comma_of_morphism(&u, 0, Direction::Under, 3).unwrap_err();
    assert_eq!(err.kind(), "SizeGuard");
    let opts = E2Options { comma_guard: 3, ..E2Options::default() };
    assert_eq!(e2_page(&u, &trivial(u.source()), 2, &opts).unwrap_err().kind(), "SizeGuard");
}

#[test]
fn identity_coefficients_recover_d() {
    for (name, d) in fixtures() {
        let u = FinFunctor::identity(d.base().clone());
        let systems = coefficient_systems(&u, &d, 2, &E2Options::default()).unwrap();
        assert_eq!(systems[0].system.dims(), d.dims(), "{name}");
        for s in &systems[1..] {
            assert!(s.system.dims().iter().all(|&x| x == 0), "{name} q = {}", s.q);
        }
    }
}

#[test]
fn terminal_base_coefficients_are_total_cohomology() {
    for (name, d) in fixtures() {
        let u = FinFunctor::to_terminal(d.base().clone(), Arc::new(terminal())).unwrap();
        for q in 0..=2 {
            let s = coefficient_system(&u, &d, q, &E2Options::default()).unwrap();
            assert_eq!(s.system.dims(), &[bw_cohomology(&d, q).unwrap().dim()], "{name} q = {q}");
        }
    }
}

#[test]
fn identity_pages_degenerate_on_the_bottom_row() {
    for mode in [Mode::Cohomology, Mode::Homology] {
        for (name, d) in fixtures() {
            let u = FinFunctor::identity(d.base().clone());
            let page = e2_page(&u, &d, 3, &E2Options { mode, ..E2Options::default() }).unwrap();
            let g = dims(&page);
            for p in 0..=3 {
                assert_eq!(g[p][0], page.abutment[p].dim(), "{name} {mode:?} p = {p}");
                assert!(g[p][1..].iter().all(|&x| x == 0), "{name} {mode:?}");
            }
            let v = check_consistency(&page);
            assert!(v.passed(), "{name} {mode:?}: {:?}", v.violations);
            assert_eq!(v.degenerate, Degeneration::Row);
        }
    }
}

#[test]
fn terminal_base_pages_degenerate_on_the_first_column() {
    for mode in [Mode::Cohomology, Mode::Homology] {
        for (name, d) in fixtures() {
            let u = FinFunctor::to_terminal(d.base().clone(), Arc::new(terminal())).unwrap();
            let page = e2_page(&u, &d, 3, &E2Options { mode, ..E2Options::default() }).unwrap();
            let g = dims(&page);
            for q in 0..=3 {
                assert_eq!(g[0][q], page.abutment[q].dim(), "{name} {mode:?} q = {q}");
            }
            assert!(g[1..].iter().flatten().all(|&x| x == 0), "{name} {mode:?}");
            let v = check_consistency(&page);
            assert!(v.passed(), "{name} {mode:?}: {:?}", v.violations);
            assert_ne!(v.degenerate, Degeneration::None);
        }
    }
}

#[test]
fn swap_page_collapses_to_origin() {
    let u = swap_functor();
    let page = e2_page(&u, &trivial(u.source()), 3, &E2Options::default()).unwrap();
    let g = dims(&page);
    for (p, col) in g.iter().enumerate() {
        for (q, &x) in col.iter().enumerate() {
            assert_eq!(x, usize::from(p == 0 && q == 0), "({p}, {q})");
        }
    }
    assert_eq!(page.abutment_dims(), vec![1, 0, 0, 0]);
    assert!(check_consistency(&page).passed());
}

#[test]
fn swap_q0_coefficient_is_the_permutation_module() {
    let u = swap_functor();
    let s = coefficient_system(&u, &trivial(u.source()), 0, &E2Options::default()).unwrap();
    assert_eq!(s.system.dims(), &[2, 2]);
    // (g, g) is an automorphism of e in F B and swaps the two comma components.
    let a = s.system.action(0, 1, 1).unwrap();
    assert!(!a.is_identity());
    assert!(a.mul(&a).unwrap().is_identity());
    // lim over BZ/2 of the permutation module is one-dimensional.
    let fb = factorization(u.target().clone()).unwrap();
    let h0 = module_cohomology(&s.system.to_fc_module(&fb).unwrap(), 0).unwrap();
    assert_eq!(h0.dim(), 1);
}

#[test]
fn tampered_page_fails_with_location() {
    let d = trivial(&Arc::new(arrow()));
    let u = FinFunctor::identity(d.base().clone());
    let mut page = e2_page(&u, &d, 3, &E2Options::default()).unwrap();
    assert!(check_consistency(&page).passed());
    page.grid[1][0] = GroupPresentation::free(F2, page.grid[1][0].dim() + 1);
    let v = check_consistency(&page);
    assert!(!v.passed());
    assert!(v.violations.iter().any(|s| s.starts_with("n = 1:")), "{:?}", v.violations);
    assert_eq!(v.to_json().euler, "PASS");

    let mut page = e2_page(&u, &d, 3, &E2Options::default()).unwrap();
    page.abutment[2] = GroupPresentation::free(F2, 1);
    let v = check_consistency(&page);
    assert!(!v.inequalities);
    assert_eq!(v.to_json().inequalities, "FAIL");
}

#[test]
fn euler_applies_only_without_loops() {
    let chain = Arc::new(chain_poset(2).unwrap());
    let collapse = FinFunctor::to_terminal(chain.clone(), Arc::new(terminal())).unwrap();
    let page = e2_page(&collapse, &zc(&chain), 2, &E2Options::default()).unwrap();
    assert_eq!(check_consistency(&page).euler, Some(true));
    let bz2 = Arc::new(cyclic_group(2).unwrap());
    let page = e2_page(&FinFunctor::identity(bz2.clone()), &trivial(&bz2), 2, &E2Options::default()).unwrap();
    assert_eq!(check_consistency(&page).euler, None);
}

#[test]
fn integer_coefficients_are_rejected() {
    let c = Arc::new(arrow());
    let d = NaturalSystem::trivial(c.clone(), Ring::Int, 1).unwrap();
    let err = e2_page(&FinFunctor::identity(c), &d, 2, &E2Options::default()).unwrap_err();
    assert_eq!(err.kind(), "RingNotField");
}

#[test]
fn report_lists_the_triangle() {
    let d = trivial(&Arc::new(arrow()));
    let page = e2_page(&FinFunctor::identity(d.base().clone()), &d, 2, &E2Options::default()).unwrap();
    let report = E2Report::new(&page, &check_consistency(&page));
    assert_eq!(report.grid.len(), 6);
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["N"], 2);
    assert_eq!(json["ring"], "Fp:2");
    assert_eq!(json["verdict"]["degenerate"], "row");
}

#[test]
fn rationals_match_prime_field_on_trivial_coefficients() {
    let u = swap_functor();
    let d = NaturalSystem::trivial(u.source().clone(), Ring::Rat, 1).unwrap();
    let page = e2_page(&u, &d, 2, &E2Options::default()).unwrap();
    assert_eq!(page.abutment_dims(), vec![1, 0, 0]);
    assert_eq!(dims(&page)[0][0], 1);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, .. ProptestConfig::default() })]

    #[test]
    fn random_pages_satisfy_the_inequality(seed in 0u64..1_000_000) {
        let (u, d) = random_instance(seed, 8).unwrap();
        for mode in [Mode::Cohomology, Mode::Homology] {
            let page = e2_page(&u, &d, 2, &E2Options { mode, ..E2Options::default() }).unwrap();
            let v = check_consistency(&page);
            prop_assert!(v.inequalities, "{:?}", v.violations);
            prop_assert!(v.euler != Some(false), "{:?}", v.violations);
        }
    }
}
