use std::sync::Arc;

use proptest::prelude::*;

use super::json::RawNaturalSystem;
use super::*;
use crate::fincat::json::parse_str;
use crate::fincat::{arrow, chain_poset, cyclic_group, factorization, terminal, walking_iso, FinFunctor};

fn mat(ring: Ring, r: usize, c: usize, e: &[i64]) -> ExactMatrix {
    ExactMatrix::from_i64(ring, r, c, e).unwrap()
}

/// D(f) = R² with α^* = P_α, β_* = P_β, P the regular permutation representation.
fn regular_bz2(ring: Ring) -> NaturalSystem {
    let c = Arc::new(cyclic_group(2).unwrap());
    let p = |x: u32| if x == 0 { mat(ring, 2, 2, &[1, 0, 0, 1]) } else { mat(ring, 2, 2, &[0, 1, 1, 0]) };
    let right = c.pairs().map(|(_, a)| p(a)).collect();
    let left = c.pairs().map(|(b, _)| p(b)).collect();
    NaturalSystem::new(c, ring, vec![2, 2], right, left).unwrap()
}

#[test]
fn trivial_systems_are_valid() {
    for c in [terminal(), arrow(), walking_iso(), cyclic_group(3).unwrap(), chain_poset(2).unwrap()] {
        let d = NaturalSystem::trivial(Arc::new(c), Ring::Int, 1).unwrap();
        assert!(d.dims().iter().all(|&x| x == 1));
    }
}

#[test]
fn regular_representation_and_a_perturbed_copy() {
    let d = regular_bz2(Ring::Int);
    let c = d.base().clone();
    let mut right: Vec<ExactMatrix> = c.pairs().map(|(f, a)| d.right(f, a).clone()).collect();
    let left: Vec<ExactMatrix> = c.pairs().map(|(b, f)| d.left(b, f).clone()).collect();
    right[c.pair_index(0, 1)] = mat(Ring::Int, 2, 2, &[1, 1, 0, 1]);
    let err = NaturalSystem::new(c, Ring::Int, vec![2, 2], right, left).unwrap_err();
    assert_eq!(err.kind(), "FunctorialityViolation");
}

#[test]
fn bimodule_examples() {
    let c = Arc::new(cyclic_group(2).unwrap());
    let triv = NaturalSystem::from_bimodule(&Bimodule::constant(c.clone(), Ring::Int, 1).unwrap()).unwrap();
    assert_eq!(triv, NaturalSystem::trivial(c.clone(), Ring::Int, 1).unwrap());
    let zc = NaturalSystem::from_bimodule(&zc_bimodule(c, Ring::Int).unwrap()).unwrap();
    assert_eq!(zc.dims(), &[2, 2]);
    let a = Arc::new(arrow());
    let zc = zc_bimodule(a.clone(), Ring::Int).unwrap();
    assert_eq!(zc.dim(1, 0), 0);
    assert_eq!(NaturalSystem::from_bimodule(&zc).unwrap().dims(), &[1, 1, 1]);
}

#[test]
fn module_examples() {
    let a = Arc::new(arrow());
    let f = a.morphism_id("0<1").unwrap();
    let mut ms = vec![mat(Ring::Int, 1, 1, &[1]); 3];
    ms[f as usize] = mat(Ring::Int, 1, 1, &[2]);
    let m = Module::new(a.clone(), Ring::Int, vec![1, 1], ms).unwrap();
    assert!(!m.is_local());
    let d = NaturalSystem::from_module(&m).unwrap();
    assert_eq!(d.dim(f), 1);
    assert_eq!(*d.left(f, a.identity(0)), mat(Ring::Int, 1, 1, &[2]));
    let c = Arc::new(cyclic_group(2).unwrap());
    let sign = Module::new(c.clone(), Ring::Int, vec![1], vec![mat(Ring::Int, 1, 1, &[1]), mat(Ring::Int, 1, 1, &[-1])]).unwrap();
    assert!(sign.is_local());
    let constant = Module::constant(c.clone(), Ring::Int, 3).unwrap();
    assert_eq!(NaturalSystem::from_module(&constant).unwrap(), NaturalSystem::trivial(c, Ring::Int, 3).unwrap());
}

#[test]
fn pullback_examples() {
    let d = regular_bz2(Ring::Int);
    let id = FinFunctor::identity(d.base().clone());
    assert_eq!(d.pullback(&id).unwrap(), d);
    let w = Arc::new(walking_iso());
    let t = Arc::new(terminal());
    let to_t = FinFunctor::to_terminal(w, t.clone()).unwrap();
    let p = NaturalSystem::trivial(t, Ring::Int, 1).unwrap().pullback(&to_t).unwrap();
    assert_eq!(p.dims(), &[1, 1, 1, 1]);
    // Inversion on ℤ/2 is the identity map g ↦ g.
    let c = d.base().clone();
    let inv = FinFunctor::new(c.clone(), c, vec![0], vec![0, 1]).unwrap();
    assert_eq!(d.pullback(&inv).unwrap(), d);
}

#[test]
fn missing_map_and_roundtrip() {
    let d = regular_bz2(Ring::ModP(2));
    let raw = d.to_raw(true);
    let text = serde_json::to_string(&raw).unwrap();
    let back: RawNaturalSystem = parse_str(&text).unwrap();
    assert_eq!(NaturalSystem::from_raw(&back, d.base().clone()).unwrap(), d);
    let mut partial = raw.clone();
    partial.right.retain(|e| !(e.f == "e" && e.alpha == "g"));
    assert_eq!(NaturalSystem::from_raw(&partial, d.base().clone()).unwrap_err().kind(), "MissingStructureMap");
    let mut ids_only = raw;
    ids_only.right.retain(|e| e.alpha != "e");
    ids_only.left.retain(|e| e.beta != "e");
    assert_eq!(NaturalSystem::from_raw(&ids_only, d.base().clone()).unwrap(), d);
}

#[test]
fn factorization_module_roundtrip() {
    let d = regular_bz2(Ring::Rat);
    let fc = factorization(d.base().clone()).unwrap();
    let m = d.to_fc_module(&fc).unwrap();
    assert_eq!(NaturalSystem::from_fc_module(&fc, &m).unwrap(), d);
}

fn arb_module() -> impl Strategy<Value = Module> {
    // Modules on BZ/n acting through a power of a fixed invertible matrix, or on posets
    // through scalar multiples that compose.
    prop_oneof![
        (1usize..4, -3i64..4).prop_map(|(n, k)| {
            let c = Arc::new(cyclic_group(2 * n).unwrap());
            // g ↦ ±1 on ℤ with sign (-1)^k.
            let s = if k % 2 == 0 { 1 } else { -1 };
            let ms = (0..2 * n).map(|i| mat(Ring::Int, 1, 1, &[if i % 2 == 0 { 1 } else { s }])).collect();
            Module::new(c, Ring::Int, vec![1], ms).unwrap()
        }),
        (1usize..4, 0i64..4).prop_map(|(n, k)| {
            let c = Arc::new(chain_poset(n).unwrap());
            let ms = (0..c.num_morphisms() as u32)
                .map(|f| {
                    let gap = c.tgt(f) as u32 - c.src(f) as u32;
                    mat(Ring::Int, 1, 1, &[k.pow(gap)])
                })
                .collect();
            Module::new(c, Ring::Int, vec![1; n + 1], ms).unwrap()
        }),
    ]
}

proptest! {
    #[test]
    fn pullback_preserves_local_flag(m in arb_module()) {
        let c = m.base().clone();
        let t = Arc::new(terminal());
        // Pull back along an object inclusion of the terminal category and along the identity.
        let inc = FinFunctor::new(t, c.clone(), vec![0], vec![c.identity(0)]).unwrap();
        let p = m.pullback(&inc).unwrap();
        prop_assert!(p.is_local());
        let id = FinFunctor::identity(c);
        prop_assert_eq!(m.pullback(&id).unwrap().is_local(), m.is_local());
    }

    #[test]
    fn bimodule_pullback_commutes_with_pi_star(n in 1usize..4) {
        let c = Arc::new(cyclic_group(n).unwrap());
        let m = zc_bimodule(c.clone(), Ring::Int).unwrap();
        // Multiplication by k is an endomorphism of ℤ/n.
        for k in 0..n as u32 {
            let phi = FinFunctor::new(c.clone(), c.clone(), vec![0], (0..n as u32).map(|i| (i * k) % n as u32).collect()).unwrap();
            let lhs = NaturalSystem::from_bimodule(&m).unwrap().pullback(&phi).unwrap();
            let rhs = NaturalSystem::from_bimodule(&m.pullback(&phi).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn module_systems_validate(m in arb_module()) {
        let d = NaturalSystem::from_module(&m).unwrap();
        let fc = factorization(m.base().clone()).unwrap();
        let back = NaturalSystem::from_fc_module(&fc, &d.to_fc_module(&fc).unwrap()).unwrap();
        prop_assert_eq!(back, d);
    }
}
