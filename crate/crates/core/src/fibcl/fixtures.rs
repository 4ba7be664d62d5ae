use std::sync::Arc;

use super::{grothendieck, StrictAction};
use crate::error::Result;
use crate::exactalg::{ExactMatrix, Ring};
use crate::fincat::{arrow, cyclic_group, discrete, factorization, monoid_from_table, terminal, FinCat, FinFunctor};
use crate::natsys::{zc_bimodule, Module, NaturalSystem};

/// ℤ/n acting trivially on `c`.
pub fn trivial_group_action(n: usize, c: Arc<FinCat>) -> Result<StrictAction> {
    Ok(StrictAction::constant(Arc::new(cyclic_group(n)?), c))
}

/// ℤ/2 swapping the two objects of the discrete category on {0, 1}.
pub fn swap_action() -> Result<StrictAction> {
    let g = Arc::new(cyclic_group(2)?);
    let c = Arc::new(discrete(2));
    let swap = FinFunctor::new(c.clone(), c.clone(), vec![1, 0], vec![1, 0])?;
    StrictAction::new(g, vec![c.clone()], vec![FinFunctor::identity(c), swap])
}

/// Terminal fibers everywhere; the Grothendieck construction is B itself.
pub fn identity_action(b: Arc<FinCat>) -> StrictAction {
    StrictAction::constant(b, Arc::new(terminal()))
}

/// The product fibration arrow × arrow → arrow with F_2 coefficients supported on the
/// non-cartesian morphisms (identity maps between them, zero elsewhere).
pub fn nonlocal_fixture() -> Result<(StrictAction, NaturalSystem)> {
    let action = StrictAction::constant(Arc::new(arrow()), Arc::new(arrow()));
    let fib = grothendieck(&action)?;
    let e = fib.total.clone();
    let fe = factorization(e.clone())?;
    let ring = Ring::ModP(2);
    let support: Vec<bool> = (0..e.num_morphisms() as u32).map(|f| !fib.is_cartesian(f)).collect();
    let dims: Vec<usize> = support.iter().map(|&s| usize::from(s)).collect();
    let matrices = (0..fe.cat.num_morphisms() as u32)
        .map(|m| {
            let (s, t) = (fe.cat.src(m) as usize, fe.cat.tgt(m) as usize);
            if support[s] && support[t] {
                ExactMatrix::identity(ring, 1)
            } else {
                ExactMatrix::zeros(ring, dims[t], dims[s])
            }
        })
        .collect();
    let module = Module::new(fe.cat.clone(), ring, dims, matrices)?;
    Ok((action, NaturalSystem::from_fc_module(&fe, &module)?))
}

/// The idempotent monoid {e, a} acting trivially on the terminal category, with ℤC over F_2.
/// The lift of a is cartesian, and precomposition with a is not invertible on ℤC.
pub fn non_inverting_fixture() -> Result<(StrictAction, NaturalSystem)> {
    let m = Arc::new(monoid_from_table(&["e".to_string(), "a".to_string()], &[vec![0, 1], vec![1, 1]])?);
    let action = StrictAction::constant(m, Arc::new(terminal()));
    let fib = grothendieck(&action)?;
    let d = NaturalSystem::from_bimodule(&zc_bimodule(fib.total.clone(), Ring::ModP(2))?)?;
    Ok((action, d))
}
