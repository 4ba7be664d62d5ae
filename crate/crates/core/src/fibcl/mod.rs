//! Grothendieck constructions of strict actions G: B^op → Cat, their fibers and
//! cleavages, locality of natural systems, and Cartan-Leray pages for group actions.

mod action;
mod cartan;
mod fibration;
mod fixtures;
mod locality;

pub use action::{load_action, RawActionMap, RawStrictAction, StrictAction};
pub use cartan::{
    cartan_leray, check_cartesian_inverting, coefficient_modules, is_free, orbit_category, CartanLeray,
    CartanLerayReport, CoefficientModule, CoefficientModuleJson,
};
pub use fibration::{grothendieck, FiberData, Fibration};
pub use fixtures::{identity_action, non_inverting_fixture, nonlocal_fixture, swap_action, trivial_group_action};
pub use locality::{is_local, LocalStatus, LocalityEntry, LocalityJson, LocalityReport};

#[cfg(test)]
mod tests;
