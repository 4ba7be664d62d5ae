//! Exact (co)homology of finite categories with natural-system coefficients.
//!
//! The crate is organised bottom-up:
//!
//! * [`fincat`]: finite categories, functors, nerves, factorization and comma categories.
//! * [`exactalg`]: exact linear algebra over ℤ, ℚ and F_p (Smith normal form, complexes).
//! * [`natsys`]: natural systems, bimodules and modules as finite data.
//! * [`homcalc`]: Baues-Wirsching cochain complexes, bar complexes, limits and colimits.
//! * [`andre`]: comma-category coefficient systems and E2 pages of functor spectral sequences.
//! * [`fibcl`]: Grothendieck constructions, fiber data, locality and Cartan-Leray pages.

pub mod andre;
pub mod error;
pub mod exactalg;
pub mod fibcl;
pub mod fincat;
pub mod homcalc;
pub mod natsys;
pub mod par;

pub use error::{Error, Result};
