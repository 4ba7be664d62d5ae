//! Exact linear algebra over ℤ, ℚ and F_p.

pub mod complex;
pub mod field;
pub mod induced;
pub mod matrix;
pub mod presentation;
pub mod reduce;
pub mod ring;
pub mod snf;
pub mod sparse;

pub use complex::{Complex, DegreeResult, Grading};
pub use induced::{induced_map, HomologyBasis};
pub use matrix::ExactMatrix;
pub use presentation::GroupPresentation;
pub use ring::Ring;
pub use snf::{invariant_factors, smith_normal_form, Smith};
pub use sparse::SparseMatrix;

/// (Co)homology of `complex` in degree `n`.
pub fn cohomology_at(complex: &Complex, n: usize) -> crate::Result<DegreeResult> {
    complex.homology_at(n)
}
