//! Chain complexes of observable simplices.

mod complex;
pub mod identities;
pub mod smith;

pub use complex::{
    adiabatic_cochain, boundary, build_complex, build_complex_with_solids, coboundary_apply, cohomology, homology, BoundaryMatrix, Coefficients,
    HomologyResult, ObsComplex,
};
