//! The semi-simplicial set of observables on affine simplices.

mod horn;
pub mod identities;
mod simplex;
pub mod subspace;

pub use horn::{horn_fill, Horn};
pub use simplex::{
    check_face_identity, face_map, face_normal, make_obs, path_shift, AffSimplex, FaceIdentityReport, ObsSimplex, PathEnd,
    PathShift,
};
