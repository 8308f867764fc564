//! Exact computations with observables on n-plectic coordinate charts.

pub mod error;
pub mod exterior;
pub mod homology;
pub mod json;
pub mod linalg;
pub mod linfty;
pub mod observables;
pub mod properties;
pub mod quantize;
pub mod random;
pub mod rational;
pub mod selftest;

pub use error::{Error, Result};
pub use exterior::{Chart, Form, MultiVec, Permutation, Poly};
pub use rational::Q;
