//! The Lie n-algebra of observables and its u-extended brackets.

mod brackets;
pub mod checks;
mod element;
pub mod identities;
mod plectic;

pub use brackets::{bracket, ham_of_l2, l1, l1_with, lk, lk_with, BracketConvention};
pub use checks::{check_jacobi, check_skew, heisenberg_check, verify_lemma31, JacobiMode, JacobiReport};
pub use element::{u_shift, Part, UElement};
pub use plectic::{solve_hamiltonian, HamPair, Plectic};
