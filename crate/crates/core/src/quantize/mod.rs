//! Integration, gerbe data and cochain states.

mod gerbe;
pub mod identities;
mod integrate;
mod phase;
mod states;

pub use gerbe::{
    chain_boundary, cocycle_associativity, gerbe_cocycle, prequantum_check, transition_phase, AssociativityReport, Chain,
    CycleReport, PrequantumReport,
};
pub use integrate::{dirichlet, integrate, integrate_poly, stokes_check, StokesReport};
pub use phase::{Phase, PhaseSum, Scale};
pub use states::{coboundary_phases, inner_product, kernel_from_theta, KernelCochain, StateCochain};
