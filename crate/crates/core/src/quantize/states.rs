//! U(1)-valued cochains and the finite inner product.

use num_traits::One;

use super::integrate::integrate;
use super::phase::{Phase, PhaseSum, Scale};
use crate::error::{Error, Result};
use crate::homology::ObsComplex;
use crate::rational::Q;

/// A phase on every simplex of stratum `level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateCochain {
    pub level: usize,
    pub values: Vec<Phase>,
}

impl StateCochain {
    pub fn constant(cx: &ObsComplex, level: usize, phase: Phase) -> Self {
        StateCochain { level, values: vec![phase; cx.stratum(level).len()] }
    }

    pub fn rotate(&self, phase: &Phase) -> Self {
        StateCochain { level: self.level, values: self.values.iter().map(|p| p * phase).collect() }
    }

    fn check(&self, cx: &ObsComplex, level: usize, what: &str) -> Result<()> {
        let len = cx.stratum(level).len();
        if self.level != level || self.values.len() != len {
            return Err(Error::InvalidInput(format!(
                "{what} has {} values at level {}, stratum {level} has {len}",
                self.values.len(),
                self.level
            )));
        }
        Ok(())
    }
}

/// The kernel `e^{iK}` on stratum `level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelCochain {
    pub level: usize,
    pub values: Vec<Phase>,
    /// `δe^{iK} = 1` on every simplex of stratum `level + 1` (on every solid when `level = n`).
    pub cocycle: bool,
}

impl KernelCochain {
    /// Wraps given phases and evaluates the cocycle condition.
    pub fn new(cx: &ObsComplex, level: usize, values: Vec<Phase>) -> Result<Self> {
        let len = cx.stratum(level).len();
        if values.len() != len {
            return Err(Error::InvalidInput(format!("kernel has {} values, stratum {level} has {len}", values.len())));
        }
        let cocycle = coboundary_phases(cx, level, &values).iter().all(|p| p.is_identity());
        Ok(KernelCochain { level, values, cocycle })
    }
}

fn alternating_product(values: &[Phase], faces: impl Iterator<Item = (usize, usize)>) -> Phase {
    faces.fold(Phase::identity(), |acc, (i, s)| {
        let p = &values[s];
        &acc * &if i % 2 == 0 { p.clone() } else { p.inverse() }
    })
}

/// `(δφ)(τ) = ∏_i φ(d_i τ)^{(−1)^i}` over stratum `level + 1`; at the top
/// level, over the solids of the complex.
pub fn coboundary_phases(cx: &ObsComplex, level: usize, values: &[Phase]) -> Vec<Phase> {
    let up = level + 1;
    if level == cx.plectic().n() {
        return (0..cx.solids().len())
            .map(|t| alternating_product(values, cx.solid_faces(t).iter().copied().enumerate()))
            .collect();
    }
    (0..cx.stratum(up).len())
        .map(|t| alternating_product(values, cx.faces_of(up, t).iter().copied()))
        .collect()
}

/// `K(σ) = s·∫_σ α_σ` on stratum `k + 1`, from the canonical form of each simplex.
pub fn kernel_from_theta(cx: &ObsComplex, k: usize, scale: &Scale) -> Result<KernelCochain> {
    let level = k + 1;
    if level > cx.plectic().n() {
        return Err(Error::InvalidInput(format!("no stratum {level} for n = {}", cx.plectic().n())));
    }
    let values = cx
        .stratum(level)
        .iter()
        .map(|x| integrate(x.alpha(), x.simplex()).map(|v| scale.phase(&v)))
        .collect::<Result<Vec<_>>>()?;
    KernelCochain::new(cx, level, values)
}

/// `Σ_τ conj(ψ_f(d_0 τ)) e^{iK(τ)} ψ_i(d_{k+1} τ)` over stratum `k + 1`.
pub fn inner_product(cx: &ObsComplex, psi_f: &StateCochain, psi_i: &StateCochain, kernel: &KernelCochain) -> Result<PhaseSum> {
    let k = psi_f.level;
    psi_f.check(cx, k, "final state")?;
    psi_i.check(cx, k, "initial state")?;
    if kernel.level != k + 1 || kernel.values.len() != cx.stratum(k + 1).len() {
        return Err(Error::InvalidInput(format!("kernel at level {} does not match states at level {k}", kernel.level)));
    }
    let mut sum = PhaseSum::zero();
    for (t, phase) in kernel.values.iter().enumerate() {
        let faces = cx.faces_of(k + 1, t);
        let face = |j: usize| faces.iter().find(|&&(i, _)| i == j).map(|&(_, s)| s).expect("all faces recorded");
        let fin = &psi_f.values[face(0)];
        let ini = &psi_i.values[face(k + 1)];
        sum.add_term(&(&fin.inverse() * phase) * ini, Q::one());
    }
    Ok(sum)
}
