//! Transition functions, gerbe cocycles and the prequantum condition.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::integrate::integrate;
use super::phase::{Phase, Scale};
use crate::error::{Error, Result};
use crate::exterior::{ext_d, Form};
use crate::linfty::Plectic;
use crate::observables::AffSimplex;
use crate::rational::{frac, Q};

/// `e^{i·s·∫_edge α}`.
pub fn transition_phase(alpha: &Form, edge: &AffSimplex, scale: &Scale) -> Result<Phase> {
    if edge.dim() != 1 {
        return Err(Error::InvalidInput(format!("transition along a {}-simplex", edge.dim())));
    }
    Ok(scale.phase(&integrate(alpha, edge)?))
}

/// `e^{i·s·∫_σ θ}` for an `n`-form `θ` on an `n`-simplex.
pub fn gerbe_cocycle(theta: &Form, simplex: &AffSimplex, scale: &Scale) -> Result<Phase> {
    Ok(scale.phase(&integrate(theta, simplex)?))
}

/// A formal integer combination of simplices.
pub type Chain = Vec<(i64, AffSimplex)>;

/// Sorted vertices and the sign of the sorting permutation.
fn oriented(s: &AffSimplex) -> (Vec<Vec<Q>>, i64) {
    let mut vs = s.vertices().to_vec();
    let mut sign = 1;
    for i in 0..vs.len() {
        for j in 0..vs.len() - 1 - i {
            if vs[j] > vs[j + 1] {
                vs.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    (vs, sign)
}

/// The boundary of a chain, with oriented simplices identified.
pub fn chain_boundary(chain: &Chain) -> BTreeMap<Vec<Vec<Q>>, i64> {
    let mut out = BTreeMap::new();
    for (c, s) in chain {
        if s.dim() == 0 {
            continue;
        }
        for i in 0..=s.dim() {
            let (vs, sign) = oriented(&s.face(i));
            let e: &mut i64 = out.entry(vs).or_default();
            *e += c * sign * if i % 2 == 0 { 1 } else { -1 };
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    /// False for a lone simplex, which is checked on its own.
    pub closed: bool,
    /// `∫_c ω`.
    pub integral: Q,
    /// `s·∫_c ω / 2π`, split into its rational and residual parts.
    pub multiple: Q,
    pub residual: Q,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrequantumReport {
    pub cycles: Vec<CycleReport>,
}

impl PrequantumReport {
    pub fn passed(&self) -> bool {
        self.cycles.iter().all(|c| c.passed)
    }

    /// First failing cycle and its multiple of `2π`.
    pub fn witness(&self) -> Option<(usize, &Q)> {
        self.cycles.iter().position(|c| !c.passed).map(|i| (i, &self.cycles[i].multiple))
    }
}

/// Checks `s·∫_c ω ∈ 2πZ` on closed `(n+1)`-chains and on lone `(n+1)`-simplices.
pub fn prequantum_check(plectic: &Plectic, cycles: &[Chain], scale: &Scale) -> Result<PrequantumReport> {
    let mut out = Vec::new();
    for (idx, chain) in cycles.iter().enumerate() {
        if let Some((_, s)) = chain.iter().find(|(_, s)| s.dim() != plectic.n() + 1) {
            return Err(Error::InvalidInput(format!("cycle {idx} contains the {}-simplex {s}", s.dim())));
        }
        let b = chain_boundary(chain);
        let single = matches!(chain.as_slice(), [(c, _)] if c.abs() == 1);
        if !b.is_empty() && !single {
            return Err(Error::InvalidInput(format!("chain {idx} is not closed: {} boundary faces remain", b.len())));
        }
        let mut integral = Q::zero();
        for (c, s) in chain {
            integral += Q::from_integer((*c).into()) * integrate(plectic.omega(), s)?;
        }
        let multiple = &scale.turns * &integral;
        let residual = &scale.radians * &integral;
        let passed = multiple.is_integer() && residual.is_zero();
        out.push(CycleReport { closed: b.is_empty(), integral, multiple, residual, passed });
    }
    Ok(PrequantumReport { cycles: out })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityReport {
    /// `c_{jkl} c_{ikl}^{-1} c_{ijl} c_{ijk}^{-1}`, face `i` first.
    pub faces: Vec<Phase>,
    pub product: Phase,
    /// `e^{i·s·∫ ω}` over the tetrahedron.
    pub expected: Phase,
    /// Fractional part of the product's turns.
    pub defect: Q,
}

impl AssociativityReport {
    pub fn stokes_holds(&self) -> bool {
        self.product == self.expected
    }

    pub fn is_trivial(&self) -> bool {
        self.product.is_identity()
    }
}

/// The alternating product of the face cocycles of an `(n+1)`-simplex for a global primitive `θ`.
pub fn cocycle_associativity(plectic: &Plectic, theta: &Form, simplex: &AffSimplex, scale: &Scale) -> Result<AssociativityReport> {
    let n = plectic.n();
    if simplex.dim() != n + 1 || theta.degree() != n {
        return Err(Error::InvalidInput(format!(
            "needs an {n}-form on an {}-simplex, got a {}-form on a {}-simplex",
            n + 1,
            theta.degree(),
            simplex.dim()
        )));
    }
    if ext_d(theta) != *plectic.omega() {
        return Err(Error::Verification(format!("dθ = {} is not ω", ext_d(theta))));
    }
    let mut faces = Vec::new();
    let mut product = Phase::identity();
    for i in 0..=simplex.dim() {
        let c = gerbe_cocycle(theta, &simplex.face(i), scale)?;
        product = &product * &if i % 2 == 0 { c.clone() } else { c.inverse() };
        faces.push(c);
    }
    let expected = scale.phase(&integrate(plectic.omega(), simplex)?);
    let defect = frac(product.turns());
    Ok(AssociativityReport { faces, product, expected, defect })
}
