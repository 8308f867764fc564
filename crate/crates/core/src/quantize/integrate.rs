//! Exact integrals of polynomial forms over affine simplices.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::{ext_d, pullback_affine, Form, Poly};
use crate::observables::AffSimplex;
use crate::rational::{factorial, Q};

/// `∫_{Δ^k} t^a dt = ∏ a_i! / (k + Σ a_i)!`.
pub fn dirichlet(exponents: &[u32]) -> Q {
    let k = exponents.len() as u32;
    let num = exponents.iter().fold(num_bigint::BigInt::from(1), |acc, &a| acc * factorial(a));
    let total: u32 = exponents.iter().sum();
    Q::new(num, factorial(k + total))
}

/// Integral of a polynomial over the standard simplex in its own variables.
pub fn integrate_poly(p: &Poly) -> Q {
    p.terms().fold(Q::zero(), |acc, (e, c)| acc + c * dirichlet(e))
}

/// `∫_{Δ^p} σ* a` for the affine simplex `σ`, oriented by its vertex order.
pub fn integrate(a: &Form, simplex: &AffSimplex) -> Result<Q> {
    let p = simplex.dim();
    if a.degree() != p {
        return Err(Error::InvalidInput(format!("a {}-form cannot be integrated over a {p}-simplex", a.degree())));
    }
    if a.dim() != simplex.chart_dim() {
        return Err(Error::DimensionMismatch(format!(
            "form on dimension {} and simplex in dimension {}",
            a.dim(),
            simplex.chart_dim()
        )));
    }
    let pb = pullback_affine(a, &simplex.affine_map())?;
    let top: Vec<usize> = (0..p).collect();
    Ok(integrate_poly(&pb.coefficient(&top)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StokesReport {
    /// `(−1)^i ∫_{d_i σ} a`.
    pub boundary_terms: Vec<Q>,
    pub boundary: Q,
    /// `∫_σ da`.
    pub interior: Q,
}

impl StokesReport {
    pub fn holds(&self) -> bool {
        self.boundary == self.interior
    }
}

/// Both sides of `Σ_i (−1)^i ∫_{face_i} a = ∫_σ da`.
pub fn stokes_check(a: &Form, simplex: &AffSimplex) -> Result<StokesReport> {
    if simplex.dim() != a.degree() + 1 {
        return Err(Error::InvalidInput(format!(
            "Stokes for a {}-form needs a {}-simplex, got dimension {}",
            a.degree(),
            a.degree() + 1,
            simplex.dim()
        )));
    }
    let mut boundary_terms = Vec::new();
    for i in 0..=simplex.dim() {
        let v = integrate(a, &simplex.face(i))?;
        boundary_terms.push(if i % 2 == 0 { v } else { -v });
    }
    let boundary = boundary_terms.iter().fold(Q::zero(), |acc, x| acc + x);
    let interior = integrate(&ext_d(a), simplex)?;
    Ok(StokesReport { boundary_terms, boundary, interior })
}
