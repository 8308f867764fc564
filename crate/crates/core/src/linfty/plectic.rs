use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::{combinations, ext_d, homotopy_primitive, interior, lie_derivative, Form, MultiVec, Poly};
use crate::linalg::{rank, solve, Matrix};
use crate::rational::Q;

/// A closed `(n+1)`-form on a chart, nondegenerate at the recorded sample points.
#[derive(Clone, PartialEq, Eq)]
pub struct Plectic {
    n: usize,
    omega: Form,
    samples: Vec<Vec<Q>>,
}

impl Plectic {
    /// Validates `dω = 0` and nondegeneracy at each sample (the origin when none given).
    pub fn new(omega: Form, samples: Vec<Vec<Q>>) -> Result<Self> {
        let dim = omega.dim();
        if omega.degree() < 2 {
            return Err(Error::InvalidInput(format!("n-plectic form needs degree ≥ 2, got {}", omega.degree())));
        }
        let d = ext_d(&omega);
        if !d.is_zero() {
            return Err(Error::NotClosed { residual: d.to_string() });
        }
        let samples = if samples.is_empty() { vec![vec![Q::zero(); dim]] } else { samples };
        let pl = Plectic { n: omega.degree() - 1, omega, samples };
        for p in &pl.samples {
            if p.len() != dim {
                return Err(Error::DimensionMismatch(format!("sample point {p:?} in dimension {dim}")));
            }
            let r = pl.contraction_rank_at(p);
            if r != dim {
                return Err(Error::InvalidInput(format!(
                    "ω is degenerate at {}: v ↦ ι_v ω has rank {r} < {dim}",
                    crate::rational::format_point(p)
                )));
            }
        }
        Ok(pl)
    }

    /// `dx_1 ∧ … ∧ dx_dim`, an `(dim−1)`-plectic form.
    pub fn volume(dim: usize) -> Self {
        let idx: Vec<usize> = (0..dim).collect();
        Plectic::new(Form::basis(dim, &idx), vec![]).expect("volume form is n-plectic")
    }

    pub fn dim(&self) -> usize {
        self.omega.dim()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    pub fn samples(&self) -> &[Vec<Q>] {
        &self.samples
    }

    fn contraction_rank_at(&self, p: &[Q]) -> usize {
        let at = self.omega.eval_at(p);
        let basis = combinations(self.dim(), self.n);
        let rows: Matrix = (0..self.dim())
            .map(|i| {
                let c = interior(&MultiVec::unit(self.dim(), i), &at).expect("same chart");
                basis.iter().map(|idx| c.coefficient(idx).constant_term()).collect()
            })
            .collect();
        rank(&rows, basis.len())
    }

    /// `ι_v ω`.
    pub fn contract(&self, v: &MultiVec) -> Result<Form> {
        interior(v, &self.omega)
    }

    /// Checks `L_v ω = 0`, returning the residual otherwise.
    pub fn check_hamiltonian_field(&self, v: &MultiVec) -> Result<()> {
        let l = lie_derivative(v, &self.omega)?;
        if l.is_zero() {
            Ok(())
        } else {
            Err(Error::NotHamiltonian(format!("L_v ω = {l} for v = {v}")))
        }
    }

    /// A `k`-vector field `v` with `ι_v ω = −dα`, for constant `ω`.
    ///
    /// Solved coefficientwise; errors when `ω` has non-constant coefficients or
    /// when `dα` is not in the image of the contraction.
    pub fn hamiltonian_field(&self, alpha: &Form, k: usize) -> Result<MultiVec> {
        if !self.omega.is_constant() {
            return Err(Error::InvalidInput("Hamiltonian field solve needs constant ω".into()));
        }
        if alpha.degree() + k != self.n {
            return Err(Error::InvalidInput(format!(
                "a {k}-vector field pairs with ({})-forms, got degree {}",
                self.n as i64 - k as i64,
                alpha.degree()
            )));
        }
        let dim = self.dim();
        let target = -&ext_d(alpha);
        let vec_basis = combinations(dim, k);
        let form_basis = combinations(dim, self.n + 1 - k);
        // columns: ι_{∂_I} ω for each k-subset I
        let images: Vec<Form> = vec_basis.iter().map(|idx| self.contract(&MultiVec::basis(dim, idx))).collect::<Result<_>>()?;
        let m: Matrix = form_basis
            .iter()
            .map(|j| images.iter().map(|img| img.coefficient(j).constant_term()).collect())
            .collect();
        let mut monomials: Vec<Vec<u32>> = target.terms().flat_map(|(_, p)| p.terms().map(|(e, _)| e.clone())).collect();
        monomials.sort();
        monomials.dedup();
        let mut v = MultiVec::zero(dim, k);
        for e in monomials {
            let b: Vec<Q> = form_basis.iter().map(|j| target.coefficient(j).coefficient(&e)).collect();
            let x = solve(&m, vec_basis.len(), &b)
                .ok_or_else(|| Error::NotHamiltonian(format!("d α = {} is not a contraction of ω", -&target)))?;
            for (idx, c) in vec_basis.iter().zip(x) {
                v.add_term(idx.clone(), Poly::monomial(e.clone(), c));
            }
        }
        Ok(v)
    }
}

impl fmt::Debug for Plectic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Plectic(n = {}, ω = {})", self.n, self.omega)
    }
}

/// A Hamiltonian form together with its field, `dα = −ι_v ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamPair {
    pub alpha: Form,
    pub v: MultiVec,
}

impl HamPair {
    /// Validates `dα = −ι_v ω` and `L_v ω = 0`.
    pub fn new(plectic: &Plectic, alpha: Form, v: MultiVec) -> Result<Self> {
        alpha.check_same_chart(plectic.omega())?;
        v.check_same_chart(plectic.omega())?;
        if v.degree() == 0 || v.degree() > plectic.n() {
            return Err(Error::InvalidInput(format!(
                "Hamiltonian field degree must lie in 1..={}, got {}",
                plectic.n(),
                v.degree()
            )));
        }
        if !alpha.is_zero() && alpha.degree() + v.degree() != plectic.n() {
            return Err(Error::InvalidInput(format!(
                "form of degree {} cannot pair with a {}-vector field",
                alpha.degree(),
                v.degree()
            )));
        }
        let residual = &ext_d(&alpha) + &plectic.contract(&v)?;
        if !residual.is_zero() {
            return Err(Error::NotHamiltonian(format!("dα + ι_v ω = {residual}")));
        }
        plectic.check_hamiltonian_field(&v)?;
        let alpha = if alpha.is_zero() { Form::zero(alpha.dim(), plectic.n() - v.degree()) } else { alpha };
        Ok(HamPair { alpha, v })
    }

    /// Field degree `k`; the form has degree `n − k`.
    pub fn field_degree(&self) -> usize {
        self.v.degree()
    }
}

/// The canonical Hamiltonian form `α = −H(ι_v ω)` of a field with `L_v ω = 0`.
pub fn solve_hamiltonian(plectic: &Plectic, v: &MultiVec) -> Result<HamPair> {
    if v.degree() == 0 || v.degree() > plectic.n() {
        return Err(Error::InvalidInput(format!(
            "Hamiltonian field degree must lie in 1..={}, got {}",
            plectic.n(),
            v.degree()
        )));
    }
    plectic.check_hamiltonian_field(v)?;
    let c = plectic.contract(v)?;
    let alpha = -&homotopy_primitive(&c)?;
    HamPair::new(plectic, alpha, v.clone())
}
