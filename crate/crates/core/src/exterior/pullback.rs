//! Pullback of forms along affine maps `x = A t + b`.

use super::{combinations, Form, Poly};
use crate::error::{Error, Result};
use crate::linalg::{det, Matrix};
use crate::rational::Q;

/// An affine map `Q^source → Q^target`, `x = A t + b`, with `A` of shape target × source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: Matrix,
    pub offset: Vec<Q>,
}

impl AffineMap {
    pub fn new(matrix: Matrix, offset: Vec<Q>) -> Result<Self> {
        let source = matrix.first().map(|r| r.len()).unwrap_or(0);
        if matrix.len() != offset.len() || matrix.iter().any(|r| r.len() != source) {
            return Err(Error::DimensionMismatch(format!(
                "affine map with {} rows and offset of length {}",
                matrix.len(),
                offset.len()
            )));
        }
        Ok(AffineMap { matrix, offset })
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.first().map(|r| r.len()).unwrap_or(0)
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.len()
    }

    /// Coordinate functions `x_i(t)` as polynomials in the source variables.
    pub fn coordinates(&self) -> Vec<Poly> {
        let k = self.source_dim();
        self.matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, b)| {
                let mut p = Poly::constant(k, b.clone());
                for (j, a) in row.iter().enumerate() {
                    p.add_term(unit_exp(k, j), a.clone());
                }
                p
            })
            .collect()
    }

    pub fn apply(&self, t: &[Q]) -> Vec<Q> {
        self.matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, b)| row.iter().zip(t).fold(b.clone(), |acc, (a, x)| acc + a * x))
            .collect()
    }

    /// `A v` for a tangent vector `v` of the source.
    pub fn push_vector(&self, v: &[Q]) -> Vec<Q> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).fold(Q::from_integer(0.into()), |acc, (a, x)| acc + a * x))
            .collect()
    }
}

fn unit_exp(k: usize, j: usize) -> Vec<u32> {
    let mut e = vec![0; k];
    e[j] = 1;
    e
}

/// `φ* a` for the affine map `φ`; `dx_I ↦ Σ_J det A[I, J] dt_J`.
pub fn pullback_affine(a: &Form, map: &AffineMap) -> Result<Form> {
    if a.dim() != map.target_dim() {
        return Err(Error::DimensionMismatch(format!(
            "form on a chart of dimension {} pulled back along a map into dimension {}",
            a.dim(),
            map.target_dim()
        )));
    }
    let k = map.source_dim();
    let p = a.degree();
    let mut out = Form::zero(k, p);
    if p > k {
        return Ok(out);
    }
    let coords = map.coordinates();
    let targets = combinations(k, p);
    for (idx, f) in a.terms() {
        let g = if k == 0 { Poly::constant(0, f.eval(&map.offset)) } else { f.compose(&coords) };
        for cols in &targets {
            let minor: Matrix = idx.iter().map(|&i| cols.iter().map(|&j| map.matrix[i][j].clone()).collect()).collect();
            let c = det(&minor);
            out.add_term(cols.clone(), g.scale(&c));
        }
    }
    Ok(out)
}
