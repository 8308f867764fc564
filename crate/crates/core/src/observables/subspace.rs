//! Rational subspaces given by spanning lists of vectors.

use num_traits::{Signed, Zero};

use crate::linalg::{nullspace, rank, rref, Matrix};
use crate::rational::{gcd_of_numerators, lcm_of_denominators, Q};

/// Positive rescaling to a primitive integer vector; the zero vector is kept.
pub fn primitive(v: &[Q]) -> Vec<Q> {
    if v.iter().all(|x| x.is_zero()) {
        return v.to_vec();
    }
    let l = Q::from_integer(lcm_of_denominators(v));
    let scaled: Vec<Q> = v.iter().map(|x| x * &l).collect();
    let g = Q::from_integer(gcd_of_numerators(&scaled).abs());
    scaled.iter().map(|x| x / &g).collect()
}

/// Reduced echelon basis of the span, each row made primitive.
pub fn canonical_basis(vs: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    let (rows, _) = rref(&vs.to_vec(), dim);
    rows.iter().map(|r| primitive(r)).collect()
}

pub fn dimension(vs: &[Vec<Q>], dim: usize) -> usize {
    if vs.is_empty() {
        0
    } else {
        rank(&vs.to_vec(), dim)
    }
}

pub fn contains(vs: &[Vec<Q>], x: &[Q], dim: usize) -> bool {
    let mut ext = vs.to_vec();
    ext.push(x.to_vec());
    dimension(&ext, dim) == dimension(vs, dim)
}

/// Basis of `span(a) ∩ span(b)`.
pub fn intersect(a: &[Vec<Q>], b: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    let a = canonical_basis(a, dim);
    let b = canonical_basis(b, dim);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Σ c_i a_i − Σ d_j b_j = 0, one row per coordinate
    let cols = a.len() + b.len();
    let m: Matrix = (0..dim)
        .map(|x| a.iter().map(|v| v[x].clone()).chain(b.iter().map(|v| -v[x].clone())).collect())
        .collect();
    let sols: Vec<Vec<Q>> = nullspace(&m, cols)
        .iter()
        .map(|c| {
            (0..dim)
                .map(|x| a.iter().zip(c).fold(Q::zero(), |acc, (v, ci)| acc + &v[x] * ci))
                .collect()
        })
        .collect();
    canonical_basis(&sols, dim)
}

/// Basis of `{x ∈ span(a) : x · w = 0 for all w ∈ ws}`.
pub fn orthogonal_part(a: &[Vec<Q>], ws: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    let a = canonical_basis(a, dim);
    if a.is_empty() {
        return a;
    }
    if ws.is_empty() {
        return a;
    }
    let m: Matrix = ws.iter().map(|w| a.iter().map(|v| dot(v, w)).collect()).collect();
    let sols: Vec<Vec<Q>> = nullspace(&m, a.len())
        .iter()
        .map(|c| {
            (0..dim)
                .map(|x| a.iter().zip(c).fold(Q::zero(), |acc, (v, ci)| acc + &v[x] * ci))
                .collect()
        })
        .collect();
    canonical_basis(&sols, dim)
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// `c` with `u = c v`, when the vectors are proportional and `v ≠ 0`.
pub fn ratio(u: &[Q], v: &[Q]) -> Option<Q> {
    let k = v.iter().position(|x| !x.is_zero())?;
    let c = &u[k] / &v[k];
    u.iter().zip(v).all(|(a, b)| *a == &c * b).then_some(c)
}
