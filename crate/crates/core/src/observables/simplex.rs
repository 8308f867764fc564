use std::fmt;

use num_traits::{Signed, Zero};

use super::subspace::{canonical_basis, dimension, ratio};
use crate::error::{Error, Result};
use crate::exterior::{combinations, ext_d, homotopy_primitive, interior, AffineMap, Form, MultiVec};
use crate::linalg::{rank, solve, Matrix};
use crate::linfty::Plectic;
use crate::rational::{format_point, qi, Q};

/// An affine simplex `t ↦ p_0 + Σ t_j (p_j − p_0)` on the standard simplex
/// `{t ∈ Q^k : t_j ≥ 0, Σ t_j ≤ 1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffSimplex {
    vertices: Vec<Vec<Q>>,
}

impl AffSimplex {
    pub fn new(vertices: Vec<Vec<Q>>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::InvalidInput("a simplex needs at least one vertex".into()));
        };
        let dim = first.len();
        if let Some(p) = vertices.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch(format!("vertex {} in dimension {dim}", format_point(p))));
        }
        let s = AffSimplex { vertices };
        if s.is_degenerate() {
            return Err(Error::InvalidInput("vertices are affinely dependent".into()));
        }
        Ok(s)
    }

    /// A possibly degenerate simplex, for integration only.
    pub fn flat(vertices: Vec<Vec<Q>>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::InvalidInput("a simplex needs at least one vertex".into()));
        };
        let dim = first.len();
        if let Some(p) = vertices.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch(format!("vertex {} in dimension {dim}", format_point(p))));
        }
        Ok(AffSimplex { vertices })
    }

    pub fn is_degenerate(&self) -> bool {
        let k = self.dim();
        k > self.chart_dim() || (k > 0 && rank(&self.edges(), k) < k)
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn chart_dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    /// Matrix with columns `p_j − p_0`.
    fn edges(&self) -> Matrix {
        let p0 = &self.vertices[0];
        (0..self.chart_dim())
            .map(|x| self.vertices[1..].iter().map(|p| &p[x] - &p0[x]).collect())
            .collect()
    }

    pub fn affine_map(&self) -> AffineMap {
        AffineMap::new(self.edges(), self.vertices[0].clone()).expect("consistent shapes")
    }

    /// Pushforward of a tangent vector of the standard simplex.
    pub fn push(&self, t: &[Q]) -> Vec<Q> {
        self.affine_map().push_vector(t)
    }

    /// The inward normal of face `i` in the chart: the gradient of the
    /// barycentric coordinate `λ_i` for the metric induced on the simplex,
    /// `A (AᵀA)^{-1} ∇_t λ_i`. Equals the plain pushforward when the edges are orthonormal.
    pub fn normal(&self, i: usize) -> Result<Vec<Q>> {
        if self.is_degenerate() {
            return Err(Error::InvalidInput(format!("degenerate simplex {self} has no normals")));
        }
        let k = self.dim();
        let g = face_normal(k, i)?;
        let a = self.edges();
        let gram: Matrix = (0..k)
            .map(|r| (0..k).map(|c| a.iter().fold(Q::zero(), |acc, row| acc + &row[r] * &row[c])).collect())
            .collect();
        let y = solve(&gram, k, &g).expect("edges are independent");
        Ok(self.push(&y))
    }

    /// The standard-simplex gradient `∇_t λ_i` pushed forward by the affine differential.
    pub fn pushed_gradient(&self, i: usize) -> Result<Vec<Q>> {
        Ok(self.push(&face_normal(self.dim(), i)?))
    }

    /// The face opposite vertex `i`.
    pub fn face(&self, i: usize) -> AffSimplex {
        let mut vertices = self.vertices.clone();
        vertices.remove(i);
        AffSimplex { vertices }
    }
}

impl fmt::Display for AffSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|p| format_point(p)).collect();
        write!(f, "[{}]", vs.join(", "))
    }
}

/// The inward normal `grad λ_i` of face `i` of the standard `k`-simplex:
/// `e_i` for `i ≥ 1`, `(−1, …, −1)` for `i = 0`.
pub fn face_normal(k: usize, i: usize) -> Result<Vec<Q>> {
    if k == 0 || i > k {
        return Err(Error::InvalidInput(format!("no face {i} of a {k}-simplex")));
    }
    Ok(if i == 0 {
        vec![qi(-1); k]
    } else {
        (1..=k).map(|j| if j == i { qi(1) } else { qi(0) }).collect()
    })
}

/// A `k`-simplex of observables: an affine simplex, a canonical basis of the
/// span of its `n − k` generators, an orientation sign and the form `α` with
/// `dα = −sign · ι_{g_1∧…∧g_{n−k}} ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObsSimplex {
    simplex: AffSimplex,
    generators: Vec<Vec<Q>>,
    sign: i32,
    alpha: Form,
}

/// Canonical generators and the orientation of the raw wedge relative to them.
/// A dependent list becomes the canonical basis of its span padded with zero
/// vectors, with orientation `+1`.
fn canonicalize(raw: &[Vec<Q>], dim: usize) -> (Vec<Vec<Q>>, i32, bool) {
    if raw.is_empty() {
        return (Vec::new(), 1, true);
    }
    if dimension(raw, dim) < raw.len() {
        let mut gens = canonical_basis(raw, dim);
        gens.resize(raw.len(), vec![Q::zero(); dim]);
        gens.sort();
        return (gens, 1, false);
    }
    let mut gens = canonical_basis(raw, dim);
    gens.sort();
    let w_raw = MultiVec::wedge_of_vectors(dim, raw);
    let w_can = MultiVec::wedge_of_vectors(dim, &gens);
    let (idx, c) = w_can.terms().next().expect("independent vectors have a nonzero wedge");
    let r = w_raw.coefficient(idx).constant_term() / c.constant_term();
    (gens, if r.is_positive() { 1 } else { -1 }, true)
}

impl ObsSimplex {
    /// The observable simplex with raw generators `v_1, …, v_{n−k}`; a top
    /// simplex has no generators and `α = H(ω)`.
    pub fn new(plectic: &Plectic, simplex: AffSimplex, raw_generators: &[Vec<Q>]) -> Result<Self> {
        let top = simplex.dim() == plectic.n();
        Self::oriented(plectic, simplex, raw_generators, if top { -1 } else { 1 })
    }

    fn oriented(plectic: &Plectic, simplex: AffSimplex, raw: &[Vec<Q>], orientation: i32) -> Result<Self> {
        let dim = plectic.dim();
        let k = simplex.dim();
        if simplex.chart_dim() != dim {
            return Err(Error::DimensionMismatch(format!("simplex in dimension {} on a chart of dimension {dim}", simplex.chart_dim())));
        }
        if k > plectic.n() {
            return Err(Error::InvalidInput(format!("simplex dimension {k} exceeds n = {}", plectic.n())));
        }
        if simplex.is_degenerate() {
            return Err(Error::InvalidInput(format!("degenerate simplex {simplex}")));
        }
        if raw.len() != plectic.n() - k {
            return Err(Error::InvalidInput(format!(
                "a {k}-simplex needs {} generators, got {}",
                plectic.n() - k,
                raw.len()
            )));
        }
        if let Some(g) = raw.iter().find(|g| g.len() != dim) {
            return Err(Error::DimensionMismatch(format!("generator {} in dimension {dim}", format_point(g))));
        }
        let (generators, o, independent) = canonicalize(raw, dim);
        if !independent {
            return Ok(ObsSimplex { simplex, generators, sign: 1, alpha: Form::zero(dim, k) });
        }
        let sign = o * orientation;
        let c = plectic.contract(&MultiVec::wedge_of_vectors(dim, &generators))?;
        let h = homotopy_primitive(&c)?;
        let alpha = if h.is_zero() { Form::zero(dim, k) } else if sign > 0 { -&h } else { h };
        Ok(ObsSimplex { simplex, generators, sign, alpha })
    }

    pub fn simplex(&self) -> &AffSimplex {
        &self.simplex
    }

    pub fn dim(&self) -> usize {
        self.simplex.dim()
    }

    pub fn generators(&self) -> &[Vec<Q>] {
        &self.generators
    }

    pub fn sign(&self) -> i32 {
        self.sign
    }

    pub fn alpha(&self) -> &Form {
        &self.alpha
    }

    /// Structural identity used for deduplication.
    pub fn key(&self) -> (Vec<Vec<Q>>, Vec<Vec<Q>>, i32) {
        (self.simplex.vertices.clone(), self.generators.clone(), self.sign)
    }

    /// Whether the generators are linearly independent.
    pub fn is_regular(&self) -> bool {
        dimension(&self.generators, self.simplex.chart_dim()) == self.generators.len()
    }

    /// Inward normal of face `i` in the chart.
    pub fn face_vector(&self, i: usize) -> Result<Vec<Q>> {
        self.simplex.normal(i)
    }
}

impl fmt::Display for ObsSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gs: Vec<String> = self.generators.iter().map(|g| format_point(g)).collect();
        write!(f, "{} gens [{}] sign {:+} α = {}", self.simplex, gs.join(", "), self.sign, self.alpha)
    }
}

/// `make_obs`: canonical observable simplex from raw data.
pub fn make_obs(plectic: &Plectic, simplex: AffSimplex, raw_generators: &[Vec<Q>]) -> Result<ObsSimplex> {
    ObsSimplex::new(plectic, simplex, raw_generators)
}

/// Face `i`: the canonical face simplex and the raw primitive
/// `η = −(−1)^i H(ι_ṽ dα)` with `ṽ` the pushed inward normal.
pub fn face_map(plectic: &Plectic, x: &ObsSimplex, i: usize) -> Result<(ObsSimplex, Form)> {
    let k = x.dim();
    let v = x.face_vector(i)?;
    let dim = plectic.dim();
    let c = interior(&MultiVec::constant_vector(&v), &ext_d(&x.alpha))?;
    let h = homotopy_primitive(&c)?;
    let eta = if i.is_multiple_of(2) { -&h } else { h };
    let eta = if eta.is_zero() { Form::zero(dim, k - 1) } else { eta };
    let mut raw = x.generators.clone();
    raw.push(v);
    let orientation = if i.is_multiple_of(2) { -x.sign } else { x.sign };
    let face = ObsSimplex::oriented(plectic, x.simplex.face(i), &raw, orientation)?;
    Ok((face, eta))
}

#[derive(Debug, Clone)]
pub struct FaceIdentityReport {
    pub i: usize,
    pub j: usize,
    /// `d^i d^j x`.
    pub left: ObsSimplex,
    /// `d^{j−1} d^i x`.
    pub right: ObsSimplex,
    /// `λ > 0` with `(∂_i)_* v_{j−1} ∧ v_i = −λ (∂_j)_* v_i ∧ v_j` for the pushed normals.
    pub lambda: Option<Q>,
    /// The same scale for plain pushed gradients in place of the normals.
    pub lambda_pushed: Option<Q>,
}

impl FaceIdentityReport {
    pub fn passed(&self) -> bool {
        self.left == self.right && self.lambda.as_ref().is_some_and(|l| l.is_positive())
    }
}

fn bivector(dim: usize, a: &[Q], b: &[Q]) -> Vec<Q> {
    let w = MultiVec::wedge_of_vectors(dim, &[a.to_vec(), b.to_vec()]);
    combinations(dim, 2).iter().map(|idx| w.coefficient(idx).constant_term()).collect()
}

/// Checks `d^i d^j x = d^{j−1} d^i x` for `i < j`.
pub fn check_face_identity(plectic: &Plectic, x: &ObsSimplex, i: usize, j: usize) -> Result<FaceIdentityReport> {
    let k = x.dim();
    if k < 2 || i >= j || j > k {
        return Err(Error::InvalidInput(format!("face identity needs i < j ≤ k with k ≥ 2, got i = {i}, j = {j}, k = {k}")));
    }
    let (fj, _) = face_map(plectic, x, j)?;
    let (left, _) = face_map(plectic, &fj, i)?;
    let (fi, _) = face_map(plectic, x, i)?;
    let (right, _) = face_map(plectic, &fi, j - 1)?;
    let dim = plectic.dim();
    let a = bivector(dim, &fj.face_vector(i)?, &x.face_vector(j)?);
    let b = bivector(dim, &fi.face_vector(j - 1)?, &x.face_vector(i)?);
    let lambda = ratio(&b, &a).map(|r| -r);
    let (si, sj) = (fi.simplex(), fj.simplex());
    let a = bivector(dim, &sj.pushed_gradient(i)?, &x.simplex().pushed_gradient(j)?);
    let b = bivector(dim, &si.pushed_gradient(j - 1)?, &x.simplex().pushed_gradient(i)?);
    let lambda_pushed = ratio(&b, &a).map(|r| -r);
    Ok(FaceIdentityReport { i, j, left, right, lambda, lambda_pushed })
}

/// One end of a path: the face, the pushed normal and the positive `c` with
/// `dα_t = c · (−(−1)^i ι_ṽ dβ)`.
#[derive(Debug, Clone)]
pub struct PathEnd {
    pub face_index: usize,
    pub face: ObsSimplex,
    pub normal: Vec<Q>,
    pub scale: Option<Q>,
}

impl PathEnd {
    pub fn holds(&self) -> bool {
        self.scale.as_ref().is_none_or(|c| c.is_positive())
    }
}

/// A `(k+1)`-simplex read as a `k`-parameter family of paths along `p_{k+1} − p_0`.
#[derive(Debug, Clone)]
pub struct PathShift {
    pub direction: Vec<Q>,
    /// `t = 0`: the face `d_{k+1}`.
    pub start: PathEnd,
    /// `t = 1`: the face `d_0`.
    pub end: PathEnd,
}

impl PathShift {
    pub fn holds(&self) -> bool {
        self.start.holds() && self.end.holds()
    }

    pub fn endpoint_forms_equal(&self) -> bool {
        self.start.face.alpha == self.end.face.alpha
    }
}

fn form_ratio(a: &Form, b: &Form) -> Option<Q> {
    let (idx, p) = b.terms().next()?;
    let (e, c) = p.terms().next()?;
    let r = a.coefficient(idx).coefficient(e) / c;
    (*a == b.scale(&r)).then_some(r)
}

fn path_end(plectic: &Plectic, x: &ObsSimplex, i: usize) -> Result<PathEnd> {
    let (face, _) = face_map(plectic, x, i)?;
    let normal = x.face_vector(i)?;
    let rhs = interior(&MultiVec::constant_vector(&normal), &ext_d(&x.alpha))?;
    let rhs = if i.is_multiple_of(2) { -&rhs } else { rhs };
    let lhs = ext_d(&face.alpha);
    let scale = if lhs.is_zero() && rhs.is_zero() {
        None
    } else {
        Some(form_ratio(&lhs, &rhs).unwrap_or_else(Q::zero))
    };
    Ok(PathEnd { face_index: i, face, normal, scale })
}

pub fn path_shift(plectic: &Plectic, x: &ObsSimplex) -> Result<PathShift> {
    let k1 = x.dim();
    if k1 == 0 {
        return Err(Error::InvalidInput("a path needs a simplex of dimension ≥ 1".into()));
    }
    let vs = x.simplex.vertices();
    let direction = vs[k1].iter().zip(&vs[0]).map(|(a, b)| a - b).collect();
    Ok(PathShift { direction, start: path_end(plectic, x, k1)?, end: path_end(plectic, x, 0)? })
}
