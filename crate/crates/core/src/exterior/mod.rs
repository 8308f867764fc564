//! Polynomial differential forms and multivector fields on a rational chart.

mod calculus;
mod homotopy;
pub mod identities;
pub mod perm;
pub mod poly;
mod pullback;

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::Q;

pub use calculus::{ext_d, interior, lie_bracket, lie_derivative, schouten};
pub use homotopy::{homotopy_primitive, homotopy_raw};
pub use perm::{all_permutations, combinations, koszul_sign, unshuffles, Permutation};
pub use poly::{Monomial, Poly};
pub use pullback::{pullback_affine, AffineMap};

/// A coordinate chart `Q^dim` with coordinates `x_1..x_dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Chart {
    dim: usize,
}

impl Chart {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("chart dimension must be positive".into()));
        }
        Ok(Chart { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

pub trait Kind: Clone + PartialEq + Eq + std::hash::Hash + fmt::Debug {
    /// Basis symbol prefix used for display, `dx` or `d`.
    const SYMBOL: &'static str;
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormKind;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VecKind;

impl Kind for FormKind {
    const SYMBOL: &'static str = "dx";
}

impl Kind for VecKind {
    const SYMBOL: &'static str = "d";
}

/// Homogeneous element of the exterior algebra over polynomial functions.
///
/// Index tuples are strictly increasing and 0-based; zero coefficients are dropped.
#[derive(Clone)]
pub struct Graded<K: Kind> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Poly>,
    kind: PhantomData<K>,
}

/// Zero elements are equal regardless of their recorded degree.
impl<K: Kind> PartialEq for Graded<K> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.terms == other.terms && (self.degree == other.degree || self.terms.is_empty())
    }
}

impl<K: Kind> Eq for Graded<K> {}

impl<K: Kind> std::hash::Hash for Graded<K> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.terms.hash(state);
    }
}

/// A differential `p`-form.
pub type Form = Graded<FormKind>;
/// A `q`-vector field.
pub type MultiVec = Graded<VecKind>;

/// Sign of merging two disjoint increasing index lists, or `None` on a collision.
pub(crate) fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut swaps = 0usize;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            swaps += a.len() - i;
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((out, if swaps.is_multiple_of(2) { 1 } else { -1 }))
}

impl<K: Kind> Graded<K> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Graded { dim, degree, terms: BTreeMap::new(), kind: PhantomData }
    }

    /// A degree-0 element with the given coefficient function.
    pub fn function(f: Poly) -> Self {
        let mut g = Graded::zero(f.nvars(), 0);
        g.add_term(vec![], f);
        g
    }

    /// `dx_I` or `∂_I` with unit coefficient; `idx` need not be sorted.
    pub fn basis(dim: usize, idx: &[usize]) -> Self {
        let mut g = Graded::zero(dim, idx.len());
        let mut sorted = idx.to_vec();
        let sign = Permutation::new(sort_order(idx)).map(|p| p.sign()).unwrap_or(1);
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return g;
        }
        assert!(sorted.iter().all(|&i| i < dim), "index out of range for dimension {dim}");
        g.add_term(sorted, Poly::constant(dim, Q::from_integer(sign.into())));
        g
    }

    /// Single basis element `dx_i` / `∂_i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        Graded::basis(dim, &[i])
    }

    /// Builds from `(index tuple, coefficient)` pairs; tuples must be strictly increasing.
    pub fn from_terms(dim: usize, degree: usize, terms: impl IntoIterator<Item = (Vec<usize>, Poly)>) -> Result<Self> {
        let mut g = Graded::zero(dim, degree);
        for (idx, p) in terms {
            if idx.len() != degree || idx.windows(2).any(|w| w[0] >= w[1]) || idx.iter().any(|&i| i >= dim) {
                return Err(Error::InvalidInput(format!(
                    "index tuple {:?} is not a strictly increasing {degree}-subset of 1..{dim}",
                    idx.iter().map(|i| i + 1).collect::<Vec<_>>()
                )));
            }
            if p.nvars() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "coefficient has {} variables on a chart of dimension {dim}",
                    p.nvars()
                )));
            }
            g.add_term(idx, p);
        }
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, idx: &[usize]) -> Poly {
        self.terms.get(idx).cloned().unwrap_or_else(|| Poly::zero(self.dim))
    }

    /// Adds `p` to the coefficient of the (strictly increasing) tuple `idx`.
    pub fn add_term(&mut self, idx: Vec<usize>, p: Poly) {
        debug_assert_eq!(idx.len(), self.degree);
        if p.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&p);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn check_same_chart(&self, other: &Graded<impl Kind>) -> Result<()> {
        if self.dim != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "chart dimensions {} and {}",
                self.dim,
                other.dim()
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.map_coefficients(|p| p.scale(c))
    }

    pub fn mul_poly(&self, f: &Poly) -> Self {
        self.map_coefficients(|p| p * f)
    }

    pub fn map_coefficients(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        let mut out = Graded::zero(self.dim, self.degree);
        for (idx, p) in &self.terms {
            out.add_term(idx.clone(), f(p));
        }
        out
    }

    /// Exterior product; panics on chart mismatch (see [`Graded::try_wedge`]).
    pub fn wedge(&self, other: &Self) -> Self {
        self.try_wedge(other).expect("wedge on different charts")
    }

    pub fn try_wedge(&self, other: &Self) -> Result<Self> {
        self.check_same_chart(other)?;
        let mut out = Graded::zero(self.dim, self.degree + other.degree);
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                if let Some((idx, s)) = merge_sign(a, b) {
                    let c = p * q;
                    out.add_term(idx, if s < 0 { -&c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Coefficients evaluated at a point, as a constant element.
    pub fn eval_at(&self, point: &[Q]) -> Self {
        self.map_coefficients(|p| Poly::constant(self.dim, p.eval(point)))
    }

    /// Maximum total polynomial degree among the coefficients.
    pub fn poly_degree(&self) -> Option<u32> {
        self.terms.values().filter_map(|p| p.total_degree()).max()
    }

    /// Whether every coefficient is a constant.
    pub fn is_constant(&self) -> bool {
        self.poly_degree().unwrap_or(0) == 0
    }

    /// Splits into decomposable pieces `f ∂_{i1} ∧ ∂_{i2} ∧ …`.
    pub fn pieces(&self) -> impl Iterator<Item = Self> + '_ {
        self.terms.iter().map(move |(idx, p)| {
            let mut g = Graded::zero(self.dim, self.degree);
            g.add_term(idx.clone(), p.clone());
            g
        })
    }
}

fn sort_order(idx: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..idx.len()).collect();
    order.sort_by_key(|&i| idx[i]);
    order
}

impl MultiVec {
    /// Constant vector field `Σ c_i ∂_i`.
    pub fn constant_vector(c: &[Q]) -> Self {
        let dim = c.len();
        let mut v = MultiVec::zero(dim, 1);
        for (i, x) in c.iter().enumerate() {
            v.add_term(vec![i], Poly::constant(dim, x.clone()));
        }
        v
    }

    /// Wedge of constant vectors `c_1 ∧ … ∧ c_k` (empty list gives the unit function).
    pub fn wedge_of_vectors(dim: usize, vs: &[Vec<Q>]) -> Self {
        vs.iter()
            .fold(MultiVec::function(Poly::one(dim)), |acc, v| acc.wedge(&MultiVec::constant_vector(v)))
    }

    /// Components of a degree-1 field, one polynomial per coordinate.
    pub fn components(&self) -> Vec<Poly> {
        assert_eq!(self.degree, 1, "components of a non-vector field");
        (0..self.dim).map(|i| self.coefficient(&[i])).collect()
    }

    pub fn from_components(comps: Vec<Poly>) -> Self {
        let dim = comps.len();
        let mut v = MultiVec::zero(dim, 1);
        for (i, p) in comps.into_iter().enumerate() {
            v.add_term(vec![i], p);
        }
        v
    }
}

impl<K: Kind> Add<&Graded<K>> for &Graded<K> {
    type Output = Graded<K>;
    fn add(self, rhs: &Graded<K>) -> Graded<K> {
        assert_eq!(self.dim, rhs.dim, "chart mismatch");
        // a zero of any degree is the additive identity
        if self.is_zero() {
            return rhs.clone();
        }
        assert!(
            self.degree == rhs.degree || rhs.is_zero(),
            "adding elements of degrees {} and {}",
            self.degree,
            rhs.degree
        );
        let mut out = self.clone();
        for (idx, p) in &rhs.terms {
            out.add_term(idx.clone(), p.clone());
        }
        out
    }
}

impl<K: Kind> Neg for &Graded<K> {
    type Output = Graded<K>;
    fn neg(self) -> Graded<K> {
        self.map_coefficients(|p| -p)
    }
}

impl<K: Kind> Sub<&Graded<K>> for &Graded<K> {
    type Output = Graded<K>;
    fn sub(self, rhs: &Graded<K>) -> Graded<K> {
        self + &(-rhs)
    }
}

impl<K: Kind> fmt::Debug for Graded<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<K: Kind> fmt::Display for Graded<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if idx.is_empty() {
                write!(f, "({p})")?;
                continue;
            }
            let basis: Vec<String> = idx.iter().map(|i| format!("{}{}", K::SYMBOL, i + 1)).collect();
            let one = p.num_terms() == 1 && p.constant_term() == Q::from_integer(1.into());
            if one {
                write!(f, "{}", basis.join("^"))?;
            } else {
                write!(f, "({p}) {}", basis.join("^"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn x(dim: usize, i: usize) -> Poly {
        Poly::var(dim, i)
    }

    #[test]
    fn wedge_basics() {
        let dx1 = Form::unit(3, 0);
        let dx2 = Form::unit(3, 1);
        assert_eq!(dx1.wedge(&dx2), Form::basis(3, &[0, 1]));
        assert!(dx1.wedge(&dx1).is_zero());
        let a = dx1.mul_poly(&x(3, 1));
        assert_eq!(a.wedge(&dx2), -&dx2.wedge(&a));
        assert_eq!(Form::basis(3, &[1, 0]), -&Form::basis(3, &[0, 1]));
    }

    #[test]
    fn merge_sign_counts_crossings() {
        assert_eq!(merge_sign(&[0, 2], &[1]), Some((vec![0, 1, 2], -1)));
        assert_eq!(merge_sign(&[1, 2], &[0]), Some((vec![0, 1, 2], 1)));
        assert_eq!(merge_sign(&[1], &[1]), None);
    }

    #[test]
    fn constant_vectors() {
        let v = MultiVec::wedge_of_vectors(2, &[vec![qi(1), qi(0)], vec![qi(0), qi(1)]]);
        assert_eq!(v, MultiVec::basis(2, &[0, 1]));
        let w = MultiVec::wedge_of_vectors(2, &[vec![qi(1), qi(1)], vec![qi(2), qi(2)]]);
        assert!(w.is_zero());
    }
}
