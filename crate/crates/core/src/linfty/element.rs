use std::collections::BTreeMap;
use std::fmt;

use super::plectic::HamPair;
use crate::error::{Error, Result};
use crate::exterior::{Form, MultiVec};

/// A homogeneous summand `α u^j`, with its Hamiltonian field when `deg_1 = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    pub form: Form,
    pub upow: usize,
    pub ham: Option<MultiVec>,
}

/// An element of the bigraded space `L_{•,•}`, as a sum of homogeneous parts
/// keyed by `(u-power, form degree)`.
#[derive(Clone, PartialEq, Eq)]
pub struct UElement {
    n: usize,
    dim: usize,
    parts: BTreeMap<(usize, usize), Part>,
}

impl UElement {
    pub fn zero(n: usize, dim: usize) -> Self {
        UElement { n, dim, parts: BTreeMap::new() }
    }

    /// A single part; `ham` is only allowed when `deg_1 = 0`.
    pub fn from_part(n: usize, form: Form, upow: usize, ham: Option<MultiVec>) -> Result<Self> {
        if form.degree() + upow + 1 > n {
            return Err(Error::InvalidInput(format!(
                "a {}-form times u^{upow} has negative first degree for n = {n}",
                form.degree()
            )));
        }
        let deg1 = n - upow - 1 - form.degree();
        if let Some(v) = &ham {
            if deg1 != 0 {
                return Err(Error::InvalidInput(format!("Hamiltonian field attached to a part of first degree {deg1}")));
            }
            if v.degree() != upow + 1 && !v.is_zero() {
                return Err(Error::InvalidInput(format!(
                    "a part in L_(0,{upow}) needs a {}-vector field, got degree {}",
                    upow + 1,
                    v.degree()
                )));
            }
            form.check_same_chart(v)?;
        }
        let mut x = UElement::zero(n, form.dim());
        x.insert(Part { form, upow, ham });
        Ok(x)
    }

    fn insert(&mut self, part: Part) {
        let key = (part.upow, part.form.degree());
        match self.parts.get_mut(&key) {
            None => {
                if !part.form.is_zero() || part.ham.as_ref().is_some_and(|v| !v.is_zero()) {
                    self.parts.insert(key, part);
                }
            }
            Some(existing) => {
                existing.form = &existing.form + &part.form;
                existing.ham = match (&existing.ham, &part.ham) {
                    (Some(a), Some(b)) => Some(a + b),
                    _ => None,
                };
                if existing.form.is_zero() && existing.ham.as_ref().is_none_or(|v| v.is_zero()) {
                    self.parts.remove(&key);
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parts(&self) -> impl Iterator<Item = &Part> {
        self.parts.values()
    }

    /// Zero iff every form component vanishes.
    pub fn is_zero(&self) -> bool {
        self.parts.values().all(|p| p.form.is_zero())
    }

    pub fn deg1(&self, part: &Part) -> usize {
        self.n - part.upow - 1 - part.form.degree()
    }

    /// Total degree `deg_1 + deg_2 = n − 1 − (form degree)`.
    pub fn total_degree(&self, part: &Part) -> usize {
        self.n - 1 - part.form.degree()
    }

    /// `(deg_1, deg_2)` of a homogeneous element.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.parts.values();
        let p = it.next()?;
        if it.next().is_some() {
            return None;
        }
        Some((self.deg1(p), p.upow))
    }

    /// Total degree of a homogeneous element.
    pub fn degree(&self) -> Option<usize> {
        self.bidegree().map(|(a, b)| a + b)
    }

    pub fn add(&self, other: &UElement) -> UElement {
        let mut out = self.clone();
        for p in other.parts.values() {
            out.insert(p.clone());
        }
        out
    }

    pub fn neg(&self) -> UElement {
        let mut out = UElement::zero(self.n, self.dim);
        for p in self.parts.values() {
            out.insert(Part { form: -&p.form, upow: p.upow, ham: p.ham.as_ref().map(|v| -v) });
        }
        out
    }

    pub fn signed(&self, s: i32) -> UElement {
        if s < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Multiplies by `u^k`.
    pub fn shift_u(&self, k: usize) -> Result<UElement> {
        let mut out = UElement::zero(self.n, self.dim);
        for p in self.parts.values() {
            let x = UElement::from_part(self.n, p.form.clone(), p.upow + k, p.ham.clone())?;
            out = out.add(&x);
        }
        Ok(out)
    }

    /// The coefficient form of `u^k`, the zero form when absent.
    pub fn extract_codim(&self, k: usize) -> Result<Form> {
        let mut found = self.parts.values().filter(|p| p.upow == k);
        match (found.next(), found.next()) {
            (None, _) => Ok(Form::zero(self.dim, self.n.saturating_sub(k + 1))),
            (Some(p), None) => Ok(p.form.clone()),
            _ => Err(Error::InvalidInput(format!("several form degrees multiply u^{k}"))),
        }
    }
}

/// `α u^{k−1}` for a pair with a `k`-vector field: bidegree `(0, k−1)`, total degree `k−1`.
pub fn u_shift(n: usize, pair: &HamPair) -> UElement {
    let k = pair.field_degree();
    UElement::from_part(n, pair.alpha.clone(), k - 1, Some(pair.v.clone())).expect("valid pair has first degree 0")
}

impl fmt::Debug for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for p in self.parts.values().filter(|p| !p.form.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{}] u^{}", p.form, p.upow)?;
        }
        Ok(())
    }
}
